//! Named checks over the catalog and the report they produce.
//!
//! Every check is a [`Check`] trait object in a static registry. Checks run
//! in parallel; the report orders their records by name so that output is
//! identical across runs with the same configuration.

mod checks;
mod properties;

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{param_samples, Catalog, DEFAULT_EXTRA_PARAM_SAMPLES};
use crate::exactmath::sample::DEFAULT_SEED;
use crate::exactmath::GaussianRational as G;

pub use properties::{properties, Property};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    /// An exact equality or exhaustive check succeeded.
    Pass,
    /// One-sided evidence agrees with the claim but does not prove it.
    Consistent,
    Skip,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Consistent => "CONSISTENT",
            Status::Skip => "SKIP",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub criterion: u8,
    pub claim: String,
    pub status: Status,
    pub details: Vec<String>,
}

impl CheckRecord {
    pub fn new(
        name: impl Into<String>,
        criterion: u8,
        claim: impl Into<String>,
        status: Status,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            criterion,
            claim: claim.into(),
            status,
            details: Vec::new(),
        }
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn details(mut self, lines: impl IntoIterator<Item = String>) -> Self {
        self.details.extend(lines);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub seed: u64,
    /// Samples per orbit case.
    pub samples: usize,
    /// Samples per automorphism family.
    pub aut_samples: usize,
    /// Seeded values added to the fixed parameter sample set.
    pub extra_param_samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            samples: 50,
            aut_samples: 100,
            extra_param_samples: DEFAULT_EXTRA_PARAM_SAMPLES,
        }
    }
}

impl Config {
    pub fn param_samples(&self) -> Vec<G> {
        param_samples(self.seed, self.extra_param_samples)
    }
}

pub trait Check: Send + Sync {
    /// Prefix of every record name the check emits.
    fn name(&self) -> &'static str;
    fn criterion(&self) -> u8;
    /// The claim being reproduced, in one line.
    fn claim(&self) -> &'static str;
    fn run(&self, catalog: &Catalog, config: &Config) -> Vec<CheckRecord>;
}

pub fn checks() -> &'static [&'static dyn Check] {
    checks::REGISTRY
}

pub fn check_by_name(name: &str) -> Option<&'static dyn Check> {
    checks().iter().copied().find(|c| c.name() == name)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub consistent: usize,
    pub skip: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub config: Config,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &Config, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Consistent => summary.consistent += 1,
                Status::Skip => summary.skip += 1,
                Status::Fail => summary.fail += 1,
            }
        }
        Report {
            command: command.into(),
            seed: config.seed,
            config: config.clone(),
            records,
            summary,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn criterion_records(&self, criterion: u8) -> impl Iterator<Item = &CheckRecord> {
        self.records
            .iter()
            .filter(move |r| r.criterion == criterion)
    }

    /// FAIL if any record fails, else CONSISTENT if any is one-sided, else
    /// PASS; SKIP when there are no records or all were skipped.
    pub fn criterion_status(&self, criterion: u8) -> Status {
        let statuses: Vec<Status> = self
            .criterion_records(criterion)
            .map(|r| r.status)
            .collect();
        if statuses.iter().all(|s| *s == Status::Skip) {
            return Status::Skip;
        }
        statuses
            .into_iter()
            .filter(|s| *s != Status::Skip)
            .max()
            .unwrap_or(Status::Skip)
    }

    pub fn criteria(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.records.iter().map(|r| r.criterion).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// Traceability matrix: criterion, then claim, check and status per
    /// record, with details indented below.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(
            out,
            "seed: {:#x}  samples: {}  aut samples: {}  extra parameter samples: {}",
            self.seed,
            self.config.samples,
            self.config.aut_samples,
            self.config.extra_param_samples
        );
        for c in self.criteria() {
            // Criterion 0 holds records of single-file commands.
            if c == 0 {
                out.push('\n');
            } else {
                let _ = writeln!(out, "\n[{}] criterion {c}", self.criterion_status(c));
            }
            for r in self.criterion_records(c) {
                let _ = writeln!(
                    out,
                    "  {:<10} {}  --  {}",
                    r.status.to_string(),
                    r.name,
                    r.claim
                );
                for d in &r.details {
                    let _ = writeln!(out, "             {d}");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\nsummary: {} pass, {} consistent, {} skip, {} fail",
            s.pass, s.consistent, s.skip, s.fail
        );
        out
    }
}

/// Runs the selected checks (all when `only` is empty) in parallel.
pub fn run_checks(catalog: &Catalog, config: &Config, only: &[&str]) -> Vec<CheckRecord> {
    checks()
        .par_iter()
        .filter(|c| only.is_empty() || only.contains(&c.name()))
        .flat_map_iter(|c| c.run(catalog, config))
        .collect()
}

/// The full suite as a report.
pub fn verify_paper(catalog: &Catalog, config: &Config, command: &str) -> Report {
    Report::new(command, config, run_checks(catalog, config, &[]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_status_takes_the_worst_verdict() {
        let cfg = Config::default();
        let recs = vec![
            CheckRecord::new("b", 1, "x", Status::Pass),
            CheckRecord::new("a", 1, "x", Status::Consistent),
            CheckRecord::new("c", 2, "x", Status::Skip),
            CheckRecord::new("d", 3, "x", Status::Fail),
            CheckRecord::new("e", 3, "x", Status::Pass),
        ];
        let r = Report::new("test", &cfg, recs);
        assert_eq!(r.records[0].name, "a");
        assert_eq!(r.criterion_status(1), Status::Consistent);
        assert_eq!(r.criterion_status(2), Status::Skip);
        assert_eq!(r.criterion_status(3), Status::Fail);
        assert_eq!(r.criterion_status(9), Status::Skip);
        assert_eq!(r.summary.fail, 1);
        assert!(r.has_failures());
        assert!(r.render_text().contains("[FAIL] criterion 3"));
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<&str> = checks().iter().map(|c| c.name()).collect();
        names.sort_unstable();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
        assert!(check_by_name("identities").is_some());
    }
}
