use rayon::prelude::*;

use super::{properties, Check, CheckRecord, Config, Status};
use crate::algebra::{
    check_ncj, derivation_dim, discriminator, fingerprint, identities, nilpotency_index, Algebra,
};
use crate::algebra::{first_violation, Fingerprint};
use crate::catalog::{
    builtin_separations, jn, Catalog, CatalogEntry, ExtensionFixture, FAMILIES, SMALL_ALGEBRAS,
};
use crate::cohomology::{
    central_extension, h2, verify_aut_family, verify_orbit_reduction, Expectation, Origin,
};
use crate::degeneration::{
    chain_readings, check_der_monotonicity, orbit_dimension_estimate, DegenerationStatus, FlagSpan,
    StructurePredicate,
};
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational as G, Matrix};

pub(super) static REGISTRY: &[&dyn Check] = &[
    &IdentitySuite,
    &CohomologyTable,
    &ExtensionTable,
    &OrbitCases,
    &AutomorphismFamilies,
    &Degenerations,
    &DerivationBounds,
    &NonDegeneration,
    &Separation,
    &DimensionEstimate,
    &properties::PropertySuite,
];

fn record(check: &dyn Check, item: &str, status: Status) -> CheckRecord {
    CheckRecord::new(
        format!("{}/{item}", check.name()),
        check.criterion(),
        check.claim(),
        status,
    )
}

fn error_record(check: &dyn Check, item: &str, e: &Error) -> CheckRecord {
    record(check, item, Status::Fail).detail(format!("error: {e}"))
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Members of a family at each sample; samples where the template has a
/// pole are reported as such.
fn members(entry: &CatalogEntry, samples: &[G]) -> Vec<(G, Result<Algebra>)> {
    samples.iter().map(|s| (s.clone(), entry.at(s))).collect()
}

fn param_label(entry: &CatalogEntry, s: &G) -> String {
    format!("{} = {s}", entry.params.join(","))
}

// Criterion 1.

struct IdentitySuite;

fn identity_line(a: &Algebra) -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for id in identities() {
        match first_violation(a, *id) {
            None => parts.push(format!("{} ok", id.name())),
            Some(t) => {
                ok = false;
                let t: Vec<String> = t.iter().map(|i| format!("e{}", i + 1)).collect();
                parts.push(format!("{} fails at ({})", id.name(), t.join(", ")));
            }
        }
    }
    match nilpotency_index(a) {
        Some(k) => parts.push(format!("nilpotent of index {k}")),
        None => {
            ok = false;
            parts.push("not nilpotent".into());
        }
    }
    (ok && check_ncj(a), parts.join(", "))
}

impl Check for IdentitySuite {
    fn name(&self) -> &'static str {
        "identities"
    }
    fn criterion(&self) -> u8 {
        1
    }
    fn claim(&self) -> &'static str {
        "the algebra satisfies the flexible and Jordan identities and is nilpotent"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        let samples = cfg.param_samples();
        let mut names: Vec<&str> = cat
            .algebras
            .iter()
            .filter(|e| e.name.starts_with("J4_"))
            .map(|e| e.name.as_str())
            .collect();
        names.extend(SMALL_ALGEBRAS);
        names.extend(FAMILIES);
        let mut out: Vec<CheckRecord> = names
            .par_iter()
            .map(|name| {
                let Some(entry) = cat.entry(name) else {
                    return record(self, name, Status::Fail).detail("missing from the catalog");
                };
                if !entry.is_family() {
                    return match entry.algebra() {
                        Ok(a) => {
                            let (ok, line) = identity_line(&a);
                            record(self, name, pass_if(ok)).detail(line)
                        }
                        Err(e) => error_record(self, name, &e),
                    };
                }
                let mut all = true;
                let mut lines = Vec::new();
                for (s, a) in members(entry, &samples) {
                    match a {
                        Ok(a) => {
                            let (ok, line) = identity_line(&a);
                            all &= ok;
                            lines.push(format!("{}: {line}", param_label(entry, &s)));
                        }
                        Err(Error::EvaluationPole(_)) => {
                            lines.push(format!("{}: pole, skipped", param_label(entry, &s)))
                        }
                        Err(e) => {
                            all = false;
                            lines.push(format!("{}: {e}", param_label(entry, &s)));
                        }
                    }
                }
                record(self, name, pass_if(all)).details(lines)
            })
            .collect();
        for n in 1..=6 {
            let (ok, line) = identity_line(&jn(n));
            out.push(record(self, &format!("J{n}"), pass_if(ok)).detail(line));
        }
        out
    }
}

// Criterion 2.

struct CohomologyTable;

pub(super) const GOLDEN_H2: [(&str, (usize, usize, usize)); 5] = [
    ("J3s_01", (6, 1, 5)),
    ("J3s_02", (6, 1, 5)),
    ("J3s_03", (6, 1, 5)),
    ("J3s_04", (4, 1, 3)),
    ("J3_01", (3, 2, 1)),
];

impl Check for CohomologyTable {
    fn name(&self) -> &'static str {
        "cohomology"
    }
    fn criterion(&self) -> u8 {
        2
    }
    fn claim(&self) -> &'static str {
        "(dim Z², dim B², dim H²) matches the table for the 3-dimensional algebras"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        let samples = cfg.param_samples();
        GOLDEN_H2
            .iter()
            .map(|(name, want)| {
                let Some(entry) = cat.entry(name) else {
                    return record(self, name, Status::Fail).detail("missing from the catalog");
                };
                let algebras: Vec<(String, Result<Algebra>)> = if entry.is_family() {
                    members(entry, &samples)
                        .into_iter()
                        .map(|(s, a)| (param_label(entry, &s), a))
                        .collect()
                } else {
                    vec![(String::new(), entry.algebra())]
                };
                let mut ok = true;
                let mut lines = Vec::new();
                for (label, a) in algebras {
                    let prefix = if label.is_empty() {
                        String::new()
                    } else {
                        format!("{label}: ")
                    };
                    match a {
                        Ok(a) => {
                            let got = h2(&a).dims();
                            ok &= got == *want;
                            lines.push(format!("{prefix}{got:?}, expected {want:?}"));
                        }
                        Err(e) => {
                            ok = false;
                            lines.push(format!("{prefix}{e}"));
                        }
                    }
                }
                record(self, name, pass_if(ok)).details(lines)
            })
            .collect()
    }
}

// Criterion 3.

struct ExtensionTable;

/// The base each block of the 4-dimensional table is built from.
pub(super) fn expected_base(target: &str) -> Option<&'static str> {
    let k: usize = target.strip_prefix("J4_")?.parse().ok()?;
    match k {
        2..=6 => Some("J3s_01"),
        7..=12 => Some("J3s_02"),
        13..=17 => Some("J3s_03"),
        18 => Some("J3_01"),
        _ => None,
    }
}

fn witness_matrix(e: &ExtensionFixture, dim: usize) -> Result<Matrix<G>> {
    match &e.witness {
        None => Ok(Matrix::identity(dim)),
        Some(rows) => {
            let no_vars = |_: &str| None;
            let rows = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.eval(&no_vars))
                        .collect::<Result<Vec<G>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(rows)
        }
    }
}

fn check_extension(cat: &Catalog, e: &ExtensionFixture) -> Result<(bool, Vec<String>)> {
    let base = cat.algebra(&e.base)?;
    let target = cat.algebra(&e.target)?;
    let ext = central_extension(&base, std::slice::from_ref(&e.form))?;
    let p = witness_matrix(e, ext.dim())?;
    let iso = crate::algebra::verify_isomorphism_witness(&ext, &target, &p)?;
    let base_ok = expected_base(&e.target) == Some(e.base.as_str());
    let coeffs: Vec<String> = e.coeffs.iter().map(ToString::to_string).collect();
    let lines = vec![
        format!(
            "{} extended by θ = {} (coefficients {})",
            e.base,
            e.form,
            coeffs.join(", ")
        ),
        format!(
            "witness: {}; matches {}: {}",
            if e.witness.is_some() {
                "stored basis change"
            } else {
                "identity"
            },
            e.target,
            if iso { "yes" } else { "no" }
        ),
    ];
    let mut lines = lines;
    if !base_ok {
        lines.push(format!(
            "base {} is not the one the table builds {} from",
            e.base, e.target
        ));
    }
    Ok((iso && base_ok, lines))
}

impl Check for ExtensionTable {
    fn name(&self) -> &'static str {
        "extensions"
    }
    fn criterion(&self) -> u8 {
        3
    }
    fn claim(&self) -> &'static str {
        "the central extension by the listed representative reproduces the table entry"
    }
    fn run(&self, cat: &Catalog, _: &Config) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> = cat
            .fixtures
            .extensions
            .par_iter()
            .map(|e| match check_extension(cat, e) {
                Ok((ok, lines)) => record(self, &e.target, pass_if(ok)).details(lines),
                Err(err) => error_record(self, &e.target, &err),
            })
            .collect();
        let covered: Vec<&str> = cat
            .fixtures
            .extensions
            .iter()
            .map(|e| e.target.as_str())
            .collect();
        let missing: Vec<String> = (2..=18)
            .map(|k| format!("J4_{k:02}"))
            .filter(|n| !covered.contains(&n.as_str()))
            .collect();
        let status = pass_if(missing.is_empty());
        let line = if missing.is_empty() {
            "J4_02 to J4_18 each have an extension fixture".to_string()
        } else {
            format!("no fixture for {}", missing.join(", "))
        };
        out.push(record(self, "coverage", status).detail(line));
        out
    }
}

// Criterion 4.

struct OrbitCases;

impl Check for OrbitCases {
    fn name(&self) -> &'static str {
        "orbits"
    }
    fn criterion(&self) -> u8 {
        4
    }
    fn claim(&self) -> &'static str {
        "each case of the orbit analysis moves a sampled cocycle to the stated representative"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        cat.fixtures
            .orbits
            .par_iter()
            .map(|o| {
                let r = match verify_orbit_reduction(o, cfg.samples, cfg.seed) {
                    Ok(r) => r,
                    Err(e) => return error_record(self, &o.name, &e),
                };
                let mut lines = vec![format!(
                    "{}/{} samples agree, {} degenerate draws, {} counterexamples",
                    r.passed,
                    r.requested,
                    r.degenerate,
                    r.counterexamples.len()
                )];
                if o.expect == Expectation::Counterexample {
                    lines.push("expected: the case as printed fails".into());
                }
                let completed: Vec<String> = o
                    .substitution
                    .iter()
                    .filter(|a| a.origin == Origin::Completion)
                    .map(|a| format!("{} = {}", a.var, a.value))
                    .collect();
                if !completed.is_empty() {
                    lines.push(format!("completed: {}", completed.join(", ")));
                }
                lines.extend(
                    r.counterexamples
                        .iter()
                        .map(|c| format!("counterexample: {c}")),
                );
                if let Some(n) = &o.note {
                    lines.push(format!("note: {n}"));
                }
                record(self, &o.name, pass_if(r.ok())).details(lines)
            })
            .collect()
    }
}

struct AutomorphismFamilies;

impl Check for AutomorphismFamilies {
    fn name(&self) -> &'static str {
        "automorphisms"
    }
    fn criterion(&self) -> u8 {
        4
    }
    fn claim(&self) -> &'static str {
        "every invertible member of the parametrized family is an automorphism"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        cat.fixtures
            .auts
            .par_iter()
            .map(|a| {
                let name = &a.family.name;
                let base = match cat.algebra(&a.base) {
                    Ok(b) => b,
                    Err(e) => return error_record(self, name, &e),
                };
                match verify_aut_family(&base, &a.family, cfg.aut_samples, cfg.seed) {
                    Ok(r) => {
                        let ok = r.failures.is_empty() && r.checked == cfg.aut_samples;
                        let mut lines = vec![format!(
                            "{} of {} checked ({} singular draws skipped)",
                            r.checked, cfg.aut_samples, r.singular
                        )];
                        lines.extend(
                            r.failures
                                .iter()
                                .map(|f| format!("not an automorphism at {f}")),
                        );
                        record(self, name, pass_if(ok)).details(lines)
                    }
                    Err(e) => error_record(self, name, &e),
                }
            })
            .collect()
    }
}

// Criterion 5.

struct Degenerations;

impl Check for Degenerations {
    fn name(&self) -> &'static str {
        "degenerations"
    }
    fn criterion(&self) -> u8 {
        5
    }
    fn claim(&self) -> &'static str {
        "the parametrized basis has a regular limit at t = 0 equal to the target"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        let samples = cfg.param_samples();
        cat.witnesses
            .par_iter()
            .map(|w| {
                let name = w.witness.name.as_str();
                match cat.check_witness(w, &samples) {
                    Ok(r) => {
                        let mut lines = Vec::new();
                        if let Ok(d) = w.witness.determinant() {
                            lines.push(format!("det = {d}"));
                        }
                        lines.push(format!("status: {:?}", r.status));
                        if w.expect != DegenerationStatus::Pass {
                            lines.push(format!(
                                "expected: {:?} (basis reproduced as printed)",
                                w.expect
                            ));
                        }
                        lines.extend(r.diagnostics.iter().cloned());
                        if let Some(n) = &w.note {
                            lines.push(format!("note: {n}"));
                        }
                        record(self, name, pass_if(r.status == w.expect)).details(lines)
                    }
                    Err(e) => error_record(self, name, &e),
                }
            })
            .collect()
    }
}

struct DerivationBounds;

impl Check for DerivationBounds {
    fn name(&self) -> &'static str {
        "der-bounds"
    }
    fn criterion(&self) -> u8 {
        5
    }
    fn claim(&self) -> &'static str {
        "a proper degeneration strictly increases the dimension of the derivation algebra"
    }
    fn run(&self, cat: &Catalog, _: &Config) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let mut pairs = Vec::new();
        let mut skipped = Vec::new();
        for w in cat
            .witnesses
            .iter()
            .filter(|w| w.expect == DegenerationStatus::Pass)
        {
            match (
                cat.algebra(&w.witness.source),
                cat.algebra(&w.witness.target),
            ) {
                (Ok(a), Ok(b)) => {
                    pairs.push((w.witness.source.clone(), a, w.witness.target.clone(), b))
                }
                _ => skipped.push(w.witness.name.clone()),
            }
        }
        let violations = check_der_monotonicity(
            pairs
                .iter()
                .map(|(sn, a, tn, b)| (sn.as_str(), a, tn.as_str(), b)),
        );
        let mut lines: Vec<String> = pairs
            .iter()
            .map(|(sn, a, tn, b)| {
                format!(
                    "{sn} -> {tn}: der {} < {}",
                    derivation_dim(a),
                    derivation_dim(b)
                )
            })
            .collect();
        lines.extend(violations.iter().map(|v| {
            format!(
                "violated: {} -> {} has {} >= {}",
                v.source, v.target, v.der_source, v.der_target
            )
        }));
        lines.extend(
            skipped
                .iter()
                .map(|n| format!("{n}: family source, not compared")),
        );
        out.push(record(self, "monotonicity", pass_if(violations.is_empty())).details(lines));

        let der = |n: &str| cat.algebra(n).map(|a| derivation_dim(&a));
        for (name, want) in [("J4_07", 2), ("J4_17", 4)] {
            match der(name) {
                Ok(d) => out.push(
                    record(self, &format!("der {name}"), pass_if(d == want))
                        .detail(format!("dim Der {name} = {d}, expected {want}")),
                ),
                Err(e) => out.push(error_record(self, &format!("der {name}"), &e)),
            }
        }
        if let (Ok(d17), Ok(d07)) = (der("J4_17"), der("J4_07")) {
            out.push(
                record(self, "J4_17 !-> J4_07", pass_if(d17 >= d07)).detail(format!(
                    "dim Der J4_17 = {d17} is not below dim Der J4_07 = {d07}"
                )),
            );
        }
        out
    }
}

// Criterion 6.

struct NonDegeneration;

/// Result of evaluating a predicate on one algebra under every reading.
fn evaluate_all(p: &StructurePredicate, a: &Algebra) -> Result<Vec<(String, bool, Vec<String>)>> {
    chain_readings()
        .iter()
        .map(|r| {
            p.evaluate(a, *r)
                .map(|e| (e.reading.to_string(), e.holds, e.violated))
        })
        .collect()
}

fn describe(label: &str, evals: &[(String, bool, Vec<String>)]) -> String {
    let parts: Vec<String> = evals
        .iter()
        .map(|(reading, holds, violated)| {
            if *holds {
                format!("{reading}: holds")
            } else {
                format!("{reading}: violated by {}", violated.join("; "))
            }
        })
        .collect();
    format!("{label}: {}", parts.join(", "))
}

impl NonDegeneration {
    /// The predicate must hold on the algebra under the flag reading.
    fn holds_on(&self, cat: &Catalog, pred: &str, name: &str) -> CheckRecord {
        let item = format!("{pred} holds on {name}");
        let (Some(p), Ok(a)) = (cat.predicate(pred), cat.algebra(name)) else {
            return record(self, &item, Status::Fail).detail("predicate or algebra missing");
        };
        match evaluate_all(p, &a) {
            Ok(evals) => {
                let flag = p.evaluate(&a, &FlagSpan).map(|e| e.holds).unwrap_or(false);
                let status = if flag {
                    Status::Consistent
                } else {
                    Status::Fail
                };
                record(self, &item, status)
                    .detail(format!("{pred}: {p}"))
                    .detail(describe(name, &evals))
            }
            Err(e) => error_record(self, &item, &e),
        }
    }

    /// The predicate (or its constant part) must fail on every member.
    fn fails_on(
        &self,
        cat: &Catalog,
        samples: &[G],
        pred: &str,
        constants_only: bool,
        name: &str,
    ) -> CheckRecord {
        let item = if constants_only {
            format!("{pred} constants fail on {name}")
        } else {
            format!("{pred} fails on {name}")
        };
        let (Some(full), Some(entry)) = (cat.predicate(pred), cat.entry(name)) else {
            return record(self, &item, Status::Fail).detail("predicate or algebra missing");
        };
        let tested = if constants_only {
            full.constant_part()
        } else {
            full.clone()
        };
        let algebras: Vec<(String, Result<Algebra>)> = if entry.is_family() {
            members(entry, samples)
                .into_iter()
                .map(|(s, a)| (param_label(entry, &s), a))
                .collect()
        } else {
            vec![(name.to_string(), entry.algebra())]
        };
        let mut lines = vec![format!("tested: {tested}")];
        let mut satisfied = Vec::new();
        for (label, a) in algebras {
            let a = match a {
                Ok(a) => a,
                Err(e) => {
                    lines.push(format!("{label}: {e}"));
                    satisfied.push(label);
                    continue;
                }
            };
            match (tested.evaluate(&a, &FlagSpan), evaluate_all(full, &a)) {
                (Ok(t), Ok(evals)) => {
                    if t.holds {
                        satisfied.push(label.clone());
                    }
                    lines.push(describe(&format!("{label} (full {pred})"), &evals));
                }
                (Err(e), _) | (_, Err(e)) => {
                    lines.push(format!("{label}: {e}"));
                    satisfied.push(label);
                }
            }
        }
        let status = if satisfied.is_empty() {
            Status::Consistent
        } else {
            lines.insert(1, format!("not violated at: {}", satisfied.join("; ")));
            Status::Fail
        };
        record(self, &item, status).details(lines)
    }
}

impl Check for NonDegeneration {
    fn name(&self) -> &'static str {
        "nondegeneration"
    }
    fn criterion(&self) -> u8 {
        6
    }
    fn claim(&self) -> &'static str {
        "canonical structure constants sit on the expected side of the closed conditions"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        let samples = cfg.param_samples();
        let mut out = vec![
            self.holds_on(cat, "R1", "J4_07"),
            self.holds_on(cat, "R2", "J4_17"),
        ];
        for name in FAMILIES.iter().copied().chain(["J4_17"]) {
            out.push(self.fails_on(cat, &samples, "R1", true, name));
        }
        for name in FAMILIES {
            out.push(self.fails_on(cat, &samples, "R2", false, name));
        }
        out
    }
}

// Criterion 7.

struct Separation;

impl Check for Separation {
    fn name(&self) -> &'static str {
        "separation"
    }
    fn criterion(&self) -> u8 {
        7
    }
    fn claim(&self) -> &'static str {
        "the 18 algebras are pairwise told apart by invariants"
    }
    fn run(&self, cat: &Catalog, _: &Config) -> Vec<CheckRecord> {
        let table = cat.table_a();
        let prints: Vec<(String, Fingerprint, &Algebra)> = table
            .iter()
            .map(|(n, a)| (n.clone(), fingerprint(a), a))
            .collect();
        let mut out = Vec::new();
        let mut collisions = Vec::new();
        for (i, (ni, fi, _)) in prints.iter().enumerate() {
            for (nj, fj, _) in &prints[i + 1..] {
                if fi == fj {
                    collisions.push((ni.clone(), nj.clone()));
                }
            }
        }
        let lines: Vec<String> = prints
            .iter()
            .map(|(n, f, _)| format!("{n} {f}"))
            .chain(std::iter::once(
                "fields: ann, A², A³, nilpotency index, Der, sym rank, antisym rank".to_string(),
            ))
            .collect();
        out.push(
            record(self, "fingerprints", Status::Pass)
                .detail(format!(
                    "{} collisions among {} algebras",
                    collisions.len(),
                    prints.len()
                ))
                .details(lines),
        );
        let algebra = |n: &str| prints.iter().find(|(m, _, _)| m == n).map(|(_, _, a)| *a);
        for (l, r) in &collisions {
            let item = format!("{l} vs {r}");
            let sep = builtin_separations()
                .iter()
                .find(|s| (&s.left, &s.right) == (l, r) || (&s.left, &s.right) == (r, l));
            let Some(sep) = sep else {
                out.push(
                    record(self, &item, Status::Fail)
                        .detail("equal fingerprints and no documented discriminator"),
                );
                continue;
            };
            let d = discriminator(&sep.discriminator).expect("validated when parsed");
            let (a, b) = (
                algebra(&sep.left).expect("collision member"),
                algebra(&sep.right).expect("collision member"),
            );
            let got = ((d.eval)(a), (d.eval)(b));
            let ok = got == sep.values && got.0 != got.1;
            out.push(record(self, &item, pass_if(ok)).detail(format!(
                "{} = {}: {} on {}, {} on {} (frozen {:?})",
                d.name, d.description, got.0, sep.left, got.1, sep.right, sep.values
            )));
        }
        for s in builtin_separations() {
            let listed = collisions
                .iter()
                .any(|(l, r)| (&s.left, &s.right) == (l, r) || (&s.left, &s.right) == (r, l));
            if !listed {
                out.push(
                    record(self, &format!("{} vs {}", s.left, s.right), Status::Fail)
                        .detail("documented separation for a pair whose fingerprints differ"),
                );
            }
        }
        out
    }
}

// Criterion 8.

struct DimensionEstimate;

/// The generic value of `dim Der` over a family is the minimum over the
/// samples, since the dimension can only jump up on special members.
fn generic_der(entry: &CatalogEntry, samples: &[G]) -> (Option<(usize, Algebra)>, Vec<String>) {
    let mut best: Option<(usize, Algebra)> = None;
    let mut lines = Vec::new();
    for (s, a) in members(entry, samples) {
        match a {
            Ok(a) => {
                let d = derivation_dim(&a);
                lines.push(format!("dim Der {}({}) = {d}", entry.name, s));
                if best.as_ref().is_none_or(|(b, _)| d < *b) {
                    best = Some((d, a));
                }
            }
            Err(e) => lines.push(format!("{}({s}): {e}", entry.name)),
        }
    }
    (best, lines)
}

impl Check for DimensionEstimate {
    fn name(&self) -> &'static str {
        "dimension"
    }
    fn criterion(&self) -> u8 {
        8
    }
    fn claim(&self) -> &'static str {
        "the largest orbit closure has dimension 14, attained by J4_07"
    }
    fn run(&self, cat: &Catalog, cfg: &Config) -> Vec<CheckRecord> {
        let samples = cfg.param_samples();
        let mut estimates: Vec<(String, usize)> = Vec::new();
        let mut lines = Vec::new();
        let mut family_lines = Vec::new();
        let mut ok = true;
        for name in ["J4_07", "J4_17", "J4_18"] {
            match cat.algebra(name) {
                Ok(a) => {
                    let e = orbit_dimension_estimate(&a, 0);
                    lines.push(format!("{name}: 16 - {} + 0 = {e}", derivation_dim(&a)));
                    estimates.push((name.to_string(), e));
                }
                Err(err) => {
                    ok = false;
                    lines.push(format!("{name}: {err}"));
                }
            }
        }
        for name in FAMILIES {
            let Some(entry) = cat.entry(name) else {
                ok = false;
                continue;
            };
            let (best, der_lines) = generic_der(entry, &samples);
            family_lines.extend(der_lines);
            match best {
                Some((d, a)) => {
                    let e = orbit_dimension_estimate(&a, 1);
                    lines.push(format!("{name} generic: 16 - {d} + 1 = {e}"));
                    estimates.push((name.to_string(), e));
                }
                None => ok = false,
            }
        }
        let max = estimates.iter().map(|(_, e)| *e).max().unwrap_or(0);
        let attained_by_j407 = estimates.iter().any(|(n, e)| n == "J4_07" && *e == 14);
        lines.push(format!("maximum = {max}"));
        vec![
            record(
                self,
                "estimates",
                pass_if(ok && max == 14 && attained_by_j407),
            )
            .details(lines),
            record(self, "family derivations", Status::Pass).details(family_lines),
        ]
    }
}
