//! `ncj`: command-line front end for the toolkit.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ncj::algebra::{
    annihilator, derivation_dim, discriminators, fingerprint, first_violation, identities,
    power_chain, render_vector, Algebra,
};
use ncj::catalog::{
    builtin_catalog, check_witness, param_samples, parse_algebra, parse_algebras, parse_witness,
    CatalogEntry, DEFAULT_EXTRA_PARAM_SAMPLES,
};
use ncj::cohomology::{central_extension, h2, BilinearForm};
use ncj::degeneration::DegenerationStatus;
use ncj::exactmath::GaussianRational;
use ncj::expr::Expr;
use ncj::verify::{check_by_name, checks, run_checks, CheckRecord, Config, Report, Status};

#[derive(Parser)]
#[command(
    name = "ncj",
    version,
    about = "Exact checks for nilpotent noncommutative Jordan algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Identities, nilpotency, annihilator and fingerprint of an algebra file.
    Check {
        file: PathBuf,
        /// Value for the parameters of a family.
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Dimensions and bases of Z², B² and H².
    Cohomology {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Prints the central extension by a cocycle such as `D13 + D22 + D31`.
    Extend {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        cocycle: String,
        /// Name of the new algebra (default: NAME_ext).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        param: Option<String>,
    },
    /// Verifies a degeneration witness file.
    Degeneration {
        file: PathBuf,
        /// Extra algebra files to resolve names against, besides the built-in catalog.
        #[arg(long = "algebras")]
        algebras: Vec<PathBuf>,
        #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs the full verification suite over the built-in catalog.
    VerifyPaper {
        #[arg(long, default_value = "0xC0FFEE", value_parser = parse_seed)]
        seed: u64,
        /// Samples per orbit case.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Samples per automorphism family.
        #[arg(long, default_value_t = 100)]
        aut_samples: usize,
        /// Seeded evaluation points added to the fixed ones for families.
        #[arg(long, default_value_t = DEFAULT_EXTRA_PARAM_SAMPLES)]
        param_samples: usize,
        /// Run only the named checks (repeatable).
        #[arg(long, value_parser = check_name)]
        only: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn check_name(s: &str) -> std::result::Result<String, String> {
    if check_by_name(s).is_some() {
        return Ok(s.to_string());
    }
    let names: Vec<&str> = checks().iter().map(|c| c.name()).collect();
    Err(format!(
        "unknown check `{s}`; expected one of {}",
        names.join(", ")
    ))
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed `{s}`: {e}"))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn scalar(src: &str) -> Result<GaussianRational> {
    let e = Expr::parse(src).with_context(|| format!("invalid parameter value `{src}`"))?;
    Ok(e.eval(&|_: &str| None)?)
}

/// Loads a single algebra, specialising a family at `--param`.
fn load_algebra(path: &Path, param: Option<&str>) -> Result<(CatalogEntry, Algebra)> {
    let entry = parse_algebra(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let algebra = match (entry.is_family(), param) {
        (false, None) => entry.algebra()?,
        (false, Some(_)) => bail!("`{}` has no parameters", entry.name),
        (true, None) => bail!(
            "`{}` is a family in {}; pass --param",
            entry.name,
            entry.params.join(", ")
        ),
        (true, Some(v)) => entry.at(&scalar(v)?)?,
    };
    Ok((entry, algebra))
}

fn command_echo() -> String {
    let args: Vec<String> = std::env::args().skip(1).collect();
    format!("ncj {}", args.join(" "))
}

fn record(name: &str, claim: &str, status: Status) -> CheckRecord {
    CheckRecord::new(name, 0, claim, status)
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn check_records(name: &str, a: &Algebra) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for id in identities() {
        let v = first_violation(a, *id);
        let mut r = record(
            &format!("{name}/{}", id.name()),
            &format!("the {} identity holds", id.name()),
            pass_if(v.is_none()),
        )
        .detail(format!("linearized form: {}", id.describe()));
        if let Some(t) = v {
            let t: Vec<String> = t.iter().map(|i| format!("e{i}")).collect();
            r = r.detail(format!("fails on ({})", t.join(", ")));
        }
        out.push(r);
    }
    let chain = power_chain(a);
    let nilpotent = chain.last().is_some_and(|s| s.is_zero());
    let dims: Vec<String> = chain.iter().map(|s| s.dim().to_string()).collect();
    out.push(
        record(
            &format!("{name}/nilpotent"),
            "the power chain reaches zero",
            pass_if(nilpotent),
        )
        .detail(format!("dim A^k for k = 1, 2, ...: {}", dims.join(", "))),
    );
    let ann: Vec<String> = annihilator(a)
        .basis_vectors()
        .iter()
        .map(|v| render_vector(v, "e"))
        .collect();
    out.push(
        record(
            &format!("{name}/annihilator"),
            "annihilator basis",
            Status::Pass,
        )
        .detail(format!("dim {}: {}", ann.len(), ann.join(", "))),
    );
    let mut fp = record(
        &format!("{name}/fingerprint"),
        "basis-independent invariants",
        Status::Pass,
    )
    .detail(format!("der={}", derivation_dim(a)))
    .detail(format!(
        "(ann, A², A³, nilpotency index, Der, sym rank, antisym rank) = {}",
        fingerprint(a)
    ));
    for d in discriminators() {
        fp = fp.detail(format!("{} = {}", d.description, (d.eval)(a)));
    }
    out.push(fp);
    out
}

fn cohomology_records(name: &str, a: &Algebra) -> Vec<CheckRecord> {
    let c = h2(a);
    let n = a.dim();
    let forms = |vs: Vec<Vec<GaussianRational>>| -> Vec<String> {
        vs.into_iter()
            .map(|v| BilinearForm::from_vec(n, v).map_or_else(|e| e.to_string(), |f| f.to_string()))
            .collect()
    };
    let (z, b, h) = c.dims();
    vec![
        record(
            &format!("{name}/dims"),
            "(dim Z², dim B², dim H²)",
            Status::Pass,
        )
        .detail(format!("({z}, {b}, {h})")),
        record(&format!("{name}/Z2"), "basis of Z²", Status::Pass)
            .details(forms(c.z2.basis_vectors())),
        record(&format!("{name}/B2"), "basis of B²", Status::Pass)
            .details(forms(c.b2.basis_vectors())),
        record(
            &format!("{name}/H2"),
            "representatives of a basis of H²",
            Status::Pass,
        )
        .details(c.h2_reps.iter().map(ToString::to_string)),
    ]
}

fn emit(report: &Report, format: Format) -> Result<bool> {
    match format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(report)?),
    }
    Ok(!report.has_failures())
}

fn run(cli: Cli) -> Result<bool> {
    let echo = command_echo();
    match cli.command {
        Command::Check {
            file,
            param,
            format,
        } => {
            let (entry, a) = load_algebra(&file, param.as_deref())?;
            let report = Report::new(echo, &Config::default(), check_records(&entry.name, &a));
            emit(&report, format)
        }
        Command::Cohomology {
            file,
            param,
            format,
        } => {
            let (entry, a) = load_algebra(&file, param.as_deref())?;
            let report = Report::new(
                echo,
                &Config::default(),
                cohomology_records(&entry.name, &a),
            );
            emit(&report, format)
        }
        Command::Extend {
            file,
            cocycle,
            name,
            param,
        } => {
            let (entry, a) = load_algebra(&file, param.as_deref())?;
            let theta = BilinearForm::parse(a.dim(), &cocycle).context("invalid --cocycle")?;
            let ext = central_extension(&a, std::slice::from_ref(&theta))?;
            let name = name.unwrap_or_else(|| format!("{}_ext", entry.name));
            print!("{}", CatalogEntry::from_algebra(&name, &ext).render());
            Ok(true)
        }
        Command::Degeneration {
            file,
            algebras,
            seed,
            format,
        } => {
            let w =
                parse_witness(&read(&file)?).with_context(|| format!("in {}", file.display()))?;
            let mut extra = Vec::new();
            for p in &algebras {
                extra.extend(
                    parse_algebras(&read(p)?).with_context(|| format!("in {}", p.display()))?,
                );
            }
            let builtin = builtin_catalog();
            let lookup = |n: &str| {
                extra
                    .iter()
                    .find(|e| e.name == n)
                    .or_else(|| builtin.entry(n))
            };
            let samples = param_samples(seed, DEFAULT_EXTRA_PARAM_SAMPLES);
            let r = check_witness(&lookup, &w, &samples)?;
            let claim = match w.expect {
                DegenerationStatus::Pass => {
                    "the parametrized basis has a regular limit at t = 0 equal to the target"
                }
                DegenerationStatus::PoleAtZero => "some structure constant has a pole at t = 0",
                DegenerationStatus::TargetMismatch => "the limit at t = 0 differs from the target",
            };
            let mut rec = record(
                &format!("degeneration/{}", w.name),
                claim,
                pass_if(r.status == w.expect),
            )
            .detail(format!("status: {:?} (expected {:?})", r.status, w.expect));
            if let Some(n) = &w.note {
                rec = rec.detail(format!("note: {n}"));
            }
            if let Ok(d) = w.witness.determinant() {
                rec = rec.detail(format!("det = {d}"));
            }
            rec = rec.details(r.diagnostics.iter().cloned());
            rec = rec.details(
                r.constants
                    .iter()
                    .map(|c| format!("structure constant {c}")),
            );
            let cfg = Config {
                seed,
                ..Config::default()
            };
            emit(&Report::new(echo, &cfg, vec![rec]), format)
        }
        Command::VerifyPaper {
            seed,
            samples,
            aut_samples,
            param_samples,
            only,
            format,
        } => {
            let cfg = Config {
                seed,
                samples,
                aut_samples,
                extra_param_samples: param_samples,
            };
            let only: Vec<&str> = only.iter().map(String::as_str).collect();
            let records = run_checks(builtin_catalog(), &cfg, &only);
            emit(&Report::new(echo, &cfg, records), format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_default_matches_the_library() {
        assert_eq!(
            parse_seed("0xC0FFEE"),
            Ok(ncj::exactmath::sample::DEFAULT_SEED)
        );
        assert_eq!(parse_seed("42"), Ok(42));
        assert!(parse_seed("0xZZ").is_err());
    }
}
