//! Sampling checks for automorphism parametrizations and for the case
//! analyses that reduce a cocycle to a canonical orbit representative.
//!
//! A case is data: how to draw the coordinates `α_k` of `θ = Σ α_k ∇_k`,
//! which branch conditions hold, and how the automorphism parameters are
//! chosen. Each sample builds `φ`, checks it is an automorphism, moves `θ`
//! and compares the class with the claimed representative up to scalars.

use serde::Serialize;

use super::{
    class_coordinates, coboundary_space, cocycle_space, same_class, verify_automorphism,
    BilinearForm,
};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactmath::sample::Sampler;
use crate::exactmath::{Field, GaussianRational as G, Matrix};
use crate::expr::Expr;

/// A parametrized family of automorphisms. Column `j` of the matrix is
/// `φ(e_j)`, matching how such matrices are usually printed.
#[derive(Clone, Debug)]
pub struct AutFamily {
    pub name: String,
    pub params: Vec<String>,
    pub matrix: Vec<Vec<Expr>>,
}

impl AutFamily {
    pub fn instantiate(&self, lookup: &dyn Fn(&str) -> Option<G>) -> Result<Matrix<G>> {
        let rows = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|e| e.eval(lookup)).collect::<Result<Vec<G>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }
}

#[derive(Clone, Debug)]
pub enum Draw {
    Nonzero,
    Zero,
    /// Any value, zero included.
    Any,
    Formula(Expr),
}

#[derive(Clone, Debug)]
pub struct Condition {
    pub lhs: Expr,
    pub rhs: Expr,
    pub equal: bool,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.lhs,
            if self.equal { "=" } else { "!=" },
            self.rhs
        )
    }
}

/// Whether a parameter choice is printed in the source case analysis or
/// had to be supplied to pin down parameters it leaves open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Printed,
    Completion,
}

#[derive(Clone, Debug)]
pub struct Assignment {
    pub var: String,
    pub value: Expr,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub enum OrbitClaim {
    /// The moved class is proportional to `Σ c_k ∇_k` modulo `B²`.
    Representative(Vec<Expr>),
    /// The moved class has a nonzero coordinate at this (0-based) label.
    NonzeroCoordinate(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Expectation {
    Holds,
    /// The case as written is expected to produce counterexamples (negative
    /// controls and cases reproduced verbatim despite a known slip).
    Counterexample,
}

#[derive(Clone, Debug)]
pub struct OrbitCaseFixture {
    pub name: String,
    pub base: Algebra,
    /// The `∇_k` forms, in label order.
    pub labels: Vec<BilinearForm>,
    pub family: AutFamily,
    pub draws: Vec<(String, Draw)>,
    pub conditions: Vec<Condition>,
    pub substitution: Vec<Assignment>,
    pub claim: OrbitClaim,
    pub expect: Expectation,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub name: String,
    pub passed: usize,
    pub requested: usize,
    /// Draws discarded because a condition failed, a denominator or square
    /// root was undefined, or `φ` was singular.
    pub degenerate: usize,
    pub counterexamples: Vec<String>,
    pub expect: Expectation,
}

impl OrbitReport {
    /// True when the observed behaviour matches the expectation.
    pub fn ok(&self) -> bool {
        match self.expect {
            Expectation::Holds => self.counterexamples.is_empty() && self.passed == self.requested,
            Expectation::Counterexample => !self.counterexamples.is_empty(),
        }
    }
}

const MAX_COUNTEREXAMPLES: usize = 3;
const ATTEMPTS_PER_SAMPLE: usize = 40;

type Env = Vec<(String, G)>;

fn lookup(env: &Env) -> impl Fn(&str) -> Option<G> + '_ {
    move |name| {
        env.iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
    }
}

fn render_env(env: &Env) -> String {
    env.iter()
        .map(|(n, v)| format!("{n}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

enum Outcome {
    Pass,
    Degenerate,
    Counterexample(String),
}

/// Runs `samples` successful draws of the case (up to a bounded number of
/// attempts) and reports counterexamples verbatim.
pub fn verify_orbit_reduction(
    fixture: &OrbitCaseFixture,
    samples: usize,
    seed: u64,
) -> Result<OrbitReport> {
    let z2 = cocycle_space(&fixture.base);
    for label in &fixture.labels {
        if !z2.contains_vector(label.as_vec()) {
            return Err(Error::NotACocycle(label.to_string()));
        }
    }
    let b2 = coboundary_space(&fixture.base);
    let mut sampler = Sampler::for_label(seed, &fixture.name);
    let mut report = OrbitReport {
        name: fixture.name.clone(),
        passed: 0,
        requested: samples,
        degenerate: 0,
        counterexamples: Vec::new(),
        expect: fixture.expect,
    };
    let mut attempts = 0;
    while report.passed + report.counterexamples.len() < samples
        && attempts < samples * ATTEMPTS_PER_SAMPLE
    {
        attempts += 1;
        match run_sample(fixture, &b2, &mut sampler) {
            Outcome::Pass => report.passed += 1,
            Outcome::Degenerate => report.degenerate += 1,
            Outcome::Counterexample(msg) => {
                report.counterexamples.push(msg);
                if report.counterexamples.len() >= MAX_COUNTEREXAMPLES {
                    break;
                }
            }
        }
    }
    Ok(report)
}

fn run_sample(
    fx: &OrbitCaseFixture,
    b2: &crate::exactmath::Subspace<G>,
    sampler: &mut Sampler,
) -> Outcome {
    let mut env: Env = Vec::new();
    for (var, draw) in &fx.draws {
        let v = match draw {
            Draw::Nonzero => sampler.nonzero(),
            Draw::Zero => G::zero(),
            Draw::Any => sampler.any(),
            Draw::Formula(e) => match e.eval(&lookup(&env)) {
                Ok(v) => v,
                Err(_) => return Outcome::Degenerate,
            },
        };
        env.push((var.clone(), v));
    }
    for k in 1..=fx.labels.len() {
        let name = format!("a{k}");
        if lookup(&env)(&name).is_none() {
            env.push((name, sampler.any()));
        }
    }
    for c in &fx.conditions {
        let holds = match (c.lhs.eval(&lookup(&env)), c.rhs.eval(&lookup(&env))) {
            (Ok(l), Ok(r)) => (l == r) == c.equal,
            _ => false,
        };
        if !holds {
            return Outcome::Degenerate;
        }
    }
    for p in &fx.family.params {
        if !fx.substitution.iter().any(|a| &a.var == p) {
            env.push((p.clone(), sampler.nonzero()));
        }
    }
    for a in &fx.substitution {
        let value = a.value.eval(&lookup(&env));
        match value {
            Ok(v) => env.push((a.var.clone(), v)),
            Err(_) => return Outcome::Degenerate,
        }
    }
    let phi = match fx.family.instantiate(&lookup(&env)) {
        Ok(m) if m.is_invertible() => m,
        _ => return Outcome::Degenerate,
    };
    if !verify_automorphism(&fx.base, &phi) {
        return Outcome::Counterexample(format!("not an automorphism at {}", render_env(&env)));
    }
    let n = fx.base.dim();
    let alphas: Vec<G> = (1..=fx.labels.len())
        .map(|k| lookup(&env)(&format!("a{k}")).expect("drawn above"))
        .collect();
    let theta = BilinearForm::combination(n, &fx.labels, &alphas);
    let moved = super::act(&phi, &theta);
    let good = match &fx.claim {
        OrbitClaim::Representative(coeffs) => {
            let cs = match coeffs
                .iter()
                .map(|e| e.eval(&lookup(&env)))
                .collect::<Result<Vec<G>>>()
            {
                Ok(cs) => cs,
                Err(_) => return Outcome::Degenerate,
            };
            let rep = BilinearForm::combination(n, &fx.labels, &cs);
            same_class(b2, &moved, &rep, true)
        }
        OrbitClaim::NonzeroCoordinate(k) => class_coordinates(b2, &fx.labels, &moved)
            .is_some_and(|c| c.get(*k).is_some_and(|v| !v.is_zero())),
    };
    if good {
        Outcome::Pass
    } else {
        let coords = class_coordinates(b2, &fx.labels, &moved)
            .map(|c| {
                c.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_else(|| "outside the labelled span".into());
        Outcome::Counterexample(format!("{} gives class ({coords})", render_env(&env)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AutReport {
    pub name: String,
    pub checked: usize,
    pub singular: usize,
    pub failures: Vec<String>,
}

/// Checks that random invertible members of the family are automorphisms.
pub fn verify_aut_family(
    base: &Algebra,
    family: &AutFamily,
    samples: usize,
    seed: u64,
) -> Result<AutReport> {
    let mut sampler = Sampler::for_label(seed, &family.name);
    let mut report = AutReport {
        name: family.name.clone(),
        checked: 0,
        singular: 0,
        failures: Vec::new(),
    };
    let mut attempts = 0;
    while report.checked < samples && attempts < samples * ATTEMPTS_PER_SAMPLE {
        attempts += 1;
        let env: Env = family
            .params
            .iter()
            .map(|p| (p.clone(), sampler.any()))
            .collect();
        let m = family.instantiate(&lookup(&env))?;
        if !m.is_invertible() {
            report.singular += 1;
            continue;
        }
        report.checked += 1;
        if !verify_automorphism(base, &m) && report.failures.len() < MAX_COUNTEREXAMPLES {
            report.failures.push(render_env(&env));
        }
    }
    Ok(report)
}
