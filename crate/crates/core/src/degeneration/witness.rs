use serde::Serialize;

use crate::algebra::{basis_change, Algebra};
use crate::error::{Error, Result};
use crate::exactmath::{Field, GaussianRational as G, Matrix, RatFunc};
use crate::expr::Expr;

/// A parametrized basis `E_i^t = Σ_l rows[i][l] e_l` of the source, and
/// optionally a parametrized index `param = f(t)` when the source is a
/// family.
#[derive(Clone, Debug)]
pub struct DegenerationWitness {
    pub name: String,
    pub source: String,
    pub target: String,
    pub index: Option<(String, Expr)>,
    pub rows: Matrix<RatFunc>,
}

impl DegenerationWitness {
    pub fn identity(source: &str, dim: usize) -> Self {
        DegenerationWitness {
            name: format!("{source} -> {source}"),
            source: source.to_string(),
            target: source.to_string(),
            index: None,
            rows: Matrix::identity(dim),
        }
    }

    /// The value of the parametrized index as a function of `t`.
    pub fn index_function(&self) -> Result<Option<(String, RatFunc)>> {
        let Some((param, e)) = &self.index else {
            return Ok(None);
        };
        let t = RatFunc::var();
        let f = e.eval(&|name: &str| (name == "t").then(|| t.clone()))?;
        Ok(Some((param.clone(), f)))
    }

    /// `det` of the basis matrix as a rational function in `t`.
    pub fn determinant(&self) -> Result<RatFunc> {
        self.rows.determinant()
    }
}

/// Structure constants of `source` in the basis `E_i^t`.
pub fn transformed_constants(
    source: &Algebra<RatFunc>,
    rows: &Matrix<RatFunc>,
) -> Result<Algebra<RatFunc>> {
    basis_change(source, rows).map_err(|e| match e {
        Error::SingularMatrix => Error::SingularBasisMatrix,
        other => other,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegenerationStatus {
    Pass,
    PoleAtZero,
    TargetMismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegenerationReport {
    pub status: DegenerationStatus,
    /// One line per offending constant, e.g. `c13^4(t) = 1/t`.
    pub diagnostics: Vec<String>,
    /// The nonzero transformed constants, rendered.
    pub constants: Vec<String>,
}

fn label(i: usize, j: usize, k: usize) -> String {
    format!("c{}{}^{}", i + 1, j + 1, k + 1)
}

/// Every `c_{ij}^k(t)` must be regular at `t = 0` with value equal to the
/// target constant.
pub fn verify_degeneration(
    source: &Algebra<RatFunc>,
    target: &Algebra<G>,
    rows: &Matrix<RatFunc>,
) -> Result<DegenerationReport> {
    if source.dim() != target.dim() {
        return Err(Error::DimensionMismatch {
            expected: source.dim(),
            found: target.dim(),
        });
    }
    let moved = transformed_constants(source, rows)?;
    let n = moved.dim();
    let mut poles = Vec::new();
    let mut mismatches = Vec::new();
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = moved.constant(i, j, k);
                if !c.is_zero() {
                    constants.push(format!("{}(t) = {c}", label(i, j, k)));
                }
                match c.evaluate_at(&G::zero()) {
                    Err(_) => {
                        poles.push(format!("{}(t) = {c} has a pole at t = 0", label(i, j, k)))
                    }
                    Ok(v) if &v != target.constant(i, j, k) => mismatches.push(format!(
                        "{}(0) = {v}, target has {}",
                        label(i, j, k),
                        target.constant(i, j, k)
                    )),
                    Ok(_) => {}
                }
            }
        }
    }
    let (status, diagnostics) = if !poles.is_empty() {
        (DegenerationStatus::PoleAtZero, poles)
    } else if !mismatches.is_empty() {
        (DegenerationStatus::TargetMismatch, mismatches)
    } else {
        (DegenerationStatus::Pass, Vec::new())
    };
    Ok(DegenerationReport {
        status,
        diagnostics,
        constants,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{q, Polynomial};

    fn lift(a: &Algebra<G>) -> Algebra<RatFunc> {
        a.map_scalars(|c| RatFunc::constant(c.clone()))
    }

    fn t_pow(k: i32) -> RatFunc {
        let t = RatFunc::var();
        if k >= 0 {
            t.pow(k as u32)
        } else {
            t.pow((-k) as u32).inv().unwrap()
        }
    }

    fn diag(powers: &[i32]) -> Matrix<RatFunc> {
        let n = powers.len();
        Matrix::from_fn(n, n, |r, c| {
            if r == c {
                t_pow(powers[r])
            } else {
                RatFunc::zero()
            }
        })
    }

    fn j4_14() -> Algebra<G> {
        // e1e1 = e4, e1e2 = e3, e1e3 = e4, e2e1 = -e3, e3e1 = -e4
        let one = G::one();
        let m = one.neg();
        Algebra::from_entries(
            4,
            [
                (0, 0, 3, one.clone()),
                (0, 1, 2, one.clone()),
                (0, 2, 3, one),
                (1, 0, 2, m.clone()),
                (2, 0, 3, m),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_witness_is_trivial() {
        let a = j4_14();
        let r = verify_degeneration(&lift(&a), &a, &Matrix::identity(4)).unwrap();
        assert_eq!(r.status, DegenerationStatus::Pass);
    }

    #[test]
    fn scaling_gives_expected_constants() {
        let a = lift(&j4_14());
        let moved = transformed_constants(&a, &diag(&[0, -1, -1, -1])).unwrap();
        assert_eq!(moved.constant(0, 1, 2), &RatFunc::one());
        assert_eq!(moved.constant(0, 0, 3), &RatFunc::var());
        let mut target = j4_14();
        target.set_constant(0, 0, 3, G::zero());
        let r = verify_degeneration(&a, &target, &diag(&[0, -1, -1, -1])).unwrap();
        assert_eq!(r.status, DegenerationStatus::Pass);
        let r = verify_degeneration(&a, &j4_14(), &diag(&[0, -1, -1, -1])).unwrap();
        assert_eq!(r.status, DegenerationStatus::TargetMismatch);
        assert_eq!(
            r.diagnostics,
            vec!["c11^4(0) = 0, target has 1".to_string()]
        );
    }

    #[test]
    fn pole_and_singular_basis() {
        let a = lift(&j4_14());
        let r = verify_degeneration(&a, &j4_14(), &diag(&[0, 0, 0, 1])).unwrap();
        assert_eq!(r.status, DegenerationStatus::PoleAtZero);
        let zero_row = Matrix::from_fn(4, 4, |r, c| {
            if r == c && r < 3 {
                RatFunc::one()
            } else {
                RatFunc::zero()
            }
        });
        assert!(matches!(
            transformed_constants(&a, &zero_row),
            Err(Error::SingularBasisMatrix)
        ));
    }

    #[test]
    fn two_step_scaling() {
        // N2-like 2-step algebra: E_i = t e_i multiplies constants by t.
        let one = G::one();
        let a = Algebra::from_entries(4, [(0, 0, 2, one.clone()), (0, 1, 3, one)]).unwrap();
        let moved = transformed_constants(&lift(&a), &diag(&[1, 1, 1, 1])).unwrap();
        assert_eq!(moved.constant(0, 0, 2), &RatFunc::var());
        assert_eq!(
            RatFunc::from_poly(Polynomial::constant(q(1, 2)))
                .evaluate_at(&G::zero())
                .unwrap(),
            q(1, 2)
        );
    }
}
