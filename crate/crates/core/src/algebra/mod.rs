//! Finite-dimensional algebras given by structure constants.

mod fingerprint;
mod identity;
mod structure;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{Field, GaussianRational, Matrix};

pub use fingerprint::{discriminator, discriminators, fingerprint, Discriminator, Fingerprint};
pub(crate) use identity::cocycle_conditions;
pub use identity::{
    check_flexible, check_jordan_linearized, check_ncj, evaluate_identity, first_violation,
    identities, identity_by_name, Flexible, Identity, Jordan, Monomial, Term,
};
pub use structure::{
    annihilator, annihilator_modulo, basis_change, derivation_dim, derivations,
    generated_subalgebra, nilpotency_index, power_chain, symmetric_annihilator,
    verify_isomorphism_witness,
};

/// Algebra over ℚ(i) with constants `c_{ij}^k`: `e_i·e_j = Σ_k c_{ij}^k e_k`.
///
/// The scalar field is a type parameter so that the same code handles
/// algebras over ℚ(i)(t), which is how degeneration witnesses are evaluated.
/// Indices are 0-based internally; names like `e1` are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra<F: Field = GaussianRational> {
    dim: usize,
    constants: Vec<F>,
    name: Option<String>,
}

impl<F: Field> Algebra<F> {
    /// The algebra with zero multiplication.
    pub fn zero(dim: usize) -> Self {
        Algebra {
            dim,
            constants: vec![F::zero(); dim * dim * dim],
            name: None,
        }
    }

    /// Builds an algebra from 0-based `(i, j, k, c)` entries; later entries
    /// for the same triple are added to earlier ones.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let mut a = Self::zero(dim);
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: idx + 1,
                        dim,
                        line: 0,
                    });
                }
            }
            let v = a.constant(i, j, k).add(&c);
            a.set_constant(i, j, k, v);
        }
        Ok(a)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[self.index(i, j, k)]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: F) {
        let idx = self.index(i, j, k);
        self.constants[idx] = v;
    }

    /// Coordinates of `e_i·e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F] {
        let start = self.index(i, j, 0);
        &self.constants[start..start + self.dim]
    }

    /// All constants as a flat slice ordered by `(i, j, k)`.
    pub fn constants(&self) -> &[F] {
        &self.constants
    }

    pub fn is_zero_product(&self) -> bool {
        self.constants.iter().all(Field::is_zero)
    }

    /// Nonzero products `(i, j, e_i·e_j)`, ordered by `(i, j)`.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, &[F])> + '_ {
        (0..self.dim * self.dim).filter_map(move |ij| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            let p = self.basis_product(i, j);
            (!p.iter().all(Field::is_zero)).then_some((i, j, p))
        })
    }

    /// Bilinear product of coordinate vectors.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        Ok(self.mul(x, y))
    }

    /// [`Algebra::multiply`] for vectors already known to have length `dim`.
    pub(crate) fn mul(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.mul(yj);
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !c.is_zero() {
                        *o = o.add(&s.mul(c));
                    }
                }
            }
        }
        out
    }

    pub fn unit_vector(&self, k: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim];
        v[k] = F::one();
        v
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> Algebra<G> {
        Algebra {
            dim: self.dim,
            constants: self.constants.iter().map(f).collect(),
            name: self.name.clone(),
        }
    }

    /// `self ⊕ ℂ^extra` with the new basis vectors annihilating everything.
    pub fn direct_sum_zero(&self, extra: usize) -> Self {
        let n = self.dim;
        let mut out = Self::zero(n + extra);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.set_constant(i, j, k, self.constant(i, j, k).clone());
                }
            }
        }
        out.name = self.name.clone();
        out
    }

    /// Restriction to the first `m` basis vectors, dropping all components
    /// along the rest. This is the quotient by `span{e_{m+1}, …, e_n}` when
    /// that span is an ideal.
    pub fn truncate(&self, m: usize) -> Self {
        let mut out = Self::zero(m);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    out.set_constant(i, j, k, self.constant(i, j, k).clone());
                }
            }
        }
        out
    }

    /// Left multiplication by `e_i` as a matrix acting on row vectors:
    /// `y·L = e_i·y`.
    pub fn left_multiplication(&self, i: usize) -> Matrix<F> {
        Matrix::from_fn(self.dim, self.dim, |j, k| self.constant(i, j, k).clone())
    }
}

impl<F: Field> fmt::Display for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            write!(f, "{name}: ")?;
        }
        let mut first = true;
        for (i, j, p) in self.nonzero_products() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "e{}e{} = {}", i + 1, j + 1, render_vector(p, "e"))?;
        }
        if first {
            write!(f, "zero product, dim {}", self.dim)?;
        }
        Ok(())
    }
}

/// Renders coordinates as `2*e1 - i*e3`, or `0` for the zero vector.
pub fn render_vector<F: Field>(v: &[F], symbol: &str) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let needs_paren =
            body.contains(['+', '-']) || (body.contains('/') && body.contains(['t', 'i']));
        match body.as_str() {
            "1" => {}
            _ if needs_paren => out.push_str(&format!("({body})*")),
            _ => out.push_str(&format!("{body}*")),
        }
        out.push_str(&format!("{symbol}{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    fn j3_01() -> Algebra {
        Algebra::from_entries(
            3,
            [
                (0, 0, 1, G::one()),
                (0, 1, 2, G::one()),
                (1, 0, 2, G::one()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn multiplication_is_bilinear() {
        let a = j3_01();
        let x = vec![G::one(), G::one(), G::zero()];
        let e1 = a.unit_vector(0);
        assert_eq!(
            a.multiply(&x, &e1).unwrap(),
            vec![G::zero(), G::one(), G::one()]
        );
        assert_eq!(
            a.multiply(&vec![G::zero(); 3], &x).unwrap(),
            vec![G::zero(); 3]
        );
        assert!(matches!(
            a.multiply(&[G::one()], &x),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 1
            })
        ));
    }

    #[test]
    fn render_vectors() {
        let v = vec![
            G::from_int(2),
            G::zero(),
            G::i().neg(),
            G::one().add(&G::i()),
        ];
        assert_eq!(render_vector(&v, "e"), "2*e1 - i*e3 + (1+i)*e4");
        assert_eq!(render_vector(&[G::zero()], "e"), "0");
        assert_eq!(render_vector(&[G::from_int(-1)], "e"), "-e1");
    }

    #[test]
    fn direct_sum_and_truncate() {
        let a = j3_01();
        let b = a.direct_sum_zero(1);
        assert_eq!(b.dim(), 4);
        assert_eq!(b.truncate(3), a);
    }
}
