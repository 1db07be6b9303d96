use serde::Serialize;

use super::structure::{
    annihilator, annihilator_modulo, derivation_dim, power_chain, symmetric_annihilator,
};
use super::Algebra;
use crate::exactmath::{Field, GaussianRational, Matrix, Subspace};

/// Basis-independent counts used to tell algebras apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dim_ann: usize,
    pub dim_square: usize,
    pub dim_cube: usize,
    /// `None` when the algebra is not nilpotent.
    pub nilpotency_index: Option<usize>,
    pub dim_der: usize,
    /// Rank of `(x, y) ↦ xy + yx`.
    pub sym_rank: usize,
    /// Rank of `(x, y) ↦ xy − yx`.
    pub antisym_rank: usize,
}

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nil = self
            .nilpotency_index
            .map_or_else(|| "-".to_string(), |k| k.to_string());
        write!(
            f,
            "({}, {}, {}, {}, {}, {}, {})",
            self.dim_ann,
            self.dim_square,
            self.dim_cube,
            nil,
            self.dim_der,
            self.sym_rank,
            self.antisym_rank
        )
    }
}

fn product_rank<F: Field>(a: &Algebra<F>, sign: &F) -> usize {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let row = a
                .basis_product(i, j)
                .iter()
                .zip(a.basis_product(j, i))
                .map(|(x, y)| x.add(&sign.mul(y)))
                .collect();
            rows.push(row);
        }
    }
    Matrix::from_rows_with_width(rows, n)
        .expect("rows have length n")
        .rank()
}

pub fn fingerprint<F: Field>(a: &Algebra<F>) -> Fingerprint {
    let chain = power_chain(a);
    // Past its end the chain is constant (zero, or a repeated term).
    let dim_at = |k: usize| chain.get(k - 1).or(chain.last()).map_or(0, |s| s.dim());
    let nilpotency_index = chain.last().filter(|s| s.is_zero()).map(|_| chain.len());
    Fingerprint {
        dim_ann: annihilator(a).dim(),
        dim_square: dim_at(2),
        dim_cube: dim_at(3),
        nilpotency_index,
        dim_der: derivation_dim(a),
        sym_rank: product_rank(a, &F::one()),
        antisym_rank: product_rank(a, &F::one().neg()),
    }
}

/// A basis-independent count outside the fingerprint, used to separate
/// algebras whose fingerprints agree.
pub struct Discriminator {
    pub name: &'static str,
    pub description: &'static str,
    pub eval: fn(&Algebra<GaussianRational>) -> usize,
}

fn ann_mod_cube(a: &Algebra<GaussianRational>) -> usize {
    let chain = power_chain(a);
    let cube = chain
        .get(2)
        .or(chain.last())
        .cloned()
        .unwrap_or_else(|| Subspace::zero(a.dim()));
    annihilator_modulo(a, &cube).expect("same ambient").dim()
}

fn sym_ann(a: &Algebra<GaussianRational>) -> usize {
    symmetric_annihilator(a).dim()
}

static DISCRIMINATORS: [Discriminator; 2] = [
    Discriminator {
        name: "ann_mod_cube",
        description: "dim {x : xA + Ax ⊆ A³}",
        eval: ann_mod_cube,
    },
    Discriminator {
        name: "sym_ann",
        description: "dim {x : xy + yx = 0 for all y}",
        eval: sym_ann,
    },
];

pub fn discriminators() -> &'static [Discriminator] {
    &DISCRIMINATORS
}

pub fn discriminator(name: &str) -> Option<&'static Discriminator> {
    DISCRIMINATORS.iter().find(|d| d.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::GaussianRational as G;

    #[test]
    fn zero_algebra() {
        let fp = fingerprint(&Algebra::<G>::zero(4));
        assert_eq!(fp.to_string(), "(4, 0, 0, 2, 16, 0, 0)");
    }

    #[test]
    fn antisymmetric_product_has_zero_sym_rank() {
        let one = G::one();
        let m = one.neg();
        let a = Algebra::from_entries(
            4,
            [
                (0, 1, 2, one.clone()),
                (1, 0, 2, m.clone()),
                (0, 2, 3, one),
                (2, 0, 3, m),
            ],
        )
        .unwrap();
        let fp = fingerprint(&a);
        assert_eq!(fp.sym_rank, 0);
        assert_eq!(fp.antisym_rank, 2);
    }
}
