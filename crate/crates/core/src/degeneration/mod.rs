//! Degenerations between algebras: parametrized-basis witnesses checked
//! over ℚ(i)(t), closed structure conditions that rule degenerations out,
//! and the derivation-dimension bound.

mod predicate;
mod witness;

use serde::Serialize;

use crate::algebra::{derivation_dim, Algebra};

pub use predicate::{
    chain_readings, predicate_membership, ChainReading, ConstTerm, ConstantCondition, FlagSpan,
    PowerIdeal, PredicateEvaluation, StructurePredicate, SubspaceCondition,
};
pub use witness::{
    transformed_constants, verify_degeneration, DegenerationReport, DegenerationStatus,
    DegenerationWitness,
};

/// Orbit closure dimension of a member of a family with `params`
/// independent parameters: `n² − dim Der + params`.
pub fn orbit_dimension_estimate(a: &Algebra, params: usize) -> usize {
    let n = a.dim();
    n * n - derivation_dim(a) + params
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityViolation {
    pub source: String,
    pub target: String,
    pub der_source: usize,
    pub der_target: usize,
}

/// A proper degeneration `A → B` forces `dim Der A < dim Der B`. Returns the
/// pairs that break this. Pairs with identical constants are skipped.
pub fn check_der_monotonicity<'a>(
    pairs: impl IntoIterator<Item = (&'a str, &'a Algebra, &'a str, &'a Algebra)>,
) -> Vec<MonotonicityViolation> {
    pairs
        .into_iter()
        .filter(|(_, a, _, b)| a.constants() != b.constants())
        .filter_map(|(sn, a, tn, b)| {
            let (da, db) = (derivation_dim(a), derivation_dim(b));
            (da >= db).then(|| MonotonicityViolation {
                source: sn.to_string(),
                target: tn.to_string(),
                der_source: da,
                der_target: db,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{Field, GaussianRational as G};

    #[test]
    fn monotonicity_against_zero_algebra() {
        let a = Algebra::from_entries(2, [(0, 0, 1, G::one())]).unwrap();
        let z = Algebra::zero(2);
        assert!(check_der_monotonicity([("a", &a, "0", &z)]).is_empty());
        let bad = check_der_monotonicity([("0", &z, "a", &a)]);
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].der_source, bad[0].der_target), (4, 2));
        assert!(check_der_monotonicity([("a", &a, "a", &a)]).is_empty());
        assert_eq!(orbit_dimension_estimate(&a, 0), 2);
        assert_eq!(orbit_dimension_estimate(&z, 0), 0);
    }
}
