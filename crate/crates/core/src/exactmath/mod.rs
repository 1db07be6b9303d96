//! Exact scalar fields (ℚ, ℚ(i), ℚ(i)(t)) and dense linear algebra over them.
//!
//! Nothing in this crate uses floating point; every routine below is exact.

mod field;
mod gaussian;
mod matrix;
mod poly;
mod ratfunc;
pub mod sample;
mod subspace;

pub use field::{rational_sqrt, Field, Rational};
pub use gaussian::GaussianRational;
pub use matrix::{Echelon, Matrix};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use subspace::Subspace;

/// Rational functions in `t` over the Gaussian rationals.
pub type RatFunc = RationalFunction<GaussianRational>;

/// Shorthand for a real Gaussian rational `num/den`.
pub fn q(num: i64, den: i64) -> GaussianRational {
    GaussianRational::frac(num, den)
}
