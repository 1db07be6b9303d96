//! Exact computations for nilpotent noncommutative Jordan algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactmath`]: Gaussian rationals, rational functions, matrices and
//!   subspaces, all exact.
//! * [`algebra`]: structure constants, identity checks, annihilators, power
//!   chains, derivations and invariants.
//! * [`cohomology`]: cocycles, coboundaries, central extensions and
//!   automorphism-orbit verification.
//! * [`degeneration`]: parametrized-basis witnesses, derivation bounds and
//!   structure predicates.
//! * [`catalog`]: the text format for algebras and witnesses plus the
//!   built-in fixtures.
//! * [`verify`]: named checks, reports and the registry that drives them.

pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod degeneration;
pub mod error;
pub mod exactmath;
pub mod expr;
pub mod verify;

pub use error::{Error, Result};
