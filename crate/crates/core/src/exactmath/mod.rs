//! Exact rational scalars and dense linear algebra.

mod matrix;
mod rational;
mod subspace;
pub mod vector;

pub use matrix::{Matrix, Rref};
pub use rational::{ParseRationalError, Rational};
pub use subspace::Subspace;

/// Shorthand for `Rational::from_integer`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Shorthand for `Rational::new(n, d)`; panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("zero denominator")
}
