//! Exact arithmetic substrate: arbitrary-precision integer and rational
//! matrices, normal forms, polynomials, and rational reconstruction from
//! floating approximations.
//!
//! Everything here is pure and exact; no fixed-width arithmetic is used for
//! values that can grow (Hecke matrices and discriminant formulas overflow
//! 64-bit integers already for moderate N).

mod matrix;
mod poly;
mod rationalize;
mod symplectic;

pub use matrix::{IntMat, RatMat};
pub use poly::RatPoly;
pub use rationalize::{rationalize, rationalize_bigfloat};
pub use symplectic::{standard_j, symplectic_reduce};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Arbitrary-precision rational; always in lowest terms with positive
/// denominator (maintained by `num_rational`).
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

#[derive(Debug, Error)]
pub enum ExactError {
    /// Pairing is not alternating (e^T != -e).
    #[error("matrix is not alternating")]
    NotAlternating,
    /// Alternating form does not have elementary divisors (1, .., 1).
    #[error("pairing is not principal: elementary divisors {0:?}")]
    NotPrincipal(Vec<BigInt>),
    /// No rational of the requested height reproduces the input to the
    /// required tolerance; working precision must be raised.
    #[error("no rational with height <= {height_bound} approximates the input")]
    NoRationalFound { height_bound: BigInt },
    /// Matrix operation on incompatible or singular input.
    #[error("singular matrix")]
    Singular,
}
