//! Rational reconstruction from high-precision floating approximations via
//! continued fractions.
//!
//! Theorem 3 of the reconstruction method yields numerical values for
//! quantities that are provably rational; this module recovers them. The
//! caller supplies an explicit height bound derived from its working
//! precision; there is no hidden epsilon.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;
use crate::numeric::Ctx;

/// Reconstruct the unique rational p/q with |p|, q <= height_bound and
/// |x - p/q| < 1/(2 q * height_bound), via continued-fraction convergents of
/// the exact binary value of `x`.
///
/// Any two distinct rationals of height <= H differ by at least 1/H^2, so at
/// most one can satisfy the tolerance; when the caller knows the true value
/// is rational of height <= H and supplies x to at least
/// 2 log2(height_bound) + guard bits, that unique rational is returned.
///
/// Errors with `NoRationalFound` when no convergent within the height bound
/// meets the tolerance, which signals insufficient working precision.
pub fn rationalize(x: &BigRational, height_bound: &BigInt) -> Result<BigRational, ExactError> {
    assert!(height_bound > &BigInt::zero());
    let err = || ExactError::NoRationalFound { height_bound: height_bound.clone() };

    // convergents p_k/q_k of the continued fraction of x
    let (mut p_prev, mut p) = (BigInt::one(), x.floor().to_integer());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    let mut frac = x - BigRational::from(p.clone());

    loop {
        if p.abs() <= *height_bound && q.abs() <= *height_bound {
            let cand = BigRational::new(p.clone(), q.clone());
            // |x - p/q| < 1 / (2 q H)
            let tol = BigRational::new(BigInt::one(), BigInt::from(2) * &q * height_bound);
            if (x - &cand).abs() < tol {
                return Ok(cand);
            }
        } else {
            // convergent heights are increasing; nothing smaller will appear
            return Err(err());
        }
        if frac.is_zero() {
            return Err(err());
        }
        let inv = frac.recip();
        let a = inv.floor().to_integer();
        frac = inv - BigRational::from(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
}

/// `rationalize` applied to the exact value of a big float.
pub fn rationalize_bigfloat(
    x: &BigFloat,
    height_bound: &BigInt,
) -> Result<BigRational, ExactError> {
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    rationalize(&Ctx::to_rational(x), height_bound)
}
