//! Verification toolkit for the reconstructed curves: point counting over
//! small finite fields, local L-factors from both sides of Eichler-Shimura,
//! Igusa invariants computed algebraically and from theta constants, and
//! model comparison up to Q-isomorphism.

pub mod count;
pub mod lfactor;

pub use count::{count_points, count_points_p2, has_good_reduction, is_prime, CountError};
pub use lfactor::{
    curve_local_factor, eichler_shimura_check, frobenius_local_factor, LFactorError, LocalFactor,
};
