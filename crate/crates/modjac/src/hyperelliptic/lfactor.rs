//! Local L-factors of degree 4: from the curve by point counting over F_p
//! and F_{p^2}, and from the Hecke eigenvalues via the Eichler-Shimura
//! congruence. Agreement of the two is the strongest arithmetic check on a
//! reconstructed equation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use super::count::{count_points, count_points_p2, CountError};
use crate::exact::RatPoly;
use crate::modsym::decompose::NewformClass;
use crate::modsym::space::ManinSymbolSpace;

#[derive(Debug, Error)]
pub enum LFactorError {
    #[error("p = {p} divides the level")]
    BadPrime { p: i64 },
    #[error(transparent)]
    Count(#[from] CountError),
}

/// x^4 - s1 x^3 + s2 x^2 - p s1 x + p^2, stored as (p, s1, s2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFactor {
    pub p: i64,
    pub s1: i64,
    pub s2: i64,
}

impl LocalFactor {
    /// Coefficients [c0, c1, c2, c3, c4] of the degree-4 polynomial.
    pub fn coefficients(&self) -> [i64; 5] {
        [self.p * self.p, -self.p * self.s1, self.s2, -self.s1, 1]
    }

    /// Weil bound |s1| <= 4 sqrt(p) as an exact integer inequality.
    pub fn satisfies_weil_bound(&self) -> bool {
        self.s1 * self.s1 <= 16 * self.p
    }
}

/// Local factor of Jac C_F at a good odd prime, from point counts:
/// s1 = p + 1 - #C(F_p), s2 = (#C(F_{p^2}) - p^2 - 1 + s1^2) / 2.
pub fn curve_local_factor(f: &RatPoly, p: i64) -> Result<LocalFactor, LFactorError> {
    let n1 = count_points(f, p)?;
    let n2 = count_points_p2(f, p)?;
    let s1 = p + 1 - n1;
    let num = n2 - p * p - 1 + s1 * s1;
    debug_assert!(num % 2 == 0, "Frobenius symmetry forces an even numerator");
    Ok(LocalFactor { p, s1, s2: num / 2 })
}

/// Local factor of A_f at p (not dividing N) from the Hecke eigenvalue:
/// (x^2 - a_p x + p)(x^2 - sigma(a_p) x + p) has s1 = Tr(a_p),
/// s2 = Nm(a_p) + 2p.
pub fn frobenius_local_factor(
    space: &ManinSymbolSpace,
    class: &NewformClass,
    p: i64,
) -> Result<LocalFactor, LFactorError> {
    if space.level % p == 0 {
        return Err(LFactorError::BadPrime { p });
    }
    let tr = class.eigenvalue_trace(space, p);
    let nm = class.eigenvalue_norm(space, p);
    let to_int = |r: &BigRational| -> i64 {
        assert!(r.is_integer(), "trace and norm of a_p are rational integers");
        r.numer().to_i64().expect("small eigenvalue data")
    };
    Ok(LocalFactor { p, s1: to_int(&tr), s2: to_int(&nm) + 2 * p })
}

/// Trace of a_p as an i64 (for point-count comparisons).
pub fn eigenvalue_trace_i64(space: &ManinSymbolSpace, class: &NewformClass, p: i64) -> i64 {
    let tr = class.eigenvalue_trace(space, p);
    assert!(tr.is_integer());
    tr.numer().to_i64().expect("small trace")
}

/// Check curve vs Hecke local factors for all good odd primes p < bound.
/// Returns the list of (p, matched) plus the first failing prime if any.
pub fn eichler_shimura_check(
    space: &ManinSymbolSpace,
    class: &NewformClass,
    f: &RatPoly,
    bound: i64,
) -> Result<Vec<(i64, bool)>, LFactorError> {
    let mut out = Vec::new();
    let mut p = 2i64;
    while p < bound {
        p = crate::modsym::decompose::next_prime(p);
        if p >= bound {
            break;
        }
        if space.level % p == 0 || !super::count::has_good_reduction(f, p) {
            continue;
        }
        let a = curve_local_factor(f, p)?;
        let b = frobenius_local_factor(space, class, p)?;
        out.push((p, a == b));
    }
    Ok(out)
}

impl std::fmt::Display for LocalFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "x^4 - ({})x^3 + ({})x^2 - ({})x + {}",
            self.s1,
            self.s2,
            self.p * self.s1,
            (self.p as i128) * (self.p as i128)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym::{build_space, decompose::decompose};
    use num_traits::Zero;

    #[test]
    fn zero_eigenvalue_gives_square_factor() {
        // a_p = 0: (x^2 + p)^2 = x^4 + 2p x^2 + p^2; s1 = 0, s2 = 2p
        let s = build_space(63);
        let classes = decompose(&s);
        // a_2 = sqrt 3 has trace 0 and norm -3: s1 = 0, s2 = -3 + 4 = 1
        let lf = frobenius_local_factor(&s, &classes[0], 2).unwrap();
        assert_eq!((lf.s1, lf.s2), (0, 1));
        assert_eq!(lf.coefficients(), [4, 0, 1, 0, 1]);
        let _ = BigRational::zero();
    }

    #[test]
    fn bad_prime_is_rejected() {
        let s = build_space(63);
        let classes = decompose(&s);
        assert!(matches!(
            frobenius_local_factor(&s, &classes[0], 7),
            Err(LFactorError::BadPrime { p: 7 })
        ));
    }

    #[test]
    fn level_63_curve_factors_match_hecke_for_small_primes() {
        // the paper's final integral equation
        let f = RatPoly::from_i64_coeffs(&[81, 0, 0, 162, 0, 0, -3]);
        let s = build_space(63);
        let classes = decompose(&s);
        for p in [5i64, 11, 13, 17, 19, 23] {
            let a = curve_local_factor(&f, p).unwrap();
            let b = frobenius_local_factor(&s, &classes[0], p).unwrap();
            assert_eq!(a, b, "local factor at {p}");
            assert!(a.satisfies_weil_bound());
        }
    }

    #[test]
    fn separating_prime_67_distinguishes_the_twist()
    {
        // #C_{-F}(F_67) differs from #C_F(F_67) and matches p + 1 - Tr a_67
        let s = build_space(63);
        let classes = decompose(&s);
        let f_pos = RatPoly::from_i64_coeffs(&[-81, 0, 0, -162, 0, 0, 3]); // 3x^6-162x^3-81 = -(final)
        let f_neg = RatPoly::from_i64_coeffs(&[81, 0, 0, 162, 0, 0, -3]);
        let tr = eigenvalue_trace_i64(&s, &classes[0], 67);
        let expect = 67 + 1 - tr;
        let na = count_points(&f_pos, 67).unwrap();
        let nb = count_points(&f_neg, 67).unwrap();
        assert_ne!(na, nb, "67 separates the quadratic twists");
        assert!(na == expect || nb == expect);
        assert_eq!(nb, expect, "the paper's sign matches the Hecke count at 67");
    }
}
