//! From the period data (Omega, Z) to a rational hyperelliptic model:
//! Weierstrass roots via theta gradients at the odd 2-torsion points, the
//! monic polynomial through rational reconstruction, the leading coefficient
//! through the discriminant relation, the sign by comparing point counts
//! with Hecke traces, and the integral model.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::{rationalize_bigfloat, RatPoly};
use crate::hyperelliptic::count::{count_points, has_good_reduction};
use crate::modsym::decompose::{next_prime, NewformClass};
use crate::modsym::space::ManinSymbolSpace;
use crate::numeric::{CMat2, CNum, Ctx};
use crate::periods::BigPeriodMatrix;
use crate::theta::{odd_two_torsion, theta_gradient, ThetaError};

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("{0} ratios are numerically infinite; precision failure or bad input")]
    TooManyInfiniteRoots(usize),
    #[error("roots collide within working precision")]
    RootsNotDistinct,
    #[error("coefficient of x^{0} failed rational reconstruction")]
    NoRationalFound(usize),
    #[error("imaginary part of a reconstructed coefficient exceeds the error budget")]
    NotReal,
    #[error("a^10 has no rational tenth root within the height bound")]
    NotTenthPower,
    #[error("no prime below {bound} separates the two signs")]
    SignAmbiguous { bound: i64 },
    #[error("neither sign matches the Hecke point counts at p = {p}")]
    InconsistentCounts { p: i64 },
    #[error(transparent)]
    Theta(#[from] ThetaError),
}

/// The Weierstrass data extracted from the six odd 2-torsion points.
#[derive(Debug, Clone)]
pub struct WeierstrassSet {
    /// finite roots alpha_k, in the order of the odd points (the infinite
    /// one omitted)
    pub roots: Vec<CNum>,
    /// 5 or 6
    pub degree: usize,
    /// the row vectors grad theta(w_j) Omega_1^{-1} for all six odd points
    pub h_vectors: Vec<[CNum; 2]>,
    /// index (0-based, in w-order) of the discarded infinite ratio, if any
    pub infinite_index: Option<usize>,
}

/// Roots of F as ratios of the gradient data of Theorem 3(a):
/// (h1, h2) = grad theta(w_k) Omega_1^{-1} kills (1, alpha_k), so
/// alpha_k = -h1/h2; a ratio with |h2| below the infinity threshold is the
/// root at infinity (degree 5), and at most one such ratio may occur.
pub fn weierstrass_roots(
    ctx: &Ctx,
    omega: &BigPeriodMatrix,
    z: &CMat2,
) -> Result<WeierstrassSet, ReconstructError> {
    let target = -(ctx.bits() as i64) + 8;
    let omega1_inv = omega.omega1.inverse(ctx);
    let points = odd_two_torsion(ctx, z);
    let mut h_vectors = Vec::with_capacity(6);
    for w in &points {
        let (grad, _err) = theta_gradient(ctx, w, z, target)?;
        let h = omega1_inv.vec_mul(&grad, ctx);
        h_vectors.push(h);
    }
    // infinity threshold: |h2| < 2^(-bits/2) * ||h||
    let tol = ctx.pow2(-(ctx.bits() as i64) / 2);
    let mut roots = Vec::new();
    let mut infinite = Vec::new();
    for (k, h) in h_vectors.iter().enumerate() {
        let norm = ctx.add(&h[0].abs(ctx), &h[1].abs(ctx));
        let lim = ctx.mul(&tol, &norm);
        if h[1].abs(ctx).cmp(&lim).is_some_and(|c| c < 0) {
            infinite.push(k);
        } else {
            roots.push(h[0].div(&h[1], ctx).neg());
        }
    }
    if infinite.len() > 1 {
        return Err(ReconstructError::TooManyInfiniteRoots(infinite.len()));
    }
    // distinctness beyond combined error bounds
    let sep = ctx.pow2(-(ctx.bits() as i64) * 3 / 4);
    for i in 0..roots.len() {
        for j in 0..i {
            if roots[i].dist(&roots[j], ctx).cmp(&sep).is_some_and(|c| c < 0) {
                return Err(ReconstructError::RootsNotDistinct);
            }
        }
    }
    let degree = roots.len();
    Ok(WeierstrassSet {
        roots,
        degree,
        h_vectors,
        infinite_index: infinite.first().copied(),
    })
}

/// Expand prod (x - alpha_k) and reconstruct rational coefficients.
pub fn monic_model(
    ctx: &Ctx,
    ws: &WeierstrassSet,
    height_bound: &BigInt,
) -> Result<RatPoly, ReconstructError> {
    // numerical expansion
    let mut coeffs = vec![CNum::one(ctx)];
    for alpha in &ws.roots {
        let mut next = vec![CNum::zero(ctx); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c, ctx);
            next[i] = next[i].sub(&c.mul(alpha, ctx), ctx);
        }
        coeffs = next;
    }
    // coefficients come out in ascending order with leading 1
    let budget = ctx.pow2(-(ctx.bits() as i64) / 3);
    let mut rats = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.iter().enumerate() {
        if c.im.abs().cmp(&budget).is_some_and(|x| x > 0) {
            return Err(ReconstructError::NotReal);
        }
        let r = rationalize_bigfloat(&c.re, height_bound)
            .map_err(|_| ReconstructError::NoRationalFound(i))?;
        rats.push(r);
    }
    let f = RatPoly::from_coeffs(rats);
    debug_assert!(f.is_monic());
    Ok(f)
}

/// Index-pair convention for the Theorem 3(b) product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductConvention {
    /// prod over j < k of H[W_j](1, alpha_k)^2, indices over finite roots
    OrderedFinite,
    /// prod over j != k (both orders), indices over finite roots
    AllPairsFinite,
    /// j < k over all six odd points, factors with alpha_k infinite skipped
    OrderedSix,
}

/// |leading coefficient| from the discriminant relation of Theorem 3(b),
/// rationalized; also returns the rational a^10 for verification.
pub fn leading_coefficient(
    ctx: &Ctx,
    omega: &BigPeriodMatrix,
    ws: &WeierstrassSet,
    convention: ProductConvention,
    height_bound: &BigInt,
) -> Result<(BigRational, BigRational), ReconstructError> {
    let deg = ws.degree;
    // P = product of H[W_j](1, alpha_k)^2 per the convention
    let h_of = |j: usize, k_root: usize| -> CNum {
        // H[W_j](1, alpha) = h1_j + h2_j * alpha
        let h = &ws.h_vectors[j];
        h[0].add(&h[1].mul(&ws.roots[k_root], ctx), ctx)
    };
    // map from finite-root position to w-index
    let w_index: Vec<usize> = (0..6).filter(|&j| Some(j) != ws.infinite_index).collect();
    let mut prod = CNum::one(ctx);
    match convention {
        ProductConvention::OrderedFinite => {
            for j in 0..deg {
                for k in j + 1..deg {
                    let f = h_of(w_index[j], k);
                    prod = prod.mul(&f.mul(&f, ctx), ctx);
                }
            }
        }
        ProductConvention::AllPairsFinite => {
            for j in 0..deg {
                for k in 0..deg {
                    if j == k {
                        continue;
                    }
                    let f = h_of(w_index[j], k);
                    prod = prod.mul(&f.mul(&f, ctx), ctx);
                }
            }
        }
        ProductConvention::OrderedSix => {
            for j in 0..6 {
                for k in j + 1..6 {
                    if Some(k) == ws.infinite_index {
                        continue;
                    }
                    // position of w-index k among the finite roots
                    let kpos = w_index.iter().position(|&x| x == k).unwrap();
                    let f = h_of(j, kpos);
                    prod = prod.mul(&f.mul(&f, ctx), ctx);
                }
            }
        }
    }
    // R = prod_{j<k} (alpha_j - alpha_k)^2 over finite roots
    let mut rdiff = CNum::one(ctx);
    for j in 0..deg {
        for k in j + 1..deg {
            let d = ws.roots[j].sub(&ws.roots[k], ctx);
            rdiff = rdiff.mul(&d.mul(&d, ctx), ctx);
        }
    }
    let det1 = omega.omega1.det(ctx);
    let pi = ctx.pi();
    // X = 2^e2 pi^epi det(Omega_1)^(-ed) P / R^er ; a^(10 esol) = X
    let (e2, epi, ed, er, esol) = match deg {
        6 => (120i64, 60u64, 30u64, 7u64, 6u32),
        5 => (80, 80, 20, 5, 3),
        _ => unreachable!(),
    };
    let two_pow = ctx.pow2(e2);
    let pi_pow = CNum::real(ctx, pi).powi(epi, ctx);
    let det_pow = det1.powi(ed, ctx).recip(ctx);
    let r_pow = rdiff.powi(er, ctx);
    let x = CNum::real(ctx, two_pow)
        .mul(&pi_pow, ctx)
        .mul(&det_pow, ctx)
        .mul(&prod, ctx)
        .div(&r_pow, ctx);
    // X = a^(10*esol) is a positive real number
    let budget = ctx.mul(&x.abs(ctx), &ctx.pow2(-(ctx.bits() as i64) / 3));
    if x.im.abs().cmp(&budget).is_some_and(|c| c > 0) || x.re.is_negative() {
        return Err(ReconstructError::NotTenthPower);
    }
    let xabs = x.abs(ctx);
    // a^10 = X^(1/esol), |a| = X^(1/(10 esol))
    let ln = ctx.ln(&xabs);
    let a10f = ctx.exp(&ctx.div(&ln, &ctx.from_i64(esol as i64)));
    let af = ctx.exp(&ctx.div(&ln, &ctx.from_i64(10 * esol as i64)));
    if std::env::var("MODJAC_DEBUG_A6").is_ok() {
        eprintln!(
            "  a10f ~ {:e}, af ~ {:e}",
            crate::numeric::Ctx::f64_of(&a10f),
            crate::numeric::Ctx::f64_of(&af)
        );
    }
    let a10 = rationalize_bigfloat(&a10f, &(height_bound.pow(10)))
        .map_err(|_| ReconstructError::NotTenthPower)?;
    let a = rationalize_bigfloat(&af, height_bound)
        .map_err(|_| ReconstructError::NotTenthPower)?;
    // verification: a^10 must equal the reconstructed a10 exactly
    let mut check = BigRational::one();
    for _ in 0..10 {
        check *= &a;
    }
    if check != a10 {
        return Err(ReconstructError::NotTenthPower);
    }
    Ok((a, a10))
}

/// Outcome of the sign determination.
#[derive(Debug, Clone)]
pub struct SignResolution {
    /// +1 or -1 when determined; the model below is sign * F1
    pub sign: i64,
    /// the resolved polynomial sign * F1 (or F1 when the curves are
    /// isomorphic and the sign is immaterial)
    pub model: RatPoly,
    /// Some(p) when point counts at p decided; None when C_F = C_{-F}
    pub separating_prime: Option<i64>,
    /// both signs give Q-isomorphic curves
    pub self_twist: bool,
}

/// Decide between F1 and -F1 by the Eichler-Shimura congruence:
/// #C(F_p) = p + 1 - Tr(a_p) for the true model at every good prime.
pub fn resolve_sign(
    space: &ManinSymbolSpace,
    class: &NewformClass,
    f1: &RatPoly,
    prime_bound: i64,
) -> Result<SignResolution, ReconstructError> {
    // C_{F} and C_{-F} are Q-isomorphic when F(-x) = -F(x), or when -F is a
    // square multiple of a reversal x -> +-1/x of F
    if curves_obviously_isomorphic(f1) {
        return Ok(SignResolution {
            sign: 1,
            model: f1.clone(),
            separating_prime: None,
            self_twist: true,
        });
    }
    let neg = f1.neg();
    let n = space.level;
    let mut p = 2i64;
    while p < prime_bound {
        p = next_prime(p);
        if p >= prime_bound {
            break;
        }
        if n % p == 0 || !has_good_reduction(f1, p) {
            continue;
        }
        let na = count_points(f1, p).expect("good reduction checked");
        let nb = count_points(&neg, p).expect("twist has the same good primes");
        if na == nb {
            continue;
        }
        let tr = class.eigenvalue_trace(space, p);
        assert!(tr.is_integer());
        let expect = p + 1 - tr.numer().to_i64().expect("small trace");
        return if na == expect {
            Ok(SignResolution {
                sign: 1,
                model: f1.clone(),
                separating_prime: Some(p),
                self_twist: false,
            })
        } else if nb == expect {
            Ok(SignResolution {
                sign: -1,
                model: neg,
                separating_prime: Some(p),
                self_twist: false,
            })
        } else {
            Err(ReconstructError::InconsistentCounts { p })
        };
    }
    Err(ReconstructError::SignAmbiguous { bound: prime_bound })
}

/// F(-x) = -F(x), or -F = lambda^2 * (reversal of F), for the reversals
/// x -> 1/x and x -> -1/x.
fn curves_obviously_isomorphic(f: &RatPoly) -> bool {
    let minus_f = f.neg();
    let neg_x = f.dilate(&BigRational::from(BigInt::from(-1)));
    if minus_f == neg_x {
        return true;
    }
    let rev = f.reverse(6);
    let rev_neg = rev.dilate(&BigRational::from(BigInt::from(-1)));
    for g in [rev, rev_neg] {
        if let Some(lambda2) = constant_ratio(&minus_f, &g) {
            if lambda2.is_positive() && is_rational_square(&lambda2) {
                return true;
            }
        }
    }
    false
}

/// c with a = c * b, when it exists.
fn constant_ratio(a: &RatPoly, b: &RatPoly) -> Option<BigRational> {
    if a.degree() != b.degree() || a.is_zero() != b.is_zero() {
        return None;
    }
    let mut ratio: Option<BigRational> = None;
    for i in 0..=a.degree() {
        let (ca, cb) = (a.coeff(i), b.coeff(i));
        match (ca.is_zero(), cb.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let r = ca / cb;
                if let Some(prev) = &ratio {
                    if *prev != r {
                        return None;
                    }
                } else {
                    ratio = Some(r);
                }
            }
            _ => return None,
        }
    }
    ratio
}

pub fn is_rational_square(r: &BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom()
}

/// Integral model: multiply F by d = t / b^2, where t is the square of the
/// lcm of the coefficient denominators and b^2 is the largest square
/// dividing the content of t*F. The multiplier is a perfect square, so the
/// curve is unchanged, and the output has integer coefficients whose content
/// is squarefree.
pub fn integral_model(f: &RatPoly) -> (RatPoly, BigRational) {
    assert!(!f.is_zero());
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let t = BigRational::from(&lcm * &lcm);
    let scaled = f.scale(&t);
    let mut content = BigInt::zero();
    for c in scaled.coeffs() {
        debug_assert!(c.is_integer());
        content = content.gcd(c.numer());
    }
    // largest square divisor of the content
    let mut b = BigInt::one();
    let mut rest = content.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            b *= &p;
        }
        while (&rest % &p).is_zero() {
            rest /= &p;
        }
        p += 1;
    }
    let d = t / BigRational::from(&b * &b);
    (f.scale(&d), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_model_matches_the_worked_example() {
        // -(1/12)(x^6 - 54x^3 - 27) -> -3x^6 + 162x^3 + 81 with multiplier 36
        let f0 = RatPoly::from_i64_coeffs(&[-27, 0, 0, -54, 0, 0, 1]);
        let twelfth = BigRational::new(BigInt::from(-1), BigInt::from(12));
        let f1 = f0.scale(&twelfth);
        let (g, d) = integral_model(&f1);
        assert_eq!(d, BigRational::from(BigInt::from(36)));
        assert_eq!(g, RatPoly::from_i64_coeffs(&[81, 0, 0, 162, 0, 0, -3]));
    }

    #[test]
    fn integral_model_is_idempotent_on_squarefree_content() {
        let f = RatPoly::from_i64_coeffs(&[5, 0, -1, 0, 0, 0, 15]);
        let (g, d) = integral_model(&f);
        assert_eq!(g, f);
        assert!(d.is_one());
    }

    #[test]
    fn integral_model_strips_square_content() {
        // (1/4) x^6 + x: t = 16, content(16 F) = 4, so d = 4
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        let f = RatPoly::monomial(6).scale(&quarter).add(&RatPoly::monomial(1));
        let (g, d) = integral_model(&f);
        assert_eq!(d, BigRational::from(BigInt::from(4)));
        assert_eq!(g, RatPoly::from_i64_coeffs(&[0, 4, 0, 0, 0, 0, 1]));
        // discriminant scales exactly by d^(2 deg - 2)
        let lhs = g.discriminant();
        let rhs = f.discriminant() * d.pow(10);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn odd_polynomial_is_a_self_twist() {
        // 2x^5 - 128x is odd
        let f = RatPoly::from_i64_coeffs(&[0, -128, 0, 0, 0, 2]);
        assert!(curves_obviously_isomorphic(&f));
        // generic polynomial is not
        let g = RatPoly::from_i64_coeffs(&[1, 1, 0, 0, 0, 0, 1]);
        assert!(!curves_obviously_isomorphic(&g));
    }

    #[test]
    fn reversal_detection() {
        // -F = rev(F) case: F = x^6 - 54x^3 - 27 has x^6 F(1/x) = -27x^6 - 54x^3 + 1
        // and -F = -x^6 + 54x^3 + 27; ratio 27 is not a square, so not detected
        let f = RatPoly::from_i64_coeffs(&[-27, 0, 0, -54, 0, 0, 1]);
        assert!(!curves_obviously_isomorphic(&f));
        // a self-reversal example: F = x^6 + 4x^3 - 1: -F(x) vs x^6 F(1/x) =
        // -x^6 + 4x^3 + 1 = -(x^6 - 4x^3 - 1): ratio of -F and rev is ... 1?
        // x^6 F(1/x) with F = x^6 + 4x^3 - 1: rev = -x^6 + 4x^3 + 1 = -F(x)?
        // -F = -x^6 - 4x^3 + 1: not equal; check the sign conventions hold
        let g = RatPoly::from_i64_coeffs(&[-1, 0, 0, 4, 0, 0, 1]);
        let rev = g.reverse(6);
        assert_eq!(rev, RatPoly::from_i64_coeffs(&[1, 0, 0, 4, 0, 0, -1]));
        assert!(curves_obviously_isomorphic(&g));
    }

    #[test]
    fn rational_square_test() {
        assert!(is_rational_square(&BigRational::new(BigInt::from(4), BigInt::from(9))));
        assert!(!is_rational_square(&BigRational::new(BigInt::from(8), BigInt::from(9))));
        assert!(!is_rational_square(&BigRational::new(BigInt::from(-4), BigInt::from(9))));
    }
}
