//! The genus-2 Riemann theta function: values and gradients with half-integer
//! characteristics, the ten even Thetanullwerte, the six odd 2-torsion
//! points, and the irreducibility test.
//!
//! theta(z; Z) = sum_{n in Z^2} exp(pi i n^t Z n + 2 pi i n^t z).
//!
//! With characteristic (a; b), a, b in {0, 1/2}^2:
//!
//! theta[a;b](z; Z) = sum_n exp(pi i (n+a)^t Z (n+a) + 2 pi i (n+a)^t (z+b)).
//!
//! Truncation: with Y = Im Z and y = Im z, the term at n has modulus
//! exp(-pi (m^t Y m + 2 m^t y)) for m = n + a, which is a Gaussian centred at
//! c = -Y^{-1} y. Terms are summed over an ellipsoid
//! (m - c)^t Y (m - c) <= r^2 with r chosen from a closed-form tail bound.

use astro_float::BigFloat;
use thiserror::Error;

use crate::numeric::{CMat2, CNum, Ctx};

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("Im(Z) is not positive definite")]
    NotPositiveDefinite,
    #[error("irreducibility indeterminate: smallest Thetanullwerte within 10x of the error bound")]
    Indeterminate,
}

/// A half-integer characteristic: a, b with entries in {0, 1/2} encoded as
/// bits (1 meaning 1/2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaChar {
    pub a: [u8; 2],
    pub b: [u8; 2],
}

impl ThetaChar {
    /// Parity: even iff 4 a . b is even.
    pub fn is_even(&self) -> bool {
        (self.a[0] & self.b[0]) ^ (self.a[1] & self.b[1]) == 0
    }

    /// All sixteen characteristics in lexicographic order of (a, b).
    pub fn all() -> Vec<ThetaChar> {
        let mut out = Vec::with_capacity(16);
        for a0 in 0..2u8 {
            for a1 in 0..2u8 {
                for b0 in 0..2u8 {
                    for b1 in 0..2u8 {
                        out.push(ThetaChar { a: [a0, a1], b: [b0, b1] });
                    }
                }
            }
        }
        out
    }

    /// The ten even characteristics, lexicographic in (a, b).
    pub fn even() -> Vec<ThetaChar> {
        Self::all().into_iter().filter(ThetaChar::is_even).collect()
    }

    /// The six odd characteristics, lexicographic in (a, b).
    pub fn odd() -> Vec<ThetaChar> {
        Self::all().into_iter().filter(|c| !c.is_even()).collect()
    }

    /// The 2-torsion point Z a + b associated with the characteristic.
    pub fn torsion_point(&self, ctx: &Ctx, z: &CMat2) -> [CNum; 2] {
        let half = ctx.from_f64(0.5);
        let a0 = ctx.mul(&half, &ctx.from_i64(self.a[0] as i64));
        let a1 = ctx.mul(&half, &ctx.from_i64(self.a[1] as i64));
        let b0 = ctx.mul(&half, &ctx.from_i64(self.b[0] as i64));
        let b1 = ctx.mul(&half, &ctx.from_i64(self.b[1] as i64));
        let av = [CNum::real(ctx, a0), CNum::real(ctx, a1)];
        let zv = z.mul_vec(&av, ctx);
        [
            zv[0].add(&CNum::real(ctx, b0), ctx),
            zv[1].add(&CNum::real(ctx, b1), ctx),
        ]
    }
}

/// A theta value with its summation error bound.
#[derive(Debug, Clone)]
pub struct ThetaValue {
    pub value: CNum,
    pub error_bound: BigFloat,
    pub characteristic: Option<ThetaChar>,
}

/// theta(z; Z) with plain (zero) characteristic; absolute error below
/// 2^target_log2 plus rounding.
pub fn theta(
    ctx: &Ctx,
    z: &[CNum; 2],
    zm: &CMat2,
    target_log2: i64,
) -> Result<ThetaValue, ThetaError> {
    let (v, e) = theta_sum(ctx, z, zm, target_log2, None, false)?;
    Ok(ThetaValue { value: v[0].clone(), error_bound: e, characteristic: None })
}

/// Gradient (d theta / d z_1, d theta / d z_2) at z.
pub fn theta_gradient(
    ctx: &Ctx,
    z: &[CNum; 2],
    zm: &CMat2,
    target_log2: i64,
) -> Result<([CNum; 2], BigFloat), ThetaError> {
    let (v, e) = theta_sum(ctx, z, zm, target_log2, None, true)?;
    Ok(([v[1].clone(), v[2].clone()], e))
}

/// The six odd 2-torsion points w_1..w_6 in the fixed order of the
/// root-extraction method: w_k = Z a_k + b_k.
pub fn odd_two_torsion(ctx: &Ctx, zm: &CMat2) -> Vec<[CNum; 2]> {
    odd_characteristics_ordered().iter().map(|c| c.torsion_point(ctx, zm)).collect()
}

/// Odd characteristics in the order w_1 .. w_6 used by the root extraction:
/// ((0,1/2),(0,1/2)), ((0,1/2),(1/2,1/2)), ((1/2,0),(1/2,0)),
/// ((1/2,0),(1/2,1/2)), ((1/2,1/2),(0,1/2)), ((1/2,1/2),(1/2,0)).
pub fn odd_characteristics_ordered() -> [ThetaChar; 6] {
    [
        ThetaChar { a: [0, 1], b: [0, 1] },
        ThetaChar { a: [0, 1], b: [1, 1] },
        ThetaChar { a: [1, 0], b: [1, 0] },
        ThetaChar { a: [1, 0], b: [1, 1] },
        ThetaChar { a: [1, 1], b: [0, 1] },
        ThetaChar { a: [1, 1], b: [1, 0] },
    ]
}

/// The ten even Thetanullwerte theta[m](0; Z) in lexicographic order.
pub fn even_thetanullwerte(
    ctx: &Ctx,
    zm: &CMat2,
    target_log2: i64,
) -> Result<Vec<ThetaValue>, ThetaError> {
    let zero = [CNum::zero(ctx), CNum::zero(ctx)];
    ThetaChar::even()
        .into_iter()
        .map(|m| {
            let (v, e) = theta_sum(ctx, &zero, zm, target_log2, Some(m), false)?;
            Ok(ThetaValue { value: v[0].clone(), error_bound: e, characteristic: Some(m) })
        })
        .collect()
}

/// Irreducibility of the principally polarized surface: true iff all even
/// Thetanullwerte are bounded away from zero by `threshold`. Values within
/// ten times the summation error of zero cannot be decided at this precision.
pub fn is_irreducible(ctx: &Ctx, zm: &CMat2, threshold: &BigFloat) -> Result<bool, ThetaError> {
    let target = -(ctx.bits() as i64) + 8;
    let values = even_thetanullwerte(ctx, zm, target)?;
    let mut min_abs: Option<BigFloat> = None;
    let mut max_err = ctx.zero();
    for v in &values {
        let a = v.value.abs(ctx);
        if min_abs.as_ref().is_none_or(|m| a.cmp(m).is_some_and(|c| c < 0)) {
            min_abs = Some(a);
        }
        if v.error_bound.cmp(&max_err).is_some_and(|c| c > 0) {
            max_err = v.error_bound.clone();
        }
    }
    let min_abs = min_abs.unwrap();
    let ten_err = ctx.mul(&ctx.from_i64(10), &max_err);
    if min_abs.cmp(&ten_err).is_some_and(|c| c <= 0) {
        return Err(ThetaError::Indeterminate);
    }
    Ok(min_abs.cmp(threshold).is_some_and(|c| c > 0))
}

/// Core summation: returns [value, d/dz1, d/dz2] (gradient slots populated
/// when `with_gradient`), plus an error bound covering the truncation tail
/// and rounding.
fn theta_sum(
    ctx: &Ctx,
    z: &[CNum; 2],
    zm: &CMat2,
    target_log2: i64,
    characteristic: Option<ThetaChar>,
    with_gradient: bool,
) -> Result<([CNum; 3], BigFloat), ThetaError> {
    let y11 = zm.a.im.clone();
    let y12 = {
        let t = ctx.add(&zm.b.im, &zm.c.im);
        ctx.mul(&t, &ctx.from_f64(0.5))
    };
    let y22 = zm.d.im.clone();
    let (f11, f12, f22) = (Ctx::f64_of(&y11), Ctx::f64_of(&y12), Ctx::f64_of(&y22));
    let det = f11 * f22 - f12 * f12;
    if !(f11 > 0.0 && det > 0.0) {
        return Err(ThetaError::NotPositiveDefinite);
    }

    let (sa, sb) = match characteristic {
        Some(c) => (
            [c.a[0] as f64 * 0.5, c.a[1] as f64 * 0.5],
            [c.b[0] as f64 * 0.5, c.b[1] as f64 * 0.5],
        ),
        None => ([0.0, 0.0], [0.0, 0.0]),
    };

    // Gaussian centre c = -Y^{-1} y in m = n + a coordinates
    let yv = [Ctx::f64_of(&z[0].im), Ctx::f64_of(&z[1].im)];
    let cx = [
        -(f22 * yv[0] - f12 * yv[1]) / det,
        -(-f12 * yv[0] + f11 * yv[1]) / det,
    ];
    // prefactor exp(pi y^t Y^{-1} y) scales every bound
    let quad_c = (f11 * cx[0] * cx[0] + 2.0 * f12 * cx[0] * cx[1] + f22 * cx[1] * cx[1])
        * std::f64::consts::PI;

    let lam_min = {
        let tr = f11 + f22;
        let disc = ((f11 - f22) * (f11 - f22) + 4.0 * f12 * f12).sqrt();
        ((tr - disc) / 2.0).max(1e-12)
    };
    let target_ln = (target_log2 as f64) * std::f64::consts::LN_2 - quad_c;
    let density = 40.0 / det.sqrt().min(1.0);
    let mut r = 2.0f64;
    loop {
        let poly = (1.0 + r) * (1.0 + r) / lam_min.min(1.0)
            * if with_gradient { 8.0 * (r / lam_min.sqrt() + 3.0) } else { 1.0 };
        let tail_ln = (density * poly).ln() - std::f64::consts::PI * r * r;
        if tail_ln < target_ln {
            break;
        }
        r += 0.5;
        if r > 300.0 {
            return Err(ThetaError::NotPositiveDefinite);
        }
    }

    // bounding box of the inclusion ellipsoid (m-c)^t Y (m-c) <= (r+1/2)^2:
    // |m_i - c_i| <= (r + 1/2) sqrt((Y^{-1})_{ii})
    let bound1 = (r + 0.5) * (f22 / det).sqrt() + 1.0;
    let bound2 = (r + 0.5) * (f11 / det).sqrt() + 1.0;
    let lo1 = (cx[0] - sa[0] - bound1).floor() as i64;
    let hi1 = (cx[0] - sa[0] + bound1).ceil() as i64;
    let lo2 = (cx[1] - sa[1] - bound2).floor() as i64;
    let hi2 = (cx[1] - sa[1] + bound2).ceil() as i64;

    let pi = ctx.pi();
    let two_pi = ctx.two_pi();
    let a0 = ctx.from_f64(sa[0]);
    let a1 = ctx.from_f64(sa[1]);
    let b0 = ctx.from_f64(sb[0]);
    let b1 = ctx.from_f64(sb[1]);

    let mut acc = [CNum::zero(ctx), CNum::zero(ctx), CNum::zero(ctx)];
    let mut terms = 0usize;
    for n1 in lo1..=hi1 {
        for n2 in lo2..=hi2 {
            // ellipsoid test in the Y-metric, with a safety margin
            let g1 = n1 as f64 + sa[0] - cx[0];
            let g2 = n2 as f64 + sa[1] - cx[1];
            let q = f11 * g1 * g1 + 2.0 * f12 * g1 * g2 + f22 * g2 * g2;
            if q > (r + 0.5) * (r + 0.5) {
                continue;
            }
            terms += 1;
            let m1 = ctx.add(&ctx.from_i64(n1), &a0);
            let m2 = ctx.add(&ctx.from_i64(n2), &a1);
            // exponent: pi i m^t Z m + 2 pi i m^t (z + b)
            let zm1 = [
                zm.a.mul_real(&m1, ctx).add(&zm.b.mul_real(&m2, ctx), ctx),
                zm.c.mul_real(&m1, ctx).add(&zm.d.mul_real(&m2, ctx), ctx),
            ];
            let mzm = zm1[0].mul_real(&m1, ctx).add(&zm1[1].mul_real(&m2, ctx), ctx);
            let zb = [
                z[0].add(&CNum::real(ctx, b0.clone()), ctx),
                z[1].add(&CNum::real(ctx, b1.clone()), ctx),
            ];
            let mz = zb[0].mul_real(&m1, ctx).add(&zb[1].mul_real(&m2, ctx), ctx);
            let w_re = {
                let mut t = ctx.mul(&pi, &mzm.im);
                let t2 = ctx.mul(&two_pi, &mz.im);
                t = ctx.add(&t, &t2);
                t.inv_sign();
                t
            };
            let w_im = {
                let t = ctx.mul(&pi, &mzm.re);
                let t2 = ctx.mul(&two_pi, &mz.re);
                ctx.add(&t, &t2)
            };
            let term = CNum::new(w_re, w_im).exp(ctx);
            acc[0] = acc[0].add(&term, ctx);
            if with_gradient {
                let f1 = ctx.mul(&two_pi, &m1);
                let f2 = ctx.mul(&two_pi, &m2);
                acc[1] = acc[1].add(&term.mul_i(ctx).mul_real(&f1, ctx), ctx);
                acc[2] = acc[2].add(&term.mul_i(ctx).mul_real(&f2, ctx), ctx);
            }
        }
    }
    let mut err = ctx.pow2(target_log2);
    let rounding = ctx.pow2(
        -(ctx.bits() as i64)
            + (terms.max(2) as f64).log2().ceil() as i64
            + 4
            + (quad_c / std::f64::consts::LN_2).ceil().max(0.0) as i64,
    );
    err = ctx.add(&err, &rounding);
    Ok((acc, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_z(ctx: &Ctx) -> CMat2 {
        // a generic point of the Siegel upper half-space
        CMat2::new(
            CNum::from_f64(ctx, 0.3, 1.1),
            CNum::from_f64(ctx, 0.15, 0.35),
            CNum::from_f64(ctx, 0.15, 0.35),
            CNum::from_f64(ctx, -0.2, 0.9),
        )
    }

    #[test]
    fn census_10_even_6_odd() {
        assert_eq!(ThetaChar::even().len(), 10);
        assert_eq!(ThetaChar::odd().len(), 6);
        assert_eq!(ThetaChar::all().len(), 16);
        for c in &odd_characteristics_ordered() {
            assert!(!c.is_even());
        }
    }

    #[test]
    fn diagonal_z_factors_as_product_of_one_dimensional_sums() {
        // Z = diag(tau1, tau2): theta(z; Z) = theta1(z1; tau1) theta1(z2; tau2)
        let ctx = Ctx::new(160);
        let tau1 = CNum::from_f64(&ctx, 0.1, 1.3);
        let tau2 = CNum::from_f64(&ctx, -0.4, 0.8);
        let zm = CMat2::new(tau1.clone(), CNum::zero(&ctx), CNum::zero(&ctx), tau2.clone());
        let z = [CNum::from_f64(&ctx, 0.21, 0.05), CNum::from_f64(&ctx, -0.11, 0.17)];
        let t = theta(&ctx, &z, &zm, -140).unwrap();

        // independent 1-dimensional lattice sum
        let theta_1d = |zz: &CNum, tau: &CNum| -> CNum {
            let mut acc = CNum::zero(&ctx);
            for n in -60i64..=60 {
                let nf = ctx.from_i64(n);
                let tz = tau.mul_real(&ctx.mul(&nf, &nf), &ctx);
                let lin = zz.mul_real(&ctx.mul(&ctx.from_i64(2), &nf), &ctx);
                let w = tz.add(&lin, &ctx);
                // exp(pi i w)
                let e = CNum::new(
                    {
                        let mut t = ctx.mul(&ctx.pi(), &w.im);
                        t.inv_sign();
                        t
                    },
                    ctx.mul(&ctx.pi(), &w.re),
                )
                .exp(&ctx);
                acc = acc.add(&e, &ctx);
            }
            acc
        };
        let prod = theta_1d(&z[0], &tau1).mul(&theta_1d(&z[1], &tau2), &ctx);
        let d = t.value.dist(&prod, &ctx);
        assert!(ctx.abs_lt_pow2(&d, -120), "split defect {d:?}");
        // and the gradient factors as value x derivative
        let (grad, _) = theta_gradient(&ctx, &z, &zm, -140).unwrap();
        let h = ctx.pow2(-40);
        let z1p = CNum::new(ctx.add(&z[0].re, &h), z[0].im.clone());
        let z1m = CNum::new(ctx.sub(&z[0].re, &h), z[0].im.clone());
        let d1 = theta_1d(&z1p, &tau1)
            .sub(&theta_1d(&z1m, &tau1), &ctx)
            .mul_real(&ctx.div(&ctx.one(), &ctx.mul(&ctx.from_i64(2), &h)), &ctx);
        let expect = d1.mul(&theta_1d(&z[1], &tau2), &ctx);
        let rel = grad[0].dist(&expect, &ctx);
        let lim = ctx.mul(&grad[0].abs(&ctx).max(&ctx.one()), &ctx.from_f64(1e-9));
        assert!(rel.cmp(&lim).is_some_and(|c| c < 0), "grad split {rel:?}");
    }

    #[test]
    fn evenness_and_odd_zeroes() {
        let ctx = Ctx::new(128);
        let zm = sample_z(&ctx);
        let z = [CNum::from_f64(&ctx, 0.3, -0.2), CNum::from_f64(&ctx, -0.7, 0.4)];
        let mz = [z[0].neg(), z[1].neg()];
        let t1 = theta(&ctx, &z, &zm, -100).unwrap();
        let t2 = theta(&ctx, &mz, &zm, -100).unwrap();
        assert!(ctx.abs_lt_pow2(&t1.value.dist(&t2.value, &ctx), -90));
        let (g1, _) = theta_gradient(&ctx, &z, &zm, -100).unwrap();
        let (g2, _) = theta_gradient(&ctx, &mz, &zm, -100).unwrap();
        for j in 0..2 {
            let d = g1[j].add(&g2[j], &ctx).abs(&ctx);
            assert!(ctx.abs_lt_pow2(&d, -90));
        }
        // theta vanishes at every odd 2-torsion point
        for w in odd_two_torsion(&ctx, &zm) {
            let t = theta(&ctx, &w, &zm, -100).unwrap();
            let a = t.value.abs(&ctx);
            let lim = ctx.mul(&ctx.from_i64(64), &t.error_bound);
            assert!(a.cmp(&lim).is_some_and(|c| c < 0), "odd point value {a:?} vs {lim:?}");
        }
        // gradient vanishes at z = 0
        let zero = [CNum::zero(&ctx), CNum::zero(&ctx)];
        let (g0, e0) = theta_gradient(&ctx, &zero, &zm, -100).unwrap();
        for g in g0 {
            let lim = ctx.mul(&ctx.from_i64(64), &e0);
            assert!(g.abs(&ctx).cmp(&lim).is_some_and(|c| c < 0));
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let ctx = Ctx::new(192);
        let zm = sample_z(&ctx);
        let z = [CNum::from_f64(&ctx, 0.12, 0.08), CNum::from_f64(&ctx, -0.33, -0.05)];
        let (grad, _) = theta_gradient(&ctx, &z, &zm, -160).unwrap();
        let h = ctx.pow2(-34);
        for j in 0..2 {
            let mut zp = z.clone();
            let mut zn = z.clone();
            zp[j] = CNum::new(ctx.add(&zp[j].re, &h), zp[j].im.clone());
            zn[j] = CNum::new(ctx.sub(&zn[j].re, &h), zn[j].im.clone());
            let tp = theta(&ctx, &zp, &zm, -160).unwrap();
            let tn = theta(&ctx, &zn, &zm, -160).unwrap();
            let diff = tp
                .value
                .sub(&tn.value, &ctx)
                .mul_real(&ctx.div(&ctx.one(), &ctx.mul(&ctx.from_i64(2), &h)), &ctx);
            let rel = diff.dist(&grad[j], &ctx);
            let scale = grad[j].abs(&ctx).max(&ctx.one());
            let lim = ctx.mul(&scale, &ctx.from_f64(1e-8));
            assert!(rel.cmp(&lim).is_some_and(|c| c < 0), "fd defect {rel:?} vs {lim:?}");
        }
    }

    #[test]
    fn quasi_periodicity() {
        let ctx = Ctx::new(160);
        let zm = sample_z(&ctx);
        let z = [CNum::from_f64(&ctx, 0.45, -0.1), CNum::from_f64(&ctx, 0.2, 0.3)];
        // integer shift
        let zshift = [
            z[0].add(&CNum::from_f64(&ctx, 1.0, 0.0), &ctx),
            z[1].add(&CNum::from_f64(&ctx, -2.0, 0.0), &ctx),
        ];
        let t0 = theta(&ctx, &z, &zm, -130).unwrap();
        let t1 = theta(&ctx, &zshift, &zm, -130).unwrap();
        assert!(ctx.abs_lt_pow2(&t0.value.dist(&t1.value, &ctx), -110));
        // lattice shift: theta(z + Z m) = exp(-pi i m Z m - 2 pi i m z) theta(z)
        let m = [CNum::from_f64(&ctx, 1.0, 0.0), CNum::from_f64(&ctx, -1.0, 0.0)];
        let zmv = zm.mul_vec(&m, &ctx);
        let zs = [z[0].add(&zmv[0], &ctx), z[1].add(&zmv[1], &ctx)];
        let t2 = theta(&ctx, &zs, &zm, -130).unwrap();
        let mzm = zmv[0].mul(&m[0], &ctx).add(&zmv[1].mul(&m[1], &ctx), &ctx);
        let mz = z[0].mul(&m[0], &ctx).add(&z[1].mul(&m[1], &ctx), &ctx);
        let w = mzm.add(&mz.add(&mz, &ctx), &ctx);
        let factor = CNum::new(ctx.mul(&ctx.pi(), &w.im), {
            let mut t = ctx.mul(&ctx.pi(), &w.re);
            t.inv_sign();
            t
        })
        .exp(&ctx);
        let rhs = factor.mul(&t0.value, &ctx);
        let d = t2.value.dist(&rhs, &ctx);
        assert!(ctx.abs_lt_pow2(&d, -100), "quasi-periodicity defect {d:?}");
    }

    #[test]
    fn halving_the_target_error_is_consistent() {
        let ctx = Ctx::new(160);
        let zm = sample_z(&ctx);
        let z = [CNum::from_f64(&ctx, 0.05, 0.02), CNum::from_f64(&ctx, 0.07, -0.01)];
        let t1 = theta(&ctx, &z, &zm, -60).unwrap();
        let t2 = theta(&ctx, &z, &zm, -120).unwrap();
        let d = t1.value.dist(&t2.value, &ctx);
        assert!(d.cmp(&t1.error_bound).is_some_and(|c| c < 0));
    }

    #[test]
    fn ten_nullwerte_and_product_surface_reducibility() {
        let ctx = Ctx::new(128);
        let zm = sample_z(&ctx);
        let vals = even_thetanullwerte(&ctx, &zm, -100).unwrap();
        assert_eq!(vals.len(), 10);
        // diagonal Z = product of two elliptic curves: an even nullwerte
        // vanishes (the pair of odd 1-dim characteristics pairs to an even
        // 2-dim one), so the verdict is "not irreducible"
        let diag = CMat2::new(
            CNum::from_f64(&ctx, 0.0, 1.0),
            CNum::zero(&ctx),
            CNum::zero(&ctx),
            CNum::from_f64(&ctx, 0.3, 1.2),
        );
        let verdict = is_irreducible(&ctx, &diag, &ctx.pow2(-40));
        assert!(
            matches!(verdict, Err(ThetaError::Indeterminate)),
            "exact vanishing can only be flagged as indeterminate numerically"
        );
        // near-diagonal Z: small but resolved off-diagonal entry
        let near = CMat2::new(
            CNum::from_f64(&ctx, 0.0, 1.0),
            CNum::from_f64(&ctx, 0.1, 0.0),
            CNum::from_f64(&ctx, 0.1, 0.0),
            CNum::from_f64(&ctx, 0.3, 1.2),
        );
        assert!(is_irreducible(&ctx, &near, &ctx.pow2(-40)).unwrap());
        // not positive definite is rejected
        let bad = CMat2::new(
            CNum::from_f64(&ctx, 0.0, -1.0),
            CNum::zero(&ctx),
            CNum::zero(&ctx),
            CNum::from_f64(&ctx, 0.0, 1.0),
        );
        assert!(matches!(
            theta(&ctx, &[CNum::zero(&ctx), CNum::zero(&ctx)], &bad, -40),
            Err(ThetaError::NotPositiveDefinite)
        ));
    }
}
