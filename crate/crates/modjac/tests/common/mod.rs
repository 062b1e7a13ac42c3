//! Shared test oracles, independent of the modular-symbol pipeline.
//!
//! The main tool is a direct numerical period matrix for an explicit
//! hyperelliptic curve y^2 = F(x): the differentials dx/y and x dx/y are
//! integrated over explicit elliptic contours encircling pairs of branch
//! points (trapezoidal quadrature on a smooth closed contour converges
//! geometrically), the intersection numbers of the contours are counted from
//! planar crossings with sheet tracking, and a symplectic basis is extracted
//! with the production symplectic reduction.

use astro_float::BigFloat;
use modjac::exact::{symplectic_reduce, IntMat, RatPoly};
use modjac::numeric::{CMat2, CNum, Ctx};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// All complex roots of a squarefree polynomial by Durand-Kerner iteration
/// at working precision.
pub fn complex_roots(ctx: &Ctx, f: &RatPoly) -> Vec<CNum> {
    let deg = f.degree();
    let coeffs: Vec<CNum> = f
        .coeffs()
        .iter()
        .map(|c| CNum::real(ctx, ctx.from_rational(c)))
        .collect();
    let lc = coeffs.last().unwrap().clone();
    let eval = |z: &CNum| -> CNum {
        let mut acc = CNum::zero(ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z, ctx).add(c, ctx);
        }
        acc
    };
    // start on a slightly irrational spiral
    let mut roots: Vec<CNum> = (0..deg)
        .map(|k| {
            let ang = 0.7 + 2.39996 * k as f64;
            let rad = 1.0 + 0.3 * k as f64;
            CNum::from_f64(ctx, rad * ang.cos(), rad * ang.sin())
        })
        .collect();
    let tol = ctx.pow2(-(ctx.bits() as i64) + 24);
    for _ in 0..500 {
        let mut moved = ctx.zero();
        for i in 0..deg {
            let mut den = lc.clone();
            for j in 0..deg {
                if j != i {
                    den = den.mul(&roots[i].sub(&roots[j], ctx), ctx);
                }
            }
            let delta = eval(&roots[i]).div(&den, ctx);
            let new = roots[i].sub(&delta, ctx);
            let d = delta.abs(ctx);
            if d.cmp(&moved).is_some_and(|c| c > 0) {
                moved = d;
            }
            roots[i] = new;
        }
        if moved.cmp(&tol).is_some_and(|c| c < 0) {
            return roots;
        }
    }
    panic!("root iteration did not converge");
}

struct Contour {
    /// sampled points and the tracked branch of y = sqrt(F(x)) at each
    points: Vec<(CNum, CNum)>,
    /// periods of (dx/y, x dx/y)
    periods: [CNum; 2],
}

/// Elliptic contour around the segment [a, b] with clearance delta,
/// integrating both differentials with y tracked continuously.
fn contour_around(
    ctx: &Ctx,
    f: &RatPoly,
    a: &CNum,
    b: &CNum,
    delta: f64,
    m: usize,
) -> Option<Contour> {
    let coeffs: Vec<CNum> = f
        .coeffs()
        .iter()
        .map(|c| CNum::real(ctx, ctx.from_rational(c)))
        .collect();
    let eval = |z: &CNum| -> CNum {
        let mut acc = CNum::zero(ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z, ctx).add(c, ctx);
        }
        acc
    };
    let center = a.add(b, ctx).mul_real(&ctx.from_f64(0.5), ctx);
    let half = b.sub(a, ctx).mul_real(&ctx.from_f64(0.5), ctx);
    let hlen = Ctx::f64_of(&half.abs(ctx));
    // semi-axes: (hlen + delta) along the segment, delta across:
    // x(t) = center + A e^{it} + B e^{-it} with
    // A = (half major - i minor_vec)/2, B = (half major + i minor_vec)/2
    let major = 1.0 + delta / hlen.max(1e-12);
    let minor_vec = half.mul_i(ctx).mul_real(&ctx.from_f64(delta / hlen.max(1e-12)), ctx);
    let hm = half.mul_real(&ctx.from_f64(major), ctx);
    let coef_a = hm.sub(&minor_vec.mul_i(ctx), ctx).mul_real(&ctx.from_f64(0.5), ctx);
    let coef_b = hm.add(&minor_vec.mul_i(ctx), ctx).mul_real(&ctx.from_f64(0.5), ctx);

    // node rotation e^{2 pi i / m} at working precision
    let step = {
        let ang = ctx.div(&ctx.two_pi(), &ctx.from_i64(m as i64));
        let (s, c) = ctx.sin_cos(&ang);
        CNum::new(c, s)
    };
    let mut q = CNum::one(ctx);
    let mut points: Vec<(CNum, CNum)> = Vec::with_capacity(m);
    let mut derivs: Vec<CNum> = Vec::with_capacity(m);
    let mut prev_y: Option<CNum> = None;
    for _ in 0..m {
        let qc = q.conj();
        let x = center.add(&coef_a.mul(&q, ctx), ctx).add(&coef_b.mul(&qc, ctx), ctx);
        // x'(t) = i A e^{it} - i B e^{-it}
        let xp = coef_a.mul(&q, ctx).sub(&coef_b.mul(&qc, ctx), ctx).mul_i(ctx);
        let v = eval(&x);
        let mut y = v.sqrt(ctx);
        if let Some(p) = &prev_y {
            let d_plus = y.dist(p, ctx);
            let d_minus = y.neg().dist(p, ctx);
            if d_minus.cmp(&d_plus).is_some_and(|c| c < 0) {
                y = y.neg();
            }
        }
        prev_y = Some(y.clone());
        points.push((x, y));
        derivs.push(xp);
        q = q.mul(&step, ctx);
    }
    // closure check: continuing from the last point must return to the first
    {
        let first = &points[0];
        let last = &points[m - 1];
        let d_plus = first.1.dist(&last.1, ctx);
        let d_minus = first.1.neg().dist(&last.1, ctx);
        if d_plus.cmp(&d_minus).is_some_and(|c| c > 0) {
            // wrong sheet count inside: not a closed cycle on the curve
            return None;
        }
    }
    // periodic trapezoid: sum g(x(t_k)) x'(t_k) * (2 pi / m)
    let weight = ctx.div(&ctx.two_pi(), &ctx.from_i64(m as i64));
    let mut p0 = CNum::zero(ctx);
    let mut p1 = CNum::zero(ctx);
    for k in 0..m {
        let (x, y) = &points[k];
        let g = y.recip(ctx).mul(&derivs[k], ctx);
        p0 = p0.add(&g, ctx);
        p1 = p1.add(&g.mul(x, ctx), ctx);
    }
    p0 = p0.mul_real(&weight, ctx);
    p1 = p1.mul_real(&weight, ctx);
    Some(Contour { points, periods: [p0, p1] })
}

fn point_in_ellipse(ctx: &Ctx, a: &CNum, b: &CNum, delta: f64, p: &CNum) -> bool {
    // coordinates along/across the segment
    let center = a.add(b, ctx).mul_real(&ctx.from_f64(0.5), ctx);
    let half = b.sub(a, ctx).mul_real(&ctx.from_f64(0.5), ctx);
    let hlen = Ctx::f64_of(&half.abs(ctx)).max(1e-12);
    let rel = p.sub(&center, ctx);
    // project: u = Re(rel * conj(half))/|half|, v = Im(...)/|half|
    let prod = rel.mul(&half.conj(), ctx);
    let u = Ctx::f64_of(&prod.re) / hlen;
    let v = Ctx::f64_of(&prod.im) / hlen;
    let aa = hlen + delta;
    let bb = delta;
    (u / aa) * (u / aa) + (v / bb) * (v / bb) <= 1.0
}

/// Signed planar crossing count of two contours, restricted to crossings
/// where both are on the same sheet of the double cover.
fn intersection_number(a: &Contour, b: &Contour) -> i64 {
    let pts = |c: &Contour| -> Vec<(f64, f64)> {
        c.points
            .iter()
            .map(|(x, _)| (Ctx::f64_of(&x.re), Ctx::f64_of(&x.im)))
            .collect()
    };
    let pa = pts(a);
    let pb = pts(b);
    let ya: Vec<(f64, f64)> = a
        .points
        .iter()
        .map(|(_, y)| (Ctx::f64_of(&y.re), Ctx::f64_of(&y.im)))
        .collect();
    let yb: Vec<(f64, f64)> = b
        .points
        .iter()
        .map(|(_, y)| (Ctx::f64_of(&y.re), Ctx::f64_of(&y.im)))
        .collect();
    let ma = pa.len();
    let mb = pb.len();
    let mut total = 0i64;
    for i in 0..ma {
        let a0 = pa[i];
        let a1 = pa[(i + 1) % ma];
        let (alox, ahix) = (a0.0.min(a1.0), a0.0.max(a1.0));
        let (aloy, ahiy) = (a0.1.min(a1.1), a0.1.max(a1.1));
        for j in 0..mb {
            let b0 = pb[j];
            let b1 = pb[(j + 1) % mb];
            if b0.0.min(b1.0) > ahix || b0.0.max(b1.0) < alox
                || b0.1.min(b1.1) > ahiy || b0.1.max(b1.1) < aloy
            {
                continue;
            }
            // segment crossing test
            let d1 = (a1.0 - a0.0, a1.1 - a0.1);
            let d2 = (b1.0 - b0.0, b1.1 - b0.1);
            let denom = d1.0 * d2.1 - d1.1 * d2.0;
            if denom.abs() < 1e-30 {
                continue;
            }
            let r = (b0.0 - a0.0, b0.1 - a0.1);
            let t = (r.0 * d2.1 - r.1 * d2.0) / denom;
            let u = (r.0 * d1.1 - r.1 * d1.0) / denom;
            if !(0.0..1.0).contains(&t) || !(0.0..1.0).contains(&u) {
                continue;
            }
            // same sheet?
            let yav = ya[i];
            let ybv = yb[j];
            let dplus = (yav.0 - ybv.0).hypot(yav.1 - ybv.1);
            let dminus = (yav.0 + ybv.0).hypot(yav.1 + ybv.1);
            if dplus < dminus {
                total += if denom > 0.0 { 1 } else { -1 };
            }
        }
    }
    total
}

/// Direct numerical period matrix of y^2 = F(x) over a symplectic homology
/// basis, rows integrating (dx/y, x dx/y). Returns (Omega_1, Omega_2).
pub fn direct_period_matrix(ctx: &Ctx, f: &RatPoly) -> (CMat2, CMat2) {
    let roots = complex_roots(ctx, f);
    let nroots = roots.len();
    // candidate contours around root pairs
    let mut contours: Vec<Contour> = Vec::new();
    let m = 1 << 12;
    for i in 0..nroots {
        for j in 0..i {
            // clearance: a fraction of the smallest distance from the
            // segment's tube to the other roots
            let mut min_d = f64::INFINITY;
            for (k, r) in roots.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                // distance from r to the segment endpoints (cheap proxy)
                let da = Ctx::f64_of(&r.dist(&roots[i], ctx));
                let db = Ctx::f64_of(&r.dist(&roots[j], ctx));
                let mid = roots[i].add(&roots[j], ctx).mul_real(&ctx.from_f64(0.5), ctx);
                let dm = Ctx::f64_of(&r.dist(&mid, ctx));
                min_d = min_d.min(da).min(db).min(dm);
            }
            let delta = (min_d / 4.0).min(1.0).max(1e-3);
            // keep only contours containing exactly the two intended roots
            let ok = roots.iter().enumerate().all(|(k, r)| {
                let inside = point_in_ellipse(ctx, &roots[i], &roots[j], delta, r);
                (k == i || k == j) == inside
            });
            if !ok {
                continue;
            }
            if let Some(c) = contour_around(ctx, f, &roots[i], &roots[j], delta, m) {
                contours.push(c);
            }
            if contours.len() >= 10 {
                break;
            }
        }
        if contours.len() >= 10 {
            break;
        }
    }
    assert!(contours.len() >= 4, "not enough usable contours");
    // pairwise intersection numbers
    let n = contours.len();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..i {
            let v = intersection_number(&contours[i], &contours[j]);
            gram[i][j] = v;
            gram[j][i] = -v;
        }
    }
    // find 4 contours with unimodular pairing
    let idx: Vec<usize> = (0..n).collect();
    let mut best: Option<[usize; 4]> = None;
    'outer: for &a in &idx {
        for &b in &idx {
            if b <= a {
                continue;
            }
            for &c in &idx {
                if c <= b {
                    continue;
                }
                for &d in &idx {
                    if d <= c {
                        continue;
                    }
                    let sel = [a, b, c, d];
                    let e = IntMat::from_i64_rows(
                        &sel.iter()
                            .map(|&r| sel.iter().map(|&s| gram[r][s]).collect::<Vec<_>>())
                            .collect::<Vec<_>>(),
                    );
                    let det = e.det();
                    if det == BigInt::from(1) || det == BigInt::from(-1) {
                        best = Some(sel);
                        break 'outer;
                    }
                }
            }
        }
    }
    let sel = best.expect("some 4 contours give a unimodular pairing");
    let e = IntMat::from_i64_rows(
        &sel.iter()
            .map(|&r| sel.iter().map(|&s| gram[r][s]).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    let t = symplectic_reduce(&e).expect("unimodular alternating form");
    // periods of the symplectic basis with orientation fixed by Im Z > 0
    let combine = |t: &IntMat, col: usize| -> [CNum; 2] {
        let mut acc = [CNum::zero(ctx), CNum::zero(ctx)];
        for (row, &ci) in sel.iter().enumerate() {
            let w = ctx.from_i64(t.at(row, col).to_i64().unwrap());
            acc[0] = acc[0].add(&contours[ci].periods[0].mul_real(&w, ctx), ctx);
            acc[1] = acc[1].add(&contours[ci].periods[1].mul_real(&w, ctx), ctx);
        }
        acc
    };
    for flip in [false, true] {
        let tt = if flip {
            let mut fmat = IntMat::zeros(4, 4);
            fmat.set(2, 0, BigInt::from(1));
            fmat.set(3, 1, BigInt::from(1));
            fmat.set(0, 2, BigInt::from(-1));
            fmat.set(1, 3, BigInt::from(-1));
            t.mul(&fmat)
        } else {
            t.clone()
        };
        let c0 = combine(&tt, 0);
        let c1 = combine(&tt, 1);
        let c2 = combine(&tt, 2);
        let c3 = combine(&tt, 3);
        let omega1 = CMat2::from_cols(c0, c1);
        let omega2 = CMat2::from_cols(c2, c3);
        let z = omega1.inverse(ctx).mul(&omega2, ctx);
        let tr = ctx.add(&z.a.im, &z.d.im);
        let dt = ctx.sub(&ctx.mul(&z.a.im, &z.d.im), &ctx.mul(&z.b.im, &z.c.im));
        if tr.is_positive() && dt.is_positive() {
            return (omega1, omega2);
        }
    }
    panic!("no orientation gives Im Z > 0");
}

/// |x - y| < 2^k helper for assertions.
pub fn close(ctx: &Ctx, x: &BigFloat, y: &BigFloat, k: i64) -> bool {
    let d = ctx.sub(x, y).abs();
    ctx.abs_lt_pow2(&d, k)
}
