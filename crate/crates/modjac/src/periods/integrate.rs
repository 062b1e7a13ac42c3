//! Period integrals over modular symbols and the period matrices.
//!
//! The engine integrates the two differentials 2 pi i f_j dtau over the
//! homology of a class. Writing G_j(z) = int_z^{i inf} 2 pi i f_j dtau =
//! sum_n (c_n / n) e^{2 pi i n z}, the period of a closed cycle {z, gamma z}
//! for gamma in Gamma_0(N) is G(z) - G(gamma z), independent of z.
//!
//! Probe cycles: for gamma = (a, b; c, d) in Gamma_0(N) the cycle class is
//! the modular symbol {0, b/d} (exactly computable in the symbol space), and
//! with z = (-b + i/sqrt N)/a both z and the Fricke image w_N(gamma z) have
//! imaginary part 1/(a sqrt N). Since f | w_N = eps f on the class with
//! eps = +-1 (exact, from the symbol action of w_N), the period becomes
//!
//!   P(gamma) = G(z) - eps G(w_N gamma z) + eps F_0,
//!
//! with F_0 = (1 - eps) G(i / sqrt N), so every series converges at height
//! at least 1/(a sqrt N) with small a. Probes are collected until their
//! projections span the class homology; periods of arbitrary symbols are
//! rational combinations of probe periods.

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::qexp::{integral_basis, EigenformBasis};
use crate::exact::{standard_j, symplectic_reduce, IntMat, RatMat};
use crate::modsym::decompose::{coords_in_rowspace, NewformClass};
use crate::modsym::homology::{
    integral_homology, is_principally_polarized, primitive_form, HomologyLattice,
};
use crate::modsym::intersection::intersection_of_vectors;
use crate::modsym::space::ManinSymbolSpace;
use crate::modsym::Cusp;
use crate::numeric::{CMat2, CNum, Ctx};

#[derive(Debug, Error)]
pub enum PeriodError {
    #[error("class is not principally polarizable")]
    NotPrincipal,
    #[error("Omega_1 is numerically singular")]
    SingularOmega1,
    #[error("requested precision cannot be met: {0}")]
    PrecisionLoss(String),
    #[error("imaginary part of Z is not definite")]
    IndefiniteZ,
    #[error("probe cycles failed to span the class homology")]
    SpanFailure,
}

/// Big period matrix Omega = (Omega_1 | Omega_2) over a symplectic basis of
/// the homology lattice.
#[derive(Debug, Clone)]
pub struct BigPeriodMatrix {
    pub omega1: CMat2,
    pub omega2: CMat2,
    /// columns express the symplectic basis in the lattice basis
    pub symplectic_transform: IntMat,
    /// content of the raw intersection form (the symplectic basis is taken
    /// for the primitive form)
    pub polarization_content: BigInt,
    /// Fricke sign of the class
    pub fricke_sign: i64,
    /// bound on the absolute error of each entry
    pub error_bound: BigFloat,
}

/// Normalized period matrix Z = Omega_1^{-1} Omega_2.
#[derive(Debug, Clone)]
pub struct SmallPeriodMatrix {
    pub z: CMat2,
    /// max entry distance between the raw Z and its transpose
    pub symmetry_defect: BigFloat,
}

/// Period integration engine for one newform class.
pub struct PeriodEngine<'a> {
    pub space: &'a ManinSymbolSpace,
    pub class: &'a NewformClass,
    pub basis: EigenformBasis,
    pub lattice: HomologyLattice,
    pub fricke_sign: i64,
    ctx: Ctx,
    /// periods of the four lattice basis vectors: 2-vectors of integrals
    lattice_periods: Vec<[CNum; 2]>,
    /// solve matrix [lattice basis; orthogonal complement] in K-coordinates
    full_rows: IntMat,
    pub error_bound: BigFloat,
}

impl std::fmt::Debug for PeriodEngine<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PeriodEngine({}, {} bits)", self.class.label, self.ctx.bits())
    }
}

/// Series length so that sum_{n > M} bound * n^{3/2} rho^n < 2^eps_log2.
fn series_length(coeff_bound: f64, rho: f64, eps_log2: f64) -> usize {
    assert!(rho < 1.0);
    let log_rho = rho.ln();
    let tail_log = |m: f64| -> f64 {
        coeff_bound.max(1.0).ln() + 1.5 * m.ln() + m * log_rho + 3f64.ln()
            - 3.0 * (1.0 - rho).ln()
    };
    let target = eps_log2 * std::f64::consts::LN_2;
    let mut m = 16f64;
    while tail_log(m) > target {
        m *= 1.25;
        assert!(m < 5e8, "series length out of range");
    }
    m.ceil() as usize
}

struct Probe {
    gamma: [i64; 4],
    /// coordinates of the cycle class in the lattice basis
    alpha: Vec<BigRational>,
}

impl<'a> PeriodEngine<'a> {
    /// Build the engine: decide the Fricke sign, pick probe cycles, compute
    /// their periods, and solve for the periods of the lattice basis.
    pub fn new(
        space: &'a ManinSymbolSpace,
        class: &'a NewformClass,
        lattice: HomologyLattice,
        bits: usize,
    ) -> Result<PeriodEngine<'a>, PeriodError> {
        let ctx = Ctx::new(bits);
        let n = space.level;

        // Fricke sign from the exact symbol action: W acts as +-identity on
        // the class lattice
        let fricke_sign = {
            let img = space.fricke_vector(lattice.basis_l.row(0));
            let coords = coords_in_rowspace(&lattice.basis_l, &img)
                .expect("Fricke involution preserves the class");
            let eps = coords[0].clone();
            assert!(
                eps.clone().abs().is_one()
                    && coords[1].is_zero()
                    && coords[2].is_zero()
                    && coords[3].is_zero(),
                "W_N acts as a scalar +-1 on a newform class"
            );
            for i in 1..4 {
                let img = space.fricke_vector(lattice.basis_l.row(i));
                let c = coords_in_rowspace(&lattice.basis_l, &img).unwrap();
                for (j, cj) in c.iter().enumerate() {
                    let expect = if j == i { eps.clone() } else { BigRational::zero() };
                    assert_eq!(*cj, expect, "scalar Fricke action");
                }
            }
            if eps.is_one() {
                1i64
            } else {
                -1i64
            }
        };

        // orthogonal complement of the class inside the cuspidal lattice:
        // the period functionals vanish there, since distinct Hecke isotypic
        // pieces are orthogonal under the intersection pairing
        let kdim = space.cuspidal.rows;
        let mut pair_cols = IntMat::zeros(kdim, 4);
        for i in 0..kdim {
            let ki = space.cuspidal.row(i).to_vec();
            for j in 0..4 {
                let v = intersection_of_vectors(space, &ki, lattice.basis_l.row(j));
                pair_cols.set(i, j, v);
            }
        }
        let complement = pair_cols.transpose().kernel();
        assert_eq!(complement.rows, kdim - 4, "orthogonal complement rank");

        // class basis in K-coordinates
        let class_k = {
            let mut rows = Vec::new();
            for i in 0..4 {
                let coords = space
                    .cuspidal_coords(lattice.basis_l.row(i))
                    .expect("lattice is cuspidal");
                rows.push(
                    coords
                        .iter()
                        .map(|c| {
                            assert!(c.is_integer());
                            c.numer().clone()
                        })
                        .collect::<Vec<_>>(),
                );
            }
            IntMat::from_rows(rows)
        };
        let mut full_rows_v = Vec::new();
        for i in 0..4 {
            full_rows_v.push(class_k.row(i).to_vec());
        }
        for i in 0..complement.rows {
            full_rows_v.push(complement.row(i).to_vec());
        }
        let full_rows = IntMat::from_rows(full_rows_v);

        // collect probe cycles until their class projections span Q^4, plus
        // one spare as a consistency check
        let mut chosen: Vec<Probe> = Vec::new();
        let mut rank = 0usize;
        let mut checker: Option<Probe> = None;
        'search: for a in 1..=64i64 {
            for b in [1i64, -1, 2, -2, 3, -3] {
                if a.extended_gcd(&(b * n).abs().max(1)).gcd != 1 {
                    continue;
                }
                let bn = (b * n).abs();
                let d0 = mod_inverse(a.rem_euclid(bn), bn);
                for lift in 0..2i64 {
                    let d = d0 + lift * bn;
                    if d == 0 {
                        continue;
                    }
                    let c = (a * d - 1) / b;
                    debug_assert_eq!(a * d - b * c, 1);
                    debug_assert_eq!(c % n, 0);
                    let gamma = [a, b, c, d];
                    let psi = space.path_vector(Cusp::zero(), Cusp::new(b, d));
                    let Some(kc) = space.cuspidal_coords(&psi) else { continue };
                    let kvec: Vec<BigInt> = kc
                        .iter()
                        .map(|x| {
                            assert!(x.is_integer());
                            x.numer().clone()
                        })
                        .collect();
                    let coords = coords_in_rowspace(&full_rows, &kvec)
                        .expect("cuspidal vector decomposes");
                    let alpha: Vec<BigRational> = coords[0..4].to_vec();
                    if alpha.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    let probe = Probe { gamma, alpha };
                    let mut rows: Vec<Vec<BigRational>> =
                        chosen.iter().map(|p| p.alpha.clone()).collect();
                    rows.push(probe.alpha.clone());
                    let r = RatMat::from_rows(rows).rank();
                    if r > rank {
                        chosen.push(probe);
                        rank = r;
                    } else if rank == 4 {
                        checker = Some(probe);
                        break 'search;
                    }
                }
            }
        }
        if rank != 4 {
            return Err(PeriodError::SpanFailure);
        }

        // series length demanded by the worst probe
        let max_a = chosen.iter().map(|p| p.gamma[0]).max().unwrap();
        let rho_worst = (-2.0 * std::f64::consts::PI / (max_a as f64 * (n as f64).sqrt())).exp();
        let eps_log2 = -((bits as f64) + 8.0);
        let n_terms = series_length(1.0, rho_worst, eps_log2).max(32);
        let basis = integral_basis(space, class, n_terms);
        let n_terms2 = series_length(basis.coeff_bound, rho_worst, eps_log2).max(32);
        let basis =
            if n_terms2 > n_terms { integral_basis(space, class, n_terms2) } else { basis };

        let mut engine = PeriodEngine {
            space,
            class,
            basis,
            lattice,
            fricke_sign,
            ctx,
            lattice_periods: Vec::new(),
            full_rows,
            error_bound: BigFloat::from_i8(0, 64),
        };

        // F_0 = (1 - eps) G(i / sqrt N)
        let mut err_acc = engine.ctx.zero();
        let f0 = {
            let ctx = &engine.ctx;
            let inv_sqrt_n = ctx.div(&ctx.one(), &ctx.sqrt(&ctx.from_i64(n)));
            if fricke_sign == 1 {
                [CNum::zero(ctx), CNum::zero(ctx)]
            } else {
                let z = CNum::new(ctx.zero(), inv_sqrt_n);
                let (g, e) = engine.eichler_g(&z);
                err_acc = ctx.add(&err_acc, &ctx.add(&e, &e));
                [g[0].add(&g[0], ctx), g[1].add(&g[1], ctx)]
            }
        };

        // probe periods
        let mut probe_periods: Vec<[CNum; 2]> = Vec::new();
        for probe in &chosen {
            let (pp, e) = engine.probe_period(probe, &f0);
            probe_periods.push(pp);
            err_acc = engine.ctx.add(&err_acc, &e);
        }

        // lattice periods = probe periods * M^{-1}, column k of M being the
        // alpha-coordinates of probe k
        let m = RatMat::from_rows(
            (0..4).map(|r| chosen.iter().map(|p| p.alpha[r].clone()).collect()).collect(),
        );
        let minv = m.inverse().map_err(|_| PeriodError::SpanFailure)?;
        {
            let ctx = &engine.ctx;
            let mut lattice_periods: Vec<[CNum; 2]> = Vec::new();
            for col in 0..4 {
                let mut acc = [CNum::zero(ctx), CNum::zero(ctx)];
                for (k, pp) in probe_periods.iter().enumerate() {
                    let w = ctx.from_rational(minv.at(k, col));
                    acc[0] = acc[0].add(&pp[0].mul_real(&w, ctx), ctx);
                    acc[1] = acc[1].add(&pp[1].mul_real(&w, ctx), ctx);
                }
                lattice_periods.push(acc);
            }
            engine.lattice_periods = lattice_periods;
        }
        engine.error_bound = err_acc;

        // consistency check on the spare probe
        if let Some(chk) = checker {
            let (pp, _) = engine.probe_period(&chk, &f0);
            let pred = engine.period_of_alpha(&chk.alpha);
            let ctx = &engine.ctx;
            let tol = ctx.pow2(-(ctx.bits() as i64) / 2);
            for j in 0..2 {
                let d = pp[j].dist(&pred[j], ctx);
                if d.cmp(&tol).is_some_and(|c| c > 0) {
                    return Err(PeriodError::PrecisionLoss(format!(
                        "probe consistency residual 2^{:?} at {} bits",
                        d.exponent(),
                        ctx.bits()
                    )));
                }
            }
        }

        Ok(engine)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    /// G(z) for both differentials, with an error bound (tail + rounding).
    fn eichler_g(&self, z: &CNum) -> ([CNum; 2], BigFloat) {
        let ctx = &self.ctx;
        // reduce the real part by periodicity
        let shift = ctx.round_to_bigint(&z.re);
        let zre = ctx.sub(&z.re, &ctx.from_bigint(&shift));
        let two_pi = ctx.two_pi();
        let mut minus_two_pi_y = ctx.mul(&two_pi, &z.im);
        minus_two_pi_y.inv_sign();
        let r = ctx.exp(&minus_two_pi_y);
        let theta = ctx.mul(&two_pi, &zre);
        let (s, c) = ctx.sin_cos(&theta);
        let q = CNum::new(ctx.mul(&r, &c), ctx.mul(&r, &s));
        let mut qn = CNum::one(ctx);
        let mut acc = [CNum::zero(ctx), CNum::zero(ctx)];
        let nmax = self.basis.n_terms;
        for n in 1..=nmax {
            qn = qn.mul(&q, ctx);
            for (j, f) in [&self.basis.f1, &self.basis.f2].into_iter().enumerate() {
                let cn = &f[n];
                if cn.is_zero() {
                    continue;
                }
                let w = ctx.div(&ctx.from_bigint(cn), &ctx.from_i64(n as i64));
                acc[j] = acc[j].add(&qn.mul_real(&w, ctx), ctx);
            }
        }
        let rho = Ctx::f64_of(&r);
        let tail_log2 = {
            let m = nmax as f64;
            (self.basis.coeff_bound.max(1.0).ln() + 1.5 * m.ln() + m * rho.ln() + 3f64.ln()
                - 3.0 * (1.0 - rho).ln())
                / std::f64::consts::LN_2
        };
        let mut err = ctx.pow2((tail_log2.ceil() as i64).max(-(ctx.bits() as i64) - 40));
        let rounding = ctx.pow2(-(ctx.bits() as i64) - 6 + (nmax as f64).log2() as i64);
        err = ctx.add(&err, &rounding);
        (acc, err)
    }

    /// Period of a probe cycle.
    fn probe_period(&self, probe: &Probe, f0: &[CNum; 2]) -> ([CNum; 2], BigFloat) {
        let ctx = &self.ctx;
        let [a, b, c, d] = probe.gamma;
        let n = self.space.level;
        // z = (-b + i/sqrt N) / a
        let inv_sqrt_n = ctx.div(&ctx.one(), &ctx.sqrt(&ctx.from_i64(n)));
        let z = CNum::new(
            ctx.div(&ctx.from_i64(-b), &ctx.from_i64(a)),
            ctx.div(&inv_sqrt_n, &ctx.from_i64(a)),
        );
        // gamma z = (a z + b) / (c z + d), then w_N: u -> -1/(N u)
        let num = z.mul_real(&ctx.from_i64(a), ctx).add(&CNum::real(ctx, ctx.from_i64(b)), ctx);
        let den = z.mul_real(&ctx.from_i64(c), ctx).add(&CNum::real(ctx, ctx.from_i64(d)), ctx);
        let gz = num.div(&den, ctx);
        let wgz = gz.mul_real(&ctx.from_i64(-n), ctx).recip(ctx);
        debug_assert!(!wgz.im.is_negative());
        let (g1, e1) = self.eichler_g(&z);
        let (g2, e2) = self.eichler_g(&wgz);
        let mut out = [CNum::zero(ctx), CNum::zero(ctx)];
        for j in 0..2 {
            // P = G(z) - eps G(w gamma z) + eps F0
            let t = if self.fricke_sign == 1 {
                g1[j].sub(&g2[j], ctx).add(&f0[j], ctx)
            } else {
                g1[j].add(&g2[j], ctx).sub(&f0[j], ctx)
            };
            out[j] = t;
        }
        let err = ctx.add(&ctx.add(&e1, &e2), &ctx.pow2(-(ctx.bits() as i64) - 2));
        (out, err)
    }

    /// Period pair of a vector given by lattice-basis coordinates.
    fn period_of_alpha(&self, alpha: &[BigRational]) -> [CNum; 2] {
        let ctx = &self.ctx;
        let mut acc = [CNum::zero(ctx), CNum::zero(ctx)];
        for (i, a) in alpha.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let w = ctx.from_rational(a);
            acc[0] = acc[0].add(&self.lattice_periods[i][0].mul_real(&w, ctx), ctx);
            acc[1] = acc[1].add(&self.lattice_periods[i][1].mul_real(&w, ctx), ctx);
        }
        acc
    }

    /// Period integral of an arbitrary cuspidal symbol (L-coordinates):
    /// (int 2 pi i f_1, int 2 pi i f_2) over its class projection.
    pub fn period_integral(&self, v: &[BigInt]) -> [CNum; 2] {
        let kc = self.space.cuspidal_coords(v).expect("cuspidal symbol");
        let kvec: Vec<BigInt> = kc
            .iter()
            .map(|x| {
                assert!(x.is_integer());
                x.numer().clone()
            })
            .collect();
        let coords = coords_in_rowspace(&self.full_rows, &kvec).expect("decomposes");
        self.period_of_alpha(&coords[0..4])
    }

    /// The big period matrix over a symplectic basis of the primitive
    /// intersection form, oriented so that Im Z is positive definite.
    pub fn big_period_matrix(&self) -> Result<BigPeriodMatrix, PeriodError> {
        let ctx = &self.ctx;
        if !is_principally_polarized(&self.lattice.intersection) {
            return Err(PeriodError::NotPrincipal);
        }
        let (prim, content) = primitive_form(&self.lattice.intersection);
        let t = symplectic_reduce(&prim).map_err(|_| PeriodError::NotPrincipal)?;
        for flip in [false, true] {
            let tt = if flip {
                let mut f = IntMat::zeros(4, 4);
                f.set(2, 0, BigInt::one());
                f.set(3, 1, BigInt::one());
                f.set(0, 2, BigInt::from(-1));
                f.set(1, 3, BigInt::from(-1));
                t.mul(&f)
            } else {
                t.clone()
            };
            debug_assert_eq!(tt.transpose().mul(&prim).mul(&tt), standard_j(2));
            let mut cols: Vec<[CNum; 2]> = Vec::new();
            for j in 0..4 {
                let alpha: Vec<BigRational> =
                    (0..4).map(|i| BigRational::from(tt.at(i, j).clone())).collect();
                cols.push(self.period_of_alpha(&alpha));
            }
            // differential order (f2, f1): row 1 of Omega integrates f2.
            // Any basis is admissible; this order reproduces the models of
            // the reference computations directly (the other order gives the
            // x -> 1/x model).
            let omega1 = CMat2::from_cols(
                [cols[0][1].clone(), cols[0][0].clone()],
                [cols[1][1].clone(), cols[1][0].clone()],
            );
            let omega2 = CMat2::from_cols(
                [cols[2][1].clone(), cols[2][0].clone()],
                [cols[3][1].clone(), cols[3][0].clone()],
            );
            let det = omega1.det(ctx);
            if ctx.abs_lt_pow2(&det.abs(ctx), -(ctx.bits() as i64) / 2) {
                return Err(PeriodError::SingularOmega1);
            }
            let zt = omega1.inverse(ctx).mul(&omega2, ctx);
            let (tr, dt) = im_trace_det(ctx, &zt);
            if tr.is_positive() && dt.is_positive() {
                return Ok(BigPeriodMatrix {
                    omega1,
                    omega2,
                    symplectic_transform: tt,
                    polarization_content: content,
                    fricke_sign: self.fricke_sign,
                    error_bound: self.error_bound.clone(),
                });
            }
        }
        Err(PeriodError::IndefiniteZ)
    }
}

/// trace and determinant of Im(M).
fn im_trace_det(ctx: &Ctx, m: &CMat2) -> (BigFloat, BigFloat) {
    let tr = ctx.add(&m.a.im, &m.d.im);
    let dt = ctx.sub(&ctx.mul(&m.a.im, &m.d.im), &ctx.mul(&m.b.im, &m.c.im));
    (tr, dt)
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

/// Convenience: build the engine and the big period matrix for a class.
pub fn big_period_matrix<'a>(
    space: &'a ManinSymbolSpace,
    class: &'a NewformClass,
    bits: usize,
) -> Result<(PeriodEngine<'a>, BigPeriodMatrix), PeriodError> {
    let lattice = integral_homology(space, class);
    if !is_principally_polarized(&lattice.intersection) {
        return Err(PeriodError::NotPrincipal);
    }
    let engine = PeriodEngine::new(space, class, lattice, bits)?;
    let omega = engine.big_period_matrix()?;
    Ok((engine, omega))
}

/// Z = Omega_1^{-1} Omega_2, symmetrized by averaging with its transpose;
/// the symmetry defect is reported. Errors if Im Z is not positive definite.
pub fn small_period_matrix(
    ctx: &Ctx,
    omega: &BigPeriodMatrix,
) -> Result<SmallPeriodMatrix, PeriodError> {
    let det = omega.omega1.det(ctx);
    if ctx.abs_lt_pow2(&det.abs(ctx), -(ctx.bits() as i64)) {
        return Err(PeriodError::SingularOmega1);
    }
    let raw = omega.omega1.inverse(ctx).mul(&omega.omega2, ctx);
    let defect = raw.max_dist(&raw.transpose(), ctx);
    let half = CNum::from_f64(ctx, 0.5, 0.0);
    let z = raw.add(&raw.transpose(), ctx).scale(&half, ctx);
    let (tr, dt) = im_trace_det(ctx, &z);
    if !(tr.is_positive() && dt.is_positive()) {
        return Err(PeriodError::IndefiniteZ);
    }
    Ok(SmallPeriodMatrix { z, symmetry_defect: defect })
}
