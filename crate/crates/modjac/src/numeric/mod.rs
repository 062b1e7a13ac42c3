//! Arbitrary-precision real and complex arithmetic on top of `astro_float`,
//! plus the few dense complex matrix operations the period pipeline needs.
//!
//! All operations go through a [`Ctx`] carrying the working precision in bits
//! and a cache of computed constants. Values do not remember a precision of
//! their own beyond their mantissa length; the context decides every
//! operation's target precision.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero as _;

mod cmat;
pub use cmat::CMat2;

/// Numeric context: working precision (bits) and cached constants.
pub struct Ctx {
    prec: usize,
    rm: RoundingMode,
    consts: RefCell<Consts>,
}

impl Ctx {
    /// Context with the given mantissa precision in bits (a few guard bits
    /// are added internally).
    pub fn new(bits: usize) -> Self {
        Ctx {
            prec: bits + 16,
            rm: RoundingMode::ToEven,
            consts: RefCell::new(Consts::new().expect("constants cache")),
        }
    }

    /// Requested precision in bits (without guard bits).
    pub fn bits(&self) -> usize {
        self.prec - 16
    }

    pub(crate) fn p(&self) -> usize {
        self.prec
    }

    pub(crate) fn rm(&self) -> RoundingMode {
        self.rm
    }

    pub fn pi(&self) -> BigFloat {
        self.consts.borrow_mut().pi(self.prec, self.rm)
    }

    pub fn two_pi(&self) -> BigFloat {
        let pi = self.pi();
        pi.add(&pi, self.prec, self.rm)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i8(0, self.prec)
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_i8(1, self.prec)
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.prec)
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.prec)
    }

    /// 2^k as a float, for tolerance thresholds.
    pub fn pow2(&self, k: i64) -> BigFloat {
        let mut x = self.one();
        x.set_exponent((1 + k).try_into().expect("exponent range"));
        x
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.prec, self.rm)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.prec, self.rm)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.prec, self.rm)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.prec, self.rm)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.prec, self.rm)
    }

    pub fn exp(&self, a: &BigFloat) -> BigFloat {
        a.exp(self.prec, self.rm, &mut self.consts.borrow_mut())
    }

    pub fn ln(&self, a: &BigFloat) -> BigFloat {
        a.ln(self.prec, self.rm, &mut self.consts.borrow_mut())
    }

    pub fn sin_cos(&self, a: &BigFloat) -> (BigFloat, BigFloat) {
        let mut cc = self.consts.borrow_mut();
        (a.sin(self.prec, self.rm, &mut cc), a.cos(self.prec, self.rm, &mut cc))
    }

    pub fn atan2(&self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        // principal value in (-pi, pi]
        let mut cc = self.consts.borrow_mut();
        if x.is_zero() && y.is_zero() {
            return self.zero();
        }
        if x.is_positive() && !x.is_zero() {
            return y.div(x, self.prec, self.rm).atan(self.prec, self.rm, &mut cc);
        }
        let pi = cc.pi(self.prec, self.rm);
        if x.is_zero() {
            let half = pi.div(&self.from_i64(2), self.prec, self.rm);
            return if y.is_positive() { half } else { half.neg() };
        }
        let base = y.div(x, self.prec, self.rm).atan(self.prec, self.rm, &mut cc);
        if y.is_negative() {
            base.sub(&pi, self.prec, self.rm)
        } else {
            base.add(&pi, self.prec, self.rm)
        }
    }

    /// Convert an arbitrary-precision integer exactly (up to rounding at the
    /// working precision).
    pub fn from_bigint(&self, v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_u64_digits();
        let mut acc = self.zero();
        let shift = self.from_f64(18446744073709551616.0); // 2^64, exact
        for d in digits.iter().rev() {
            acc = self.mul(&acc, &shift);
            acc = self.add(&acc, &BigFloat::from_u64(*d, self.prec));
        }
        if sign == num_bigint::Sign::Minus {
            acc.inv_sign();
        }
        acc
    }

    pub fn from_rational(&self, v: &BigRational) -> BigFloat {
        self.div(&self.from_bigint(v.numer()), &self.from_bigint(v.denom()))
    }

    /// Exact value of a finite float as a rational.
    pub fn to_rational(x: &BigFloat) -> BigRational {
        if x.is_zero() {
            return BigRational::zero();
        }
        let (words, n, sign, e, _) = x.as_raw_parts().expect("finite float");
        let mut m = BigInt::zero();
        for w in words.iter().rev() {
            m = (m << 64) + BigInt::from(*w);
        }
        if sign == Sign::Neg {
            m = -m;
        }
        // value = m * 2^(e - total_bits), mantissa stored as a fraction in [1/2, 1)
        let total_bits = words.len() as i64 * 64;
        debug_assert!(n as i64 <= total_bits);
        let shift = e as i64 - total_bits;
        let num = BigRational::from(m);
        if shift >= 0 {
            num * BigRational::from(BigInt::from(1) << shift as usize)
        } else {
            num / BigRational::from(BigInt::from(1) << (-shift) as usize)
        }
    }

    /// Nearest integer (ties toward +inf; used for argument reduction).
    pub fn round_to_bigint(&self, x: &BigFloat) -> BigInt {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        (Self::to_rational(x) + half).floor().to_integer()
    }

    /// abs(x) < 2^k
    pub fn abs_lt_pow2(&self, x: &BigFloat, k: i64) -> bool {
        if x.is_zero() {
            return true;
        }
        x.abs().cmp(&self.pow2(k)).is_some_and(|c| c < 0)
    }

    pub fn f64_of(x: &BigFloat) -> f64 {
        // via exact rational; cheap enough for diagnostics
        if x.is_zero() {
            return 0.0;
        }
        let e = x.exponent().unwrap_or(0);
        if e.abs() > 900 {
            // out of f64 range; saturate for diagnostics
            return if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        let r = Self::to_rational(x);
        let num = r.numer();
        let den = r.denom();
        let scale = (num.bits() as i64 - 70).max(0) as usize;
        let n2 = num >> scale;
        let d2 = den >> (scale.min(den.bits().saturating_sub(1) as usize));
        let nf: f64 = n2.to_string().parse().unwrap_or(f64::NAN);
        let df: f64 = d2.to_string().parse().unwrap_or(f64::NAN);
        let adj = scale as i64 - (scale.min(den.bits().saturating_sub(1) as usize)) as i64;
        nf / df * 2f64.powi(adj as i32)
    }
}

impl fmt::Debug for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ctx({} bits)", self.bits())
    }
}

/// Complex number at context precision.
#[derive(Clone)]
pub struct CNum {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl fmt::Debug for CNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6e} + {:.6e}i", Ctx::f64_of(&self.re), Ctx::f64_of(&self.im))
    }
}

impl CNum {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        CNum { re, im }
    }

    pub fn zero(ctx: &Ctx) -> Self {
        CNum { re: ctx.zero(), im: ctx.zero() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        CNum { re: ctx.one(), im: ctx.zero() }
    }

    pub fn i(ctx: &Ctx) -> Self {
        CNum { re: ctx.zero(), im: ctx.one() }
    }

    pub fn from_f64(ctx: &Ctx, re: f64, im: f64) -> Self {
        CNum { re: ctx.from_f64(re), im: ctx.from_f64(im) }
    }

    pub fn real(ctx: &Ctx, re: BigFloat) -> Self {
        CNum { re, im: ctx.zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &CNum, c: &Ctx) -> CNum {
        CNum { re: c.add(&self.re, &o.re), im: c.add(&self.im, &o.im) }
    }

    pub fn sub(&self, o: &CNum, c: &Ctx) -> CNum {
        CNum { re: c.sub(&self.re, &o.re), im: c.sub(&self.im, &o.im) }
    }

    pub fn mul(&self, o: &CNum, c: &Ctx) -> CNum {
        CNum {
            re: c.sub(&c.mul(&self.re, &o.re), &c.mul(&self.im, &o.im)),
            im: c.add(&c.mul(&self.re, &o.im), &c.mul(&self.im, &o.re)),
        }
    }

    pub fn mul_real(&self, r: &BigFloat, c: &Ctx) -> CNum {
        CNum { re: c.mul(&self.re, r), im: c.mul(&self.im, r) }
    }

    /// self * i
    pub fn mul_i(&self, _c: &Ctx) -> CNum {
        let mut re = self.im.clone();
        re.inv_sign();
        CNum { re, im: self.re.clone() }
    }

    pub fn neg(&self) -> CNum {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.inv_sign();
        im.inv_sign();
        CNum { re, im }
    }

    pub fn conj(&self) -> CNum {
        let mut im = self.im.clone();
        im.inv_sign();
        CNum { re: self.re.clone(), im }
    }

    pub fn abs2(&self, c: &Ctx) -> BigFloat {
        c.add(&c.mul(&self.re, &self.re), &c.mul(&self.im, &self.im))
    }

    pub fn abs(&self, c: &Ctx) -> BigFloat {
        c.sqrt(&self.abs2(c))
    }

    pub fn recip(&self, c: &Ctx) -> CNum {
        let d = self.abs2(c);
        let mut im = c.div(&self.im, &d);
        im.inv_sign();
        CNum { re: c.div(&self.re, &d), im }
    }

    pub fn div(&self, o: &CNum, c: &Ctx) -> CNum {
        self.mul(&o.recip(c), c)
    }

    /// exp(self)
    pub fn exp(&self, c: &Ctx) -> CNum {
        let r = c.exp(&self.re);
        let (s, co) = c.sin_cos(&self.im);
        CNum { re: c.mul(&r, &co), im: c.mul(&r, &s) }
    }

    /// Principal square root.
    pub fn sqrt(&self, c: &Ctx) -> CNum {
        if self.im.is_zero() {
            if self.re.is_negative() {
                let mut m = self.re.clone();
                m.inv_sign();
                return CNum { re: c.zero(), im: c.sqrt(&m) };
            }
            return CNum { re: c.sqrt(&self.re), im: c.zero() };
        }
        let r = self.abs(c);
        let two = c.from_i64(2);
        let re = c.sqrt(&c.div(&c.add(&r, &self.re), &two));
        let mut im = c.sqrt(&c.div(&c.sub(&r, &self.re), &two));
        if self.im.is_negative() {
            im.inv_sign();
        }
        CNum { re, im }
    }

    pub fn powi(&self, mut n: u64, c: &Ctx) -> CNum {
        let mut base = self.clone();
        let mut acc = CNum::one(c);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, c);
            }
            base = base.mul(&base, c);
            n >>= 1;
        }
        acc
    }

    /// |self - other|
    pub fn dist(&self, o: &CNum, c: &Ctx) -> BigFloat {
        self.sub(o, c).abs(c)
    }
}
