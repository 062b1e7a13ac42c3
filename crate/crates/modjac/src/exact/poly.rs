//! Univariate polynomials over the rationals: the hyperelliptic models
//! y^2 = F(x) live here, together with resultants and discriminants.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Polynomial with rational coefficients, stored ascending by degree with no
/// trailing zero (the zero polynomial is an empty coefficient list).
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl std::fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for RatPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = if c.is_one() && i > 0 {
                String::new()
            } else if (-c).is_one() && i > 0 {
                "-".to_string()
            } else {
                format!("{c}")
            };
            let term = match i {
                0 => format!("{c}"),
                1 => format!("{cs}x"),
                _ => format!("{cs}x^{i}"),
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if term.starts_with('-') {
                write!(f, " - {}", &term[1..])?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int_coeffs(coeffs: &[BigInt]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    /// x^n
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        RatPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 alongside `is_zero`.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Integer coefficient vector, if all coefficients are integers.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        RatPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Polynomial division: returns (quotient, remainder).
    pub fn div_rem(&self, other: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = other.degree();
        let lc = other.leading();
        if rem.len() <= d {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        while rem.len() > d && !(rem.len() == d + 1 && d == 0 && other.coeffs.is_empty()) {
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
            let k = rem.len() - 1 - d;
            let f = rem.last().unwrap() / &lc;
            for (i, c) in other.coeffs.iter().enumerate() {
                let v = &rem[k + i] - &f * c;
                rem[k + i] = v;
            }
            quot[k] = f;
            rem.pop();
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Exact divisibility test.
    pub fn divides(&self, other: &RatPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * BigRational::from(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// F(x + a)
    pub fn shift(&self, a: &BigRational) -> RatPoly {
        // Horner on (x + a)
        let mut acc = RatPoly::zero();
        let shift = RatPoly::from_coeffs(vec![a.clone(), BigRational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&shift);
            acc = acc.add(&RatPoly::from_coeffs(vec![c.clone()]));
        }
        acc
    }

    /// F(c*x)
    pub fn dilate(&self, c: &BigRational) -> RatPoly {
        let mut p = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a * &p;
                p = &p * c;
                v
            })
            .collect();
        RatPoly::from_coeffs(coeffs)
    }

    /// x^n * F(1/x) for the given homogenization degree n >= deg F.
    pub fn reverse(&self, n: usize) -> RatPoly {
        assert!(n >= self.degree());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[n - i] = c.clone();
        }
        RatPoly::from_coeffs(out)
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let lc = a.leading();
            a.scale(&(BigRational::one() / lc))
        }
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Resultant Res(self, other) via the Sylvester matrix with fraction-free
    /// Bareiss elimination after clearing denominators.
    pub fn resultant(&self, other: &RatPoly) -> BigRational {
        if self.is_zero() || other.is_zero() {
            return BigRational::zero();
        }
        let m = self.degree();
        let n = other.degree();
        if m == 0 {
            return self.coeff(0).pow(n as i32);
        }
        if n == 0 {
            return other.coeff(0).pow(m as i32);
        }
        let size = m + n;
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(size);
        for i in 0..n {
            let mut row = vec![BigRational::zero(); size];
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        for i in 0..m {
            let mut row = vec![BigRational::zero(); size];
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
        let rm = super::RatMat::from_rows(rows);
        let (im, den) = rm.to_integer_scaled();
        let det = im.det();
        BigRational::new(det, den.pow(size as u32))
    }

    /// Discriminant disc(F) = (-1)^(d(d-1)/2) Res(F, F') / lc(F).
    pub fn discriminant(&self) -> BigRational {
        let d = self.degree();
        assert!(d >= 1, "discriminant needs degree >= 1");
        let res = self.resultant(&self.derivative());
        let sign = if (d * (d - 1) / 2) % 2 == 0 { 1 } else { -1 };
        let out = res / self.leading();
        if sign < 0 { -out } else { out }
    }

    /// Primitive integer model: clears denominators and divides by the
    /// numerator content, preserving the sign of the leading coefficient.
    pub fn primitive_integer(&self) -> (Vec<BigInt>, BigRational) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if content.is_zero() {
            content = BigInt::one();
        }
        let out: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();
        // self = (content/den) * out
        (out, BigRational::new(content, den))
    }
}
