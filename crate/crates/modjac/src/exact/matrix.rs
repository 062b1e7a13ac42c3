//! Dense integer and rational matrices with the exact normal forms needed by
//! the homology computations: Hermite and Smith normal forms with transforms,
//! saturated integer kernels, determinants and characteristic polynomials.
//!
//! Sizes here are small (a few hundred at most), so the implementations favor
//! simplicity and exactness over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactError, RatPoly};

/// Dense matrix over the arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl std::fmt::Debug for IntMat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        IntMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_alternating(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if *self.at(i, j) != -self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.at(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                    a.set(i, j, &num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.at(k, k).clone();
        }
        let d = a.at(n - 1, n - 1).clone();
        if sign < 0 { -d } else { d }
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += c * row_j
    fn row_op(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let v = self.at(i, k) + c * self.at(j, k);
            self.set(i, k, v);
        }
    }

    /// col_i += c * col_j
    fn col_op(&mut self, i: usize, j: usize, c: &BigInt) {
        for r in 0..self.rows {
            let v = self.at(r, i) + c * self.at(r, j);
            self.set(r, i, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -self.at(i, k);
            self.set(i, k, v);
        }
    }

    /// Row Hermite normal form: returns (H, U) with U unimodular, H = U*self,
    /// H in row-echelon form with positive pivots and entries above each
    /// pivot reduced modulo it. Zero rows of H come last.
    pub fn hnf_with_transform(&self) -> (IntMat, IntMat) {
        let mut h = self.clone();
        let mut u = IntMat::identity(self.rows);
        let (m, n) = (self.rows, self.cols);
        let mut pivot_row = 0usize;
        for col in 0..n {
            if pivot_row >= m {
                break;
            }
            // reduce all entries below pivot_row in this column to zero via gcd steps
            loop {
                // find row with minimal nonzero |entry| in col at >= pivot_row
                let mut best: Option<usize> = None;
                for i in pivot_row..m {
                    if !h.at(i, col).is_zero()
                        && best.is_none_or(|b| h.at(i, col).abs() < h.at(b, col).abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                h.swap_rows(pivot_row, b);
                u.swap_rows(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..m {
                    if !h.at(i, col).is_zero() {
                        let q = -(h.at(i, col).div_floor(h.at(pivot_row, col)));
                        h.row_op(i, pivot_row, &q);
                        u.row_op(i, pivot_row, &q);
                        if !h.at(i, col).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(pivot_row, col).is_zero() {
                continue;
            }
            if h.at(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            // reduce entries above the pivot
            let p = h.at(pivot_row, col).clone();
            for i in 0..pivot_row {
                if !h.at(i, col).is_zero() {
                    let q = -(h.at(i, col).div_floor(&p));
                    h.row_op(i, pivot_row, &q);
                    u.row_op(i, pivot_row, &q);
                }
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Rank via Hermite form.
    pub fn rank(&self) -> usize {
        let (h, _) = self.hnf_with_transform();
        (0..h.rows).filter(|&i| !h.row(i).iter().all(|x| x.is_zero())).count()
    }

    /// Basis of the integer kernel {x : self * x = 0}, as rows.
    /// The returned lattice is the full kernel, hence saturated.
    pub fn kernel(&self) -> IntMat {
        let (h, u) = self.transpose().hnf_with_transform();
        let mut rows = Vec::new();
        for i in 0..h.rows {
            if h.row(i).iter().all(|x| x.is_zero()) {
                rows.push(u.row(i).to_vec());
            }
        }
        if rows.is_empty() {
            IntMat::zeros(0, self.cols)
        } else {
            IntMat::from_rows(rows)
        }
    }

    /// Smith normal form: returns (U, D, V) with U*self*V = D diagonal,
    /// d_i | d_{i+1}, U and V unimodular, diagonal entries non-negative.
    ///
    /// Pivot selection by minimal absolute value keeps entry growth tame at
    /// the sizes occurring here.
    pub fn smith_normal_form(&self) -> (IntMat, IntMat, IntMat) {
        let mut d = self.clone();
        let mut u = IntMat::identity(self.rows);
        let mut v = IntMat::identity(self.cols);
        let (m, n) = (self.rows, self.cols);
        let r = m.min(n);
        for k in 0..r {
            loop {
                // minimal |entry| in the trailing submatrix
                let mut best: Option<(usize, usize)> = None;
                for i in k..m {
                    for j in k..n {
                        if !d.at(i, j).is_zero()
                            && best.is_none_or(|(bi, bj)| d.at(i, j).abs() < d.at(bi, bj).abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((bi, bj)) = best else { break };
                d.swap_rows(k, bi);
                u.swap_rows(k, bi);
                d.swap_cols(k, bj);
                v.swap_cols(k, bj);
                let mut clean = true;
                for i in k + 1..m {
                    if !d.at(i, k).is_zero() {
                        let q = -(d.at(i, k).div_floor(d.at(k, k)));
                        d.row_op(i, k, &q);
                        u.row_op(i, k, &q);
                        if !d.at(i, k).is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in k + 1..n {
                    if !d.at(k, j).is_zero() {
                        let q = -(d.at(k, j).div_floor(d.at(k, k)));
                        d.col_op(j, k, &q);
                        v.col_op(j, k, &q);
                        if !d.at(k, j).is_zero() {
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                // divisibility: pivot must divide the whole trailing block
                let mut fixed = None;
                'outer: for i in k + 1..m {
                    for j in k + 1..n {
                        if !(d.at(i, j) % d.at(k, k)).is_zero() {
                            fixed = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fixed {
                    Some(i) => {
                        // add offending row to row k and continue reducing
                        d.row_op(k, i, &BigInt::one());
                        u.row_op(k, i, &BigInt::one());
                    }
                    None => break,
                }
            }
            if d.at(k, k).is_negative() {
                d.negate_row(k);
                u.negate_row(k);
            }
        }
        (u, d, v)
    }

    /// Elementary divisors: the nonzero diagonal of the Smith form.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let (_, d, _) = self.smith_normal_form();
        (0..d.rows.min(d.cols))
            .map(|i| d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Monic characteristic polynomial det(xI - self), exact.
    ///
    /// Small matrices use Faddeev-LeVerrier directly over the integers;
    /// larger ones go through a Hessenberg computation modulo several word
    /// size primes glued by CRT under a Hadamard-style coefficient bound.
    pub fn charpoly(&self) -> RatPoly {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return RatPoly::from_int_coeffs(&[BigInt::one()]);
        }
        let coeffs = if n <= 8 { self.charpoly_faddeev() } else { self.charpoly_crt() };
        RatPoly::from_int_coeffs(&coeffs)
    }

    /// Faddeev-LeVerrier; the division by k is exact.
    fn charpoly_faddeev(&self) -> Vec<BigInt> {
        let n = self.rows;
        let mut c = vec![BigInt::zero(); n + 1];
        c[n] = BigInt::one();
        let mut m = IntMat::zeros(n, n); // M_0 = 0
        for k in 1..=n {
            // M_k = A * M_{k-1} + c_{n-k+1} * I
            let mut am = self.mul(&m);
            for i in 0..n {
                let v = am.at(i, i) + &c[n - k + 1];
                am.set(i, i, v);
            }
            m = am;
            let prod = self.mul(&m);
            let tr: BigInt = (0..n).map(|i| prod.at(i, i).clone()).sum();
            c[n - k] = -tr / BigInt::from(k as u64);
        }
        c
    }

    fn charpoly_crt(&self) -> Vec<BigInt> {
        let n = self.rows;
        let max_entry = self
            .data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
            .max(BigInt::one());
        // |c_k| <= C(n,k) * (n^{1/2} * max)^n <= 2^n * (n * max)^n
        let bound_bits = n as u64 * (1 + (n as f64 * 1.0).log2().ceil() as u64)
            + n as u64 * (max_entry.bits() + 1)
            + 8;
        let mut primes = Vec::new();
        let mut acc_bits = 0u64;
        let mut p = (1u64 << 62) - 1;
        while acc_bits <= bound_bits + 1 {
            p = prev_prime(p);
            primes.push(p);
            acc_bits += 61;
            p -= 1;
        }
        let mut residues: Vec<Vec<u64>> = Vec::with_capacity(primes.len());
        for &q in &primes {
            residues.push(self.charpoly_mod(q));
        }
        // CRT per coefficient, symmetric representative
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut x = BigInt::zero();
            let mut modulus = BigInt::one();
            for (i, &q) in primes.iter().enumerate() {
                let qb = BigInt::from(q);
                let r = BigInt::from(residues[i][k]);
                // x' = x + modulus * t, t = (r - x)/modulus mod q
                let mut diff = (&r - &x) % &qb;
                if diff.is_negative() {
                    diff += &qb;
                }
                let minv = modinv_big(&modulus, &qb);
                let t = (diff * minv) % &qb;
                x += &modulus * t;
                modulus *= &qb;
            }
            let half = &modulus >> 1;
            if x > half {
                x -= &modulus;
            }
            out.push(x);
        }
        out
    }

    /// Characteristic polynomial modulo a prime via Hessenberg reduction.
    /// Returns coefficients c_0..c_n of det(xI - A) mod q.
    pub(crate) fn charpoly_mod(&self, q: u64) -> Vec<u64> {
        let n = self.rows;
        let qi = BigInt::from(q);
        let mut h = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut r = self.at(i, j) % &qi;
                if r.is_negative() {
                    r += &qi;
                }
                h[i][j] = u64::try_from(r).unwrap();
            }
        }
        let mulq = |a: u64, b: u64| ((a as u128 * b as u128) % q as u128) as u64;
        // Hessenberg form
        for m in 1..n.saturating_sub(1) {
            // find pivot in column m-1, rows m..n
            if h[m][m - 1] == 0 {
                if let Some(i) = (m + 1..n).find(|&i| h[i][m - 1] != 0) {
                    h.swap(m, i);
                    for row in h.iter_mut() {
                        row.swap(m, i);
                    }
                }
            }
            if h[m][m - 1] == 0 {
                continue;
            }
            let inv = modinv_u64(h[m][m - 1], q);
            for i in m + 1..n {
                if h[i][m - 1] != 0 {
                    let t = mulq(h[i][m - 1], inv);
                    // row_i -= t * row_m ; col_m += t * col_i
                    for j in 0..n {
                        let s = mulq(t, h[m][j]);
                        h[i][j] = (h[i][j] + q - s) % q;
                    }
                    for r in 0..n {
                        let s = mulq(t, h[r][i]);
                        h[r][m] = (h[r][m] + s) % q;
                    }
                }
            }
        }
        // charpoly of Hessenberg matrix by the standard recurrence:
        // p_0 = 1, p_m = (x - h[m-1][m-1]) p_{m-1} - sum_{i=1}^{m-1}
        //   h[m-1-i][m-1] * (prod_{j=1}^{i} h[m-j][m-j-1]) * p_{m-1-i}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut pm = vec![0u64; m + 1];
            let pm1 = &polys[m - 1];
            // (x - a) * p_{m-1}
            let a = h[m - 1][m - 1] % q;
            for (k, &c) in pm1.iter().enumerate() {
                pm[k + 1] = (pm[k + 1] + c) % q;
                let s = mulq(a, c);
                pm[k] = (pm[k] + q - s) % q;
            }
            let mut t = 1u64;
            for i in 1..m {
                t = mulq(t, h[m - i][m - i - 1]);
                if t == 0 {
                    break;
                }
                let b = mulq(h[m - 1 - i][m - 1], t);
                if b == 0 {
                    continue;
                }
                for (k, &c) in polys[m - 1 - i].iter().enumerate() {
                    let s = mulq(b, c);
                    pm[k] = (pm[k] + q - s) % q;
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Evaluate an integer-coefficient polynomial at this matrix.
    pub fn poly_eval(&self, coeffs: &[BigInt]) -> IntMat {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = IntMat::zeros(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.at(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn to_rational(&self) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from(x.clone())).collect(),
        }
    }
}

fn modinv_u64(a: u64, q: u64) -> u64 {
    // extended Euclid; q prime, a != 0 mod q
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (q as i128, (a % q) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    ((t % q as i128 + q as i128) % q as i128) as u64
}

fn modinv_big(a: &BigInt, q: &BigInt) -> BigInt {
    let e = a.extended_gcd(q);
    assert!(e.gcd.is_one());
    let mut x = e.x % q;
    if x.is_negative() {
        x += q;
    }
    x
}

fn prev_prime(mut n: u64) -> u64 {
    loop {
        if is_prime_u64(n) {
            return n;
        }
        n -= 1;
    }
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Clear denominators: returns (M, d) with M integer and self = M / d.
    pub fn to_integer_scaled(&self) -> (IntMat, BigInt) {
        let mut d = BigInt::one();
        for x in &self.data {
            d = d.lcm(x.denom());
        }
        let data = self.data.iter().map(|x| (&d * x.numer()) / x.denom()).collect();
        (IntMat { rows: self.rows, cols: self.cols, data }, d)
    }

    /// Solve self * x = b by Gaussian elimination. Errors on singular.
    pub fn solve(&self, b: &[BigRational]) -> Result<Vec<BigRational>, ExactError> {
        assert!(self.is_square_of(b.len()));
        let n = self.rows;
        let mut a = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let piv = (k..n).find(|&i| !a.at(i, k).is_zero()).ok_or(ExactError::Singular)?;
            if piv != k {
                for j in 0..n {
                    let tmp = a.at(k, j).clone();
                    a.set(k, j, a.at(piv, j).clone());
                    a.set(piv, j, tmp);
                }
                rhs.swap(k, piv);
            }
            let p = a.at(k, k).clone();
            for i in 0..n {
                if i != k && !a.at(i, k).is_zero() {
                    let f = a.at(i, k) / &p;
                    for j in k..n {
                        let v = a.at(i, j) - &f * a.at(k, j);
                        a.set(i, j, v);
                    }
                    let v = &rhs[i] - &f * &rhs[k];
                    rhs[i] = v;
                }
            }
        }
        for k in 0..n {
            rhs[k] = &rhs[k] / a.at(k, k);
        }
        Ok(rhs)
    }

    fn is_square_of(&self, n: usize) -> bool {
        self.rows == n && self.cols == n
    }

    /// Inverse of a square matrix.
    pub fn inverse(&self) -> Result<RatMat, ExactError> {
        assert!(self.rows == self.cols);
        let n = self.rows;
        let mut out = RatMat::zeros(n, n);
        // column-by-column solve is fine at these sizes
        for j in 0..n {
            let mut e = vec![BigRational::zero(); n];
            e[j] = BigRational::one();
            let x = self.solve(&e)?;
            for i in 0..n {
                out.set(i, j, x[i].clone());
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let (m, _) = self.to_integer_scaled();
        m.rank()
    }
}
