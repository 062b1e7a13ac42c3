//! Point counting for y^2 = F(x) over small prime fields F_p and F_{p^2},
//! via the quadratic character chi: #C(F_p) = p + sum_x (chi(F(x))) + 1
//! plus the points at infinity (2, 1 or 0 according to the degree and the
//! leading coefficient).

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exact::RatPoly;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("bad reduction at {p}")]
    BadReduction { p: i64 },
    #[error("p = {p} is not an odd prime")]
    BadPrime { p: i64 },
}

pub fn is_prime(n: i64) -> bool {
    crate::modsym::decompose::is_prime_i64(n)
}

/// Reduce a rational polynomial mod p; None if a denominator vanishes.
pub fn reduce_mod_p(f: &RatPoly, p: i64) -> Option<Vec<i64>> {
    let mut out = Vec::with_capacity(f.degree() + 1);
    for c in f.coeffs() {
        let den = c.denom();
        let dm = (den % BigInt::from(p)).to_i64().unwrap();
        if dm == 0 {
            return None;
        }
        let nm = (c.numer() % BigInt::from(p)).to_i64().unwrap().rem_euclid(p);
        let inv = crate::modsym::p1_inv_mod(dm.rem_euclid(p), p);
        out.push((nm * inv).rem_euclid(p));
    }
    Some(out)
}

/// Good reduction at p: p odd, p does not divide the leading coefficient or
/// the discriminant (so the reduced curve is a smooth genus-2 model).
pub fn has_good_reduction(f: &RatPoly, p: i64) -> bool {
    if p == 2 || !is_prime(p) {
        return false;
    }
    let Some(red) = reduce_mod_p(f, p) else { return false };
    if red.last().is_none_or(|&c| c == 0) || red.len() != f.degree() + 1 {
        return false;
    }
    let disc = f.discriminant();
    let pb = BigInt::from(p);
    !(disc.numer() % &pb).is_zero() && !(disc.denom() % &pb).is_zero() && !disc.is_zero()
}

/// #C(F_p) of the smooth projective genus-2 model of y^2 = F(x).
pub fn count_points(f: &RatPoly, p: i64) -> Result<i64, CountError> {
    if p == 2 || !is_prime(p) {
        return Err(CountError::BadPrime { p });
    }
    if !has_good_reduction(f, p) {
        return Err(CountError::BadReduction { p });
    }
    let red = reduce_mod_p(f, p).unwrap();
    // chi table: chi(0) = 0, chi(square) = 1, else -1
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[((x * x) % p) as usize] = 1;
    }
    let mut total = 0i64;
    for x in 0..p {
        let mut v = 0i64;
        for &c in red.iter().rev() {
            v = (v * x + c) % p;
        }
        total += 1 + chi[v as usize];
    }
    // points at infinity
    total += match f.degree() {
        5 => 1,
        6 => {
            let lc = *red.last().unwrap();
            1 + chi[lc as usize]
        }
        d => panic!("degree {d} is not hyperelliptic of genus 2"),
    };
    Ok(total)
}

/// #C(F_{p^2}) via arithmetic in F_p(sqrt(t)) for a non-residue t.
pub fn count_points_p2(f: &RatPoly, p: i64) -> Result<i64, CountError> {
    if p == 2 || !is_prime(p) {
        return Err(CountError::BadPrime { p });
    }
    if !has_good_reduction(f, p) {
        return Err(CountError::BadReduction { p });
    }
    let red = reduce_mod_p(f, p).unwrap();
    // non-residue
    let mut chi = vec![-1i64; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[((x * x) % p) as usize] = 1;
    }
    let t = (2..p).find(|&x| chi[x as usize] == -1).expect("non-residue exists for odd p");
    // squares table in F_{p^2}: mark q = (a + b sqrt t)^2
    let idx = |a: i64, b: i64| (a * p + b) as usize;
    let mut is_sq = vec![false; (p * p) as usize];
    for a in 0..p {
        for b in 0..p {
            let re = (a * a + t * b * b) % p;
            let im = (2 * a * b) % p;
            is_sq[idx(re, im)] = true;
        }
    }
    let mut total = 0i64;
    for a in 0..p {
        for b in 0..p {
            // evaluate F at x = a + b sqrt t
            let (mut vre, mut vim) = (0i64, 0i64);
            for &c in red.iter().rev() {
                let re = (vre * a + t * ((vim * b) % p) + c) % p;
                let im = (vre * b + vim * a) % p;
                vre = re;
                vim = im;
            }
            if vre == 0 && vim == 0 {
                total += 1;
            } else if is_sq[idx(vre, vim)] {
                total += 2;
            }
        }
    }
    total += match f.degree() {
        5 => 1,
        6 => {
            let lc = *red.last().unwrap();
            if is_sq[idx(lc, 0)] {
                2
            } else {
                0
            }
        }
        _ => unreachable!(),
    };
    Ok(total)
}
