//! Fourier coefficients: Hecke eigenvalues extended multiplicatively, and
//! the integral basis of the two-dimensional eigenform space.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::modsym::decompose::NewformClass;
use crate::modsym::space::ManinSymbolSpace;

/// Integral basis (f1, f2) of the space spanned by f and its Galois
/// conjugate: two q-expansions with integer coefficients in echelon form,
/// f1 = q + ..., f2 starting at the first coefficient where the eigenvalues
/// leave Q.
#[derive(Debug, Clone)]
pub struct EigenformBasis {
    pub n_terms: usize,
    /// coefficient of q^n at index n (index 0 unused)
    pub f1: Vec<BigInt>,
    pub f2: Vec<BigInt>,
    /// every |coefficient(n)| is bounded by coeff_bound * d(n) * sqrt(n)
    pub coeff_bound: f64,
}

/// a_n for n = 0..=n_max as pairs (x, y) with a_n = x + y sqrt(m).
pub fn eigenvalue_table(
    space: &ManinSymbolSpace,
    class: &NewformClass,
    n_max: usize,
) -> Vec<(BigRational, BigRational)> {
    let m = BigRational::from(class.radicand.clone());
    let mul = |a: &(BigRational, BigRational), b: &(BigRational, BigRational)| {
        (&a.0 * &b.0 + &a.1 * &b.1 * &m, &a.0 * &b.1 + &a.1 * &b.0)
    };
    let zero = (BigRational::zero(), BigRational::zero());
    let one = (BigRational::one(), BigRational::zero());
    let mut table = vec![zero.clone(); n_max + 1];
    if n_max >= 1 {
        table[1] = one;
    }
    let mut p = 1i64;
    loop {
        p = crate::modsym::decompose::next_prime(p);
        if p as usize > n_max {
            break;
        }
        let ap = class.eigenvalue(space, p);
        // prime powers
        let mut powers = vec![
            (BigRational::one(), BigRational::zero()),
            (ap.0.clone(), ap.1.clone()),
        ];
        loop {
            let k = powers.len();
            if (p as u128).pow(k as u32) > n_max as u128 {
                break;
            }
            let next = if space.level % p == 0 {
                mul(&ap, &powers[k - 1])
            } else {
                // a_{p^{k}} = a_p a_{p^{k-1}} - p a_{p^{k-2}}
                let t = mul(&ap, &powers[k - 1]);
                let pr = BigRational::from(BigInt::from(p));
                (&t.0 - &pr * &powers[k - 2].0, &t.1 - &pr * &powers[k - 2].1)
            };
            powers.push(next);
        }
        // record prime powers
        for (k, apk) in powers.iter().enumerate().skip(1) {
            let pk = (p as u128).pow(k as u32);
            if pk <= n_max as u128 {
                table[pk as usize] = apk.clone();
            }
        }
    }
    // composites with at least two distinct primes, by splitting off the
    // smallest prime power (both factors are strictly smaller, hence filled)
    for n in 2..=n_max {
        let mut nn = n;
        let mut p = 2usize;
        while p * p <= nn {
            if nn % p == 0 {
                break;
            }
            p += 1;
        }
        if p * p > nn {
            p = nn; // n prime
        }
        let mut pk = 1usize;
        while nn % p == 0 {
            nn /= p;
            pk *= p;
        }
        if nn == 1 {
            continue; // prime power, already set
        }
        table[n] = mul(&table[pk].clone(), &table[nn].clone());
    }
    table
}

/// Build the integral basis from the eigenvalue table.
pub fn integral_basis(
    space: &ManinSymbolSpace,
    class: &NewformClass,
    n_terms: usize,
) -> EigenformBasis {
    assert!(n_terms >= 2);
    let table = eigenvalue_table(space, class, n_terms);
    integral_basis_from_table(&class.radicand, &table, n_terms)
}

/// Integral basis from an explicit a_n table (x, y) w.r.t. sqrt(m).
pub fn integral_basis_from_table(
    radicand: &BigInt,
    table: &[(BigRational, BigRational)],
    n_terms: usize,
) -> EigenformBasis {
    // integral coordinates (u, v) w.r.t. the ring of integers basis (1, w):
    // w = (1 + sqrt m)/2 when m = 1 mod 4, else w = sqrt m
    let one_mod_four = radicand.mod_floor(&BigInt::from(4)) == BigInt::one();
    let mut coords: Vec<(BigInt, BigInt)> = Vec::with_capacity(n_terms + 1);
    coords.push((BigInt::zero(), BigInt::zero()));
    for (x, y) in table.iter().take(n_terms + 1).skip(1) {
        let (u, v) = if one_mod_four {
            (x - y, y * BigRational::from(BigInt::from(2)))
        } else {
            (x.clone(), y.clone())
        };
        assert!(u.is_integer() && v.is_integer(), "eigenvalues are algebraic integers");
        coords.push((u.numer().clone(), v.numer().clone()));
    }

    // lattice generated by the coordinate columns, as a 2x2 row basis in
    // Hermite form
    let mut basis: Vec<(BigInt, BigInt)> = Vec::new();
    for &(ref u, ref v) in &coords[1..] {
        if u.is_zero() && v.is_zero() {
            continue;
        }
        basis.push((u.clone(), v.clone()));
        basis = hnf_2d(basis);
        if basis.len() == 2 && basis[0].0.is_one() && basis[1].1.is_one() && basis[1].0.is_zero()
        {
            break;
        }
    }
    assert_eq!(basis.len(), 2, "coordinate lattice has rank 2");
    // dual basis rows (s, t): the forms s*u + t*v; dual lattice = B^{-1} Z^2
    let det = &basis[0].0 * &basis[1].1 - &basis[0].1 * &basis[1].0;
    let dual = [
        (
            BigRational::new(basis[1].1.clone(), det.clone()),
            BigRational::new(-basis[1].0.clone(), det.clone()),
        ),
        (
            BigRational::new(-basis[0].1.clone(), det.clone()),
            BigRational::new(basis[0].0.clone(), det.clone()),
        ),
    ];
    let form = |st: &(BigRational, BigRational)| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero()];
        for (u, v) in &coords[1..] {
            let c = &st.0 * BigRational::from(u.clone()) + &st.1 * BigRational::from(v.clone());
            assert!(c.is_integer(), "dual form takes integer values");
            out.push(c.numer().clone());
        }
        out
    };
    let g1 = form(&dual[0]);
    let g2 = form(&dual[1]);

    // echelonize over Z: pivot of f1 at n = 1 with value +1, pivot of f2 at
    // the first n where (g1, g2) are independent, positive, and f1 reduced
    let (mut f1, mut f2) = (g1, g2);
    if f1[1].is_zero() {
        std::mem::swap(&mut f1, &mut f2);
    }
    assert!(!f1[1].is_zero(), "a_1 = 1 gives a pivot at n = 1");
    // clear f2 at n = 1
    if !f2[1].is_zero() {
        // f1[1] = +-1 since the dual lattice contains the a_1-functional
        assert!(f1[1].clone().abs().is_one(), "leading coefficient is a unit");
        let c = &f2[1] / &f1[1];
        for n in 0..f1.len() {
            let t = &f2[n] - &c * &f1[n];
            f2[n] = t;
        }
    }
    if f1[1].is_negative() {
        for c in f1.iter_mut() {
            *c = -&*c;
        }
    }
    let pivot2 = (1..f2.len()).find(|&n| !f2[n].is_zero()).expect("rank 2");
    if f2[pivot2].is_negative() {
        for c in f2.iter_mut() {
            *c = -&*c;
        }
    }
    // reduce f1 above the f2 pivot
    let q = f1[pivot2].div_floor(&f2[pivot2]);
    if !q.is_zero() {
        for n in 0..f1.len() {
            let t = &f1[n] - &q * &f2[n];
            f1[n] = t;
        }
    }

    // coefficient bound: |u|, |v| <= 2 d(n) sqrt(n), so
    // |s u + t v| <= 2 (|s| + |t|) d(n) sqrt(n)
    let mut bound = 0f64;
    for st in &dual {
        let b = 2.0 * (rat_f64(&st.0).abs() + rat_f64(&st.1).abs());
        bound = bound.max(b);
    }

    EigenformBasis { n_terms, f1, f2, coeff_bound: bound }
}

fn rat_f64(r: &BigRational) -> f64 {
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

/// Hermite form of a small set of rows spanning a sublattice of Z^2.
fn hnf_2d(rows: Vec<(BigInt, BigInt)>) -> Vec<(BigInt, BigInt)> {
    let mut rows: Vec<(BigInt, BigInt)> =
        rows.into_iter().filter(|(a, b)| !a.is_zero() || !b.is_zero()).collect();
    // reduce first column by gcd steps
    loop {
        rows.sort_by(|x, y| {
            let kx = (x.0.is_zero(), x.0.abs());
            let ky = (y.0.is_zero(), y.0.abs());
            kx.cmp(&ky)
        });
        if rows.len() <= 1 {
            break;
        }
        if rows[0].0.is_zero() {
            break;
        }
        let mut changed = false;
        let head = rows[0].clone();
        for r in rows.iter_mut().skip(1) {
            if !r.0.is_zero() {
                let q = r.0.div_floor(&head.0);
                r.0 -= &q * &head.0;
                r.1 -= &q * &head.1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // now at most one row has nonzero first entry; reduce the rest by gcd in
    // the second column
    let mut first: Option<(BigInt, BigInt)> = None;
    let mut second = BigInt::zero();
    for (a, b) in rows {
        if !a.is_zero() {
            debug_assert!(first.is_none());
            first = Some((a, b));
        } else if !b.is_zero() {
            second = if second.is_zero() { b.abs() } else { second.gcd(&b.abs()) };
        }
    }
    let mut out = Vec::new();
    if let Some((a, mut b)) = first {
        let (mut a, s) = if a.is_negative() { (-a, true) } else { (a, false) };
        if s {
            b = -b;
        }
        if !second.is_zero() {
            b = b.mod_floor(&second);
        }
        out.push((std::mem::take(&mut a), b));
    }
    if !second.is_zero() {
        out.push((BigInt::zero(), second));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modsym::{build_space, decompose::decompose};

    #[test]
    fn level_63_integral_basis_matches_the_worked_expansion() {
        let s = build_space(63);
        let classes = decompose(&s);
        let basis = integral_basis(&s, &classes[0], 13);
        // f1 = q + q^4 + q^7 - 6 q^10 + 2 q^13 + ...
        let f1: Vec<i64> = vec![0, 1, 0, 0, 1, 0, 0, 1, 0, 0, -6, 0, 0, 2];
        // f2 = q^2 - 2 q^5 - q^8 + 2 q^11 + ...
        let f2: Vec<i64> = vec![0, 0, 1, 0, 0, -2, 0, 0, -1, 0, 0, 2, 0, 0];
        assert_eq!(basis.f1, f1.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        assert_eq!(basis.f2, f2.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
    }

    #[test]
    fn echelon_shape_and_multiplicativity_at_level_23() {
        let s = build_space(23);
        let classes = decompose(&s);
        let basis = integral_basis(&s, &classes[0], 40);
        assert_eq!(basis.f1[1], BigInt::one());
        // pivot of f2 positive, f1 reduced below it
        let p2 = (1..).find(|&n| !basis.f2[n].is_zero()).unwrap();
        assert!(basis.f2[p2].is_positive());
        // multiplicativity of the eigenvalue table: a_6 = a_2 a_3
        let t = eigenvalue_table(&s, &classes[0], 40);
        let m = BigRational::from(classes[0].radicand.clone());
        let prod = (
            &t[2].0 * &t[3].0 + &t[2].1 * &t[3].1 * &m,
            &t[2].0 * &t[3].1 + &t[2].1 * &t[3].0,
        );
        assert_eq!(t[6], prod);
        // a_4 = a_2^2 - 2
        let sq = (
            &t[2].0 * &t[2].0 + &t[2].1 * &t[2].1 * &m - BigRational::from(BigInt::from(2)),
            &t[2].0 * &t[2].1 * BigRational::from(BigInt::from(2)),
        );
        assert_eq!(t[4], sq);
    }
}
