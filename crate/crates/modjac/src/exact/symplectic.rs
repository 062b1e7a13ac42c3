//! Symplectic reduction of an integral alternating pairing.
//!
//! Used to pick a symplectic homology basis once the intersection pairing on
//! H_1(A_f, Z) is known to be principal.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{ExactError, IntMat};

/// Given an alternating, nondegenerate integral pairing `e` of size 2n x 2n
/// with elementary divisors all 1, return a unimodular T with
/// T^t * e * T = J, where J = [[0, I], [-I, 0]].
///
/// Errors: `NotAlternating` if e^t != -e, `NotPrincipal` if the elementary
/// divisors are not all 1.
pub fn symplectic_reduce(e: &IntMat) -> Result<IntMat, ExactError> {
    if !e.is_alternating() {
        return Err(ExactError::NotAlternating);
    }
    let n2 = e.rows;
    assert!(n2 % 2 == 0, "alternating nondegenerate pairing has even rank");
    let g = n2 / 2;
    let divisors = e.elementary_divisors();
    if divisors.len() != n2 || divisors.iter().any(|d| !d.is_one()) {
        return Err(ExactError::NotPrincipal(divisors));
    }

    // basis[i] = current basis vectors (columns of T), in original coordinates
    let mut basis: Vec<Vec<BigInt>> = (0..n2)
        .map(|i| (0..n2).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let pair = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let ey = e.mul_vec(y);
        x.iter().zip(&ey).map(|(a, b)| a * b).sum()
    };

    let mut a_vecs: Vec<Vec<BigInt>> = Vec::with_capacity(g);
    let mut b_vecs: Vec<Vec<BigInt>> = Vec::with_capacity(g);

    for _ in 0..g {
        // take the first remaining vector as candidate a
        let a = basis.remove(0);
        // gcd of pairings with the remaining vectors; on a unimodular form
        // this reaches 1 after making `a` primitive, and some combination of
        // the remaining vectors pairs to exactly 1 with a.
        let pairings: Vec<BigInt> = basis.iter().map(|v| pair(&a, v)).collect();
        if pairings.iter().all(|x| x.is_zero()) {
            return Err(ExactError::NotPrincipal(vec![]));
        }
        // Build b with <a, b> = 1 by a gcd cascade over the remaining vectors.
        let mut b: Option<Vec<BigInt>> = None;
        let mut coeff = BigInt::zero();
        for (i, v) in basis.iter().enumerate() {
            let c = pairings[i].clone();
            if c.is_zero() {
                continue;
            }
            match b {
                None => {
                    b = Some(v.clone());
                    coeff = c;
                }
                Some(ref prev) => {
                    let eg = coeff.extended_gcd(&c);
                    // new = x*prev + y*v pairs with a to gcd
                    let combined: Vec<BigInt> = prev
                        .iter()
                        .zip(v)
                        .map(|(p, q)| &eg.x * p + &eg.y * q)
                        .collect();
                    b = Some(combined);
                    coeff = eg.gcd;
                }
            }
            if coeff.is_one() {
                break;
            }
        }
        let b = b.unwrap();
        if !coeff.is_one() && !(-&coeff).is_one() {
            return Err(ExactError::NotPrincipal(vec![coeff]));
        }
        let b: Vec<BigInt> =
            if coeff.is_one() { b } else { b.iter().map(|x| -x).collect() };
        debug_assert!(pair(&a, &b).is_one());

        // reduce the remaining basis against the hyperbolic plane (a, b)
        for v in basis.iter_mut() {
            let ca = pair(&a, v); // want <a, v'> = 0: v' = v - ca * b
            let cb = pair(&b, v); // want <b, v'> = 0: v' = v + cb * a
            for k in 0..n2 {
                let adj = &v[k] - &ca * &b[k] + &cb * &a[k];
                v[k] = adj;
            }
            debug_assert!(pair(&a, v).is_zero());
            debug_assert!(pair(&b, v).is_zero());
        }
        // the projected vectors generate the complement lattice but are
        // dependent (rank drops by 2, count by 1): re-extract a basis
        if !basis.is_empty() {
            let gen = IntMat::from_rows(std::mem::take(&mut basis));
            let (h, _) = gen.hnf_with_transform();
            for i in 0..h.rows {
                if !h.row(i).iter().all(|x| x.is_zero()) {
                    basis.push(h.row(i).to_vec());
                }
            }
        }
        a_vecs.push(a);
        b_vecs.push(b);
    }

    // columns: a_1 .. a_g, b_1 .. b_g
    let mut t = IntMat::zeros(n2, n2);
    for (j, a) in a_vecs.iter().enumerate() {
        for i in 0..n2 {
            t.set(i, j, a[i].clone());
        }
    }
    for (j, b) in b_vecs.iter().enumerate() {
        for i in 0..n2 {
            t.set(i, g + j, b[i].clone());
        }
    }
    debug_assert_eq!(t.det().abs(), BigInt::one());
    Ok(t)
}

/// The standard symplectic form [[0, I], [-I, 0]] of size 2g.
pub fn standard_j(g: usize) -> IntMat {
    let mut j = IntMat::zeros(2 * g, 2 * g);
    for i in 0..g {
        j.set(i, g + i, BigInt::one());
        j.set(g + i, i, BigInt::from(-1));
    }
    j
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn check(e: &IntMat) -> IntMat {
        let t = symplectic_reduce(e).unwrap();
        let j = standard_j(e.rows / 2);
        assert_eq!(t.transpose().mul(e).mul(&t), j, "T^t E T = J");
        assert_eq!(t.det().abs(), BigInt::one());
        t
    }

    #[test]
    fn already_standard() {
        let j = standard_j(2);
        let t = check(&j);
        assert_eq!(t, IntMat::identity(4));
    }

    #[test]
    fn permuted_two_by_two_blocks() {
        // block-diag of [[0,1],[-1,0]] twice, i.e. basis order a1 b1 a2 b2
        let e = IntMat::from_i64_rows(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 1],
            vec![0, 0, -1, 0],
        ]);
        let t = check(&e);
        // each column should be a signed standard basis vector
        for j in 0..4 {
            let nonzero = (0..4).filter(|&i| !t.at(i, j).is_zero()).count();
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn random_unimodular_conjugates_of_j() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let j = standard_j(2);
        for _ in 0..100 {
            // random unimodular S as a product of elementary operations
            let mut s = IntMat::identity(4);
            for _ in 0..12 {
                let i = rng.gen_range(0..4);
                let mut k = rng.gen_range(0..4);
                while k == i {
                    k = rng.gen_range(0..4);
                }
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                // row_i += c * row_k
                for col in 0..4 {
                    let v = s.at(i, col) + &c * s.at(k, col);
                    s.set(i, col, v);
                }
            }
            let e = s.transpose().mul(&j).mul(&s);
            check(&e);
        }
    }

    #[test]
    fn non_principal_is_rejected() {
        let e = IntMat::from_i64_rows(&[
            vec![0, 1, 0, 0],
            vec![-1, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, -2, 0],
        ]);
        assert!(matches!(symplectic_reduce(&e), Err(ExactError::NotPrincipal(_))));
        let m = IntMat::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(symplectic_reduce(&m), Err(ExactError::NotAlternating)));
    }
}
