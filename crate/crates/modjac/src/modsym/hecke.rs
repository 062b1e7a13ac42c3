//! Hecke operators on modular symbols: T_p through Heilbronn-Merel matrices
//! for p not dividing N, U_p through explicit coset paths for p | N, and the
//! Fricke involution W_N.

use num_bigint::BigInt;
use num_traits::Zero;

use super::cusps::Cusp;
use super::space::{Chain, ManinSymbolSpace};
use crate::exact::IntMat;

/// Heilbronn matrices of determinant p: all integer (a, b; c, d) with
/// ad - bc = p, a > b >= 0, d > c >= 0. Acting on Manin symbols on the right,
/// their sum computes T_p for p not dividing N.
pub fn heilbronn_matrices(p: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=p {
        for b in 0..a {
            // c(a - b) < p keeps d > c with ad = p + bc
            let mut c = 0;
            while c * (a - b) < p {
                let num = p + b * c;
                if num % a == 0 {
                    let d = num / a;
                    debug_assert!(d > c);
                    out.push([a, b, c, d]);
                }
                c += 1;
            }
        }
    }
    out
}

impl ManinSymbolSpace {
    /// Apply T_p (p prime, p not dividing the level) to an L-coordinate
    /// vector via the Heilbronn action on a free-chain lift.
    pub fn hecke_tp_vector(&self, p: i64, v: &[BigInt]) -> Vec<BigInt> {
        assert!(self.level % p != 0, "use hecke_up_vector for p | N");
        let chain = self.lift_vector(v);
        let mats = heilbronn_matrices(p);
        self.apply_matrices_to_chain(&chain, &mats)
    }

    fn apply_matrices_to_chain(&self, chain: &Chain, mats: &[[i64; 4]]) -> Vec<BigInt> {
        let mut acc: std::collections::HashMap<usize, BigInt> = Default::default();
        for (x, coeff) in chain {
            for m in mats {
                if let Some(y) = self.p1.act_checked(*x, m) {
                    *acc.entry(y).or_insert_with(BigInt::zero) += coeff;
                }
            }
        }
        let free: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.project_chain(&free)
    }

    /// Apply U_p (p | level) to an L-coordinate vector by the coset action
    /// on paths: U_p {a, b} = sum_{r mod p} {(a + r)/p, (b + r)/p}.
    pub fn hecke_up_vector(&self, p: i64, v: &[BigInt]) -> Vec<BigInt> {
        assert!(self.level % p == 0);
        let chain = self.lift_vector(v);
        let mut out = vec![BigInt::zero(); self.dim];
        for (x, coeff) in &chain {
            let [a, b, c, d] = self.p1.lift(*x);
            let tail = Cusp::new(b, d);
            let head = Cusp::new(a, c);
            for r in 0..p {
                // (q + r)/p for q = num/den: (num + r*den) / (p*den)
                let t = Cusp::new(tail.num + r * tail.den, p * tail.den);
                let h = Cusp::new(head.num + r * head.den, p * head.den);
                let pv = self.path_vector(t, h);
                for j in 0..self.dim {
                    out[j] += coeff * &pv[j];
                }
            }
        }
        out
    }

    /// Apply the Hecke operator at p (T_p or U_p as appropriate).
    pub fn hecke_vector(&self, p: i64, v: &[BigInt]) -> Vec<BigInt> {
        if self.level % p == 0 {
            self.hecke_up_vector(p, v)
        } else {
            self.hecke_tp_vector(p, v)
        }
    }

    /// Matrix of the Hecke operator at p on the cuspidal lattice basis
    /// (columns = images of basis vectors, integral).
    pub fn hecke_on_cuspidal(&self, p: i64) -> IntMat {
        let k = self.cuspidal.rows;
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        for i in 0..k {
            let v: Vec<BigInt> = self.cuspidal.row(i).to_vec();
            let tv = self.hecke_vector(p, &v);
            let coords = self
                .cuspidal_coords(&tv)
                .expect("Hecke operator preserves the cuspidal subspace");
            let col: Vec<BigInt> = coords
                .iter()
                .map(|c| {
                    assert!(c.is_integer(), "Hecke operator preserves the cuspidal lattice");
                    c.numer().clone()
                })
                .collect();
            cols.push(col);
        }
        let mut m = IntMat::zeros(k, k);
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Image of a cuspidal L-vector under the Fricke involution W_N,
    /// computed path-wise: W_N maps {a, b} to {W_N a, W_N b}.
    pub fn fricke_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        let chain = self.lift_vector(v);
        let n = self.level;
        let mut out = vec![BigInt::zero(); self.dim];
        for (x, coeff) in &chain {
            let [a, b, c, d] = self.p1.lift(*x);
            // W_N = (0, -1; N, 0): q = num/den -> -den / (N num)
            let tail = Cusp::new(-d, n * b);
            let head = Cusp::new(-c, n * a);
            let pv = self.path_vector(tail, head);
            for j in 0..self.dim {
                out[j] += coeff * &pv[j];
            }
        }
        out
    }

    /// Degeneracy map to level M | N induced by the identity on the upper
    /// half-plane: a Manin path at level N is reinterpreted at level M.
    pub fn degeneracy_alpha_vec(&self, target: &ManinSymbolSpace, v: &[BigInt]) -> Vec<BigInt> {
        let m = target.level;
        assert_eq!(self.level % m, 0);
        let chain = self.lift_vector(v);
        let mut out = vec![BigInt::zero(); target.dim];
        for (x, coeff) in &chain {
            let [_, _, c, d] = self.p1.lift(*x);
            let y = target.p1.index(c.rem_euclid(m), d.rem_euclid(m));
            for (k, cc) in &target.projection_of(y) {
                out[*k] += coeff * cc;
            }
        }
        out
    }

    /// Degeneracy map to level M | N induced by scaling z -> t z with
    /// t = N / M: {a, b} -> {t a, t b}.
    pub fn degeneracy_beta_vec(&self, target: &ManinSymbolSpace, v: &[BigInt]) -> Vec<BigInt> {
        let m = target.level;
        assert_eq!(self.level % m, 0);
        let t = self.level / m;
        let chain = self.lift_vector(v);
        let mut out = vec![BigInt::zero(); target.dim];
        for (x, coeff) in &chain {
            let [a, b, c, d] = self.p1.lift(*x);
            let tail = Cusp::new(t * b, d);
            let head = Cusp::new(t * a, c);
            let pv = target.path_vector(tail, head);
            for j in 0..target.dim {
                out[j] += coeff * &pv[j];
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RatPoly;
    use crate::modsym::space::build_space;

    #[test]
    fn heilbronn_families_are_the_classical_ones() {
        let h2 = heilbronn_matrices(2);
        assert_eq!(h2, vec![[1, 0, 0, 2], [1, 0, 1, 2], [2, 0, 0, 1], [2, 1, 0, 1]]);
        for m in heilbronn_matrices(7) {
            assert_eq!(m[0] * m[3] - m[1] * m[2], 7);
            assert!(m[0] > m[1] && m[1] >= 0 && m[3] > m[2] && m[2] >= 0);
        }
    }

    /// Coset-path oracle for T_p: T_p {a, b} = {pa, pb} + sum_r {(a+r)/p, (b+r)/p}.
    fn tp_by_paths(s: &ManinSymbolSpace, p: i64, v: &[BigInt]) -> Vec<BigInt> {
        let chain = s.lift_vector(v);
        let mut out = vec![BigInt::zero(); s.dim];
        for (x, coeff) in &chain {
            let [a, b, c, d] = s.p1.lift(*x);
            let tail = Cusp::new(b, d);
            let head = Cusp::new(a, c);
            let mut paths = vec![(Cusp::new(p * tail.num, tail.den), Cusp::new(p * head.num, head.den))];
            for r in 0..p {
                paths.push((
                    Cusp::new(tail.num + r * tail.den, p * tail.den),
                    Cusp::new(head.num + r * head.den, p * head.den),
                ));
            }
            for (t, h) in paths {
                let pv = s.path_vector(t, h);
                for j in 0..s.dim {
                    out[j] += coeff * &pv[j];
                }
            }
        }
        out
    }

    #[test]
    fn heilbronn_matches_coset_path_oracle() {
        for n in [11i64, 30] {
            let s = build_space(n);
            for p in [2i64, 3, 7] {
                if n % p == 0 {
                    continue;
                }
                for i in 0..s.cuspidal.rows {
                    let v = s.cuspidal.row(i).to_vec();
                    assert_eq!(
                        s.hecke_tp_vector(p, &v),
                        tp_by_paths(&s, p, &v),
                        "N={n} p={p} basis {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn level_11_eigenvalues() {
        // X_0(11) has genus 1; its newform has a_2 = -2, a_3 = -1, a_5 = 1, a_7 = -2.
        let s = build_space(11);
        assert_eq!(s.cuspidal.rows, 2);
        for (p, ap) in [(2i64, -2i64), (3, -1), (5, 1), (7, -2)] {
            let m = s.hecke_on_cuspidal(p);
            // on the 2-dimensional cuspidal space T_p acts as a_p * identity
            assert_eq!(m, IntMat::identity(2).scale(&BigInt::from(ap)), "p = {p}");
        }
    }

    #[test]
    fn level_23_t2_charpoly() {
        // genus 2, all new; charpoly of T_2 on the cuspidal space is (x^2 + x - 1)^2
        let s = build_space(23);
        let m = s.hecke_on_cuspidal(2);
        let cp = m.charpoly();
        let quad = RatPoly::from_i64_coeffs(&[-1, 1, 1]);
        assert_eq!(cp, quad.mul(&quad));
    }

    #[test]
    fn hecke_operators_commute() {
        let s = build_space(63);
        let t2 = s.hecke_on_cuspidal(2);
        let t5 = s.hecke_on_cuspidal(5);
        assert_eq!(t2.mul(&t5), t5.mul(&t2));
        let u3 = s.hecke_on_cuspidal(3);
        let u7 = s.hecke_on_cuspidal(7);
        assert_eq!(t2.mul(&u3), u3.mul(&t2));
        assert_eq!(u3.mul(&u7), u7.mul(&u3));
    }

    #[test]
    fn fricke_is_an_involution() {
        let s = build_space(63);
        for i in 0..s.cuspidal.rows {
            let v = s.cuspidal.row(i).to_vec();
            let w = s.fricke_vector(&v);
            let back = s.fricke_vector(&w);
            assert_eq!(back, v, "W^2 = 1 on basis vector {i}");
        }
    }
}
