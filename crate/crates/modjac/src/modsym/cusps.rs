//! Cusps of X_0(N): reduced representatives, equivalence testing, widths,
//! and the link structure (cyclic order of tessellation edge-ends around each
//! cusp) used by the intersection pairing.

use std::collections::HashMap;

use num_integer::Integer as _;

use super::p1::P1List;

/// A cusp a/c in lowest terms; infinity is 1/0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub num: i64,
    pub den: i64, // >= 0; den = 0 means infinity (num = 1)
}

impl Cusp {
    pub fn new(num: i64, den: i64) -> Self {
        if den == 0 {
            return Cusp { num: 1, den: 0 };
        }
        let g = num.abs().gcd(&den.abs());
        let (mut n, mut d) = (num / g.max(1), den / g.max(1));
        if d < 0 {
            n = -n;
            d = -d;
        }
        if g == 0 {
            panic!("0/0 is not a cusp");
        }
        Cusp { num: n, den: d }
    }

    pub fn infinity() -> Self {
        Cusp { num: 1, den: 0 }
    }

    pub fn zero() -> Self {
        Cusp { num: 0, den: 1 }
    }

    /// Image under the fractional-linear action of an integer matrix with
    /// nonzero determinant.
    pub fn apply(&self, m: &[i64; 4]) -> Cusp {
        let n = m[0] * self.num + m[1] * self.den;
        let d = m[2] * self.num + m[3] * self.den;
        Cusp::new(n, d)
    }
}

/// Gamma_0(N)-equivalence of cusps p1/q1 and p2/q2 (in lowest terms):
/// with s_i p_i ≡ 1 mod q_i, the cusps are equivalent iff
/// s1 q2 ≡ s2 q1 mod gcd(q1 q2, N).
pub fn cusps_equivalent(n: i64, a: Cusp, b: Cusp) -> bool {
    let (p1, q1) = (a.num.rem_euclid(if a.den == 0 { 1 } else { a.den.max(1) }), a.den);
    let (p2, q2) = (b.num.rem_euclid(if b.den == 0 { 1 } else { b.den.max(1) }), b.den);
    // treat infinity as 1/0; the formula below handles q = 0 correctly
    let s1 = inv_mod_loose(a.num, q1);
    let s2 = inv_mod_loose(b.num, q2);
    let g = (q1 * q2).gcd(&n);
    let _ = (p1, p2);
    (s1 * q2 - s2 * q1).rem_euclid(g) == 0
}

fn inv_mod_loose(p: i64, q: i64) -> i64 {
    // any s with s*p ≡ 1 mod q; for q = 0 require p = ±1 and return p
    if q == 0 {
        return p.signum();
    }
    if q == 1 {
        return 0;
    }
    let e = p.rem_euclid(q).extended_gcd(&q);
    debug_assert_eq!(e.gcd, 1, "cusp not in lowest terms");
    e.x.rem_euclid(q)
}

/// Width of the cusp a/c on Gamma_0(N): N / gcd(c^2, N).
pub fn cusp_width(n: i64, c: Cusp) -> i64 {
    let d2 = (c.den * c.den).gcd(&n);
    n / d2
}

/// The cusp classes of X_0(N) together with the link structure.
///
/// For each class we fix a representative and a scaling matrix sigma in
/// SL_2(Z) with sigma(infinity) = representative. The tessellation edges
/// incident to the class are then sigma * T^m * (0 -> infinity) for
/// m = 0 .. width-1; slot m of the link stores the P^1 index of sigma T^m.
/// Going around the link in the direction of increasing m is the positive
/// (counterclockwise) direction around the puncture.
#[derive(Debug)]
pub struct CuspData {
    pub reps: Vec<Cusp>,
    pub widths: Vec<i64>,
    pub sigmas: Vec<[i64; 4]>,
    /// slots[k][m] = P^1 index of sigma_k T^m
    pub slots: Vec<Vec<usize>>,
    /// P^1 index -> (cusp class, slot position)
    pub slot_of: HashMap<usize, (usize, usize)>,
    class_cache: HashMap<Cusp, usize>,
}

impl CuspData {
    pub fn build(p1: &P1List) -> CuspData {
        let n = p1.n;
        let mut reps: Vec<Cusp> = Vec::new();
        let mut class_cache = HashMap::new();
        // collect all edge endpoints: cusps of the form g(inf), g(0)
        for i in 0..p1.len() {
            let [a, b, c, d] = p1.lift(i);
            for cusp in [Cusp::new(a, c), Cusp::new(b, d)] {
                if class_cache.contains_key(&cusp) {
                    continue;
                }
                let class = reps.iter().position(|&r| cusps_equivalent(n, r, cusp));
                let idx = match class {
                    Some(k) => k,
                    None => {
                        reps.push(cusp);
                        reps.len() - 1
                    }
                };
                class_cache.insert(cusp, idx);
            }
        }
        let widths: Vec<i64> = reps.iter().map(|&c| cusp_width(n, c)).collect();
        let sigmas: Vec<[i64; 4]> = reps.iter().map(|&c| sigma_for(c)).collect();
        let mut slots = Vec::with_capacity(reps.len());
        let mut slot_of = HashMap::new();
        for (k, sigma) in sigmas.iter().enumerate() {
            let h = widths[k];
            let mut ring = Vec::with_capacity(h as usize);
            for m in 0..h {
                // sigma * T^m has bottom row (c, c*m + d)
                let c = sigma[2];
                let d = c * m + sigma[3];
                let idx = p1.index(c.rem_euclid(n), d.rem_euclid(n));
                let prev = slot_of.insert(idx, (k, m as usize));
                assert!(prev.is_none(), "slot table collision at level {n}");
                ring.push(idx);
            }
            slots.push(ring);
        }
        assert_eq!(slot_of.len(), p1.len(), "every coset occupies exactly one slot");
        CuspData { reps, widths, sigmas, slots, slot_of, class_cache }
    }

    /// Class index of an arbitrary cusp.
    pub fn class_of(&self, n: i64, c: Cusp) -> usize {
        if let Some(&k) = self.class_cache.get(&c) {
            return k;
        }
        self.reps
            .iter()
            .position(|&r| cusps_equivalent(n, r, c))
            .expect("cusp belongs to some class")
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }
}

/// sigma in SL_2(Z) with sigma(infinity) = cusp.
fn sigma_for(c: Cusp) -> [i64; 4] {
    if c.den == 0 {
        return [1, 0, 0, 1];
    }
    // columns: (num, den) and a completion to determinant 1
    let e = c.num.extended_gcd(&c.den);
    debug_assert_eq!(e.gcd, 1);
    // num * x + den * y = 1 => matrix [num, -y; den, x] has det num*x + den*y = 1
    [c.num, -e.y, c.den, e.x]
}

/// Number of cusps of X_0(N) by the divisor formula (used as an oracle).
pub fn cusp_number_formula(n: i64) -> i64 {
    let mut total = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += euler_phi(d.gcd(&(n / d)));
        }
    }
    total
}

pub fn euler_phi(mut m: i64) -> i64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            result = result / p * (p - 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}
