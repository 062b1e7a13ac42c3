//! The projective line P^1(Z/NZ) with canonical representatives, SL_2(Z)
//! lifts, and the right action of integer matrices.
//!
//! Manin symbols for Gamma_0(N) are indexed by P^1(Z/NZ): the symbol (c:d)
//! corresponds to the right coset Gamma_0(N) g for any g in SL_2(Z) with
//! bottom row congruent to (c, d) mod N.

use std::collections::HashMap;

use num_integer::Integer as _;

/// P^1(Z/NZ) with a fixed enumeration.
#[derive(Debug)]
pub struct P1List {
    pub n: i64,
    reps: Vec<(i64, i64)>,
    index_of: HashMap<(i64, i64), usize>,
    lifts: Vec<[i64; 4]>,
    /// full N x N lookup: table[c * n + d] = index of (c : d), or u32::MAX
    /// when gcd(c, d, n) > 1; keeps the hot Hecke loops free of gcd calls
    table: Vec<u32>,
}

fn gcd(a: i64, b: i64) -> i64 {
    a.abs().gcd(&b.abs())
}

/// Canonical representative of (c : d) in P^1(Z/NZ).
/// Requires gcd(c, d, n) = 1.
pub fn p1_normalize(n: i64, c: i64, d: i64) -> (i64, i64) {
    assert!(n >= 1);
    if n == 1 {
        return (0, 0);
    }
    let c = c.rem_euclid(n);
    let d = d.rem_euclid(n);
    assert_eq!(gcd(gcd(c, d), n), 1, "({c}:{d}) not in P1(Z/{n})");
    if c == 0 {
        return (0, 1);
    }
    let g = gcd(c, n);
    // write c = g*c1 with gcd(c1, n/g) = 1; u = c1^{-1} as a unit mod n
    let c1 = c / g;
    let ng = n / g;
    let mut u = inv_mod(c1.rem_euclid(ng), ng);
    while gcd(u, n) != 1 {
        u += ng;
    }
    // now (c : d) ~ (g : u*d); minimize u*d over units t = 1 + k*(n/g)
    let d0 = mulmod(u, d, n);
    let mut best = d0;
    let mut t = 1i64;
    for _ in 1..g {
        t += ng;
        if gcd(t, n) == 1 {
            let cand = mulmod(t, d0, n);
            if cand < best {
                best = cand;
            }
        }
    }
    (g, best)
}

fn mulmod(a: i64, b: i64, n: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(n as i128)) as i64
}

/// Inverse of a modulo n (n >= 1, gcd(a, n) = 1).
pub fn inv_mod(a: i64, n: i64) -> i64 {
    if n == 1 {
        return 0;
    }
    let e = a.extended_gcd(&n);
    assert_eq!(e.gcd, 1, "{a} not invertible mod {n}");
    e.x.rem_euclid(n)
}

impl P1List {
    pub fn new(n: i64) -> Self {
        assert!(n >= 1);
        let mut index_of = HashMap::new();
        let mut reps = Vec::new();
        // (c : 1) for all c, then (c : d) with c | n, c > 1
        for c in 0..n.max(1) {
            let key = p1_normalize(n, c, 1);
            if !index_of.contains_key(&key) {
                index_of.insert(key, reps.len());
                reps.push(key);
            }
        }
        for c in 1..=n {
            if n % c == 0 {
                for d in 0..n {
                    if gcd(gcd(c, d), n) == 1 {
                        let key = p1_normalize(n, c, d);
                        if !index_of.contains_key(&key) {
                            index_of.insert(key, reps.len());
                            reps.push(key);
                        }
                    }
                }
            }
        }
        let lifts = reps.iter().map(|&(c, d)| sl2_lift(n, c, d)).collect();
        let mut table = vec![u32::MAX; (n * n) as usize];
        for c in 0..n {
            for d in 0..n {
                if gcd(gcd(c, d), n) == 1 {
                    table[(c * n + d) as usize] = index_of[&p1_normalize(n, c, d)] as u32;
                }
            }
        }
        P1List { n, reps, index_of, lifts, table }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, i: usize) -> (i64, i64) {
        self.reps[i]
    }

    /// Index of (c : d); requires gcd(c, d, n) = 1.
    pub fn index(&self, c: i64, d: i64) -> usize {
        self.index_checked(c, d).expect("element of P^1")
    }

    /// Index of (c : d) if it defines a point of P^1 (i.e. gcd(c, d, n) = 1).
    #[inline]
    pub fn index_checked(&self, c: i64, d: i64) -> Option<usize> {
        if self.n == 1 {
            return Some(0);
        }
        let c = c.rem_euclid(self.n);
        let d = d.rem_euclid(self.n);
        let t = self.table[(c * self.n + d) as usize];
        (t != u32::MAX).then_some(t as usize)
    }

    /// An SL_2(Z) lift [a, b, c, d] of the i-th element, bottom row (c, d)
    /// congruent to the representative mod N.
    pub fn lift(&self, i: usize) -> [i64; 4] {
        self.lifts[i]
    }

    /// Right action index: (c : d) * [p, q; r, s] = (cp + dr : cq + ds).
    pub fn act(&self, i: usize, m: &[i64; 4]) -> usize {
        self.act_checked(i, m).expect("action image is primitive")
    }

    /// Like `act` but returns None when the image is not primitive mod N
    /// (only possible when det(m) shares a factor with N).
    #[inline]
    pub fn act_checked(&self, i: usize, m: &[i64; 4]) -> Option<usize> {
        let (c, d) = self.reps[i];
        if self.n == 1 {
            return Some(0);
        }
        let nc = (c as i128 * m[0] as i128 + d as i128 * m[2] as i128).rem_euclid(self.n as i128) as i64;
        let nd = (c as i128 * m[1] as i128 + d as i128 * m[3] as i128).rem_euclid(self.n as i128) as i64;
        let t = self.table[(nc * self.n + nd) as usize];
        (t != u32::MAX).then_some(t as usize)
    }
}

/// Lift (c, d) with gcd(c, d, n) = 1 to a matrix in SL_2(Z) with bottom row
/// congruent to (c, d) mod n.
pub fn sl2_lift(n: i64, c: i64, d: i64) -> [i64; 4] {
    let (mut c, mut d) = (c.rem_euclid(n), d.rem_euclid(n));
    if n == 1 {
        return [1, 0, 0, 1];
    }
    if c == 0 && d == 0 {
        panic!("not a P1 element");
    }
    // adjust d by multiples of n until gcd(c, d) = 1 (exists since gcd(c,d,n)=1)
    if c == 0 {
        c = n; // (0 : d) with d a unit; use c = n so gcd(c, d') can reach 1
    }
    let mut k = 0i64;
    loop {
        let dd = d + k * n;
        if gcd(c, dd) == 1 {
            d = dd;
            break;
        }
        k = if k <= 0 { 1 - k } else { -k };
    }
    // a*d - b*c = 1
    let e = d.extended_gcd(&c);
    debug_assert_eq!(e.gcd, 1);
    let a = e.x;
    let b = -e.y;
    debug_assert_eq!(a * d - b * c, 1);
    [a, b, c, d]
}

/// Index of Gamma_0(N) in SL_2(Z): psi(N) = N * prod_{p | N} (1 + 1/p).
pub fn psi_index(n: i64) -> i64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            result = result / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_sizes_match_psi() {
        for n in [1i64, 2, 3, 4, 6, 11, 12, 23, 30, 63, 65, 100, 188, 189, 256] {
            let p1 = P1List::new(n);
            assert_eq!(p1.len() as i64, psi_index(n), "N = {n}");
        }
    }

    #[test]
    fn normalization_is_scaling_invariant() {
        let n = 63;
        let p1 = P1List::new(n);
        for u in 1..n {
            if gcd(u, n) != 1 {
                continue;
            }
            for i in 0..p1.len() {
                let (c, d) = p1.rep(i);
                assert_eq!(p1.index(mulmod(u, c, n), mulmod(u, d, n)), i);
            }
        }
    }

    #[test]
    fn lifts_are_sl2_with_correct_bottom_row() {
        for n in [11i64, 63, 188] {
            let p1 = P1List::new(n);
            for i in 0..p1.len() {
                let [a, b, c, d] = p1.lift(i);
                assert_eq!(a * d - b * c, 1);
                let (rc, rd) = p1.rep(i);
                assert_eq!(p1_normalize(n, c.rem_euclid(n), d.rem_euclid(n)), (rc, rd));
            }
        }
    }

    #[test]
    fn action_is_well_defined_and_group_like() {
        let n = 30;
        let p1 = P1List::new(n);
        let s = [0, -1, 1, 0];
        let t = [1, 1, 0, 1];
        for i in 0..p1.len() {
            // S^2 = -1 acts trivially
            assert_eq!(p1.act(p1.act(i, &s), &s), i);
            // (TS)^3 = -1 acts trivially
            let ts = [1, -1, 1, 0];
            let j = p1.act(p1.act(p1.act(i, &ts), &ts), &ts);
            assert_eq!(j, i);
            let _ = t;
        }
    }
}
