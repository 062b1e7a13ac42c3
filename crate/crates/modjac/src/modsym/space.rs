//! The space of weight-2 modular symbols for Gamma_0(N) in the Manin-symbol
//! presentation: generators indexed by P^1(Z/NZ) subject to the two-term and
//! three-term relations, with an integral structure, the boundary map to the
//! cusps, and the cuspidal subspace H_1(X_0(N), Z).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cusps::{Cusp, CuspData};
use super::p1::P1List;
use crate::exact::{IntMat, RatMat};

pub const MAT_S: [i64; 4] = [0, -1, 1, 0];
pub const MAT_TS: [i64; 4] = [1, -1, 1, 0];

/// Free chain on Manin generators: sparse list of (P^1 index, coefficient).
pub type Chain = Vec<(usize, BigInt)>;

/// Modular symbols for Gamma_0(N), weight 2, trivial character.
///
/// Coordinates: the quotient of Q[P^1] by the Manin relations is rebased so
/// that the image of Z[P^1] is exactly Z^dim ("L-coordinates"); all stored
/// vectors and matrices are integral in these coordinates.
pub struct ManinSymbolSpace {
    pub level: i64,
    pub p1: P1List,
    pub cusps: CuspData,
    /// dimension of the full modular symbol space
    pub dim: usize,
    /// image of each generator in L-coordinates (integral)
    proj: Vec<Vec<(usize, BigInt)>>,
    /// free-chain lift of each L-basis vector
    lifts: Vec<Chain>,
    /// boundary matrix: (#cusp classes) x dim, columns = boundaries of basis vectors
    pub boundary: IntMat,
    /// rows = basis of the cuspidal lattice H_1(X_0(N), Z) in L-coordinates
    pub cuspidal: IntMat,
    /// solver data: pivot columns of `cuspidal` and the inverse of the pivot
    /// submatrix, for expressing cuspidal vectors in K-coordinates
    cusp_pivots: Vec<usize>,
    cusp_inv: RatMat,
}

impl std::fmt::Debug for ManinSymbolSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ManinSymbolSpace(N={}, dim={}, cuspidal={}, cusps={})",
            self.level,
            self.dim,
            self.cuspidal.rows,
            self.cusps.count()
        )
    }
}

/// Build the space for level N.
pub fn build_space(n: i64) -> ManinSymbolSpace {
    assert!(n >= 1);
    let p1 = P1List::new(n);
    let cusps = CuspData::build(&p1);
    let ng = p1.len();

    // Step 1: fold the two-term relation x + xS = 0.
    // pair_rep[x] = (generator index, sign) or None for killed generators.
    let mut pair_gen: Vec<Option<(usize, i64)>> = vec![None; ng];
    let mut pair_count = 0usize;
    for x in 0..ng {
        if pair_gen[x].is_some() {
            continue;
        }
        let y = p1.act(x, &MAT_S);
        if y == x {
            // 2x = 0 over Q
            pair_gen[x] = Some((usize::MAX, 0));
        } else {
            pair_gen[x] = Some((pair_count, 1));
            pair_gen[y] = Some((pair_count, -1));
            pair_count += 1;
        }
    }
    // Step 2: three-term relations x + xTS + x(TS)^2 = 0 on pair generators.
    let mut rel_rows: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut seen = vec![false; ng];
    for x in 0..ng {
        if seen[x] {
            continue;
        }
        let y = p1.act(x, &MAT_TS);
        let z = p1.act(y, &MAT_TS);
        seen[x] = true;
        seen[y] = true;
        seen[z] = true;
        let mut row: Vec<(usize, i64)> = Vec::new();
        for t in [x, y, z] {
            if let Some((g, s)) = pair_gen[t] {
                if s != 0 {
                    row.push((g, s));
                }
            }
        }
        // combine duplicates
        row.sort_by_key(|&(g, _)| g);
        let mut combined: Vec<(usize, i64)> = Vec::new();
        for (g, s) in row {
            match combined.last_mut() {
                Some((lg, ls)) if *lg == g => *ls += s,
                _ => combined.push((g, s)),
            }
        }
        combined.retain(|&(_, s)| s != 0);
        if !combined.is_empty() {
            rel_rows.push(combined);
        }
    }

    // Step 3: Gaussian elimination over Q on the sparse relation rows.
    // subst[g] = expression of pair generator g in the free pair generators.
    let mut subst: Vec<Option<Vec<(usize, BigRational)>>> = vec![None; pair_count];
    let to_ratrow = |row: &[(usize, i64)]| -> Vec<(usize, BigRational)> {
        row.iter().map(|&(g, s)| (g, BigRational::from(BigInt::from(s)))).collect()
    };
    let mut pending: Vec<Vec<(usize, BigRational)>> = rel_rows.iter().map(|r| to_ratrow(r)).collect();
    // repeatedly substitute known generators, then pivot on a remaining entry
    let normalize_row = |row: Vec<(usize, BigRational)>,
                         subst: &Vec<Option<Vec<(usize, BigRational)>>>|
     -> Vec<(usize, BigRational)> {
        let mut acc: std::collections::BTreeMap<usize, BigRational> = Default::default();
        let mut stack = row;
        while let Some((g, c)) = stack.pop() {
            if c.is_zero() {
                continue;
            }
            match &subst[g] {
                Some(expr) => {
                    for (h, d) in expr {
                        stack.push((*h, &c * d));
                    }
                }
                None => {
                    *acc.entry(g).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    };
    while let Some(row) = pending.pop() {
        let row = normalize_row(row, &subst);
        if row.is_empty() {
            continue;
        }
        // pivot on the entry with smallest generator index (prefer unit coefficient)
        let pivot_pos = row
            .iter()
            .position(|(_, c)| c.numer().abs().is_one() && c.denom().is_one())
            .unwrap_or(0);
        let (pg, pc) = row[pivot_pos].clone();
        let expr: Vec<(usize, BigRational)> = row
            .iter()
            .filter(|&&(g, _)| g != pg)
            .map(|(g, c)| (*g, -(c / &pc)))
            .collect();
        subst[pg] = Some(expr);
        // substitute into existing substitutions lazily via normalize_row on use
    }

    // free pair generators in order
    let free: Vec<usize> = (0..pair_count).filter(|&g| subst[g].is_none()).collect();
    let free_pos: std::collections::HashMap<usize, usize> =
        free.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let dim = free.len();

    // image of each pair generator in free coordinates
    let mut pair_image: Vec<Vec<(usize, BigRational)>> = Vec::with_capacity(pair_count);
    for g in 0..pair_count {
        let row = normalize_row(vec![(g, BigRational::one())], &subst);
        pair_image.push(row.into_iter().map(|(h, c)| (free_pos[&h], c)).collect());
    }

    // Step 4: rebase so the image lattice of Z[P^1] is exactly Z^dim.
    // G: images of all generators (rows), rational.
    let mut g_rows: Vec<Vec<BigRational>> = Vec::with_capacity(ng);
    for x in 0..ng {
        let mut row = vec![BigRational::zero(); dim];
        if let Some((g, s)) = pair_gen[x] {
            if s != 0 {
                for (k, c) in &pair_image[g] {
                    row[*k] = c * BigRational::from(BigInt::from(s));
                }
            }
        }
        g_rows.push(row);
    }
    let g_mat = RatMat::from_rows(g_rows.clone());
    let (g_int, g_den) = g_mat.to_integer_scaled();
    let (h, u) = g_int.hnf_with_transform();
    // top `dim` rows of h are a basis of den * L; lattice basis in free coords:
    let mut hrows: Vec<Vec<BigRational>> = Vec::new();
    let mut lift_chains: Vec<Chain> = Vec::new();
    for i in 0..h.rows {
        if h.row(i).iter().all(|x| x.is_zero()) {
            continue;
        }
        hrows.push(
            h.row(i)
                .iter()
                .map(|x| BigRational::new(x.clone(), g_den.clone()))
                .collect(),
        );
        lift_chains.push(
            u.row(i)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(x, c)| (x, c.clone()))
                .collect(),
        );
    }
    assert_eq!(hrows.len(), dim, "image lattice has full rank");
    let basis_mat = RatMat::from_rows(hrows);
    let basis_inv = basis_mat.inverse().expect("basis invertible");

    // proj: generator -> integral coordinates w.r.t. the lattice basis
    let mut proj: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(ng);
    for row in &g_rows {
        let coords = basis_inv.transpose().mul_vec(row); // row * basis_inv
        let mut sparse = Vec::new();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                assert!(c.is_integer(), "generator image integral in L-coordinates");
                sparse.push((k, c.numer().clone()));
            }
        }
        proj.push(sparse);
    }

    // Step 5: boundary map on basis vectors via their lifts.
    let ncusps = cusps.count();
    let mut boundary = IntMat::zeros(ncusps, dim);
    for (j, chain) in lift_chains.iter().enumerate() {
        for (x, coeff) in chain {
            let [a, b, c, d] = p1.lift(*x);
            let head = cusps.class_of(n, Cusp::new(a, c));
            let tail = cusps.class_of(n, Cusp::new(b, d));
            let v = boundary.at(head, j) + coeff;
            boundary.set(head, j, v);
            let v = boundary.at(tail, j) - coeff;
            boundary.set(tail, j, v);
        }
    }

    // Step 6: cuspidal lattice = integer kernel of the boundary.
    let cuspidal = boundary.kernel();

    // solver for K-coordinates: pick pivot columns via HNF
    let (hk, _) = cuspidal.hnf_with_transform();
    let mut cusp_pivots = Vec::new();
    for i in 0..hk.rows {
        if let Some(j) = (0..hk.cols).find(|&j| !hk.at(i, j).is_zero()) {
            cusp_pivots.push(j);
        }
    }
    assert_eq!(cusp_pivots.len(), cuspidal.rows);
    let sub = RatMat::from_rows(
        (0..cuspidal.rows)
            .map(|i| cusp_pivots.iter().map(|&j| BigRational::from(cuspidal.at(i, j).clone())).collect())
            .collect(),
    );
    let cusp_inv = sub.transpose().inverse().expect("cuspidal basis has full rank");

    ManinSymbolSpace {
        level: n,
        p1,
        cusps,
        dim,
        proj,
        lifts: lift_chains,
        boundary,
        cuspidal,
        cusp_pivots,
        cusp_inv,
    }
}

impl ManinSymbolSpace {
    /// 2 * genus = rank of the cuspidal lattice.
    pub fn cuspidal_rank(&self) -> usize {
        self.cuspidal.rows
    }

    /// Image of a single generator in L-coordinates.
    pub fn projection_of(&self, x: usize) -> Vec<(usize, BigInt)> {
        self.proj[x].clone()
    }

    /// Project a free chain to L-coordinates.
    pub fn project_chain(&self, chain: &Chain) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (x, coeff) in chain {
            for (k, c) in &self.proj[*x] {
                out[*k] += coeff * c;
            }
        }
        out
    }

    /// A free-chain representative of an L-coordinate vector.
    pub fn lift_vector(&self, v: &[BigInt]) -> Chain {
        let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (j, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (x, c) in &self.lifts[j] {
                *acc.entry(*x).or_insert_with(BigInt::zero) += coeff * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Manin vector (L-coordinates) of the modular symbol {a, b} between
    /// cusps, via the continued-fraction decomposition into unimodular paths.
    pub fn path_vector(&self, a: Cusp, b: Cusp) -> Vec<BigInt> {
        let chain = self.path_chain(a, b);
        self.project_chain(&chain)
    }

    /// Free-chain form of {a, b} = {infinity, b} - {infinity, a}.
    pub fn path_chain(&self, a: Cusp, b: Cusp) -> Chain {
        let mut acc: std::collections::BTreeMap<usize, BigInt> = Default::default();
        for (cusp, sign) in [(b, 1i64), (a, -1)] {
            for (x, c) in self.path_chain_from_infinity(cusp) {
                *acc.entry(x).or_insert_with(BigInt::zero) += c * BigInt::from(sign);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// {infinity, p/q} as a chain of unimodular Manin paths (Manin's trick).
    ///
    /// With convergents p_k/q_k of p/q (p_{-1}/q_{-1} = 1/0), the piece
    /// {p_{k-1}/q_{k-1}, p_k/q_k} is the Manin symbol of the determinant-1
    /// matrix (p_k, (-1)^{k-1} p_{k-1}; q_k, (-1)^{k-1} q_{k-1}), and the
    /// leading piece {infinity, a_0} is the symbol of (a_0, -1; 1, 0).
    fn path_chain_from_infinity(&self, c: Cusp) -> Chain {
        let n = self.level;
        if c.den == 0 {
            return vec![];
        }
        let (mut p, mut q) = (c.num, c.den);
        let mut digits = Vec::new();
        loop {
            let a = p.div_euclid(q);
            digits.push(a);
            let r = p - a * q;
            p = q;
            q = r;
            if q == 0 {
                break;
            }
        }
        let mut out: Chain = Vec::new();
        // k = 0: bottom row (1, 0)
        out.push((self.p1.index(1, 0), BigInt::one()));
        let (mut qk1, mut qk) = (0i64, 1i64); // q_{-1}, q_0
        let mut parity = 1i64; // (-1)^{k-1} for the upcoming k = 1
        for &a in &digits[1..] {
            let qn = a * qk + qk1;
            let idx = self.p1.index(qn.rem_euclid(n), (parity * qk).rem_euclid(n));
            out.push((idx, BigInt::one()));
            qk1 = qk;
            qk = qn;
            parity = -parity;
        }
        out.sort_by_key(|&(x, _)| x);
        let mut combined: Chain = Vec::new();
        for (x, c) in out {
            match combined.last_mut() {
                Some((lx, lc)) if *lx == x => *lc += c,
                _ => combined.push((x, c)),
            }
        }
        combined.retain(|(_, c)| !c.is_zero());
        combined
    }

    /// Coordinates of a cuspidal L-vector in the K-basis (rows of `cuspidal`).
    pub fn cuspidal_coords(&self, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let rhs: Vec<BigRational> =
            self.cusp_pivots.iter().map(|&j| BigRational::from(v[j].clone())).collect();
        let x = self.cusp_inv.mul_vec(&rhs);
        // verify the full vector matches (v must lie in the cuspidal subspace)
        let mut check = vec![BigRational::zero(); self.dim];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let t = &check[j] + c * BigRational::from(self.cuspidal.at(i, j).clone());
                check[j] = t;
            }
        }
        for j in 0..self.dim {
            if check[j] != BigRational::from(v[j].clone()) {
                return None;
            }
        }
        Some(x)
    }

    /// K-coordinates of a cuspidal chain, panicking if not cuspidal.
    pub fn cuspidal_coords_of_chain(&self, chain: &Chain) -> Vec<BigRational> {
        let v = self.project_chain(chain);
        self.cuspidal_coords(&v).expect("chain is cuspidal")
    }

    /// Expand a K-coordinate row vector into L-coordinates.
    pub fn k_to_l(&self, row: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                out[j] += c * self.cuspidal.at(i, j);
            }
        }
        out
    }
}

/// Genus of X_0(N) via the index / elliptic point / cusp count formula.
/// This is the independent oracle for the cuspidal dimension.
pub fn genus_x0(n: i64) -> i64 {
    let mu = super::p1::psi_index(n);
    let nu2 = elliptic_count(n, -1);
    let nu3 = elliptic_count(n, -3);
    let c = super::cusps::cusp_number_formula(n);
    let num = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * c;
    assert_eq!(num % 12, 0);
    num / 12
}

fn elliptic_count(n: i64, d: i64) -> i64 {
    // number of elliptic points: nu2 for d = -1 (order 4), nu3 for d = -3
    if d == -1 {
        if n % 4 == 0 {
            return 0;
        }
        let mut prod = 1;
        for p in prime_divisors(n) {
            prod *= match p % 4 {
                1 => 2,
                3 => 0,
                _ => 1, // p = 2
            };
        }
        prod
    } else {
        if n % 9 == 0 {
            return 0;
        }
        let mut prod = 1;
        for p in prime_divisors(n) {
            prod *= match p % 3 {
                1 => 2,
                2 => 0,
                _ => 1, // p = 3
            };
        }
        prod
    }
}

pub fn prime_divisors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_formula_known_values() {
        for (n, g) in [(11, 1), (23, 2), (37, 2), (63, 5), (65, 5), (97, 7), (188, 22)] {
            assert_eq!(genus_x0(n), g, "genus of X_0({n})");
        }
    }

    #[test]
    fn cuspidal_dimension_is_twice_genus() {
        for n in [11i64, 23, 30, 63, 65, 100] {
            let s = build_space(n);
            assert_eq!(s.cuspidal_rank() as i64, 2 * genus_x0(n), "N = {n}");
            // full dimension = 2g + #cusps - 1
            assert_eq!(
                s.dim as i64,
                2 * genus_x0(n) + s.cusps.count() as i64 - 1,
                "full dim at N = {n}"
            );
        }
    }

    #[test]
    fn relations_project_to_zero() {
        let s = build_space(63);
        for x in 0..s.p1.len() {
            let y = s.p1.act(x, &MAT_S);
            let two_term: Chain = vec![(x, BigInt::one()), (y, BigInt::one())];
            assert!(s.project_chain(&two_term).iter().all(|c| c.is_zero()));
            let y1 = s.p1.act(x, &MAT_TS);
            let y2 = s.p1.act(y1, &MAT_TS);
            let three_term: Chain =
                vec![(x, BigInt::one()), (y1, BigInt::one()), (y2, BigInt::one())];
            assert!(s.project_chain(&three_term).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn lifts_recover_basis() {
        let s = build_space(63);
        for j in 0..s.dim {
            let chain = s.lifts[j].clone();
            let v = s.project_chain(&chain);
            for (k, c) in v.iter().enumerate() {
                assert_eq!(*c == BigInt::one(), k == j);
                assert!(c.is_zero() || k == j);
            }
        }
    }

    #[test]
    fn path_vectors_compose() {
        let s = build_space(63);
        let a = Cusp::new(0, 1);
        let b = Cusp::new(1, 7);
        let c = Cusp::new(-2, 9);
        let ab = s.path_vector(a, b);
        let bc = s.path_vector(b, c);
        let ac = s.path_vector(a, c);
        for i in 0..s.dim {
            assert_eq!(&ab[i] + &bc[i], ac[i]);
        }
        // {a, a} = 0
        assert!(s.path_vector(c, c).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn manin_generator_path_is_the_generator() {
        // {g(0), g(infinity)} projected must equal the generator's image
        let s = build_space(30);
        for x in 0..s.p1.len() {
            let [a, b, c, d] = s.p1.lift(x);
            let v = s.path_vector(Cusp::new(b, d), Cusp::new(a, c));
            let gen = s.project_chain(&vec![(x, BigInt::one())]);
            assert_eq!(v, gen, "x = {x}");
        }
    }

    #[test]
    fn boundary_of_path_matches_endpoints() {
        let s = build_space(63);
        let a = Cusp::new(0, 1);
        let b = Cusp::new(1, 3);
        let v = s.path_vector(a, b);
        let bd = s.boundary.mul_vec(&v);
        let ca = s.cusps.class_of(63, a);
        let cb = s.cusps.class_of(63, b);
        assert_ne!(ca, cb);
        for (k, x) in bd.iter().enumerate() {
            let expect = if k == cb {
                BigInt::one()
            } else if k == ca {
                -BigInt::one()
            } else {
                BigInt::zero()
            };
            assert_eq!(*x, expect);
        }
    }
}
