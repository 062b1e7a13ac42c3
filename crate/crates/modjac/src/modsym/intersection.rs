//! Topological intersection pairing on H_1(X_0(N), Z) in terms of Manin
//! symbol chains.
//!
//! Model: X_0(N) carries the Delta-complex induced by the Farey tessellation
//! of the upper half-plane; the oriented edges are exactly the Manin symbols.
//! Distinct tessellation geodesics never cross in the interior, so two
//! cuspidal chains can only intersect near the cusps. Around each cusp class
//! the incident edge-ends form a cyclic sequence (the link; see `CuspData`),
//! and after pushing the second chain slightly to the left of its direction
//! of travel, every crossing happens inside the link disk. Each passage of a
//! chain through the cusp is a chord of the disk; crossings are counted by
//! chord interleaving with orientation sign.
//!
//! Positions on the link circle of width h are encoded on a 4h-point circle:
//! unpushed ends sit at 4m, left-pushed ends at 4m - 1 (arrival) and 4m + 1
//! (departure), so the two chains never collide. How arrivals are paired
//! with departures into passages is immaterial: two pairings differ by loops
//! around the (filled) cusp, which cross everything with net zero.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::space::{Chain, ManinSymbolSpace, MAT_S};
use crate::exact::IntMat;

/// One strand-end on a cusp link: position on the 4h-circle and multiplicity.
#[derive(Debug, Clone)]
struct Ends {
    arrivals: Vec<(i64, BigInt)>,
    departures: Vec<(i64, BigInt)>,
}

/// Collect strand-ends per cusp class. `pushed` selects the left-pushed
/// position offsets (-1 for arrivals, +1 for departures).
fn collect_ends(space: &ManinSymbolSpace, chain: &Chain, pushed: bool) -> Vec<Ends> {
    let ncusps = space.cusps.count();
    let mut out = vec![Ends { arrivals: vec![], departures: vec![] }; ncusps];
    let (off_arr, off_dep) = if pushed { (-1i64, 1i64) } else { (0, 0) };
    for (x, coeff) in chain {
        if coeff.is_zero() {
            continue;
        }
        let xs = space.p1.act(*x, &MAT_S);
        let (kh, mh) = space.cusps.slot_of[x];
        let (kt, mt) = space.cusps.slot_of[&xs];
        let (arr_mult, dep_mult) = if coeff.is_positive() {
            (coeff.clone(), coeff.clone())
        } else {
            (-coeff, -coeff)
        };
        if coeff.is_positive() {
            out[kh].arrivals.push((4 * mh as i64 + off_arr, arr_mult));
            out[kt].departures.push((4 * mt as i64 + off_dep, dep_mult));
        } else {
            // traversed backwards: departs at its head slot, arrives at tail
            out[kh].departures.push((4 * mh as i64 + off_dep, dep_mult));
            out[kt].arrivals.push((4 * mt as i64 + off_arr, arr_mult));
        }
    }
    out
}

/// Pair arrivals with departures into passages (chords), multiplicity-aware.
fn passages(mut ends: Ends) -> Vec<(i64, i64, BigInt)> {
    ends.arrivals.sort_by_key(|&(p, _)| p);
    ends.departures.sort_by_key(|&(p, _)| p);
    let mut out = Vec::new();
    let mut ai = 0;
    let mut di = 0;
    while ai < ends.arrivals.len() && di < ends.departures.len() {
        let take = ends.arrivals[ai].1.clone().min(ends.departures[di].1.clone());
        out.push((ends.arrivals[ai].0, ends.departures[di].0, take.clone()));
        ends.arrivals[ai].1 -= &take;
        ends.departures[di].1 -= &take;
        if ends.arrivals[ai].1.is_zero() {
            ai += 1;
        }
        if ends.departures[di].1.is_zero() {
            di += 1;
        }
    }
    assert!(
        ai == ends.arrivals.len() && di == ends.departures.len(),
        "chain is not a cycle at some cusp"
    );
    out
}

/// Crossing sign of chords (a -> b) and (g -> d) on a circle of circumference
/// c: +1 when the counterclockwise order is a, g, b, d.
fn chord_sign(c: i64, a: i64, b: i64, g: i64, d: i64) -> i64 {
    if a == b || g == d {
        return 0;
    }
    let inside = |x: i64| -> bool {
        let rel = (x - a).rem_euclid(c);
        rel > 0 && rel < (b - a).rem_euclid(c)
    };
    match (inside(g), inside(d)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Intersection number of two cuspidal chains.
pub fn intersection_of_chains(space: &ManinSymbolSpace, u: &Chain, v: &Chain) -> BigInt {
    let ends_u = collect_ends(space, u, false);
    let ends_v = collect_ends(space, v, true);
    let mut total = BigInt::zero();
    for k in 0..space.cusps.count() {
        let pu = passages(ends_u[k].clone());
        if pu.is_empty() {
            continue;
        }
        let pv = passages(ends_v[k].clone());
        if pv.is_empty() {
            continue;
        }
        let circumference = 4 * space.cusps.widths[k];
        for (a, b, mu) in &pu {
            for (g, d, mv) in &pv {
                let s = chord_sign(circumference, *a, *b, *g, *d);
                if s != 0 {
                    total += BigInt::from(s) * mu * mv;
                }
            }
        }
    }
    total
}

/// Intersection number of two cuspidal vectors in L-coordinates.
pub fn intersection_of_vectors(space: &ManinSymbolSpace, u: &[BigInt], v: &[BigInt]) -> BigInt {
    intersection_of_chains(space, &space.lift_vector(u), &space.lift_vector(v))
}

/// Gram matrix of the intersection pairing on a family of cuspidal vectors.
pub fn intersection_matrix(space: &ManinSymbolSpace, vectors: &[Vec<BigInt>]) -> IntMat {
    let n = vectors.len();
    let chains: Vec<Chain> = vectors.iter().map(|v| space.lift_vector(v)).collect();
    let mut m = IntMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let val = intersection_of_chains(space, &chains[i], &chains[j]);
            m.set(i, j, val);
        }
    }
    m
}
