//! Integral homology of a newform factor A_f inside H_1(X_0(N), Z), with the
//! restricted intersection pairing and the principal polarization test.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::decompose::NewformClass;
use super::intersection;
use super::space::ManinSymbolSpace;
use crate::exact::IntMat;

/// Saturated integral homology lattice of a class, with its intersection form.
#[derive(Debug, Clone)]
pub struct HomologyLattice {
    /// rows: basis vectors in L-coordinates of the ambient space
    pub basis_l: IntMat,
    /// 4x4 alternating Gram matrix of the intersection pairing on the basis
    pub intersection: IntMat,
}

/// The intersection pairing restricted to the class's homology lattice.
///
/// The lattice basis is the class's `basis_k` expanded to L-coordinates; it
/// is saturated in the cuspidal lattice by construction (kernels of integer
/// matrices are saturated).
pub fn integral_homology(space: &ManinSymbolSpace, class: &NewformClass) -> HomologyLattice {
    let rows = class.basis_l(space);
    let basis_l = IntMat::from_rows(rows.clone());
    let intersection = intersection::intersection_matrix(space, &rows);
    HomologyLattice { basis_l, intersection }
}

/// Content of a nonzero integer matrix (gcd of entries) and the matrix
/// divided by it.
pub fn primitive_form(form: &IntMat) -> (IntMat, BigInt) {
    let mut content = BigInt::zero();
    for i in 0..form.rows {
        for j in 0..form.cols {
            content = num_integer::Integer::gcd(&content, form.at(i, j));
        }
    }
    if content.is_zero() {
        return (form.clone(), BigInt::one());
    }
    let mut out = IntMat::zeros(form.rows, form.cols);
    for i in 0..form.rows {
        for j in 0..form.cols {
            out.set(i, j, form.at(i, j) / &content);
        }
    }
    (out, content)
}

/// True iff the surface admits a principal polarization induced from the
/// intersection form: the form divided by its content must have elementary
/// divisors (1, ..., 1).
///
/// The restriction of the canonical principal polarization of J_0(N) to a
/// proper newform factor is in general a multiple of a primitive form; when
/// the primitive form is unimodular it is itself the Riemann form of a
/// principal polarization on the same lattice, and that is the polarization
/// the reconstruction uses. For factors filling all of J_0(N) (prime level,
/// genus 2) the content is 1 and this reduces to plain unimodularity.
pub fn is_principally_polarized(form: &IntMat) -> bool {
    assert!(form.is_alternating(), "intersection form must be alternating");
    let (prim, _) = primitive_form(form);
    let divisors = prim.elementary_divisors();
    divisors.len() == form.rows && divisors.iter().all(|d| d.is_one())
}

/// Index of the sublattice spanned by `vectors` (rows, in L-coordinates)
/// inside the saturated lattice `lattice` (rows). Returns None if the vectors
/// do not lie in the lattice's rational span or are dependent.
pub fn sublattice_index(lattice: &IntMat, vectors: &IntMat) -> Option<BigInt> {
    if vectors.rows != lattice.rows {
        return None;
    }
    // solve coords * lattice = vectors
    let mut coord_rows = Vec::new();
    for i in 0..vectors.rows {
        let coords = super::decompose::coords_in_rowspace(lattice, vectors.row(i))?;
        let mut int_row = Vec::with_capacity(coords.len());
        for c in &coords {
            if !c.is_integer() {
                return None;
            }
            int_row.push(c.numer().clone());
        }
        coord_rows.push(int_row);
    }
    let m = IntMat::from_rows(coord_rows);
    let det = m.det();
    if det.is_zero() {
        None
    } else {
        Some(det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::standard_j;
    use crate::modsym::cusps::Cusp;
    use crate::modsym::decompose::decompose;
    use crate::modsym::space::build_space;
    use num_traits::Signed;

    #[test]
    fn level_63_is_principally_polarized() {
        let s = build_space(63);
        let classes = decompose(&s);
        let h = integral_homology(&s, &classes[0]);
        assert!(h.intersection.is_alternating());
        assert!(is_principally_polarized(&h.intersection));
    }

    #[test]
    fn paper_gamma_basis_spans_the_level_63_lattice() {
        // the displayed basis of H_1(A_f, Z) for N = 63
        let s = build_space(63);
        let classes = decompose(&s);
        let lattice = IntMat::from_rows(classes[0].basis_l(&s));

        let path = |a: (i64, i64), b: (i64, i64)| -> Vec<BigInt> {
            s.path_vector(Cusp::new(a.0, a.1), Cusp::new(b.0, b.1))
        };
        let add = |u: &mut Vec<BigInt>, v: &[BigInt], sign: i64| {
            for (x, y) in u.iter_mut().zip(v) {
                *x += y * BigInt::from(sign);
            }
        };
        let zero = vec![BigInt::zero(); s.dim];

        let mut g1 = zero.clone();
        add(&mut g1, &path((-1, 24), (0, 1)), 1);
        add(&mut g1, &path((-1, 28), (0, 1)), -1);
        add(&mut g1, &path((-1, 30), (0, 1)), 1);
        add(&mut g1, &path((-1, 51), (0, 1)), -1);
        add(&mut g1, &path((-1, 3), (-2, 7)), -1);

        let mut g2 = zero.clone();
        add(&mut g2, &path((-1, 24), (0, 1)), 1);
        add(&mut g2, &path((-1, 28), (0, 1)), -1);
        add(&mut g2, &path((-1, 39), (0, 1)), 1);
        add(&mut g2, &path((-1, 57), (0, 1)), -1);
        add(&mut g2, &path((-1, 6), (-1, 7)), -1);

        let mut g3 = zero.clone();
        add(&mut g3, &path((-1, 24), (0, 1)), 1);
        add(&mut g3, &path((-1, 39), (0, 1)), 1);
        add(&mut g3, &path((-1, 45), (0, 1)), -1);
        add(&mut g3, &path((-1, 60), (0, 1)), -1);
        add(&mut g3, &path((-1, 3), (-2, 7)), -1);
        add(&mut g3, &path((3, 7), (4, 9)), -1);

        let mut g4 = zero.clone();
        add(&mut g4, &path((-1, 36), (0, 1)), 1);
        add(&mut g4, &path((-1, 49), (0, 1)), -1);
        add(&mut g4, &path((-1, 51), (0, 1)), 1);
        add(&mut g4, &path((-1, 54), (0, 1)), -1);
        add(&mut g4, &path((-1, 57), (0, 1)), 1);
        add(&mut g4, &path((-1, 60), (0, 1)), -1);
        add(&mut g4, &path((-1, 3), (-2, 7)), -1);

        let gammas = IntMat::from_rows(vec![g1, g2, g3, g4]);
        let idx = sublattice_index(&lattice, &gammas).expect("gammas lie in the lattice");
        assert_eq!(idx.abs(), BigInt::one(), "paper basis spans the same lattice");
    }

    #[test]
    fn saturation_index_is_one() {
        let s = build_space(65);
        for c in decompose(&s) {
            let lattice = IntMat::from_rows(c.basis_l(&s));
            // doubling one vector gives index 2
            let mut doubled_rows: Vec<Vec<BigInt>> =
                (0..lattice.rows).map(|i| lattice.row(i).to_vec()).collect();
            for x in doubled_rows[0].iter_mut() {
                *x *= BigInt::from(2);
            }
            let doubled = IntMat::from_rows(doubled_rows);
            assert_eq!(
                sublattice_index(&lattice, &doubled).unwrap().abs(),
                BigInt::from(2)
            );
            // the lattice itself has index 1 (it is its own saturation)
            assert_eq!(sublattice_index(&lattice, &lattice).unwrap().abs(), BigInt::one());
        }
    }

    #[test]
    fn hecke_stability_of_the_lattice() {
        let s = build_space(63);
        let classes = decompose(&s);
        let c = &classes[0];
        for p in [2i64, 5, 11] {
            let rows: Vec<Vec<BigInt>> = c
                .basis_l(&s)
                .iter()
                .map(|v| s.hecke_vector(p, v))
                .collect();
            let lattice = IntMat::from_rows(c.basis_l(&s));
            for row in &rows {
                let coords = super::super::decompose::coords_in_rowspace(&lattice, row)
                    .expect("T_p preserves the rational span");
                assert!(coords.iter().all(|x| x.is_integer()), "T_{p} maps lattice into itself");
            }
        }
    }

    #[test]
    fn intersection_is_hecke_equivariant_with_fricke_adjoint() {
        // <T_p x, y> = <x, T_p' y> with T_p' = W T_p W
        let s = build_space(63);
        let classes = decompose(&s);
        let rows = classes[0].basis_l(&s);
        let p = 2i64;
        for x in &rows {
            for y in &rows {
                let lhs = intersection::intersection_of_vectors(&s, &s.hecke_vector(p, x), y);
                let wy = s.fricke_vector(y);
                let twy = s.hecke_vector(p, &wy);
                let adj = s.fricke_vector(&twy);
                let rhs = intersection::intersection_of_vectors(&s, x, &adj);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn divisor_1_2_form_is_rejected() {
        let mut e = standard_j(2);
        // scale the second hyperbolic pair by 2: primitive type (1, 2)
        e.set(1, 3, BigInt::from(2));
        e.set(3, 1, BigInt::from(-2));
        assert!(!is_principally_polarized(&e));
        assert!(is_principally_polarized(&standard_j(2)));
        // a uniform multiple of J is still principally polarizable
        assert!(is_principally_polarized(&standard_j(2).scale(&BigInt::from(2))));
    }
}
