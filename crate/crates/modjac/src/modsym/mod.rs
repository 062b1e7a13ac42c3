//! Modular symbols for Gamma_0(N): cuspidal and new subspaces, Hecke
//! operators, decomposition into quadratic-field newform classes, integral
//! homology of each factor A_f, and the topological intersection pairing.

pub mod p1;
pub mod cusps;
pub mod space;
pub mod hecke;
pub mod intersection;
pub mod decompose;
pub mod homology;
pub mod eigendata;

pub use cusps::Cusp;
pub use p1::inv_mod as p1_inv_mod;
pub use decompose::{decompose, NewformClass};
pub use eigendata::{EigenData, EigenDataError};
pub use homology::{integral_homology, is_principally_polarized, HomologyLattice};
pub use space::{build_space, genus_x0, ManinSymbolSpace};
