//! Modular jacobian surfaces.
//!
//! Computes, for a level N, the two-dimensional principally polarized newform
//! factors A_f of J_0(N)^new and produces explicit rational genus-2 models
//! y^2 = F(x) whose jacobians realize them, together with a verification
//! toolkit (Igusa invariants two ways, local L-factor comparison via
//! Eichler-Shimura, point counting over small finite fields).
//!
//! The pipeline, for each level N:
//!
//! 1. modular symbols for Gamma_0(N): cuspidal subspace, new subspace, Hecke
//!    operators, decomposition into Galois-orbit classes with quadratic Hecke
//!    eigenvalue field (`modsym`),
//! 2. integral homology of each factor and the topological intersection
//!    pairing; principal-polarization test and symplectic basis (`modsym`,
//!    `exact`),
//! 3. numerical period matrix of an integral basis of the eigenform space
//!    over the symplectic homology basis; normalized period matrix Z
//!    (`periods`),
//! 4. values and gradients of the genus-2 Riemann theta function at the
//!    sixteen 2-torsion points; irreducibility test (`theta`),
//! 5. Weierstrass roots from theta gradients, rational reconstruction of the
//!    monic model, leading coefficient from the discriminant relation, sign
//!    resolution by point counts, integral model (`reconstruct`),
//! 6. verification: Igusa invariants algebraically and from theta constants,
//!    local L-factors of the curve against the Hecke data (`hyperelliptic`).

pub mod exact;
pub mod numeric;
pub mod modsym;
pub mod periods;
pub mod theta;
pub mod reconstruct;
pub mod hyperelliptic;
pub mod pipeline;

pub use exact::{IntMat, RatPoly, Rational};
pub use numeric::{CNum, Ctx};
