//! Numerical period integration: q-expansions of the integral basis of
//! <f, sigma f>, period integrals over modular symbols, the big period
//! matrix over a symplectic homology basis, and Z = Omega_1^{-1} Omega_2.

pub mod qexp;
pub mod integrate;

pub use integrate::{
    big_period_matrix, small_period_matrix, BigPeriodMatrix, PeriodEngine, PeriodError,
    SmallPeriodMatrix,
};
pub use qexp::{eigenvalue_table, integral_basis, EigenformBasis};
