//! Shared numerical kernels. Everything here is dimensionless (ħ = k_B = 1).

mod diff;
mod eigen;
mod legendre;
mod quadrature;

pub use diff::{central_difference, Derivative};
pub use eigen::{sym_eig, EigenDecomposition, SymmetricMatrix, ORTHONORMALITY_TOL, RESIDUAL_TOL};
pub use legendre::weighted_legendre_sequence;
pub use quadrature::integrate_periodic;
