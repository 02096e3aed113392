//! Independent ground truth from exact diagonalization and exact Gaussian
//! calculations on finite, discretized baths.

mod bath;
mod fock;
mod gaussian;
mod sparse;
mod spin_boson;

pub use bath::{continuum_coupling_sum, discretize_ohmic, spectral_density, DiscreteBath, Scheme, BAND_HIGH, BAND_LOW};
pub use fock::{fock_ed_oscillator, FockEdResult, MAX_BATH_SITES};
pub use gaussian::{matrix_sqrt_pair, oscillator_bath_covariance, OscillatorBath, QuadraticTerm};
pub use sparse::{
    lowest_eigenpair, spectral_weights, GroundState, SparseSymmetric, DENSE_LIMIT, DIMENSION_LIMIT, LANCZOS_TOL,
};
pub use spin_boson::{
    perturbative_p_plus, spin_boson_ground_state, spin_boson_hamiltonian, spin_boson_with_truncation_check,
    SpinBosonResult, TruncatedState, TruncationCheck, TRUNCATION_WARNING,
};
