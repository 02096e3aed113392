//! Spin-boson ground state by exact diagonalization in a truncated Fock
//! space:
//! `H = (ε/2)σ_z + (Δ/2)σ_x + (σ_z/2)Σ_j g_j(a_j + a_j†) + Σ_j ω_j a_j†a_j`.

use num_complex::Complex64;

use super::bath::DiscreteBath;
use super::sparse::{lowest_eigenpair, SparseSymmetric};
use crate::error::{Error, Result};
use crate::qubit::{ReducedDensityMatrix2, TwoLevelSpec};

/// Relative change of p₊ under `n_max → n_max + 1` above which a result is
/// flagged as truncation-limited.
pub const TRUNCATION_WARNING: f64 = 0.01;

/// Ground state in a truncated Hilbert space together with how it was
/// obtained.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    pub dim: usize,
    pub ground_energy: f64,
    pub vector: Vec<f64>,
    pub n_max: usize,
    pub modes: usize,
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct SpinBosonResult {
    pub state: TruncatedState,
    /// Occupation of the upper eigenstate of `H_s`.
    pub p_plus: f64,
    pub mean_system_energy: f64,
    /// Reduced qubit state in the `(−, +)` eigenbasis of `H_s`.
    pub density_matrix: ReducedDensityMatrix2,
}

// Half-angle rotation to the eigenbasis of (ε/2)σ_z + (Δ/2)σ_x:
// columns are |−⟩ and |+⟩ in the (↑, ↓) basis.
fn eigenbasis(epsilon: f64, delta: f64) -> [[f64; 2]; 2] {
    let half = 0.5 * delta.atan2(epsilon);
    let (s, c) = half.sin_cos();
    [[-s, c], [c, s]]
}

fn hilbert_dim(modes: usize, n_max: usize) -> Result<usize> {
    let mut d: usize = 2;
    for _ in 0..modes {
        d = d.checked_mul(n_max + 1).ok_or(Error::DimensionTooLarge {
            dim: usize::MAX,
            limit: super::sparse::DIMENSION_LIMIT,
        })?;
        if d > super::sparse::DIMENSION_LIMIT {
            return Err(Error::DimensionTooLarge {
                dim: d,
                limit: super::sparse::DIMENSION_LIMIT,
            });
        }
    }
    Ok(d)
}

/// Hamiltonian in the basis `|σ⟩ ⊗ |n_1 … n_M⟩`, σ = ↑ (index 0), ↓ (1),
/// with `n_j` stored at stride `(n_max+1)^j`.
pub fn spin_boson_hamiltonian(spec: &TwoLevelSpec, bath: &DiscreteBath, n_max: usize) -> Result<SparseSymmetric> {
    if n_max == 0 {
        return Err(Error::invalid("n_max", "need at least one boson per mode"));
    }
    let dim = hilbert_dim(bath.len(), n_max)?;
    let block = dim / 2;
    let base = n_max + 1;
    let strides: Vec<usize> = (0..bath.len()).map(|j| base.pow(j as u32)).collect();
    let (eps, delta) = (spec.epsilon, spec.delta);
    SparseSymmetric::from_columns(dim, |col, push| {
        let spin = col / block;
        let bosons = col % block;
        let sz = if spin == 0 { 1.0 } else { -1.0 };
        let mut diag = 0.5 * eps * sz;
        for (j, &stride) in strides.iter().enumerate() {
            let n = (bosons / stride) % base;
            diag += bath.frequencies[j] * n as f64;
            let g = 0.5 * sz * bath.couplings[j];
            if n < n_max {
                push(col + stride, g * ((n + 1) as f64).sqrt());
            }
            if n > 0 {
                push(col - stride, g * (n as f64).sqrt());
            }
        }
        push(col, diag);
        let flipped = if spin == 0 { col + block } else { col - block };
        push(flipped, 0.5 * delta);
    })
}

/// Ground state, reduced qubit density matrix and p₊.
pub fn spin_boson_ground_state(spec: &TwoLevelSpec, bath: &DiscreteBath, n_max: usize) -> Result<SpinBosonResult> {
    let h = spin_boson_hamiltonian(spec, bath, n_max)?;
    let dim = h.dim();
    let block = dim / 2;
    let u = eigenbasis(spec.epsilon, spec.delta);

    // uncoupled ground state |−⟩ ⊗ |0⟩ plus a small spread over all states
    let mut start: Vec<f64> = (0..dim)
        .map(|i| 1e-3 * ((i as f64 + 1.0) * 0.754_877_666).sin())
        .collect();
    start[0] += u[0][0];
    start[block] += u[1][0];
    let gs = lowest_eigenpair(&h, &start)?;

    let psi = &gs.vector;
    let mut rho = [[0.0f64; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            rho[a][b] = (0..block).map(|k| psi[a * block + k] * psi[b * block + k]).sum();
        }
    }
    // rotate to (−, +)
    let mut r = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = 0.0;
            for a in 0..2 {
                for b in 0..2 {
                    acc += u[a][i] * rho[a][b] * u[b][j];
                }
            }
            r[i][j] = Complex64::new(acc, 0.0);
        }
    }
    let density_matrix = ReducedDensityMatrix2::from_entries(r);
    let p_plus = density_matrix.p_plus();
    let omega = spec.epsilon.hypot(spec.delta);
    Ok(SpinBosonResult {
        state: TruncatedState {
            dim,
            ground_energy: gs.energy,
            vector: gs.vector,
            n_max,
            modes: bath.len(),
            residual: gs.residual,
        },
        p_plus,
        mean_system_energy: 0.5 * omega * (2.0 * p_plus - density_matrix.trace()),
        density_matrix,
    })
}

/// Result at `n_max` together with the relative shift of p₊ at `n_max + 1`.
#[derive(Debug, Clone)]
pub struct TruncationCheck {
    pub result: SpinBosonResult,
    pub p_plus_shift: f64,
}

impl TruncationCheck {
    pub fn is_truncation_limited(&self) -> bool {
        self.p_plus_shift > TRUNCATION_WARNING
    }
}

pub fn spin_boson_with_truncation_check(
    spec: &TwoLevelSpec,
    bath: &DiscreteBath,
    n_max: usize,
) -> Result<TruncationCheck> {
    let result = spin_boson_ground_state(spec, bath, n_max)?;
    let finer = spin_boson_ground_state(spec, bath, n_max + 1)?;
    let p_plus_shift = if result.p_plus == 0.0 && finer.p_plus == 0.0 {
        0.0
    } else {
        (finer.p_plus - result.p_plus).abs() / finer.p_plus.abs().max(result.p_plus.abs())
    };
    Ok(TruncationCheck { result, p_plus_shift })
}

/// p₊ from the first-order perturbed ground state built on the same modes:
/// `|ψ⟩ = |−,0⟩ − Σ_j Σ_s (g_j/2)⟨s|σ_z|−⟩ / (E_s − E_− + ω_j) |s, 1_j⟩`,
/// normalized.
pub fn perturbative_p_plus(spec: &TwoLevelSpec, bath: &DiscreteBath) -> Result<f64> {
    let omega = spec.epsilon.hypot(spec.delta);
    if omega == 0.0 {
        return Err(Error::OutOfDomain("degenerate qubit (Ω = 0)".into()));
    }
    // |⟨+|σ_z|−⟩| = Δ/Ω, |⟨−|σ_z|−⟩| = ε/Ω
    let (flip, keep) = (spec.delta / omega, spec.epsilon / omega);
    let mut upper = 0.0;
    let mut lower = 0.0;
    for (&w, &g) in bath.frequencies.iter().zip(&bath.couplings) {
        upper += (0.5 * g * flip / (omega + w)).powi(2);
        lower += (0.5 * g * keep / w).powi(2);
    }
    Ok(upper / (1.0 + upper + lower))
}

#[cfg(test)]
mod tests {
    use super::super::bath::{discretize_ohmic, Scheme};
    use super::*;

    fn qubit(eps: f64, delta: f64) -> TwoLevelSpec {
        TwoLevelSpec::new(eps, delta, 0.0, 10.0).unwrap()
    }

    #[test]
    fn uncoupled_is_separable() {
        let spec = qubit(0.3, 1.0);
        let bath = discretize_ohmic(0.0, 10.0, 3, Scheme::Log).unwrap();
        let r = spin_boson_ground_state(&spec, &bath, 3).unwrap();
        let omega = 0.3f64.hypot(1.0);
        assert!(r.p_plus.abs() < 1e-12);
        assert!((r.mean_system_energy + 0.5 * omega).abs() < 1e-12);
        assert!((r.state.ground_energy + 0.5 * omega).abs() < 1e-12);
    }

    #[test]
    fn hamiltonian_is_symmetric() {
        let bath = discretize_ohmic(0.05, 10.0, 2, Scheme::Log).unwrap();
        let h = spin_boson_hamiltonian(&qubit(0.4, 1.0), &bath, 3).unwrap();
        assert_eq!(h.dim(), 32);
        assert!(h.max_asymmetry() < 1e-15);
    }

    #[test]
    fn single_mode_against_hand_built_matrix() {
        // one mode, n_max = 1: basis (↑0, ↑1, ↓0, ↓1)
        let bath = DiscreteBath {
            frequencies: vec![0.7],
            couplings: vec![0.3],
            widths: vec![1.0],
            omega_c: 1.0,
            alpha: 0.0,
        };
        let h = spin_boson_hamiltonian(&qubit(0.5, 0.8), &bath, 1).unwrap();
        let expect = [
            [0.25, 0.15, 0.4, 0.0],
            [0.15, 0.95, 0.0, 0.4],
            [0.4, 0.0, -0.25, -0.15],
            [0.0, 0.4, -0.15, 0.45],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((h.get(i, j) - e).abs() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn density_matrix_is_physical() {
        let bath = discretize_ohmic(0.05, 10.0, 3, Scheme::Log).unwrap();
        let r = spin_boson_ground_state(&qubit(0.3, 1.0), &bath, 5).unwrap();
        let rho = r.density_matrix;
        assert!(rho.is_hermitian(1e-14));
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.eigenvalues()[0] >= -1e-12);
        assert!(r.p_plus > 0.0 && r.p_plus < 0.5);
    }

    #[test]
    fn variational_in_cutoff_and_modes() {
        let spec = qubit(0.0, 1.0);
        let bath = discretize_ohmic(0.1, 10.0, 3, Scheme::Log).unwrap();
        let mut last = f64::INFINITY;
        for n in 1..=6 {
            let e = spin_boson_ground_state(&spec, &bath, n).unwrap().state.ground_energy;
            assert!(e <= last + 1e-12);
            last = e;
        }
        let mut last = f64::INFINITY;
        for m in 0..=3 {
            let e = spin_boson_ground_state(&spec, &bath.first_modes(m), 4)
                .unwrap()
                .state
                .ground_energy;
            assert!(e <= last + 1e-12);
            last = e;
        }
    }

    #[test]
    fn excitation_grows_with_coupling() {
        let spec = qubit(0.0, 1.0);
        let mut last = 0.0;
        for alpha in [0.005, 0.01, 0.02, 0.05] {
            let bath = discretize_ohmic(alpha, 10.0, 3, Scheme::Log).unwrap();
            let p = spin_boson_ground_state(&spec, &bath, 5).unwrap().p_plus;
            assert!(p > last);
            last = p;
        }
    }

    #[test]
    fn deviation_from_perturbation_theory_is_fourth_order() {
        let spec = qubit(0.0, 1.0);
        let bath = discretize_ohmic(0.04, 10.0, 2, Scheme::Log).unwrap();
        let dev = |b: &DiscreteBath| {
            let ed = spin_boson_ground_state(&spec, b, 8).unwrap().p_plus;
            (ed - perturbative_p_plus(&spec, b).unwrap()).abs()
        };
        let ratio = dev(&bath) / dev(&bath.scaled(0.5));
        assert!((8.0..24.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn truncation_check_reports_shift() {
        let spec = qubit(0.0, 1.0);
        let bath = discretize_ohmic(0.02, 10.0, 2, Scheme::Log).unwrap();
        let c = spin_boson_with_truncation_check(&spec, &bath, 6).unwrap();
        assert!(!c.is_truncation_limited());
        let strong = discretize_ohmic(0.5, 10.0, 2, Scheme::Log).unwrap();
        let c = spin_boson_with_truncation_check(&spec, &strong, 1).unwrap();
        assert!(c.is_truncation_limited());
    }

    #[test]
    fn dimension_guard() {
        let bath = discretize_ohmic(0.01, 10.0, 12, Scheme::Log).unwrap();
        assert!(matches!(
            spin_boson_ground_state(&qubit(0.0, 1.0), &bath, 6),
            Err(Error::DimensionTooLarge { .. })
        ));
    }
}
