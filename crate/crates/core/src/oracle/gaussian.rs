//! Exact Gaussian ground state of an oscillator bilinearly coupled to other
//! oscillators, from matrix square roots of the stiffness matrix.
//!
//! The potential is assembled from quadratic terms `½k(Σ_i c_i x_i)²` in
//! physical coordinates and only then mass-weighted, so it shares no code
//! with the chain module.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use super::bath::DiscreteBath;
use crate::chain::{Boundary, ChainSpec};
use crate::error::{ensure_finite, Error, Result};

const DB_MAX_ITER: usize = 100;
const DB_TOL: f64 = 1e-15;

/// One term `½ k (Σ_i c_i x_i)²` of the potential energy.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticTerm {
    pub stiffness: f64,
    pub coefficients: Vec<(usize, f64)>,
}

/// Oscillator (site 0) plus bath oscillators with a quadratic potential.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorBath {
    pub masses: Vec<f64>,
    /// Bare frequency of the system oscillator, defining `H_s`.
    pub omega: f64,
    pub terms: Vec<QuadraticTerm>,
}

impl OscillatorBath {
    pub fn new(masses: Vec<f64>, omega: f64, terms: Vec<QuadraticTerm>) -> Result<Self> {
        ensure_finite("OscillatorBath", &masses)?;
        if masses.is_empty() || masses.iter().any(|&m| m <= 0.0) {
            return Err(Error::invalid("masses", "all masses must be positive"));
        }
        if !(omega > 0.0) {
            return Err(Error::invalid("omega", "must be positive"));
        }
        for t in &terms {
            if t.coefficients.iter().any(|&(i, _)| i >= masses.len()) {
                return Err(Error::invalid("terms", "coefficient refers to a missing site"));
            }
        }
        Ok(Self { masses, omega, terms })
    }

    /// The system oscillator alone.
    pub fn isolated(mass: f64, omega: f64) -> Result<Self> {
        Self::new(
            vec![mass],
            omega,
            vec![QuadraticTerm {
                stiffness: mass * omega * omega,
                coefficients: vec![(0, 1.0)],
            }],
        )
    }

    /// Oscillator at the head of a chain of springs. Needs `m_h > 0`.
    pub fn chain(spec: &ChainSpec) -> Result<Self> {
        let n = spec.n_sites;
        let k_h = spec.chain_mass * spec.omega_h * spec.omega_h;
        let mut masses = vec![spec.mass];
        masses.extend(std::iter::repeat_n(spec.chain_mass, n));
        let mut terms = vec![QuadraticTerm {
            stiffness: spec.mass * spec.omega * spec.omega,
            coefficients: vec![(0, 1.0)],
        }];
        for s in 1..=n {
            terms.push(QuadraticTerm {
                stiffness: k_h,
                coefficients: vec![(s - 1, 1.0), (s, -1.0)],
            });
        }
        if spec.boundary == Boundary::FixedEnd {
            terms.push(QuadraticTerm {
                stiffness: k_h,
                coefficients: vec![(n, 1.0)],
            });
        }
        Self::new(masses, spec.omega, terms)
    }

    /// Oscillator coupled to unit-mass bath modes in the counterterm form
    /// `½ω_j²(x_j − c_j q/ω_j²)²`, with `c_j² = (2/π) m_j ω_j J(ω_j) Δω_j` for
    /// `J(ω) = η ω e^{−ω/ω_c}` and `η = 2mωα`.
    pub fn star(mass: f64, omega: f64, bath: &DiscreteBath) -> Result<Self> {
        let eta = 2.0 * mass * omega * bath.alpha;
        let mut masses = vec![mass];
        let mut terms = vec![QuadraticTerm {
            stiffness: mass * omega * omega,
            coefficients: vec![(0, 1.0)],
        }];
        for (j, (&w, &dw)) in bath.frequencies.iter().zip(&bath.widths).enumerate() {
            let spectral = eta * w * (-w / bath.omega_c).exp();
            let c = ((2.0 / PI) * w * spectral * dw).sqrt();
            masses.push(1.0);
            terms.push(QuadraticTerm {
                stiffness: w * w,
                coefficients: vec![(j + 1, 1.0), (0, -c / (w * w))],
            });
        }
        Self::new(masses, omega, terms)
    }

    pub fn dim(&self) -> usize {
        self.masses.len()
    }

    /// `M^{-1/2} ∇²V M^{-1/2}`.
    pub fn mass_weighted_stiffness(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut k = DMatrix::zeros(n, n);
        for t in &self.terms {
            for &(i, ci) in &t.coefficients {
                for &(j, cj) in &t.coefficients {
                    k[(i, j)] += t.stiffness * ci * cj;
                }
            }
        }
        let inv_sqrt: Vec<f64> = self.masses.iter().map(|m| 1.0 / m.sqrt()).collect();
        for i in 0..n {
            for j in 0..n {
                k[(i, j)] *= inv_sqrt[i] * inv_sqrt[j];
            }
        }
        k
    }
}

/// `(K^{1/2}, K^{-1/2})` by the Denman–Beavers iteration on `K/‖K‖`.
pub fn matrix_sqrt_pair(k: &DMatrix<f64>) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let n = k.nrows();
    if k.clone().cholesky().is_none() {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: f64::NAN,
        });
    }
    let scale = k.norm();
    let mut y = k / scale;
    let mut z = DMatrix::identity(n, n);
    let singular = || Error::NoConvergence {
        what: "Denman–Beavers iteration",
        residual: f64::INFINITY,
    };
    let mut change = f64::INFINITY;
    for _ in 0..DB_MAX_ITER {
        let y_inv = y.clone().try_inverse().ok_or_else(singular)?;
        let z_inv = z.clone().try_inverse().ok_or_else(singular)?;
        let y_next = (&y + z_inv) * 0.5;
        let z_next = (&z + y_inv) * 0.5;
        change = (&y_next - &y).norm() / y_next.norm();
        y = y_next;
        z = z_next;
        if change < DB_TOL {
            let s = scale.sqrt();
            return Ok((y * s, z / s));
        }
    }
    Err(Error::NoConvergence {
        what: "Denman–Beavers iteration",
        residual: change,
    })
}

/// Ground-state `(⟨q²⟩, ⟨p²⟩)` of the system oscillator:
/// `⟨q²⟩ = (K^{-1/2})₀₀/(2m)`, `⟨p²⟩ = m (K^{1/2})₀₀/2`.
pub fn oscillator_bath_covariance(system: &OscillatorBath) -> Result<(f64, f64)> {
    let (root, inv_root) = matrix_sqrt_pair(&system.mass_weighted_stiffness())?;
    let m = system.masses[0];
    Ok((inv_root[(0, 0)] / (2.0 * m), 0.5 * m * root[(0, 0)]))
}

#[cfg(test)]
mod tests {
    use super::super::bath::{discretize_ohmic, Scheme};
    use super::*;
    use crate::chain::{build_system, normal_modes, two_point_functions};

    #[test]
    fn isolated_moments() {
        let (q2, p2) = oscillator_bath_covariance(&OscillatorBath::isolated(1.7, 0.6).unwrap()).unwrap();
        assert!((q2 - 1.0 / (2.0 * 1.7 * 0.6)).abs() < 1e-14);
        assert!((p2 - 0.5 * 1.7 * 0.6).abs() < 1e-14);
        let zero = discretize_ohmic(0.0, 10.0, 8, Scheme::Log).unwrap();
        let (q2, p2) = oscillator_bath_covariance(&OscillatorBath::star(1.0, 1.0, &zero).unwrap()).unwrap();
        assert!((q2 - 0.5).abs() < 1e-13 && (p2 - 0.5).abs() < 1e-13);
    }

    #[test]
    fn square_root_of_known_matrix() {
        // [[5, 4], [4, 5]] = [[2, 1], [1, 2]]²
        let k = DMatrix::from_row_slice(2, 2, &[5.0, 4.0, 4.0, 5.0]);
        let (r, ir) = matrix_sqrt_pair(&k).unwrap();
        let expect = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        assert!((r - &expect).norm() < 1e-14);
        assert!((ir * expect - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn indefinite_rejected() {
        let k = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(matches!(matrix_sqrt_pair(&k), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn stiffness_matches_chain_assembly() {
        for boundary in [Boundary::FreeEnd, Boundary::FixedEnd] {
            let spec = ChainSpec::new(6, 1.3, 0.7, 0.2, 1.1, boundary).unwrap();
            let a = OscillatorBath::chain(&spec).unwrap().mass_weighted_stiffness();
            let b = build_system(&spec);
            assert!((a - b.as_matrix()).norm() < 1e-14);
        }
    }

    #[test]
    fn chain_moments_match_normal_modes() {
        for n in [1, 5, 40] {
            let spec = ChainSpec::new(n, 1.0, 1.0, 0.1, 1.0, Boundary::FreeEnd).unwrap();
            let (q2, p2) = oscillator_bath_covariance(&OscillatorBath::chain(&spec).unwrap()).unwrap();
            let g = two_point_functions(&normal_modes(&build_system(&spec)).unwrap(), &spec, 0.0);
            assert!((q2 - g.qq.re).abs() < 1e-12, "N={n}");
            assert!((p2 - g.pp.re).abs() < 1e-12, "N={n}");
        }
    }

    #[test]
    fn star_bath_squeezes_position_and_spreads_momentum() {
        let bath = discretize_ohmic(0.1, 10.0, 64, Scheme::Log).unwrap();
        let (q2, p2) = oscillator_bath_covariance(&OscillatorBath::star(1.0, 1.0, &bath).unwrap()).unwrap();
        let (x, y) = (2.0 * q2, 2.0 * p2);
        assert!(x < 1.0 && y > 1.0);
        assert!(x * y > 1.0);
    }
}
