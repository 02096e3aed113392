//! Two-level system energetics.
//!
//! The system Hamiltonian is `H_s = (ε/2)σ_z + (Δ/2)σ_x` with level splitting
//! `Ω = √(ε² + Δ²)`. Energies are measured from the midpoint, `E_± = ±Ω/2`.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// Above this excitation probability the linearized weak-coupling result is
/// flagged as outside its comfortable range.
pub const WEAK_COUPLING_FLAG: f64 = 0.1;
/// Hard guard: the linearized probability is refused beyond this value.
pub const WEAK_COUPLING_LIMIT: f64 = 0.5;

/// A spin-boson qubit: bias, tunneling, ohmic coupling and bath cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelSpec {
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: f64,
    pub omega_c: f64,
}

impl TwoLevelSpec {
    pub fn new(epsilon: f64, delta: f64, alpha: f64, omega_c: f64) -> Result<Self> {
        ensure_finite("TwoLevelSpec", &[epsilon, delta, alpha, omega_c])?;
        if alpha < 0.0 {
            return Err(Error::invalid("alpha", "must be non-negative"));
        }
        if omega_c <= 0.0 {
            return Err(Error::invalid("omega_c", "must be positive"));
        }
        Ok(Self {
            epsilon,
            delta,
            alpha,
            omega_c,
        })
    }

    pub fn level_splitting(&self) -> Result<f64> {
        level_splitting(self)
    }

    /// `α ln(ω_c/Ω)`, the combination that controls all weak-coupling results.
    pub fn log_coupling(&self) -> Result<f64> {
        let omega = self.level_splitting()?;
        if self.omega_c <= omega {
            return Err(Error::invalid(
                "omega_c",
                format!("cutoff {} must exceed the level splitting {}", self.omega_c, omega),
            ));
        }
        Ok(self.alpha * (self.omega_c / omega).ln())
    }
}

/// `Ω = √(ε² + Δ²)`; a degenerate qubit (ε = Δ = 0) is rejected.
pub fn level_splitting(spec: &TwoLevelSpec) -> Result<f64> {
    let omega = spec.epsilon.hypot(spec.delta);
    if omega == 0.0 {
        return Err(Error::invalid("epsilon/delta", "degenerate two-level system (Ω = 0)"));
    }
    Ok(omega)
}

/// Two-point distribution: `values[0]` is the lower value (E₋ or −I₀) and
/// `weights[0]` its probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointDistribution {
    pub values: [f64; 2],
    pub weights: [f64; 2],
}

impl TwoPointDistribution {
    pub fn mean(&self) -> f64 {
        self.values[0] * self.weights[0] + self.values[1] * self.weights[1]
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.weights[0] * (self.values[0] - m).powi(2) + self.weights[1] * (self.values[1] - m).powi(2)
    }

    pub(crate) fn symmetric(half_width: f64, upper_weight: f64) -> Self {
        let upper = upper_weight.clamp(0.0, 1.0);
        Self {
            values: [-half_width, half_width],
            weights: [1.0 - upper, upper],
        }
    }
}

/// Thermal occupations of an unentangled qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GibbsProbabilities {
    pub p_plus: f64,
    pub p_minus: f64,
    omega: f64,
    temperature: f64,
}

impl GibbsProbabilities {
    /// Leading low-temperature occupation `exp(−Ω/T)` of the excited level.
    pub fn low_temperature_p_plus(&self) -> f64 {
        if self.temperature == 0.0 {
            0.0
        } else {
            (-self.omega / self.temperature).exp()
        }
    }
}

/// `p_± = 1 / (1 + exp(±Ω/T))`. T = 0 and T = ∞ take explicit branches.
pub fn gibbs_probabilities(omega: f64, temperature: f64) -> Result<GibbsProbabilities> {
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::invalid("omega", "must be positive and finite"));
    }
    if temperature.is_nan() || temperature < 0.0 {
        return Err(Error::invalid("temperature", "must be non-negative"));
    }
    let (p_plus, p_minus) = if temperature == 0.0 {
        (0.0, 1.0)
    } else if temperature == f64::INFINITY {
        (0.5, 0.5)
    } else {
        let boltz = (-omega / temperature).exp();
        let p_plus = boltz / (1.0 + boltz);
        (p_plus, 1.0 / (1.0 + boltz))
    };
    Ok(GibbsProbabilities {
        p_plus,
        p_minus,
        omega,
        temperature,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakCouplingExcitation {
    pub p_plus: f64,
    /// Set when `p_plus` exceeds [`WEAK_COUPLING_FLAG`].
    pub beyond_validity: bool,
}

/// Ground-state excitation probability at weak ohmic coupling, `α ln(ω_c/Ω)`.
pub fn weak_coupling_excitation(spec: &TwoLevelSpec) -> Result<WeakCouplingExcitation> {
    let p_plus = spec.log_coupling()?;
    if p_plus > WEAK_COUPLING_LIMIT {
        return Err(Error::OutOfDomain(format!(
            "α ln(ω_c/Ω) = {p_plus} exceeds {WEAK_COUPLING_LIMIT}; the linearized result does not apply"
        )));
    }
    Ok(WeakCouplingExcitation {
        p_plus,
        beyond_validity: p_plus > WEAK_COUPLING_FLAG,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMoments {
    pub mean: f64,
    pub variance: f64,
}

/// Mean and variance of `H_s` given the excited-state probability.
pub fn energy_moments(p_plus: f64, omega: f64) -> Result<EnergyMoments> {
    if !(0.0..=1.0).contains(&p_plus) {
        return Err(Error::invalid("p_plus", "must lie in [0, 1]"));
    }
    ensure_finite("energy_moments", &[omega])?;
    let half = 0.5 * omega;
    Ok(EnergyMoments {
        mean: -half * (1.0 - p_plus) + half * p_plus,
        variance: omega * omega * p_plus * (1.0 - p_plus),
    })
}

/// Energy distribution `P(E)` reconstructed from the mean energy:
/// `p_± = ½(1 ± 2⟨E⟩/Ω)`.
pub fn energy_distribution(mean_energy: f64, omega: f64) -> Result<TwoPointDistribution> {
    ensure_finite("energy_distribution", &[mean_energy, omega])?;
    if omega <= 0.0 {
        return Err(Error::invalid("omega", "must be positive"));
    }
    let ratio = 2.0 * mean_energy / omega;
    if ratio.abs() > 1.0 + 1e-12 {
        return Err(Error::OutOfDomain(format!(
            "|⟨E⟩| = {} exceeds Ω/2 = {}",
            mean_energy.abs(),
            0.5 * omega
        )));
    }
    Ok(TwoPointDistribution::symmetric(0.5 * omega, 0.5 * (1.0 + ratio)))
}

/// Excited-state weight with the coefficient `⟨E⟩/(2Ω)` in place of `2⟨E⟩/Ω`.
///
/// Kept for comparison only: it does not give `p₊ = 0` at `⟨E⟩ = −Ω/2`.
pub fn quarter_coefficient_p_plus(mean_energy: f64, omega: f64) -> f64 {
    0.5 * (1.0 + mean_energy / (2.0 * omega))
}

/// Temperature below which ground-state entanglement outweighs thermal
/// excitation: `T* = −Ω / ln(α ln(ω_c/Ω))`.
pub fn crossover_temperature(spec: &TwoLevelSpec) -> Result<f64> {
    let omega = spec.level_splitting()?;
    let a = spec.log_coupling()?;
    if a <= 0.0 || a >= 1.0 {
        return Err(Error::OutOfDomain(format!(
            "no crossover: α ln(ω_c/Ω) = {a} must lie strictly between 0 and 1"
        )));
    }
    Ok(-omega / a.ln())
}

/// Reduced 2×2 density matrix in the energy eigenbasis, ordered (−, +).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDensityMatrix2 {
    pub entries: [[Complex64; 2]; 2],
}

impl ReducedDensityMatrix2 {
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn trace(&self) -> f64 {
        self.entries[0][0].re + self.entries[1][1].re
    }

    pub fn p_plus(&self) -> f64 {
        self.entries[1][1].re
    }

    /// `[λ_small, λ_large]`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.entries[0][0].re;
        let d = self.entries[1][1].re;
        let off = self.entries[0][1].norm();
        let mid = 0.5 * (a + d);
        let radius = (0.25 * (a - d).powi(2) + off * off).sqrt();
        [mid - radius, mid + radius]
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (self.entries[0][1] - self.entries[1][0].conj()).norm() <= tol
            && self.entries[0][0].im.abs() <= tol
            && self.entries[1][1].im.abs() <= tol
    }
}

/// First-order density matrix `ρ₋₋ = 1 − αp`, `ρ₊₊ = αp`, `ρ₊₋ = ρ₋₊* = αc`.
///
/// Returns an error when the linearized matrix has a negative eigenvalue,
/// which signals that α is too large for the expansion.
pub fn weak_coupling_density_matrix(alpha: f64, p: f64, c: Complex64) -> Result<ReducedDensityMatrix2> {
    ensure_finite("weak_coupling_density_matrix", &[alpha, p, c.re, c.im])?;
    if alpha < 0.0 {
        return Err(Error::invalid("alpha", "must be non-negative"));
    }
    if p < 0.0 {
        return Err(Error::invalid("p", "must be non-negative"));
    }
    if alpha * p > 1.0 {
        return Err(Error::invalid("p", "α·p must not exceed 1"));
    }
    let rho = ReducedDensityMatrix2 {
        entries: [
            [Complex64::new(1.0 - alpha * p, 0.0), alpha * c.conj()],
            [alpha * c, Complex64::new(alpha * p, 0.0)],
        ],
    };
    let [low, _] = rho.eigenvalues();
    if low < -1e-12 {
        return Err(Error::OutOfDomain(format!(
            "linearized density matrix is not positive (eigenvalue {low:.3e}); coupling too strong"
        )));
    }
    Ok(rho)
}
