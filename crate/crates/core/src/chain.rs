//! An oscillator attached to the first particle of a finite harmonic chain.
//!
//! The whole system is Gaussian, so every ground-state correlator of the
//! system oscillator follows from the normal modes of the classical problem.
//! Chain particles sit at unit spacing and times are measured in `1/ω_h`
//! whenever `ω_h = 1`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{sym_eig, SymmetricMatrix};

/// Number of samples in [`default_time_grid`].
pub const DEFAULT_GRID_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Last particle is attached to nothing.
    FreeEnd,
    /// Last particle is tied to a wall by one more spring.
    FixedEnd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub mass: f64,
    pub omega: f64,
    /// Chain particle mass `m_h`; zero decouples the chain.
    pub chain_mass: f64,
    pub omega_h: f64,
    pub boundary: Boundary,
}

impl ChainSpec {
    pub fn new(
        n_sites: usize,
        mass: f64,
        omega: f64,
        chain_mass: f64,
        omega_h: f64,
        boundary: Boundary,
    ) -> Result<Self> {
        ensure_finite("ChainSpec", &[mass, omega, chain_mass, omega_h])?;
        if n_sites == 0 {
            return Err(Error::invalid("n_sites", "chain needs at least one particle"));
        }
        if mass <= 0.0 || omega <= 0.0 || omega_h <= 0.0 {
            return Err(Error::invalid("mass/omega/omega_h", "must be positive"));
        }
        if chain_mass < 0.0 {
            return Err(Error::invalid("chain_mass", "must be non-negative"));
        }
        Ok(Self {
            n_sites,
            mass,
            omega,
            chain_mass,
            omega_h,
            boundary,
        })
    }

    pub fn mass_ratio(&self) -> f64 {
        self.chain_mass / self.mass
    }

    /// Friction rate `η = (m_h/m) ω_h`.
    pub fn friction(&self) -> f64 {
        self.mass_ratio() * self.omega_h
    }

    /// Dimensionless coupling `α = (m_h/m)(ω_h/ω)`.
    pub fn coupling(&self) -> f64 {
        self.mass_ratio() * self.omega_h / self.omega
    }
}

/// Mass-weighted stiffness matrix of dimension N + 1, site 0 being the
/// system oscillator.
pub fn build_system(spec: &ChainSpec) -> SymmetricMatrix {
    let n = spec.n_sites;
    let w2 = spec.omega_h * spec.omega_h;
    let mu = spec.mass_ratio();
    SymmetricMatrix::from_upper(n + 1, |i, j| match (i, j) {
        (0, 0) => spec.omega * spec.omega + mu * w2,
        (0, 1) => -mu.sqrt() * w2,
        (i, j) if i == j && i == n => match spec.boundary {
            Boundary::FreeEnd => w2,
            Boundary::FixedEnd => 2.0 * w2,
        },
        (i, j) if i == j => 2.0 * w2,
        (i, j) if j == i + 1 => -w2,
        _ => 0.0,
    })
}

/// Normal modes and their overlap with the system coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    /// Ascending mode frequencies.
    pub frequencies: Vec<f64>,
    /// Component `v_k0` of each normalized mode on the system site.
    pub system_weights: Vec<f64>,
}

impl ModeBasis {
    pub fn weight_sum(&self) -> f64 {
        self.system_weights.iter().map(|v| v * v).sum()
    }
}

pub fn normal_modes(k: &SymmetricMatrix) -> Result<ModeBasis> {
    let eig = sym_eig(k)?;
    let min = eig.eigenvalues[0];
    if !(min > 0.0) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    Ok(ModeBasis {
        frequencies: eig.eigenvalues.iter().map(|l| l.sqrt()).collect(),
        system_weights: eig.eigenvectors.row(0).iter().copied().collect(),
    })
}

/// Ground-state two-point functions `⟨A(t)B(0)⟩` of the system coordinate
/// and momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointFunctions {
    pub qq: Complex64,
    pub pp: Complex64,
    pub qp: Complex64,
    pub pq: Complex64,
}

pub fn two_point_functions(modes: &ModeBasis, spec: &ChainSpec, t: f64) -> TwoPointFunctions {
    let mut qq = Complex64::new(0.0, 0.0);
    let mut pp = Complex64::new(0.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    for (&w, &v) in modes.frequencies.iter().zip(&modes.system_weights) {
        let phase = Complex64::from_polar(v * v, -w * t);
        qq += phase / (2.0 * w);
        pp += phase * (0.5 * w);
        s += phase;
    }
    let qp = Complex64::new(0.0, 0.5) * s;
    TwoPointFunctions {
        qq: qq / spec.mass,
        pp: pp * spec.mass,
        qp,
        pq: -qp,
    }
}

/// Symmetrized energy–energy correlation of the system oscillator.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// `n_points` equally spaced times over `[0, 3N/ω_h]`.
pub fn default_time_grid(spec: &ChainSpec, n_points: usize) -> Vec<f64> {
    let t_max = 3.0 * spec.n_sites as f64 / spec.omega_h;
    let steps = n_points.max(2) - 1;
    (0..=steps).map(|i| t_max * i as f64 / steps as f64).collect()
}

fn correlation_at(modes: &ModeBasis, spec: &ChainSpec, t: f64) -> f64 {
    let g = two_point_functions(modes, spec, t);
    let m = spec.mass;
    let w2 = spec.omega * spec.omega;
    let kin = 0.5 / m;
    let pot = 0.5 * m * w2;
    let c = kin * kin * g.pp * g.pp + pot * pot * g.qq * g.qq + 0.25 * w2 * (g.qp * g.qp + g.pq * g.pq);
    2.0 * c.re
}

/// `C(t) = ½⟨ΔH_s(t)ΔH_s(0) + ΔH_s(0)ΔH_s(t)⟩` on the given times.
pub fn energy_correlation(spec: &ChainSpec, times: &[f64]) -> Result<CorrelationTrace> {
    ensure_finite("energy_correlation", times)?;
    let modes = normal_modes(&build_system(spec))?;
    Ok(correlation_with_modes(&modes, spec, times))
}

pub fn correlation_with_modes(modes: &ModeBasis, spec: &ChainSpec, times: &[f64]) -> CorrelationTrace {
    let values = times.par_iter().map(|&t| correlation_at(modes, spec, t)).collect();
    CorrelationTrace {
        times: times.to_vec(),
        values,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RevivalMetrics {
    pub t_revival: f64,
    pub peak_ratio: f64,
}

/// Location and relative height of the largest `|C(t)|` in `[N/ω_h, 3N/ω_h]`.
pub fn revival_metrics(trace: &CorrelationTrace, spec: &ChainSpec) -> Result<RevivalMetrics> {
    let c0 = match trace.times.first() {
        Some(&0.0) => trace.values[0],
        _ => return Err(Error::invalid("trace", "time grid must start at t = 0")),
    };
    if !(c0 > 1e-12 * (0.5 * spec.omega).powi(2)) {
        return Err(Error::OutOfDomain("C(0) vanishes; the system is decoupled".into()));
    }
    let lo = spec.n_sites as f64 / spec.omega_h;
    let hi = 3.0 * lo;
    let best = trace
        .times
        .iter()
        .zip(&trace.values)
        .filter(|(&t, _)| t >= lo && t <= hi * (1.0 + 1e-12))
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .ok_or_else(|| Error::invalid("trace", "no samples inside the revival window"))?;
    Ok(RevivalMetrics {
        t_revival: *best.0,
        peak_ratio: best.1.abs() / c0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{cumulants, shape_from_state, GaussianOscState};
    use proptest::prelude::*;

    fn spec(n: usize, m: f64, w: f64, mh: f64, wh: f64, b: Boundary) -> ChainSpec {
        ChainSpec::new(n, m, w, mh, wh, b).unwrap()
    }

    #[test]
    fn two_by_two_matrix() {
        let s = spec(1, 1.5, 0.7, 1.5, 1.3, Boundary::FreeEnd);
        let k = build_system(&s);
        let (w2, h2) = (0.49, 1.69);
        assert!((k.get(0, 0) - (w2 + h2)).abs() < 1e-15);
        assert!((k.get(0, 1) + h2).abs() < 1e-15);
        assert!((k.get(1, 1) - h2).abs() < 1e-15);
    }

    #[test]
    fn matrix_matches_potential_energy() {
        // ½ξᵀKξ against the spring energy written in physical coordinates
        let s = spec(4, 2.0, 0.8, 0.3, 1.1, Boundary::FixedEnd);
        let k = build_system(&s);
        let x = [0.3, -0.7, 0.2, 0.9, -0.4];
        let xi: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, v)| v * if i == 0 { s.mass } else { s.chain_mass }.sqrt())
            .collect();
        let mut quad = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                quad += 0.5 * xi[i] * k.get(i, j) * xi[j];
            }
        }
        let h2 = s.omega_h * s.omega_h;
        let mut v = 0.5 * s.mass * s.omega * s.omega * x[0] * x[0];
        for n in 1..5 {
            v += 0.5 * s.chain_mass * h2 * (x[n - 1] - x[n]).powi(2);
        }
        v += 0.5 * s.chain_mass * h2 * x[4] * x[4];
        assert!((quad - v).abs() < 1e-14);
    }

    #[test]
    fn two_by_two_modes() {
        let s = spec(1, 1.0, 0.7, 1.0, 1.3, Boundary::FreeEnd);
        let modes = normal_modes(&build_system(&s)).unwrap();
        let (a, b, c): (f64, f64, f64) = (0.49 + 1.69, -1.69, 1.69);
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((modes.frequencies[0] - (mid - rad).sqrt()).abs() < 1e-13);
        assert!((modes.frequencies[1] - (mid + rad).sqrt()).abs() < 1e-13);
        // g_qq(t) as the explicit two-term sum
        let t = 2.3;
        let g = two_point_functions(&modes, &s, t);
        let mut expect = Complex64::new(0.0, 0.0);
        for k in 0..2 {
            let l = modes.frequencies[k] * modes.frequencies[k];
            // first component of the eigenvector of [[a, b], [b, c]] for λ = l
            let (e0, e1) = (b, l - a);
            let v2 = e0 * e0 / (e0 * e0 + e1 * e1);
            expect += Complex64::from_polar(v2 / (2.0 * modes.frequencies[k]), -modes.frequencies[k] * t);
        }
        assert!((g.qq - expect).norm() < 1e-13);
    }

    #[test]
    fn decoupled_chain() {
        let s = spec(5, 1.2, 0.9, 0.0, 1.0, Boundary::FreeEnd);
        let k = build_system(&s);
        assert_eq!(k.get(0, 0), 0.81);
        assert!((1..6).all(|j| k.get(0, j) == 0.0));
        let modes = normal_modes(&k).unwrap();
        let i = modes
            .system_weights
            .iter()
            .position(|v| (v * v - 1.0).abs() < 1e-12)
            .unwrap();
        assert!((modes.frequencies[i] - 0.9).abs() < 1e-12);
        let g = two_point_functions(&modes, &s, 0.0);
        assert!((g.qq.re - 1.0 / (2.0 * 1.2 * 0.9)).abs() < 1e-14);
        assert!((g.pp.re - 0.5 * 1.2 * 0.9).abs() < 1e-14);
        let trace = energy_correlation(&s, &default_time_grid(&s, 64)).unwrap();
        assert!(trace.values.iter().all(|c| c.abs() < 1e-14));
        assert!(revival_metrics(&trace, &s).is_err());
    }

    #[test]
    fn commutator_at_equal_times() {
        let s = spec(30, 1.0, 1.0, 0.1, 1.0, Boundary::FreeEnd);
        let modes = normal_modes(&build_system(&s)).unwrap();
        assert!((modes.weight_sum() - 1.0).abs() < 1e-10);
        let g = two_point_functions(&modes, &s, 0.0);
        assert!((g.qp * g.pq - Complex64::new(0.25, 0.0)).norm() < 1e-12);
        assert!((g.qp - Complex64::new(0.0, 0.5)).norm() < 1e-12);
        assert!(g.qq.im.abs() < 1e-15 && g.pp.im.abs() < 1e-15);
        assert!(g.qq.re * g.pp.re >= 0.25);
    }

    #[test]
    fn band_structure_of_long_chain() {
        // all but the pinned system mode lie inside the band [0, 2ω_h]
        let s = spec(200, 1.0, 1.0, 0.1, 1.0, Boundary::FreeEnd);
        let modes = normal_modes(&build_system(&s)).unwrap();
        let outside = modes.frequencies.iter().filter(|&&w| w > 2.0).count();
        assert!(outside <= 1);
        // free chain dispersion 2ω_h sin(k/2) with k = (j+½)π/(N+½): count
        // modes below ω_h and compare with the fraction of the Brillouin zone
        let below = modes.frequencies.iter().filter(|&&w| w < 1.0).count() as f64;
        assert!((below / 201.0 - 1.0 / 3.0).abs() < 0.02);
    }

    #[test]
    fn no_zero_mode_at_tiny_mass_ratio() {
        for boundary in [Boundary::FreeEnd, Boundary::FixedEnd] {
            let s = spec(50, 1.0, 1.0, 1e-4, 1.0, boundary);
            let modes = normal_modes(&build_system(&s)).unwrap();
            assert!(modes.frequencies[0] > 0.0);
        }
    }

    #[test]
    fn correlation_at_zero_is_energy_variance() {
        let s = spec(20, 1.3, 0.8, 0.2, 1.1, Boundary::FreeEnd);
        let modes = normal_modes(&build_system(&s)).unwrap();
        let g = two_point_functions(&modes, &s, 0.0);
        let state = GaussianOscState::new(g.qq.re, g.pp.re, s.mass, s.omega).unwrap();
        let k2 = cumulants(&shape_from_state(&state).unwrap()).k2;
        let c0 = correlation_with_modes(&modes, &s, &[0.0]).values[0];
        assert!((c0 - k2).abs() < 1e-10 * k2);
        assert!(c0 > 0.0);
    }

    #[test]
    fn revival_window_checks() {
        let s = spec(10, 1.0, 1.0, 0.1, 1.0, Boundary::FreeEnd);
        let trace = energy_correlation(&s, &[0.0, 1.0, 2.0]).unwrap();
        assert!(revival_metrics(&trace, &s).is_err());
        let trace = energy_correlation(&s, &[1.0, 12.0]).unwrap();
        assert!(revival_metrics(&trace, &s).is_err());
    }

    #[test]
    fn grid_defaults() {
        let s = spec(50, 1.0, 1.0, 0.1, 2.0, Boundary::FreeEnd);
        let g = default_time_grid(&s, DEFAULT_GRID_POINTS);
        assert_eq!(g.len(), DEFAULT_GRID_POINTS);
        assert_eq!(g[0], 0.0);
        assert!((g[DEFAULT_GRID_POINTS - 1] - 75.0).abs() < 1e-12);
        assert!((s.friction() - 0.2).abs() < 1e-15 && (s.coupling() - 0.2).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn correlation_bounded_by_initial_value(
            n in 1usize..40,
            m in 0.3f64..3.0,
            w in 0.2f64..2.5,
            mu in 1e-3f64..1.0,
            wh in 0.5f64..2.0,
            fixed in any::<bool>(),
        ) {
            let b = if fixed { Boundary::FixedEnd } else { Boundary::FreeEnd };
            let s = spec(n, m, w, mu * m, wh, b);
            let modes = normal_modes(&build_system(&s)).unwrap();
            prop_assert!((modes.weight_sum() - 1.0).abs() < 1e-10);
            prop_assert!(modes.frequencies[0] > 0.0);
            let trace = correlation_with_modes(&modes, &s, &default_time_grid(&s, 512));
            let c0 = trace.values[0];
            prop_assert!(c0 > 0.0);
            prop_assert!(trace.values.iter().all(|c| c.abs() <= c0 * (1.0 + 1e-9)));
        }
    }
}
