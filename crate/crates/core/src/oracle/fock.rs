//! Exact diagonalization of a small oscillator–bath system in a truncated
//! Fock space, as a check on the Gaussian formulas.
//!
//! In mass-weighted coordinates `H = ½Σπ_i² + ½ξᵀKξ`. The system site uses
//! ladder operators of its bare frequency ω, so `H_s = ω(n₀ + ½)` is
//! diagonal; bath site i uses frequency `√K_ii`.

use super::gaussian::OscillatorBath;
use super::sparse::{lowest_eigenpair, spectral_weights, SparseSymmetric, DIMENSION_LIMIT};
use super::spin_boson::TruncatedState;
use crate::chain::CorrelationTrace;
use crate::error::{ensure_finite, Error, Result};

/// Largest number of bath sites accepted by [`fock_ed_oscillator`].
pub const MAX_BATH_SITES: usize = 2;
const SPECTRAL_STEPS: usize = 300;

#[derive(Debug, Clone)]
pub struct FockEdResult {
    pub state: TruncatedState,
    /// `ρ_nn` of the system oscillator, n = 0..=n_max.
    pub populations: Vec<f64>,
    /// `(⟨q²⟩, ⟨p²⟩)` of the system oscillator.
    pub moments: (f64, f64),
    pub mean_system_energy: f64,
    pub correlation: CorrelationTrace,
    /// Largest weight any site places on its highest retained level.
    pub edge_population: f64,
}

fn decode(mut index: usize, base: usize, out: &mut [usize]) {
    for n in out.iter_mut() {
        *n = index % base;
        index /= base;
    }
}

pub fn fock_ed_oscillator(system: &OscillatorBath, n_max: usize, times: &[f64]) -> Result<FockEdResult> {
    ensure_finite("fock_ed_oscillator", times)?;
    let sites = system.dim();
    if sites > MAX_BATH_SITES + 1 {
        return Err(Error::invalid(
            "bath",
            format!("at most {MAX_BATH_SITES} bath oscillators"),
        ));
    }
    if n_max < 2 {
        return Err(Error::invalid("n_max", "need at least three levels per site"));
    }
    let base = n_max + 1;
    let dim = base
        .checked_pow(sites as u32)
        .filter(|&d| d <= DIMENSION_LIMIT)
        .ok_or(Error::DimensionTooLarge {
            dim: usize::MAX,
            limit: DIMENSION_LIMIT,
        })?;
    let k = system.mass_weighted_stiffness();
    let omega = system.omega;
    let freq: Vec<f64> = (0..sites)
        .map(|i| if i == 0 { omega } else { k[(i, i)].sqrt() })
        .collect();
    if freq.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: f64::NAN,
        });
    }
    let strides: Vec<usize> = (0..sites).map(|i| base.pow(i as u32)).collect();
    let shift0 = 0.5 * (k[(0, 0)] - omega * omega);

    let h = SparseSymmetric::from_columns(dim, |col, push| {
        let mut n = [0usize; MAX_BATH_SITES + 1];
        decode(col, base, &mut n[..sites]);
        let mut diag = 0.0;
        for i in 0..sites {
            diag += freq[i] * (n[i] as f64 + 0.5);
        }
        // ½(K₀₀ − ω²) ξ₀²
        let s0 = shift0 / (2.0 * omega);
        diag += s0 * (2 * n[0] + 1) as f64;
        if n[0] + 2 <= n_max {
            push(col + 2 * strides[0], s0 * (((n[0] + 1) * (n[0] + 2)) as f64).sqrt());
        }
        if n[0] >= 2 {
            push(col - 2 * strides[0], s0 * ((n[0] * (n[0] - 1)) as f64).sqrt());
        }
        push(col, diag);
        // K_ij ξ_i ξ_j
        for i in 0..sites {
            for j in i + 1..sites {
                let kij = k[(i, j)];
                if kij == 0.0 {
                    continue;
                }
                let c = kij / (4.0 * freq[i] * freq[j]).sqrt();
                for (di, ai) in ladder(n[i], n_max) {
                    for (dj, aj) in ladder(n[j], n_max) {
                        let target = (col as isize + di * strides[i] as isize + dj * strides[j] as isize) as usize;
                        push(target, c * ai * aj);
                    }
                }
            }
        }
    })?;

    let mut start = vec![0.0; dim];
    start[0] = 1.0;
    for (i, v) in start.iter_mut().enumerate().skip(1) {
        *v = 1e-3 * ((i as f64) * 0.754_877_666).sin();
    }
    let gs = lowest_eigenpair(&h, &start)?;
    let psi = &gs.vector;

    let mut populations = vec![0.0; base];
    let mut edge = vec![0.0; sites];
    let mut n = [0usize; MAX_BATH_SITES + 1];
    for (idx, &amp) in psi.iter().enumerate() {
        decode(idx, base, &mut n[..sites]);
        let w = amp * amp;
        populations[n[0]] += w;
        for i in 0..sites {
            if n[i] == n_max {
                edge[i] += w;
            }
        }
    }
    let hs = |idx: usize| omega * ((idx % base) as f64 + 0.5);
    let mean_hs: f64 = psi.iter().enumerate().map(|(i, a)| a * a * hs(i)).sum();

    // ⟨ξ₀²⟩ from its matrix elements
    let mut xi2 = 0.0;
    for (idx, &amp) in psi.iter().enumerate() {
        let n0 = idx % base;
        xi2 += amp * amp * (2 * n0 + 1) as f64 / (2.0 * omega);
        if n0 + 2 <= n_max {
            xi2 += 2.0 * amp * psi[idx + 2] * (((n0 + 1) * (n0 + 2)) as f64).sqrt() / (2.0 * omega);
        }
    }
    let pi2 = 2.0 * mean_hs - omega * omega * xi2;
    let m = system.masses[0];

    let phi: Vec<f64> = psi.iter().enumerate().map(|(i, a)| (hs(i) - mean_hs) * a).collect();
    let weights = spectral_weights(&h, &phi, SPECTRAL_STEPS)?;
    let values = times
        .iter()
        .map(|&t| weights.iter().map(|(e, w)| w * ((e - gs.energy) * t).cos()).sum())
        .collect();

    Ok(FockEdResult {
        state: TruncatedState {
            dim,
            ground_energy: gs.energy,
            vector: gs.vector.clone(),
            n_max,
            modes: sites - 1,
            residual: gs.residual,
        },
        populations,
        moments: (xi2 / m, m * pi2),
        mean_system_energy: mean_hs,
        correlation: CorrelationTrace {
            times: times.to_vec(),
            values,
        },
        edge_population: edge.into_iter().fold(0.0, f64::max),
    })
}

// Nonzero terms of (a + a†)|n⟩ as (Δn, amplitude).
fn ladder(n: usize, n_max: usize) -> impl Iterator<Item = (isize, f64)> {
    let up = (n < n_max).then(|| (1isize, ((n + 1) as f64).sqrt()));
    let down = (n > 0).then(|| (-1isize, (n as f64).sqrt()));
    up.into_iter().chain(down)
}
