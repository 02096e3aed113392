//! Finite-mode sampling of an ohmic spectral density
//! `J(ω) = 2παω e^{−ω/ω_c}`.

use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};

/// Lower edge of the sampled band in units of ω_c.
pub const BAND_LOW: f64 = 1e-3;
/// Upper edge of the sampled band in units of ω_c.
pub const BAND_HIGH: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Equal bins on a linear frequency axis.
    Linear,
    /// Equal bins on a logarithmic frequency axis.
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteBath {
    pub frequencies: Vec<f64>,
    pub couplings: Vec<f64>,
    /// Bin width `Δω_j` each mode represents.
    pub widths: Vec<f64>,
    pub omega_c: f64,
    pub alpha: f64,
}

impl DiscreteBath {
    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// `Σ g_j²/(4ω_j)`.
    pub fn reorganization_energy(&self) -> f64 {
        self.frequencies
            .iter()
            .zip(&self.couplings)
            .map(|(w, g)| g * g / (4.0 * w))
            .sum()
    }

    /// The first `k` modes, unchanged.
    pub fn first_modes(&self, k: usize) -> DiscreteBath {
        let k = k.min(self.len());
        DiscreteBath {
            frequencies: self.frequencies[..k].to_vec(),
            couplings: self.couplings[..k].to_vec(),
            widths: self.widths[..k].to_vec(),
            omega_c: self.omega_c,
            alpha: self.alpha,
        }
    }

    /// Same modes with every coupling multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> DiscreteBath {
        DiscreteBath {
            couplings: self.couplings.iter().map(|g| g * factor).collect(),
            alpha: self.alpha * factor * factor,
            ..self.clone()
        }
    }
}

pub fn spectral_density(alpha: f64, omega_c: f64, omega: f64) -> f64 {
    2.0 * PI * alpha * omega * (-omega / omega_c).exp()
}

/// Samples `M` modes from `[BAND_LOW·ω_c, BAND_HIGH·ω_c]` with
/// `g_j² = (2/π) J(ω_j) Δω_j`. Log bins use the geometric centre, linear
/// bins the midpoint.
pub fn discretize_ohmic(alpha: f64, omega_c: f64, modes: usize, scheme: Scheme) -> Result<DiscreteBath> {
    ensure_finite("discretize_ohmic", &[alpha, omega_c])?;
    if modes == 0 {
        return Err(Error::invalid("modes", "need at least one mode"));
    }
    if alpha < 0.0 {
        return Err(Error::invalid("alpha", "must be non-negative"));
    }
    if omega_c <= 0.0 {
        return Err(Error::invalid("omega_c", "must be positive"));
    }
    let (lo, hi) = (BAND_LOW * omega_c, BAND_HIGH * omega_c);
    let edge = |j: usize| match scheme {
        Scheme::Linear => lo + (hi - lo) * j as f64 / modes as f64,
        Scheme::Log => lo * (hi / lo).powf(j as f64 / modes as f64),
    };
    let mut frequencies = Vec::with_capacity(modes);
    let mut widths = Vec::with_capacity(modes);
    let mut couplings = Vec::with_capacity(modes);
    for j in 0..modes {
        let (a, b) = (edge(j), edge(j + 1));
        let w = match scheme {
            Scheme::Linear => 0.5 * (a + b),
            Scheme::Log => (a * b).sqrt(),
        };
        let dw = b - a;
        frequencies.push(w);
        widths.push(dw);
        couplings.push(((2.0 / PI) * spectral_density(alpha, omega_c, w) * dw).sqrt());
    }
    Ok(DiscreteBath {
        frequencies,
        couplings,
        widths,
        omega_c,
        alpha,
    })
}

/// `(2/π)∫ J(ω)/ω dω` over `[lo, hi]`, the continuum value of `Σ g_j²/ω_j`.
pub fn continuum_coupling_sum(alpha: f64, omega_c: f64, lo: f64, hi: f64) -> f64 {
    4.0 * alpha * omega_c * ((-lo / omega_c).exp() - (-hi / omega_c).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coupling_sum(b: &DiscreteBath) -> f64 {
        b.frequencies.iter().zip(&b.couplings).map(|(w, g)| g * g / w).sum()
    }

    #[test]
    fn zero_coupling() {
        let b = discretize_ohmic(0.0, 10.0, 8, Scheme::Log).unwrap();
        assert!(b.couplings.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn frequencies_increase_and_fill_band() {
        for scheme in [Scheme::Linear, Scheme::Log] {
            let b = discretize_ohmic(0.1, 5.0, 16, scheme).unwrap();
            assert!(b.frequencies.windows(2).all(|w| w[1] > w[0]));
            let total: f64 = b.widths.iter().sum();
            assert!((total - (BAND_HIGH - BAND_LOW) * 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reorganization_energy_converges() {
        // continuum value α ω_c, up to the excluded band edges
        let b = discretize_ohmic(0.05, 50.0, 64, Scheme::Log).unwrap();
        let cont = 0.05 * 50.0;
        assert!((b.reorganization_energy() - cont).abs() < 0.02 * cont);
    }

    #[test]
    fn refinement_shrinks_quadrature_error() {
        let (alpha, wc) = (0.1, 20.0);
        let exact = continuum_coupling_sum(alpha, wc, BAND_LOW * wc, BAND_HIGH * wc);
        for scheme in [Scheme::Linear, Scheme::Log] {
            let mut prev = f64::INFINITY;
            for m in [16, 32, 64, 128] {
                let err = (coupling_sum(&discretize_ohmic(alpha, wc, m, scheme).unwrap()) - exact).abs();
                assert!(err <= 0.5 * prev, "{scheme:?} M={m}: {err} vs {prev}");
                prev = err;
            }
        }
    }

    #[test]
    fn prefix_and_scaling() {
        let b = discretize_ohmic(0.02, 10.0, 6, Scheme::Log).unwrap();
        let p = b.first_modes(3);
        assert_eq!(p.frequencies, b.frequencies[..3].to_vec());
        let s = b.scaled(0.5);
        assert!((s.couplings[2] - 0.5 * b.couplings[2]).abs() < 1e-16);
        assert!((s.alpha - 0.005).abs() < 1e-16);
    }
}
