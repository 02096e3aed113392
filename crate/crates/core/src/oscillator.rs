//! Gaussian ground-state energetics of a damped harmonic oscillator.
//!
//! The reduced state of the oscillator is Gaussian and fixed by `⟨q²⟩` and
//! `⟨p²⟩`. Everything is expressed through the dimensionless moments
//! `x = 2mω⟨q²⟩` and `y = 2⟨p²⟩/(mω)`; the level spacing ε equals ω.

use std::f64::consts::PI;

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::{central_difference, weighted_legendre_sequence, Derivative};

/// Slack allowed on the uncertainty bound `⟨q²⟩⟨p²⟩ ≥ 1/4` for states that
/// come out of a numerical calculation.
pub const UNCERTAINTY_SLACK: f64 = 1e-12;
/// Target for the truncated population mass in [`level_populations_auto`].
pub const TAIL_TARGET: f64 = 1e-12;
const AUTO_LEVEL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianOscState {
    pub q2: f64,
    pub p2: f64,
    pub mass: f64,
    pub omega: f64,
}

impl GaussianOscState {
    pub fn new(q2: f64, p2: f64, mass: f64, omega: f64) -> Result<Self> {
        ensure_finite("GaussianOscState", &[q2, p2, mass, omega])?;
        if mass <= 0.0 || omega <= 0.0 {
            return Err(Error::invalid("mass/omega", "must be positive"));
        }
        if q2 <= 0.0 || p2 <= 0.0 {
            return Err(Error::invalid("q2/p2", "second moments must be positive"));
        }
        if q2 * p2 < 0.25 * (1.0 - UNCERTAINTY_SLACK) {
            return Err(Error::OutOfDomain(format!(
                "⟨q²⟩⟨p²⟩ = {} violates the uncertainty bound 1/4",
                q2 * p2
            )));
        }
        Ok(Self { q2, p2, mass, omega })
    }

    /// Ground state of the isolated oscillator.
    pub fn isolated(mass: f64, omega: f64) -> Result<Self> {
        Self::new(0.5 / (mass * omega), 0.5 * mass * omega, mass, omega)
    }

    /// State with prescribed dimensionless moments.
    pub fn from_xy(x: f64, y: f64, mass: f64, omega: f64) -> Result<Self> {
        Self::new(x / (2.0 * mass * omega), 0.5 * y * mass * omega, mass, omega)
    }
}

/// Dimensionless description of a Gaussian oscillator state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    pub x: f64,
    pub y: f64,
    /// `(1 + x)(1 + y)`
    pub d: f64,
    /// `(y − x)/D`
    pub a: f64,
    /// `(xy − 1)/D`
    pub b: f64,
    /// Mean energy `ε(x + y)/4`.
    pub energy: f64,
    /// `xy/4 = ⟨q²⟩⟨p²⟩`.
    pub uncertainty: f64,
    /// Level spacing, equal to ω.
    pub epsilon: f64,
}

impl ShapeParams {
    pub fn from_xy(x: f64, y: f64, epsilon: f64) -> Result<Self> {
        ensure_finite("ShapeParams", &[x, y, epsilon])?;
        if x <= 0.0 || y <= 0.0 {
            return Err(Error::invalid("x/y", "must be positive"));
        }
        if epsilon <= 0.0 {
            return Err(Error::invalid("epsilon", "must be positive"));
        }
        if x * y < 1.0 - UNCERTAINTY_SLACK {
            return Err(Error::OutOfDomain(format!(
                "xy = {} < 1 is not a physical state",
                x * y
            )));
        }
        let d = (1.0 + x) * (1.0 + y);
        Ok(Self {
            x,
            y,
            d,
            a: (y - x) / d,
            b: (x * y - 1.0) / d,
            energy: epsilon * (x + y) / 4.0,
            uncertainty: x * y / 4.0,
            epsilon,
        })
    }

    /// `1/√(xy)`.
    pub fn purity(&self) -> f64 {
        1.0 / (self.x * self.y).sqrt()
    }

    /// Roots `u = (y−1)/(y+1)` and `v = (x−1)/(x+1)` of the population
    /// recurrence; `u + v = 2b`, `uv = b² − a²`.
    pub fn recurrence_roots(&self) -> (f64, f64) {
        ((self.y - 1.0) / (self.y + 1.0), (self.x - 1.0) / (self.x + 1.0))
    }
}

pub fn shape_from_state(s: &GaussianOscState) -> Result<ShapeParams> {
    let mw = s.mass * s.omega;
    ShapeParams::from_xy(2.0 * mw * s.q2, 2.0 * s.p2 / mw, s.omega)
}

/// `Tr ρ² = 1/(2√(⟨q²⟩⟨p²⟩))`.
pub fn purity(s: &GaussianOscState) -> f64 {
    0.5 / (s.q2 * s.p2).sqrt()
}

/// Moments of an under-damped oscillator in an ohmic bath with cutoff
/// `cutoff_ratio = ω_c/ω`.
pub fn ohmic_xy(alpha: f64, cutoff_ratio: f64) -> Result<(f64, f64)> {
    ensure_finite("ohmic_xy", &[alpha, cutoff_ratio])?;
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", "the under-damped range is 0 <= α < 1"));
    }
    if cutoff_ratio <= 1.0 {
        return Err(Error::invalid("cutoff_ratio", "ω_c/ω must exceed 1"));
    }
    let s = (1.0 - alpha * alpha).sqrt();
    let x = (1.0 - (2.0 / PI) * (alpha / s).atan()) / s;
    let y = (1.0 - 2.0 * alpha * alpha) * x + (4.0 * alpha / PI) * cutoff_ratio.ln();
    Ok((x, y))
}

/// `Z(χ) = ⟨e^{−χH}⟩` of the Gaussian state.
pub fn generating_function(shape: &ShapeParams, chi: f64) -> Result<f64> {
    ensure_finite("generating_function", &[chi])?;
    let e = shape.epsilon;
    let (s, c) = ((e * chi).sinh(), (e * chi).cosh());
    let braces = 2.0 * shape.energy * s / e + 2.0 * shape.uncertainty * (c - 1.0) + 0.5 * (1.0 + c);
    if !(braces > 0.0) || !braces.is_finite() {
        return Err(Error::OutOfDomain(format!(
            "Z(χ) undefined at χ = {chi}: bracket = {braces}"
        )));
    }
    Ok(braces.powf(-0.5))
}

/// Energy cumulants κ₁..κ₄ of the oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cumulants {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
}

impl Cumulants {
    pub fn as_array(&self) -> [f64; 4] {
        [self.k1, self.k2, self.k3, self.k4]
    }

    /// Cumulants from raw moments `m_k = ⟨H^k⟩`, k = 1..4.
    pub fn from_raw_moments(m: [f64; 4]) -> Self {
        let [m1, m2, m3, m4] = m;
        Self {
            k1: m1,
            k2: m2 - m1 * m1,
            k3: m3 - 3.0 * m2 * m1 + 2.0 * m1.powi(3),
            k4: m4 - 4.0 * m3 * m1 - 3.0 * m2 * m2 + 12.0 * m2 * m1 * m1 - 6.0 * m1.powi(4),
        }
    }
}

pub fn cumulants(shape: &ShapeParams) -> Cumulants {
    let e = shape.energy;
    let a = shape.uncertainty;
    let eps2 = shape.epsilon * shape.epsilon;
    Cumulants {
        k1: e,
        k2: 0.5 * (-0.5 * eps2 + 4.0 * e * e - 2.0 * eps2 * a),
        k3: -0.5 * e * (-16.0 * e * e + eps2 * (1.0 + 12.0 * a)),
        k4: 48.0 * e.powi(4) - 4.0 * eps2 * e * e * (1.0 + 12.0 * a) + eps2 * eps2 * (0.125 + 2.0 * a + 6.0 * a * a),
    }
}

/// κ₁..κ₄ as derivatives of `−ln Z` at χ = 0, by central differences.
/// `κ_n = (−1)^{n+1} dⁿ(−ln Z)/dχⁿ`.
pub fn cumulants_by_differentiation(shape: &ShapeParams) -> Result<[Derivative; 4]> {
    let minus_ln_z = |chi: f64| generating_function(shape, chi).map(|z| -z.ln()).unwrap_or(f64::NAN);
    let mut out = [Derivative { value: 0.0, error: 0.0 }; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        let order = i + 1;
        // ln Z is singular at |εχ| of order 4/(x + y)
        let step = 0.4 / (shape.epsilon * (shape.x + shape.y).max(1.0));
        let mut d = central_difference(minus_ln_z, 0.0, order, step)?;
        if !d.value.is_finite() {
            return Err(Error::NoConvergence {
                what: "cumulant differentiation",
                residual: f64::INFINITY,
            });
        }
        if order % 2 == 0 {
            d.value = -d.value;
        }
        *slot = d;
    }
    Ok(out)
}

/// Diagonal populations `ρ_nn`, n = 0..=n_max, with a rigorous bound on the
/// mass beyond `n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelDistribution {
    pub populations: Vec<f64>,
    pub epsilon: f64,
    /// Upper bound on `Σ_{n > n_max} ρ_nn`.
    pub tail_bound: f64,
}

impl LevelDistribution {
    pub fn n_max(&self) -> usize {
        self.populations.len() - 1
    }

    pub fn is_converged(&self) -> bool {
        self.tail_bound <= TAIL_TARGET
    }

    pub fn total(&self) -> f64 {
        self.populations.iter().sum()
    }

    /// `Σ ρ_nn (ε(n + ½))^k`.
    pub fn raw_moment(&self, k: i32) -> f64 {
        self.populations
            .iter()
            .enumerate()
            .map(|(n, p)| p * (self.epsilon * (n as f64 + 0.5)).powi(k))
            .sum()
    }

    pub fn cumulants(&self) -> Cumulants {
        Cumulants::from_raw_moments([1, 2, 3, 4].map(|k| self.raw_moment(k)))
    }

    /// `Σ ρ_nn e^{−χε(n + ½)}`.
    pub fn generating_function(&self, chi: f64) -> f64 {
        self.populations
            .iter()
            .enumerate()
            .map(|(n, p)| p * (-chi * self.epsilon * (n as f64 + 0.5)).exp())
            .sum()
    }
}

// Each ρ_nn is √(4/D) times a convolution of two central-binomial series in
// u and v whose coefficients sum to one, so ρ_nn ≤ √(4/D) rⁿ.
fn tail_bound(shape: &ShapeParams, n_max: usize) -> f64 {
    let (u, v) = shape.recurrence_roots();
    let r = u.abs().max(v.abs());
    if r == 0.0 {
        return 0.0;
    }
    (4.0 / shape.d).sqrt() * r.powi(n_max as i32 + 1) / (1.0 - r)
}

/// `ρ_nn = √(4/D) (b² − a²)^{n/2} P_n(b/√(b² − a²))`, n = 0..=n_max.
pub fn level_populations(shape: &ShapeParams, n_max: usize) -> Result<LevelDistribution> {
    let norm = (4.0 / shape.d).sqrt();
    let t2 = shape.b * shape.b - shape.a * shape.a;
    let populations = weighted_legendre_sequence(shape.b, t2, n_max)?
        .into_iter()
        .map(|r| norm * r)
        .collect();
    Ok(LevelDistribution {
        populations,
        epsilon: shape.epsilon,
        tail_bound: tail_bound(shape, n_max),
    })
}

/// Smallest `n_max` whose tail bound is below [`TAIL_TARGET`].
pub fn levels_for_tail(shape: &ShapeParams, target: f64) -> usize {
    let (u, v) = shape.recurrence_roots();
    let r = u.abs().max(v.abs());
    if r == 0.0 {
        return 0;
    }
    // solve √(4/D) r^{N+1}/(1−r) ≤ target, then step to absorb rounding
    let lead = (4.0 / shape.d).sqrt() / (1.0 - r);
    let guess = ((target / lead).ln() / r.ln() - 1.0).ceil().max(0.0) as usize;
    let mut n = guess.min(AUTO_LEVEL_CAP);
    while n < AUTO_LEVEL_CAP && tail_bound(shape, n) > target {
        n += 1;
    }
    n
}

/// [`level_populations`] with `n_max` chosen from the tail bound. The result
/// carries the achieved bound; check [`LevelDistribution::is_converged`].
pub fn level_populations_auto(shape: &ShapeParams) -> Result<LevelDistribution> {
    level_populations(shape, levels_for_tail(shape, TAIL_TARGET))
}
