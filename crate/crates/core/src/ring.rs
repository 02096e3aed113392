//! Flux-dependent qubits: a mesoscopic ring with an in-line dot and a split
//! Cooper pair box.
//!
//! Flux is measured in units of the flux quantum, so `Φ/Φ₀` is just `flux`
//! and derivatives are taken with respect to it.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{ensure_finite, Error, Result};
use crate::numerics::integrate_periodic;
use crate::qubit::{TwoLevelSpec, TwoPointDistribution};

/// Largest harmonic index accepted by [`fourier_harmonics`].
pub const MAX_HARMONIC: usize = 12;
const QUADRATURE_CAP: usize = 1 << 23;

/// Sign in front of the interference term `2 t_L t_R cos(2πΦ)`. Which one
/// applies depends on the electron number in the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    pub t_left: f64,
    pub t_right: f64,
    pub parity: Parity,
    pub epsilon: f64,
    pub alpha: f64,
}

impl RingSpec {
    pub fn new(t_left: f64, t_right: f64, parity: Parity, epsilon: f64, alpha: f64) -> Result<Self> {
        ensure_finite("RingSpec", &[t_left, t_right, epsilon, alpha])?;
        if t_left < 0.0 || t_right < 0.0 {
            return Err(Error::invalid("t_left/t_right", "tunnel energies must be non-negative"));
        }
        if t_left + t_right <= 0.0 {
            return Err(Error::invalid("t_left/t_right", "at least one contact must be open"));
        }
        if alpha < 0.0 {
            return Err(Error::invalid("alpha", "must be non-negative"));
        }
        Ok(Self {
            t_left,
            t_right,
            parity,
            epsilon,
            alpha,
        })
    }

    /// Symmetric ring at resonance, `t_L = t_R = 1`, lower sign, ε = 0.
    pub fn symmetric_resonant(alpha: f64) -> Self {
        Self {
            t_left: 1.0,
            t_right: 1.0,
            parity: Parity::Minus,
            epsilon: 0.0,
            alpha,
        }
    }

    /// Effective two-level parameters at the given flux.
    pub fn two_level(&self, flux: f64, omega_c: f64) -> Result<TwoLevelSpec> {
        TwoLevelSpec::new(self.epsilon, tunnel_coupling(self, flux), self.alpha, omega_c)
    }
}

// Δ²/4 written as a sum of squares so it stays accurate near its zeros.
fn delta_sq_quarter(ring: &RingSpec, flux: f64) -> f64 {
    let diff = ring.t_left - ring.t_right;
    let cross = 4.0 * ring.t_left * ring.t_right;
    let trig = match ring.parity {
        Parity::Minus => (PI * flux).sin(),
        Parity::Plus => (PI * flux).cos(),
    };
    diff * diff + cross * trig * trig
}

// d(Δ²)/dΦ / 2 = Δ·Δ'/… kept as the smooth product Δ·dΔ/dΦ.
fn delta_times_derivative(ring: &RingSpec, flux: f64) -> f64 {
    -8.0 * PI * ring.parity.sign() * ring.t_left * ring.t_right * (2.0 * PI * flux).sin()
}

/// Flux-dependent tunnel coupling, `Δ²/4 = t_L² + t_R² ± 2 t_L t_R cos(2πΦ)`.
pub fn tunnel_coupling(ring: &RingSpec, flux: f64) -> f64 {
    2.0 * delta_sq_quarter(ring, flux).sqrt()
}

/// `dΔ/dΦ`; undefined where Δ vanishes.
pub fn tunnel_coupling_derivative(ring: &RingSpec, flux: f64) -> Result<f64> {
    let delta = tunnel_coupling(ring, flux);
    if delta == 0.0 {
        return Err(Error::OutOfDomain(format!(
            "Δ(Φ) has a cusp at Φ = {flux}; its derivative is undefined"
        )));
    }
    Ok(delta_times_derivative(ring, flux) / delta)
}

/// Current amplitude `I₀ = ½ dΩ/dΦ`, the persistent current carried by the
/// ground state. The excited state carries `−I₀`.
pub fn current_amplitude(ring: &RingSpec, flux: f64) -> Result<f64> {
    let delta = tunnel_coupling(ring, flux);
    let omega = ring.epsilon.hypot(delta);
    if omega == 0.0 {
        return Err(Error::OutOfDomain(format!(
            "Ω(Φ) has a cusp at Φ = {flux} (ε = 0, Δ = 0)"
        )));
    }
    Ok(0.5 * delta_times_derivative(ring, flux) / omega)
}

/// Current distribution `P(I)` on `±I₀` that reproduces the mean current.
/// The weight on `+I₀` is `½(1 + ⟨I⟩/I₀)`.
pub fn current_distribution(mean_current: f64, i0: f64) -> Result<TwoPointDistribution> {
    ensure_finite("current_distribution", &[mean_current, i0])?;
    if i0 == 0.0 {
        return Err(Error::invalid("i0", "current amplitude must be non-zero"));
    }
    let ratio = mean_current / i0;
    if ratio.abs() > 1.0 + 1e-12 {
        return Err(Error::OutOfDomain(format!(
            "|⟨I⟩| = {} exceeds I₀ = {}; a bath can only suppress the current",
            mean_current.abs(),
            i0.abs()
        )));
    }
    Ok(TwoPointDistribution::symmetric(i0, 0.5 * (1.0 + ratio)))
}

/// Persistent current at resonance in the presence of an ohmic bath,
/// `Δ^{α/(1−α)} dΔ/dΦ`, with unit proportionality constant.
///
/// Where Δ vanishes the result is 0: for α > 0 that is the limit, and for
/// α = 0 it is the midpoint of the jump.
pub fn bethe_current(ring: &RingSpec, flux: f64, alpha: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", "must satisfy 0 <= α < 1"));
    }
    if ring.epsilon != 0.0 {
        return Err(Error::invalid(
            "epsilon",
            "the scaling form holds at resonance (ε = 0) only",
        ));
    }
    let delta = tunnel_coupling(ring, flux);
    if delta == 0.0 {
        return Ok(0.0);
    }
    let exponent = alpha / (1.0 - alpha);
    Ok(delta.powf(exponent) * delta_times_derivative(ring, flux) / delta)
}

/// Fourier sine amplitudes `I_n`, n = 1..=n_max, of the resonant current.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSeries {
    pub alpha: f64,
    /// `amplitudes[n - 1] = I_n`.
    pub amplitudes: Vec<f64>,
}

impl HarmonicSeries {
    pub fn amplitude(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.amplitudes.get(i).copied())
    }

    /// `I_n / I₁`.
    pub fn ratio(&self, n: usize) -> Result<f64> {
        let i1 = self.amplitudes.first().copied().unwrap_or(0.0);
        if i1 == 0.0 {
            return Err(Error::OutOfDomain("I₁ vanishes; ratios are undefined".into()));
        }
        let i_n = self
            .amplitude(n)
            .ok_or_else(|| Error::invalid("n", format!("harmonic {n} was not computed")))?;
        Ok(i_n / i1)
    }
}

/// `I_n = 2 ∫₀¹ I(φ) sin(2πnφ) dφ` for the symmetric resonant ring.
pub fn fourier_harmonics(alpha: f64, n_max: usize) -> Result<HarmonicSeries> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", "must satisfy 0 <= α < 1"));
    }
    if n_max == 0 || n_max > MAX_HARMONIC {
        return Err(Error::invalid("n_max", format!("must lie in 1..={MAX_HARMONIC}")));
    }
    let ring = RingSpec::symmetric_resonant(alpha);
    let amplitudes = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let k = 2.0 * PI * n as f64;
            let integral = integrate_periodic(
                |phi| bethe_current(&ring, phi, alpha).unwrap_or(0.0) * (k * phi).sin(),
                QUADRATURE_CAP,
            )?;
            Ok(2.0 * integral)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HarmonicSeries { alpha, amplitudes })
}

fn ratio_from_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Closed-form harmonic ratio
/// `I_n/I₁ = n Π_{k=1}^{n−1} (2kα − (2k−1)) / Π_{k=2}^{n} (2kα − (2k+1))`
/// in exact rational arithmetic.
pub fn pilgram_ratio_exact(n: usize, alpha: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::invalid("n", "harmonic index starts at 1"));
    }
    let mut num = ratio_from_int(n as i64);
    let mut den = BigRational::one();
    for k in 1..n as i64 {
        num *= ratio_from_int(2 * k) * alpha - ratio_from_int(2 * k - 1);
    }
    for k in 2..=n as i64 {
        den *= ratio_from_int(2 * k) * alpha - ratio_from_int(2 * k + 1);
    }
    if den.is_zero() {
        return Err(Error::OutOfDomain(format!(
            "harmonic ratio {n} has a pole at α = {alpha}"
        )));
    }
    Ok(num / den)
}

/// Floating-point evaluation of the same product.
pub fn pilgram_ratio(n: usize, alpha: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n", "harmonic index starts at 1"));
    }
    ensure_finite("pilgram_ratio", &[alpha])?;
    let mut r = n as f64;
    for k in 1..n {
        let k = k as f64;
        r *= 2.0 * k * alpha - (2.0 * k - 1.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let d = 2.0 * k * alpha - (2.0 * k + 1.0);
        if d == 0.0 {
            return Err(Error::OutOfDomain(format!(
                "harmonic ratio {n} has a pole at α = {alpha}"
            )));
        }
        r /= d;
    }
    Ok(r)
}

/// Decay exponent `b_n = −(1/(n−1)) d ln(I_n/I₁)/dα` at α = 0, exactly:
/// `[Σ_{k=1}^{n−1} 2k/(2k−1) − Σ_{k=2}^{n} 2k/(2k+1)] / (n−1)`.
pub fn ansatz_exponent(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::invalid("n", "exponents start at n = 2"));
    }
    let n = n as i64;
    let mut sum = BigRational::zero();
    for k in 1..n {
        sum += BigRational::new(BigInt::from(2 * k), BigInt::from(2 * k - 1));
    }
    for k in 2..=n {
        sum -= BigRational::new(BigInt::from(2 * k), BigInt::from(2 * k + 1));
    }
    Ok(sum / ratio_from_int(n - 1))
}

/// Converts an exact exponent to `f64`.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Split Cooper pair box: Josephson and charging energies, gate charge and
/// external flux (in units of h/2e).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpbSpec {
    pub e_josephson: f64,
    pub e_charging: f64,
    pub n_gate: f64,
    pub flux_x: f64,
}

impl CpbSpec {
    pub fn new(e_josephson: f64, e_charging: f64, n_gate: f64, flux_x: f64) -> Result<Self> {
        ensure_finite("CpbSpec", &[e_josephson, e_charging, n_gate, flux_x])?;
        if e_josephson <= 0.0 || e_charging <= 0.0 {
            return Err(Error::invalid("e_josephson/e_charging", "must be positive"));
        }
        Ok(Self {
            e_josephson,
            e_charging,
            n_gate,
            flux_x,
        })
    }
}

/// Two-level parameters of a Cooper pair box.
///
/// `omega` follows `Ω/2 = √(ε² + Δ²)`, so the splitting is twice that of a
/// qubit written with the same ε and Δ; [`CpbEffective::to_two_level`]
/// doubles both so that the two descriptions agree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CpbEffective {
    pub epsilon: f64,
    pub delta: f64,
    pub omega: f64,
    /// `I₀ = ½ dΩ/dΦ_x`; `None` at the cusp ε = Δ = 0.
    pub current_amplitude: Option<f64>,
}

impl CpbEffective {
    pub fn to_two_level(&self, alpha: f64, omega_c: f64) -> Result<TwoLevelSpec> {
        TwoLevelSpec::new(2.0 * self.epsilon, 2.0 * self.delta, alpha, omega_c)
    }
}

/// `ε = E_J cos(πΦ_x)`, `Δ = E_C(½ − N_g)`, `Ω = 2√(ε² + Δ²)`.
pub fn cpb_effective_spec(cpb: &CpbSpec) -> CpbEffective {
    let (s, c) = (PI * cpb.flux_x).sin_cos();
    let epsilon = cpb.e_josephson * c;
    let delta = cpb.e_charging * (0.5 - cpb.n_gate);
    let half_omega = epsilon.hypot(delta);
    let d_epsilon = -PI * cpb.e_josephson * s;
    // ½ dΩ/dΦ = d(Ω/2)/dΦ = ε ε' / (Ω/2)
    let current_amplitude = (half_omega > 0.0).then(|| epsilon * d_epsilon / half_omega);
    CpbEffective {
        epsilon,
        delta,
        omega: 2.0 * half_omega,
        current_amplitude,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(tl: f64, tr: f64, parity: Parity, eps: f64) -> RingSpec {
        RingSpec::new(tl, tr, parity, eps, 0.0).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn tunnel_coupling_examples() {
        let r = ring(1.0, 1.0, Parity::Minus, 0.0);
        assert_eq!(tunnel_coupling(&r, 0.0), 0.0);
        assert!((tunnel_coupling(&r, 0.5) - 4.0).abs() < 1e-14);
        let single = ring(1.0, 0.0, Parity::Minus, 0.0);
        for flux in [0.0, 0.13, 0.5, 0.77] {
            assert!((tunnel_coupling(&single, flux) - 2.0).abs() < 1e-15);
        }
        // upper sign vanishes at half a flux quantum instead
        let up = ring(1.0, 1.0, Parity::Plus, 0.0);
        assert!((tunnel_coupling(&up, 0.0) - 4.0).abs() < 1e-14);
        assert!(tunnel_coupling(&up, 0.5) < 1e-14);
    }

    #[test]
    fn tunnel_coupling_matches_cosine_form() {
        for (tl, tr) in [(1.0, 0.3), (0.2, 0.7), (1.0, 1.0)] {
            for parity in [Parity::Plus, Parity::Minus] {
                let r = ring(tl, tr, parity, 0.0);
                for flux in [0.05, 0.31, 0.62, 0.9] {
                    let q = tl * tl + tr * tr + parity.sign() * 2.0 * tl * tr * (2.0 * PI * flux).cos();
                    assert!((tunnel_coupling(&r, flux) - 2.0 * q.sqrt()).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn symmetric_ring_is_abs_sine() {
        for t in [0.5, 1.0, 2.0] {
            let r = ring(t, t, Parity::Minus, 0.0);
            for flux in [0.1, 0.4, 0.7, 1.3] {
                assert!((tunnel_coupling(&r, flux) - 4.0 * t * (PI * flux).sin().abs()).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn current_amplitude_examples() {
        let r = ring(1.0, 1.0, Parity::Minus, 0.0);
        let i0 = current_amplitude(&r, 0.25).unwrap();
        assert!((i0 - 2f64.sqrt() * PI).abs() < 1e-13);
        assert!(current_amplitude(&r, 0.5).unwrap().abs() < 1e-13);
        assert!(current_amplitude(&r, 0.0).is_err());
        // flux-independent Ω limit
        let far = ring(1e-4, 1e-4, Parity::Minus, 100.0);
        assert!(current_amplitude(&far, 0.25).unwrap().abs() < 1e-8);
    }

    #[test]
    fn current_amplitude_against_finite_difference() {
        let r = ring(0.8, 0.5, Parity::Plus, 0.3);
        let omega = |f: f64| r.epsilon.hypot(tunnel_coupling(&r, f));
        for flux in [0.1, 0.35, 0.8] {
            let h = 1e-5;
            let fd = 0.5 * (omega(flux + h) - omega(flux - h)) / (2.0 * h);
            assert!((current_amplitude(&r, flux).unwrap() - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn current_distribution_examples() {
        let d = current_distribution(1.0, 1.0).unwrap();
        assert_eq!(d.weights, [0.0, 1.0]);
        let d = current_distribution(0.0, 2.0).unwrap();
        assert_eq!(d.weights, [0.5, 0.5]);
        let d = current_distribution(0.6, 1.0).unwrap();
        assert!((d.weights[1] - 0.8).abs() < 1e-15 && (d.weights[0] - 0.2).abs() < 1e-15);
        assert_eq!(d.values, [-1.0, 1.0]);
        assert!(current_distribution(1.1, 1.0).is_err());
        assert!(current_distribution(0.1, 0.0).is_err());
    }

    #[test]
    fn bethe_current_limits() {
        let r = RingSpec::symmetric_resonant(0.0);
        // jump of 8π across Φ = 0 at α = 0
        let above = bethe_current(&r, 1e-9, 0.0).unwrap();
        let below = bethe_current(&r, -1e-9, 0.0).unwrap();
        assert!((above - below - 8.0 * PI).abs() < 1e-9);
        assert_eq!(bethe_current(&r, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(bethe_current(&r, 0.0, 0.2).unwrap(), 0.0);
        assert!(bethe_current(&r, 0.5, 0.2).unwrap().abs() < 1e-12);
        // the approach to zero is a power law Δ^{α/(1−α)}
        let tiny = [1e-3, 1e-6, 1e-12, 1e-30];
        let v: Vec<f64> = tiny.iter().map(|&f| bethe_current(&r, f, 0.2).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
        assert!(v[3] < 1e-6);
        assert!(bethe_current(&r, 0.1, 1.0).is_err());
        assert!(bethe_current(&ring(1.0, 1.0, Parity::Minus, 0.1), 0.1, 0.2).is_err());
    }

    #[test]
    fn bethe_current_matches_cosine_at_zero_coupling() {
        let r = RingSpec::symmetric_resonant(0.0);
        for flux in [0.1, 0.3, 0.6, 0.95] {
            let expect = 4.0 * PI * (PI * flux).cos();
            assert!((bethe_current(&r, flux, 0.0).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn harmonics_at_zero_coupling() {
        // I_n = 8π ∫ cos(πφ) sin(2πnφ) = 8 · 4n/(4n² − 1)
        let h = fourier_harmonics(0.0, 6).unwrap();
        for n in 1..=6 {
            let nf = n as f64;
            let exact = 8.0 * 4.0 * nf / (4.0 * nf * nf - 1.0);
            assert!((h.amplitude(n).unwrap() - exact).abs() < 1e-8 * exact);
        }
        assert!((h.ratio(2).unwrap() - 0.4).abs() < 1e-10);
        assert!((h.ratio(3).unwrap() - 9.0 / 35.0).abs() < 1e-10);
    }

    #[test]
    fn harmonics_match_closed_form() {
        let h = fourier_harmonics(0.3, 6).unwrap();
        for n in 1..=6 {
            assert!((h.ratio(n).unwrap() - pilgram_ratio(n, 0.3).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn harmonics_argument_checks() {
        assert!(fourier_harmonics(1.0, 3).is_err());
        assert!(fourier_harmonics(0.1, 0).is_err());
        assert!(fourier_harmonics(0.1, MAX_HARMONIC + 1).is_err());
    }

    #[test]
    fn pilgram_examples() {
        assert_eq!(pilgram_ratio_exact(1, &rat(3, 7)).unwrap(), rat(1, 1));
        assert_eq!(pilgram_ratio_exact(2, &rat(0, 1)).unwrap(), rat(2, 5));
        assert_eq!(pilgram_ratio_exact(3, &rat(0, 1)).unwrap(), rat(9, 35));
        assert!((pilgram_ratio(3, 0.0).unwrap() - 9.0 / 35.0).abs() < 1e-16);
        // pole of the n = 2 denominator at α = 5/4
        assert!(pilgram_ratio_exact(2, &rat(5, 4)).is_err());
        assert!(pilgram_ratio(2, 1.25).is_err());
        assert!(pilgram_ratio(0, 0.1).is_err());
    }

    #[test]
    fn exponents_exact() {
        assert_eq!(ansatz_exponent(2).unwrap(), rat(6, 5));
        assert_eq!(ansatz_exponent(3).unwrap(), rat(88, 105));
        assert_eq!(ansatz_exponent(4).unwrap(), rat(626, 945));
        assert!(ansatz_exponent(1).is_err());
    }

    #[test]
    fn exponents_match_log_derivative() {
        // b_n = −(1/(n−1)) d ln(I_n/I₁)/dα at 0, by central difference
        for n in 2..=6 {
            let h = 1e-5;
            let lp = pilgram_ratio(n, h).unwrap().ln();
            let lm = pilgram_ratio(n, -h).unwrap().ln();
            let fd = -(lp - lm) / (2.0 * h) / (n as f64 - 1.0);
            let exact = rational_to_f64(&ansatz_exponent(n).unwrap());
            assert!((fd - exact).abs() < 1e-8, "n={n}: {fd} vs {exact}");
        }
    }

    #[test]
    fn cpb_examples() {
        let e = cpb_effective_spec(&CpbSpec::new(1.0, 4.0, 0.3, 0.5).unwrap());
        assert!(e.epsilon.abs() < 1e-15);
        let e = cpb_effective_spec(&CpbSpec::new(1.0, 4.0, 0.5, 0.2).unwrap());
        assert_eq!(e.delta, 0.0);
        let e = cpb_effective_spec(&CpbSpec::new(1.0, 4.0, 0.25, 0.0).unwrap());
        assert!((e.omega / 2.0 - 2f64.sqrt()).abs() < 1e-15);
        let q = e.to_two_level(0.0, 100.0).unwrap();
        assert!((q.level_splitting().unwrap() - e.omega).abs() < 1e-15);
        assert!(CpbSpec::new(0.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn cpb_current_against_finite_difference() {
        let at = |flux: f64| cpb_effective_spec(&CpbSpec::new(0.7, 3.0, 0.35, flux).unwrap());
        for flux in [0.1, 0.3, 0.45] {
            let h = 1e-6;
            let fd = 0.5 * (at(flux + h).omega - at(flux - h).omega) / (2.0 * h);
            assert!((at(flux).current_amplitude.unwrap() - fd).abs() < 1e-7);
        }
        let cusp = cpb_effective_spec(&CpbSpec::new(1.0, 1.0, 0.5, 0.0).unwrap());
        assert!(cusp.current_amplitude.unwrap().abs() < 1e-15);
        // the current flips sign across the degeneracy at Φ_x = ½
        let below = cpb_effective_spec(&CpbSpec::new(1.0, 1.0, 0.5, 0.5 - 1e-9).unwrap());
        let above = cpb_effective_spec(&CpbSpec::new(1.0, 1.0, 0.5, 0.5 + 1e-9).unwrap());
        assert!((below.current_amplitude.unwrap() + PI).abs() < 1e-9);
        assert!((above.current_amplitude.unwrap() - PI).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn bethe_current_antisymmetric(flux in 0.001f64..0.999, alpha in 0.0f64..0.9) {
            let r = RingSpec::symmetric_resonant(alpha);
            let a = bethe_current(&r, 1.0 - flux, alpha).unwrap();
            let b = bethe_current(&r, flux, alpha).unwrap();
            prop_assert!((a + b).abs() < 1e-12 * b.abs().max(1.0));
        }

        #[test]
        fn distribution_reproduces_mean(frac in -1.0f64..=1.0, i0 in prop_oneof![-50.0f64..-0.01, 0.01f64..50.0]) {
            let d = current_distribution(frac * i0, i0).unwrap();
            prop_assert!((d.mean() - frac * i0).abs() <= 1e-14 * i0.abs().max(1.0));
            prop_assert!((d.weights[0] + d.weights[1] - 1.0).abs() < 1e-15);
        }
    }
}
