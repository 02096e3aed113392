//! Romberg quadrature on the unit interval.

use crate::error::{Error, Result};

/// Relative convergence target for [`integrate_periodic`].
pub const REL_TOL: f64 = 1e-10;

/// Integrates `f` over one period `[0, 1]`.
///
/// Trapezoid sums on 2^k intervals are refined with Richardson extrapolation
/// (Romberg's tableau). For smooth periodic integrands the trapezoid column
/// is already spectrally accurate and the extrapolation leaves it unchanged;
/// for integrands with a kink or a power-law cusp at the period boundary the
/// extrapolated diagonal converges faster than the raw sums.
///
/// Convergence is declared once two consecutive diagonal entries differ by
/// less than `REL_TOL` times the integral of `|f|`, on two consecutive levels.
/// `max_points` caps the number of function evaluations.
pub fn integrate_periodic<F>(f: F, max_points: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    const MIN_LEVEL: usize = 3;

    let f0 = f(0.0);
    let f1 = f(1.0);
    let mut trap = 0.5 * (f0 + f1);
    let mut abs_trap = 0.5 * (f0.abs() + f1.abs());
    let mut prev_row = vec![trap];
    let mut intervals = 1usize;
    let mut quiet_levels = 0;
    let mut last_change = f64::INFINITY;

    for level in 1.. {
        if intervals * 2 + 1 > max_points {
            break;
        }
        let h = 1.0 / (2 * intervals) as f64;
        let (mut s, mut s_abs) = (0.0, 0.0);
        for i in 0..intervals {
            let v = f((2 * i + 1) as f64 * h);
            s += v;
            s_abs += v.abs();
        }
        trap = 0.5 * trap + h * s;
        abs_trap = 0.5 * abs_trap + h * s_abs;
        intervals *= 2;

        let mut row = Vec::with_capacity(level + 1);
        row.push(trap);
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 4.0;
            let r = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / (factor - 1.0);
            row.push(r);
        }
        let best = row[level];
        last_change = (best - prev_row[level - 1]).abs();
        if !best.is_finite() {
            return Err(Error::NonFinite("integrate_periodic"));
        }
        if level >= MIN_LEVEL && last_change <= REL_TOL * abs_trap.max(f64::MIN_POSITIVE) {
            quiet_levels += 1;
            if quiet_levels >= 2 {
                return Ok(best);
            }
        } else {
            quiet_levels = 0;
        }
        prev_row = row;
    }
    Err(Error::NoConvergence {
        what: "periodic quadrature",
        residual: last_change / abs_trap.max(f64::MIN_POSITIVE),
    })
}
