//! Scaled Legendre sequence.
//!
//! Computes `R_n = t^n P_n(b / t)` with `t² = t2` directly from the three-term
//! recurrence
//!
//! ```text
//! (n+1) R_{n+1} = (2n+1) b R_n - n t2 R_{n-1},   R_0 = 1,  R_1 = b
//! ```
//!
//! The product is a polynomial in `b` and `t2`, so it stays real when `t2 < 0`
//! even though `b / t` is then imaginary.

use crate::error::{ensure_finite, Result};

/// Returns `[R_0, ..., R_{n_max}]`.
pub fn weighted_legendre_sequence(b: f64, t2: f64, n_max: usize) -> Result<Vec<f64>> {
    ensure_finite("weighted_legendre_sequence", &[b, t2])?;
    let mut r = Vec::with_capacity(n_max + 1);
    r.push(1.0);
    if n_max == 0 {
        return Ok(r);
    }
    r.push(b);
    for n in 1..n_max {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0) * b * r[n] - nf * t2 * r[n - 1]) / (nf + 1.0);
        r.push(next);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    use num_complex::Complex64;

    /// Laplace's integral `t^n P_n(b/t) = (1/π) ∫_0^π (b + sqrt(b² - t²) cos θ)^n dθ`.
    /// The integrand is a trigonometric polynomial of degree n, so the
    /// periodic trapezoid rule with more than n nodes is exact.
    fn laplace_integral(n: usize, b: f64, t2: f64) -> f64 {
        let s = Complex64::new(b * b - t2, 0.0).sqrt();
        let nodes = 128;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            acc += (b + s * theta.cos()).powi(n as i32);
        }
        (acc / nodes as f64).re
    }

    #[test]
    fn isolated_case_is_delta() {
        assert_eq!(
            weighted_legendre_sequence(0.0, 0.0, 3).unwrap(),
            vec![1.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn second_order_values() {
        let r = weighted_legendre_sequence(0.5, 0.25, 2).unwrap();
        assert!((r[2] - 0.25).abs() < 1e-15);
        // negative t2: R_2 = (3 b^2 - t2) / 2
        let r = weighted_legendre_sequence(0.3, -0.05, 2).unwrap();
        assert!((r[2] - 0.16).abs() < 1e-15);
    }

    #[test]
    fn zero_length_request() {
        assert_eq!(weighted_legendre_sequence(0.7, 0.1, 0).unwrap(), vec![1.0]);
    }

    #[test]
    fn rejects_nan() {
        assert!(weighted_legendre_sequence(f64::NAN, 0.1, 4).is_err());
        assert!(weighted_legendre_sequence(0.1, f64::INFINITY, 4).is_err());
    }

    proptest! {
        #[test]
        fn matches_laplace_integral(b in -1.0f64..1.0, t in 0.0f64..1.0) {
            let r = weighted_legendre_sequence(b, t * t, 30).unwrap();
            for (n, rn) in r.iter().enumerate() {
                let direct = laplace_integral(n, b, t * t);
                prop_assert!((rn - direct).abs() <= 1e-12 * direct.abs().max(1.0),
                    "n={} rec={} direct={}", n, rn, direct);
            }
        }

        #[test]
        fn negative_t2_stays_real_and_matches(b in -1.0f64..1.0, t2 in -1.0f64..0.0) {
            let r = weighted_legendre_sequence(b, t2, 30).unwrap();
            for (n, rn) in r.iter().enumerate() {
                let direct = laplace_integral(n, b, t2);
                prop_assert!((rn - direct).abs() <= 1e-12 * direct.abs().max(1.0));
            }
        }
    }
}
