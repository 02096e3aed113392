//! Central finite differences with Richardson refinement.

use crate::error::{Error, Result};

/// A derivative estimate together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: f64,
    pub error: f64,
}

// Stencils on x0 + k·h for k = -2..=2, each with an even error expansion in h.
const STENCILS: [[f64; 5]; 4] = [
    [0.0, -0.5, 0.0, 0.5, 0.0],
    [0.0, 1.0, -2.0, 1.0, 0.0],
    [-0.5, 1.0, 0.0, -1.0, 0.5],
    [1.0, -4.0, 6.0, -4.0, 1.0],
];

const LEVELS: usize = 10;

fn stencil<F: Fn(f64) -> f64>(f: &F, x0: f64, order: usize, h: f64) -> f64 {
    let w = &STENCILS[order - 1];
    let mut acc = 0.0;
    for (k, &wk) in w.iter().enumerate() {
        if wk != 0.0 {
            acc += wk * f(x0 + (k as f64 - 2.0) * h);
        }
    }
    acc / h.powi(order as i32)
}

/// `order`-th derivative of `f` at `x0` (order 1..=4).
///
/// Starts from `step` and halves it, eliminating the h², h⁴, ... terms with a
/// Neville tableau (Ridders' scheme). The error estimate is the distance
/// between the accepted entry and its two parents; the refinement stops once
/// that estimate starts to grow, which is where rounding takes over.
pub fn central_difference<F>(f: F, x0: f64, order: usize, step: f64) -> Result<Derivative>
where
    F: Fn(f64) -> f64,
{
    if !(1..=4).contains(&order) {
        return Err(Error::invalid("order", "must be between 1 and 4"));
    }
    if !(step > 0.0) || !step.is_finite() || !x0.is_finite() {
        return Err(Error::invalid("step", "must be positive and finite"));
    }

    let mut table = vec![vec![0.0; LEVELS]; LEVELS];
    let mut h = step;
    table[0][0] = stencil(&f, x0, order, h);
    let mut best = Derivative {
        value: table[0][0],
        error: f64::INFINITY,
    };
    for i in 1..LEVELS {
        h *= 0.5;
        table[i][0] = stencil(&f, x0, order, h);
        let mut fac = 1.0;
        for j in 1..=i {
            fac *= 4.0;
            table[i][j] = (table[i][j - 1] * fac - table[i - 1][j - 1]) / (fac - 1.0);
            let err = (table[i][j] - table[i][j - 1])
                .abs()
                .max((table[i][j] - table[i - 1][j - 1]).abs());
            if err <= best.error {
                best = Derivative {
                    value: table[i][j],
                    error: err,
                };
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= 2.0 * best.error {
            break;
        }
    }
    Ok(best)
}
