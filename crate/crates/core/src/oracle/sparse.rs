//! Sparse symmetric operators and Krylov eigensolvers for the truncated
//! Fock-space Hamiltonians.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{sym_eig, SymmetricMatrix};

/// Dimensions up to this size are diagonalized densely.
pub const DENSE_LIMIT: usize = 400;
/// Largest Hilbert space any oracle will build.
pub const DIMENSION_LIMIT: usize = 2_000_000;
/// Ground-state residual target `‖Hψ − Eψ‖ / max(1, |E|)`.
pub const LANCZOS_TOL: f64 = 1e-10;
const MAX_RESTARTS: usize = 200;
// keeps the Krylov basis near 200 MB at the dimension limit
const KRYLOV_BUDGET: usize = 25_000_000;

/// Symmetric matrix in compressed-row form.
#[derive(Debug, Clone)]
pub struct SparseSymmetric {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<f64>,
}

impl SparseSymmetric {
    /// Builds the matrix column by column: `column(j, push)` must call
    /// `push(i, H_ij)` for the non-zero entries of column j. Repeated indices
    /// are summed.
    pub fn from_columns<F>(dim: usize, column: F) -> Result<Self>
    where
        F: Fn(usize, &mut dyn FnMut(usize, f64)) + Sync,
    {
        if dim > DIMENSION_LIMIT {
            return Err(Error::DimensionTooLarge {
                dim,
                limit: DIMENSION_LIMIT,
            });
        }
        let rows: Vec<Vec<(u32, f64)>> = (0..dim)
            .into_par_iter()
            .map(|j| {
                let mut entries: Vec<(u32, f64)> = Vec::new();
                column(j, &mut |i, v| entries.push((i as u32, v)));
                entries.sort_unstable_by_key(|e| e.0);
                let mut merged: Vec<(u32, f64)> = Vec::with_capacity(entries.len());
                for (i, v) in entries {
                    match merged.last_mut() {
                        Some(last) if last.0 == i => last.1 += v,
                        _ => merged.push((i, v)),
                    }
                }
                merged.retain(|e| e.1 != 0.0);
                merged
            })
            .collect();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        row_ptr.push(0);
        let nnz: usize = rows.iter().map(Vec::len).sum();
        let mut cols = Vec::with_capacity(nnz);
        let mut vals = Vec::with_capacity(nnz);
        for r in rows {
            for (c, v) in r {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(Self {
            dim,
            row_ptr,
            cols,
            vals,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let row = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[row.clone()]
            .iter()
            .zip(&self.vals[row])
            .find(|(&c, _)| c as usize == j)
            .map_or(0.0, |(_, &v)| v)
    }

    /// Largest absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| {
                self.vals[self.row_ptr[i]..self.row_ptr[i + 1]]
                    .iter()
                    .map(|v| v.abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k] as usize;
                worst = worst.max((self.vals[k] - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        y.par_iter_mut().enumerate().with_min_len(256).for_each(|(i, yi)| {
            let row = self.row_ptr[i]..self.row_ptr[i + 1];
            *yi = self.cols[row.clone()]
                .iter()
                .zip(&self.vals[row])
                .map(|(&c, &v)| v * x[c as usize])
                .sum();
        });
    }

    pub fn to_dense(&self) -> SymmetricMatrix {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                m[(i, self.cols[k] as usize)] = self.vals[k];
            }
        }
        SymmetricMatrix::from_upper(self.dim, |i, j| m[(i, j)])
    }
}

/// Lowest eigenpair with its residual `‖Hψ − Eψ‖`.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub energy: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.par_iter().zip(b).with_min_len(4096).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.par_iter_mut()
        .zip(x)
        .with_min_len(4096)
        .for_each(|(yi, xi)| *yi += alpha * xi);
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = dot(v, v).sqrt();
    if n > 0.0 {
        v.par_iter_mut().for_each(|x| *x /= n);
    }
    n
}

fn residual(h: &SparseSymmetric, v: &[f64], e: f64) -> f64 {
    let mut hv = vec![0.0; v.len()];
    h.apply(v, &mut hv);
    axpy(-e, v, &mut hv);
    dot(&hv, &hv).sqrt()
}

fn krylov_size(dim: usize, wanted: usize) -> usize {
    wanted.min(dim).min((KRYLOV_BUDGET / dim.max(1)).max(20))
}

// Krylov basis and tridiagonal coefficients from the direction of `start`,
// with full reorthogonalization.
fn lanczos_basis(h: &SparseSymmetric, mut start: Vec<f64>, steps: usize) -> (Vec<Vec<f64>>, Vec<f64>, Vec<f64>) {
    normalize(&mut start);
    let mut basis = vec![start];
    let mut alphas = Vec::with_capacity(steps);
    let mut betas = Vec::with_capacity(steps);
    let scale = h.norm_inf().max(1.0);
    for j in 0..steps {
        let mut w = vec![0.0; h.dim()];
        h.apply(&basis[j], &mut w);
        let a = dot(&basis[j], &w);
        alphas.push(a);
        if j + 1 == steps {
            break;
        }
        for _ in 0..2 {
            for q in &basis {
                let c = dot(q, &w);
                axpy(-c, q, &mut w);
            }
        }
        let b = normalize(&mut w);
        if b <= 1e-13 * scale {
            break;
        }
        betas.push(b);
        basis.push(w);
    }
    (basis, alphas, betas)
}

fn tridiagonal_eig(alphas: &[f64], betas: &[f64]) -> Result<crate::numerics::EigenDecomposition> {
    let k = alphas.len();
    let t = SymmetricMatrix::from_upper(k, |i, j| {
        if i == j {
            alphas[i]
        } else if j == i + 1 {
            betas[i]
        } else {
            0.0
        }
    });
    sym_eig(&t)
}

/// Lowest eigenpair: dense below [`DENSE_LIMIT`], restarted Lanczos above.
pub fn lowest_eigenpair(h: &SparseSymmetric, start: &[f64]) -> Result<GroundState> {
    let dim = h.dim();
    if dim <= DENSE_LIMIT {
        let eig = sym_eig(&h.to_dense())?;
        let vector: Vec<f64> = eig.eigenvector(0).iter().copied().collect();
        let energy = eig.eigenvalues[0];
        let residual = residual(h, &vector, energy);
        return Ok(GroundState {
            energy,
            vector,
            residual,
        });
    }
    let steps = krylov_size(dim, 150);
    let mut v = start.to_vec();
    if dot(&v, &v) == 0.0 {
        return Err(Error::invalid("start", "start vector vanishes"));
    }
    let mut last = f64::INFINITY;
    for _ in 0..MAX_RESTARTS {
        let (basis, alphas, betas) = lanczos_basis(h, v, steps);
        let eig = tridiagonal_eig(&alphas, &betas[..alphas.len() - 1])?;
        let s = eig.eigenvector(0);
        let mut x = vec![0.0; dim];
        for (q, &c) in basis.iter().zip(s.iter()) {
            axpy(c, q, &mut x);
        }
        normalize(&mut x);
        let energy = dot(&x, &{
            let mut hx = vec![0.0; dim];
            h.apply(&x, &mut hx);
            hx
        });
        let res = residual(h, &x, energy);
        if res <= LANCZOS_TOL * energy.abs().max(1.0) {
            return Ok(GroundState {
                energy,
                vector: x,
                residual: res,
            });
        }
        last = res;
        v = x;
    }
    Err(Error::NoConvergence {
        what: "Lanczos ground state",
        residual: last,
    })
}

/// Spectral decomposition of `φ` with respect to `H`: pairs `(E, |⟨E|φ⟩|²)`.
/// Exact below [`DENSE_LIMIT`]; otherwise Gauss quadrature nodes from a
/// Lanczos run started at `φ`, which reproduce the first `2k` moments.
pub fn spectral_weights(h: &SparseSymmetric, phi: &[f64], steps: usize) -> Result<Vec<(f64, f64)>> {
    let norm2 = dot(phi, phi);
    if norm2 == 0.0 {
        return Ok(Vec::new());
    }
    if h.dim() <= DENSE_LIMIT {
        let eig = sym_eig(&h.to_dense())?;
        let p = DVector::from_column_slice(phi);
        return Ok((0..h.dim())
            .map(|k| {
                let overlap = eig.eigenvectors.column(k).dot(&p);
                (eig.eigenvalues[k], overlap * overlap)
            })
            .collect());
    }
    let (_, alphas, betas) = lanczos_basis(h, phi.to_vec(), krylov_size(h.dim(), steps));
    let eig = tridiagonal_eig(&alphas, &betas[..alphas.len() - 1])?;
    Ok((0..alphas.len())
        .map(|k| {
            let s0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], norm2 * s0 * s0)
        })
        .collect())
}
