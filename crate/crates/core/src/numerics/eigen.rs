//! Dense symmetric eigendecomposition with a checked accuracy contract.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Residual tolerance, relative to the infinity norm of the matrix.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Allowed deviation of `VᵀV` from the identity.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// A real symmetric matrix. Symmetry is exact: `a[i][j] == a[j][i]` bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix(DMatrix<f64>);

impl SymmetricMatrix {
    /// Wraps a square matrix, rejecting any entry pair that is not exactly symmetric.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::invalid("matrix", "must be square with n >= 1"));
        }
        if m.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("SymmetricMatrix::new"));
        }
        let n = m.nrows();
        for i in 0..n {
            for j in (i + 1)..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::invalid(
                        "matrix",
                        format!("entries ({i},{j}) and ({j},{i}) differ"),
                    ));
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds from the upper triangle; `f(i, j)` is only called with `i <= j`.
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        self.0
            .row_iter()
            .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> DVector<f64> {
        self.eigenvectors.column(k).into_owned()
    }

    /// `max_k ‖K v_k − λ_k v_k‖∞`.
    pub fn max_residual(&self, k: &SymmetricMatrix) -> f64 {
        let kv = k.as_matrix() * &self.eigenvectors;
        let mut worst = 0.0f64;
        for (col, &lambda) in self.eigenvalues.iter().enumerate() {
            for row in 0..kv.nrows() {
                let r = kv[(row, col)] - lambda * self.eigenvectors[(row, col)];
                worst = worst.max(r.abs());
            }
        }
        worst
    }

    /// `max_jk |v_j·v_k − δ_jk|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.eigenvectors.transpose() * &self.eigenvectors;
        let n = g.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Backed by nalgebra's symmetric QR iteration; the result is checked
/// against the residual and orthonormality tolerances before it is returned.
pub fn sym_eig(k: &SymmetricMatrix) -> Result<EigenDecomposition> {
    let n = k.dim();
    let eig = SymmetricEigen::try_new(k.as_matrix().clone(), f64::EPSILON, 0).ok_or(Error::NoConvergence {
        what: "symmetric eigensolver",
        residual: f64::NAN,
    })?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }

    let out = EigenDecomposition {
        eigenvalues,
        eigenvectors,
    };
    let scale = k.norm_inf().max(f64::MIN_POSITIVE);
    let residual = out.max_residual(k);
    if residual > RESIDUAL_TOL * scale {
        return Err(Error::NoConvergence {
            what: "symmetric eigensolver",
            residual,
        });
    }
    let defect = out.orthonormality_defect();
    if defect > ORTHONORMALITY_TOL {
        return Err(Error::NoConvergence {
            what: "eigenvector orthonormality",
            residual: defect,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity() {
        let k = SymmetricMatrix::new(DMatrix::identity(3, 3)).unwrap();
        let e = sym_eig(&k).unwrap();
        assert_eq!(e.eigenvalues.len(), 3);
        for l in &e.eigenvalues {
            assert!((l - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn diagonal_sorted() {
        let k = SymmetricMatrix::new(DMatrix::from_diagonal(&DVector::from_vec(vec![5.0, 2.0]))).unwrap();
        let e = sym_eig(&k).unwrap();
        assert_eq!(e.eigenvalues, vec![2.0, 5.0]);
        assert!((e.eigenvectors[(1, 0)].abs() - 1.0).abs() < 1e-15);
        assert!((e.eigenvectors[(0, 1)].abs() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_by_two_hand_diagonalization() {
        let k = SymmetricMatrix::new(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0])).unwrap();
        let e = sym_eig(&k).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v0 = e.eigenvector(0);
        // (1, -1)/√2 up to overall sign
        assert!((v0[0].abs() - s).abs() < 1e-14 && (v0[0] + v0[1]).abs() < 1e-14);
        let v1 = e.eigenvector(1);
        assert!((v1[0].abs() - s).abs() < 1e-14 && (v1[0] - v1[1]).abs() < 1e-14);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.5 + 1e-16, 1.0]);
        assert!(SymmetricMatrix::new(m).is_err());
        assert!(SymmetricMatrix::new(DMatrix::zeros(0, 0)).is_err());
    }

    fn random_symmetric(n: usize, seed: u64) -> SymmetricMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        SymmetricMatrix::from_upper(n, |_, _| rng.gen_range(-1.0..1.0))
    }

    fn reconstruction_error(k: &SymmetricMatrix, e: &EigenDecomposition) -> f64 {
        let lam = DMatrix::from_diagonal(&DVector::from_vec(e.eigenvalues.clone()));
        let rec = &e.eigenvectors * lam * e.eigenvectors.transpose();
        (rec - k.as_matrix()).amax()
    }

    #[test]
    fn reconstruction_large() {
        for (n, seed) in [(500usize, 1u64), (137, 2)] {
            let k = random_symmetric(n, seed);
            let e = sym_eig(&k).unwrap();
            assert!(reconstruction_error(&k, &e) < 1e-9 * k.norm_inf());
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn reconstruction_random(n in 1usize..40, seed in any::<u64>()) {
            let k = random_symmetric(n, seed);
            let e = sym_eig(&k).unwrap();
            prop_assert!(reconstruction_error(&k, &e) < 1e-9 * k.norm_inf());
            prop_assert!(e.orthonormality_defect() < 1e-10);
        }
    }
}
