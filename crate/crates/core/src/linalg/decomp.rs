use num_complex::Complex64;

use super::{ComplexMatrix, DensityOperator, SPECTRAL_FLOOR};
use crate::{Error, Result};

/// Tolerance on the Hermiticity precondition of [`hermitian_eig`].
const HERMITIAN_TOL: f64 = 1e-8;

/// `H = V diag(λ) V†` with eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }

    /// `V f(Λ) V†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            weights
                .iter()
                .enumerate()
                .filter(|(_, w)| **w != 0.0)
                .map(|(k, &w)| v[(i, k)] * v[(j, k)].conj() * w)
                .sum()
        })
    }

    /// Projector onto the span of eigenvectors whose eigenvalue satisfies `keep`.
    pub fn spectral_projector(&self, keep: impl Fn(f64) -> bool) -> ComplexMatrix {
        self.reconstruct_with(|l| if keep(l) { 1.0 } else { 0.0 })
    }
}

/// `M = W Σ V†` with full unitary `W` (rows × rows) and `V` (cols × cols).
#[derive(Debug, Clone)]
pub struct SingularValueDecomposition {
    pub left_vectors: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub right_vectors: ComplexMatrix,
}

impl SingularValueDecomposition {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let (m, n) = (self.left_vectors.rows(), self.right_vectors.rows());
        let w = &self.left_vectors;
        let v = &self.right_vectors;
        ComplexMatrix::from_fn(m, n, |i, j| {
            self.singular_values
                .iter()
                .enumerate()
                .map(|(k, &s)| w[(i, k)] * v[(j, k)].conj() * s)
                .sum()
        })
    }

    pub fn nuclear_norm(&self) -> f64 {
        self.singular_values.iter().sum()
    }
}

/// Indices that sort `values` descending; ties keep their original order.
fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    idx
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let err = h.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(Error::NotHermitian(err));
    }
    let n = h.rows();
    let eig = h
        .hermitian_part()
        .to_faer()
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Numeric(format!("eigendecomposition: {e:?}")))?;
    let (s, u) = (eig.S().column_vector(), eig.U());
    let values: Vec<f64> = (0..n).map(|k| s[k].re).collect();
    let order = descending_order(&values);
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&k| values[k]).collect(),
        eigenvectors: ComplexMatrix::from_fn(n, n, |i, j| u[(i, order[j])]),
    })
}

/// Extends orthonormal columns to a full orthonormal basis of `C^dim`.
fn complete_basis(mut columns: Vec<Vec<Complex64>>, dim: usize) -> ComplexMatrix {
    let mut candidate = 0;
    while columns.len() < dim {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[candidate] = Complex64::new(1.0, 0.0);
        candidate += 1;
        // two passes of Gram-Schmidt
        for _ in 0..2 {
            for c in &columns {
                let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(c) {
                    *x -= proj * y;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            columns.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| columns[j][i])
}

/// Singular value decomposition, singular values descending.
pub fn svd(m: &ComplexMatrix) -> SingularValueDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let dec = m.to_faer().thin_svd().expect("SVD converges on finite input");
    let (u, v, s) = (dec.U(), dec.V(), dec.S().column_vector());
    let values: Vec<f64> = (0..rows.min(cols)).map(|k| s[k].re).collect();
    let order = descending_order(&values);
    let left = order.iter().map(|&k| (0..rows).map(|i| u[(i, k)]).collect()).collect();
    let right = order.iter().map(|&k| (0..cols).map(|j| v[(j, k)]).collect()).collect();
    SingularValueDecomposition {
        left_vectors: complete_basis(left, rows),
        singular_values: order.iter().map(|&k| values[k].max(0.0)).collect(),
        right_vectors: complete_basis(right, cols),
    }
}

/// `|A| = sqrt(A† A)`, computed as `V Σ V†` from `A = W Σ V†`.
pub fn matrix_abs(a: &ComplexMatrix) -> ComplexMatrix {
    let dec = svd(a);
    let v = &dec.right_vectors;
    let n = a.cols();
    ComplexMatrix::from_fn(n, n, |i, j| {
        dec.singular_values
            .iter()
            .enumerate()
            .map(|(k, &s)| v[(i, k)] * v[(j, k)].conj() * s)
            .sum()
    })
}

/// Principal square root of a density operator. Eigenvalues at or below
/// the spectral noise floor, including the small negatives the density
/// invariant admits, are set to zero first.
pub fn sqrt_psd(rho: &DensityOperator) -> ComplexMatrix {
    let eig = hermitian_eig(rho.matrix()).expect("density operators are Hermitian");
    eig.reconstruct_with(|l| if l > SPECTRAL_FLOOR { l.sqrt() } else { 0.0 })
}
