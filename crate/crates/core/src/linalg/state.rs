use num_complex::Complex64;

use super::{hermitian_eig, ComplexMatrix, STATE_TOL};
use crate::{Error, Result};

/// Normalized amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl PureState {
    /// Accepts amplitudes whose norm is within `STATE_TOL` of 1 and
    /// rescales them to unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || !((n - 1.0).abs() <= STATE_TOL) {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self::rescaled(amplitudes, n))
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalize(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amplitudes);
        if amplitudes.is_empty() || n == 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized(n));
        }
        Ok(Self::rescaled(amplitudes, n))
    }

    // vectors already normalized to rounding are kept bit-for-bit
    fn rescaled(mut amplitudes: Vec<Complex64>, n: f64) -> Self {
        if (n - 1.0).abs() > 4.0 * f64::EPSILON {
            amplitudes.iter_mut().for_each(|z| *z /= n);
        }
        Self { amplitudes }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_trusted(self.projector())
    }

    pub fn apply(&self, u: &ComplexMatrix) -> Result<PureState> {
        if u.cols() != self.dim() {
            return Err(Error::DimMismatch {
                expected: u.cols(),
                found: self.dim(),
            });
        }
        PureState::normalize(u.mul_vec(&self.amplitudes))
    }
}

pub(crate) fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let herm = matrix.hermiticity_error();
        if herm > STATE_TOL {
            return Err(Error::NotDensity(format!("not Hermitian (deviation {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::NotDensity(format!("trace is {tr}")));
        }
        let rho = Self::from_trusted(matrix);
        let min = rho.eigenvalues().last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::NotDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(diag))
    }

    /// Maximally mixed state `I / dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_trusted(ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)))
    }

    /// Wraps a matrix known to be a density operator up to rounding; only
    /// the Hermitian part is kept.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self {
            matrix: matrix.hermitian_part(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.matrix)
            .expect("density operators are Hermitian")
            .eigenvalues
    }

    /// Number of eigenvalues above `threshold`.
    pub fn rank(&self, threshold: f64) -> usize {
        self.eigenvalues().iter().filter(|&&e| e > threshold).count()
    }

    pub fn is_pure(&self) -> bool {
        self.rank(STATE_TOL) == 1
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Which factor of proof ⊗ token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    Proof,
    Token,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::Proof => Factor::Token,
            Factor::Token => Factor::Proof,
        }
    }
}

/// Pure state on proof ⊗ token, amplitude index `proof * dim_token + token`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_proof: usize,
    dim_token: usize,
    state: PureState,
}

impl BipartiteState {
    pub fn new(dim_proof: usize, dim_token: usize, state: PureState) -> Result<Self> {
        if state.dim() != dim_proof * dim_token {
            return Err(Error::DimMismatch {
                expected: dim_proof * dim_token,
                found: state.dim(),
            });
        }
        Ok(Self {
            dim_proof,
            dim_token,
            state,
        })
    }

    pub fn product(proof: &PureState, token: &PureState) -> Self {
        let amps = proof
            .amplitudes()
            .iter()
            .flat_map(|p| token.amplitudes().iter().map(move |t| p * t))
            .collect();
        Self {
            dim_proof: proof.dim(),
            dim_token: token.dim(),
            state: PureState::normalize(amps).expect("product of unit vectors"),
        }
    }

    /// Builds a state from `(proof, token, amplitude)` terms, normalizing.
    pub fn from_terms(dim_proof: usize, dim_token: usize, terms: &[(usize, usize, Complex64)]) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim_proof * dim_token];
        for &(p, t, a) in terms {
            if p >= dim_proof || t >= dim_token {
                return Err(Error::DimMismatch {
                    expected: dim_proof * dim_token,
                    found: p * dim_token + t + 1,
                });
            }
            amps[p * dim_token + t] += a;
        }
        Self::new(dim_proof, dim_token, PureState::new(amps)?)
    }

    pub fn dim_proof(&self) -> usize {
        self.dim_proof
    }

    pub fn dim_token(&self) -> usize {
        self.dim_token
    }

    pub fn dim_of(&self, factor: Factor) -> usize {
        match factor {
            Factor::Proof => self.dim_proof,
            Factor::Token => self.dim_token,
        }
    }

    pub fn state(&self) -> &PureState {
        &self.state
    }

    pub fn amplitude(&self, proof: usize, token: usize) -> Complex64 {
        self.state.amplitudes()[proof * self.dim_token + token]
    }

    pub fn same_dims(&self, other: &BipartiteState) -> bool {
        self.dim_proof == other.dim_proof && self.dim_token == other.dim_token
    }

    /// Amplitudes as a matrix with rows indexed by `rows` and columns by
    /// the other factor.
    pub fn reshape(&self, rows: Factor) -> ComplexMatrix {
        match rows {
            Factor::Proof => ComplexMatrix::from_fn(self.dim_proof, self.dim_token, |p, t| {
                self.amplitude(p, t)
            }),
            Factor::Token => ComplexMatrix::from_fn(self.dim_token, self.dim_proof, |t, p| {
                self.amplitude(p, t)
            }),
        }
    }

    /// Applies `u` to one factor (`u ⊗ I` or `I ⊗ u`).
    pub fn apply_local(&self, factor: Factor, u: &ComplexMatrix) -> Result<BipartiteState> {
        let d = self.dim_of(factor);
        if u.rows() != d || u.cols() != d {
            return Err(Error::DimMismatch {
                expected: d,
                found: u.rows(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); self.state.dim()];
        for p in 0..self.dim_proof {
            for t in 0..self.dim_token {
                let a = self.amplitude(p, t);
                match factor {
                    Factor::Proof => {
                        for q in 0..self.dim_proof {
                            amps[q * self.dim_token + t] += u[(q, p)] * a;
                        }
                    }
                    Factor::Token => {
                        for s in 0..self.dim_token {
                            amps[p * self.dim_token + s] += u[(s, t)] * a;
                        }
                    }
                }
            }
        }
        Ok(Self {
            dim_proof: self.dim_proof,
            dim_token: self.dim_token,
            state: PureState::normalize(amps)?,
        })
    }
}

/// Reduced state on `keep`, tracing out the other factor.
pub fn partial_trace(state: &BipartiteState, keep: Factor) -> DensityOperator {
    let a = state.reshape(keep);
    DensityOperator::from_trusted(&a * &a.adjoint())
}
