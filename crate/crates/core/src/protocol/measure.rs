use rand::Rng;

use crate::linalg::{ComplexMatrix, PureState};
use crate::{Error, Result};

/// Completeness and orthogonality tolerance for projective measurements.
pub const MEASUREMENT_TOL: f64 = 1e-8;

/// Validated projector-valued measure.
#[derive(Debug, Clone)]
pub struct Measurement {
    projectors: Vec<ComplexMatrix>,
}

impl Measurement {
    pub fn new(projectors: Vec<ComplexMatrix>) -> Result<Self> {
        let Some(first) = projectors.first() else {
            return Err(Error::NotAMeasurement("no projectors".into()));
        };
        let n = first.rows();
        if projectors.iter().any(|p| p.rows() != n || p.cols() != n) {
            return Err(Error::NotAMeasurement("projectors differ in shape".into()));
        }
        let mut sum = ComplexMatrix::zeros(n, n);
        for p in &projectors {
            sum = &sum + p;
        }
        let completeness = sum.max_abs_diff(&ComplexMatrix::identity(n));
        if completeness > MEASUREMENT_TOL {
            return Err(Error::NotAMeasurement(format!(
                "projectors sum to I only within {completeness:e}"
            )));
        }
        for (i, a) in projectors.iter().enumerate() {
            for b in &projectors[i + 1..] {
                let cross = (a * b).max_abs_diff(&ComplexMatrix::zeros(n, n));
                if cross > MEASUREMENT_TOL {
                    return Err(Error::NotAMeasurement(format!(
                        "projectors overlap ({cross:e})"
                    )));
                }
            }
        }
        Ok(Self { projectors })
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Born probabilities `⟨ψ|Π_k|ψ⟩`.
    pub fn probabilities(&self, state: &PureState) -> Vec<f64> {
        self.projectors
            .iter()
            .map(|p| {
                let v = p.mul_vec(state.amplitudes());
                state
                    .amplitudes()
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a.conj() * b).re)
                    .sum::<f64>()
                    .max(0.0)
            })
            .collect()
    }

    /// Samples an outcome index from one uniform draw.
    pub fn sample<R: Rng + ?Sized>(&self, state: &PureState, rng: &mut R) -> usize {
        let probs = self.probabilities(state);
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, &p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        // rounding left the cumulative sum just below u
        probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1)
    }

    /// Samples an outcome and returns the normalized post-measurement state.
    pub fn sample_and_collapse<R: Rng + ?Sized>(&self, state: &PureState, rng: &mut R) -> (usize, PureState) {
        let k = self.sample(state, rng);
        let projected = self.projectors[k].mul_vec(state.amplitudes());
        let post = PureState::normalize(projected).expect("sampled outcome has nonzero probability");
        (k, post)
    }
}

/// Samples an outcome of the measurement `projectors` on `state`.
pub fn born_sample<R: Rng + ?Sized>(state: &PureState, projectors: &[ComplexMatrix], rng: &mut R) -> Result<usize> {
    let m = Measurement::new(projectors.to_vec())?;
    if m.projectors[0].rows() != state.dim() {
        return Err(Error::DimMismatch {
            expected: m.projectors[0].rows(),
            found: state.dim(),
        });
    }
    Ok(m.sample(state, rng))
}
