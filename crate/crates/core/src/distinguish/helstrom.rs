use super::{check_dims, trace_distance};
use crate::linalg::{hermitian_eig, ComplexMatrix, DensityOperator};
use crate::Result;

/// Eigenvalues of `ρ_0 − ρ_1` within this band of zero go to `projector0`.
pub const HELSTROM_TIE_TOL: f64 = 1e-10;

/// Minimum-error projective measurement discriminating two equiprobable states.
#[derive(Debug, Clone)]
pub struct HelstromMeasurement {
    /// Outcome "0": the nonnegative eigenspace of `ρ_0 − ρ_1`.
    pub projector0: ComplexMatrix,
    pub projector1: ComplexMatrix,
    pub success_probability: f64,
}

impl HelstromMeasurement {
    pub fn projector(&self, outcome: usize) -> &ComplexMatrix {
        match outcome {
            0 => &self.projector0,
            _ => &self.projector1,
        }
    }

    /// Probability of reporting `guess` on state `rho`.
    pub fn probability(&self, rho: &DensityOperator, guess: usize) -> f64 {
        (self.projector(guess) * rho.matrix()).trace().re
    }
}

pub fn helstrom(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<HelstromMeasurement> {
    check_dims(rho0, rho1)?;
    let eig = hermitian_eig(&(rho0.matrix() - rho1.matrix()))?;
    let projector0 = eig.spectral_projector(|l| l >= -HELSTROM_TIE_TOL);
    let projector1 = &ComplexMatrix::identity(rho0.dim()) - &projector0;
    let mut m = HelstromMeasurement {
        projector0,
        projector1,
        success_probability: 0.0,
    };
    m.success_probability = 0.5 * (m.probability(rho0, 0) + m.probability(rho1, 1));
    Ok(m)
}

impl HelstromMeasurement {
    /// `½ + D/2` for the pair, the value `success_probability` must match.
    pub fn optimal_value(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<f64> {
        Ok(0.5 + 0.5 * trace_distance(rho0, rho1)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_density, PureState};

    #[test]
    fn indistinguishable_pair() {
        let rho = random_density(3, 2, 8).unwrap();
        let m = helstrom(&rho, &rho).unwrap();
        assert!((m.success_probability - 0.5).abs() < 1e-12);
        assert!(m.projector0.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn orthogonal_pure_states() {
        let m = helstrom(&PureState::basis(2, 0).density(), &PureState::basis(2, 1).density()).unwrap();
        assert!((m.success_probability - 1.0).abs() < 1e-12);
    }

    #[test]
    fn commuting_family_point() {
        let r0 = DensityOperator::from_diagonal(&[0.3, 0.7, 0.0]).unwrap();
        let r1 = DensityOperator::from_diagonal(&[0.0, 0.7, 0.3]).unwrap();
        let m = helstrom(&r0, &r1).unwrap();
        assert!((m.success_probability - 0.65).abs() < 1e-12);
    }

    #[test]
    fn projectors_form_a_measurement() {
        for seed in 0..200u64 {
            let d = 2 + (seed as usize % 5);
            let a = random_density(d, 1 + seed as usize % d, seed).unwrap();
            let b = random_density(d, 1 + (seed as usize / 3) % d, seed + 1000).unwrap();
            let m = helstrom(&a, &b).unwrap();
            let id = ComplexMatrix::identity(d);
            assert!((&m.projector0 + &m.projector1).max_abs_diff(&id) < 1e-8);
            for p in [&m.projector0, &m.projector1] {
                assert!((p * p).max_abs_diff(p) < 1e-8);
                assert!(p.hermiticity_error() < 1e-8);
            }
            let want = HelstromMeasurement::optimal_value(&a, &b).unwrap();
            assert!((m.success_probability - want).abs() < 1e-9);
        }
    }
}
