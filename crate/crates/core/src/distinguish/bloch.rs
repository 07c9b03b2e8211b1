use num_complex::Complex64;

use crate::linalg::{ComplexMatrix, DensityOperator, SPECTRAL_FLOOR, STATE_TOL};
use crate::{Error, Result};

/// Bloch-ball coordinates of a qubit state, `ρ = (I + xX + yY + zZ) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if v.norm_sq() > 1.0 + STATE_TOL {
            return Err(Error::NotDensity(format!("Bloch vector length {}", v.norm())));
        }
        Ok(v)
    }

    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn to_density(&self) -> DensityOperator {
        let m = ComplexMatrix::from_entries(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + self.z), 0.0),
                Complex64::new(0.5 * self.x, -0.5 * self.y),
                Complex64::new(0.5 * self.x, 0.5 * self.y),
                Complex64::new(0.5 * (1.0 - self.z), 0.0),
            ],
        )
        .expect("2x2");
        DensityOperator::from_trusted(m)
    }
}

pub fn qubit_bloch(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::NotQubit(rho.dim()));
    }
    let m = rho.matrix();
    Ok(BlochVector {
        x: 2.0 * m[(0, 1)].re,
        y: -2.0 * m[(0, 1)].im,
        z: (m[(0, 0)] - m[(1, 1)]).re,
    })
}

/// `½ |r − s|`.
pub fn bloch_trace_distance(r: &BlochVector, s: &BlochVector) -> f64 {
    let d = BlochVector {
        x: r.x - s.x,
        y: r.y - s.y,
        z: r.z - s.z,
    };
    0.5 * d.norm()
}

/// `½ (1 + r·s + sqrt((1 − |r|²)(1 − |s|²)))`.
pub fn bloch_fidelity_sq(r: &BlochVector, s: &BlochVector) -> f64 {
    // 1 − |r|² is 4 det ρ; below the spectral floor the state is pure
    let defect = |v: &BlochVector| {
        let d = 1.0 - v.norm_sq();
        if d > 4.0 * SPECTRAL_FLOOR {
            d
        } else {
            0.0
        }
    };
    let mixedness = (defect(r) * defect(s)).sqrt();
    (0.5 * (1.0 + r.dot(s) + mixedness)).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distinguish::{fidelity, trace_distance};
    use crate::linalg::{random_density_with, seeded_rng};

    #[test]
    fn coinciding_and_antipodal() {
        let r = BlochVector::new(0.3, -0.2, 0.5).unwrap();
        assert_eq!(bloch_trace_distance(&r, &r), 0.0);
        assert!((bloch_fidelity_sq(&r, &r) - 1.0).abs() < 1e-15);
        let up = BlochVector::new(0.0, 0.0, 1.0).unwrap();
        let down = BlochVector::new(0.0, 0.0, -1.0).unwrap();
        assert!((bloch_trace_distance(&up, &down) - 1.0).abs() < 1e-15);
        assert!(bloch_fidelity_sq(&up, &down).abs() < 1e-15);
    }

    #[test]
    fn round_trip_and_not_qubit() {
        let r = BlochVector::new(0.1, 0.2, -0.3).unwrap();
        let back = qubit_bloch(&r.to_density()).unwrap();
        assert!((back.x - r.x).abs() < 1e-15 && (back.y - r.y).abs() < 1e-15 && (back.z - r.z).abs() < 1e-15);
        assert_eq!(qubit_bloch(&DensityOperator::maximally_mixed(3)), Err(Error::NotQubit(3)));
        assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn agrees_with_matrix_formulas() {
        let mut rng = seeded_rng(99);
        for i in 0..1000 {
            let a = random_density_with(2, 1 + i % 2, &mut rng).unwrap();
            let b = random_density_with(2, 1 + (i / 2) % 2, &mut rng).unwrap();
            let (ra, rb) = (qubit_bloch(&a).unwrap(), qubit_bloch(&b).unwrap());
            assert!((bloch_trace_distance(&ra, &rb) - trace_distance(&a, &b).unwrap()).abs() < 1e-9);
            let (bf, mf) = (bloch_fidelity_sq(&ra, &rb), fidelity(&a, &b).unwrap().powi(2));
            assert!((bf - mf).abs() < 1e-9, "{i}: bloch {bf} matrix {mf} r={} s={} ev={:?} {:?}", ra.norm(), rb.norm(), a.eigenvalues(), b.eigenvalues());
        }
    }
}
