//! Distinguishability of density operators and the constructive optimizers
//! built on it.
//!
//! Tolerances: closed-form identities hold to 1e-9, identities mediated by
//! a decomposition to 1e-8.

mod bloch;
mod helstrom;
mod inequalities;
mod measures;
mod uhlmann;

pub use bloch::{bloch_fidelity_sq, bloch_trace_distance, qubit_bloch, BlochVector};
pub use helstrom::{helstrom, HelstromMeasurement, HELSTROM_TIE_TOL};
pub use inequalities::{check_inequalities, Inequality, InequalityCheck, InequalityReport, INEQUALITY_SLACK};
pub use measures::{distinguishability, fidelity, trace_distance, DistinguishabilityReport};
pub use uhlmann::{max_fidelity_sum, max_parallel_overlap, purify, FidelitySumMax, ParallelPurificationResult};

use crate::linalg::DensityOperator;
use crate::{Error, Result};

pub(crate) fn check_dims(a: &DensityOperator, b: &DensityOperator) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}
