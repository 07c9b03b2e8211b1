//! Dense complex linear algebra over small Hilbert spaces.
//!
//! Bipartite amplitudes are indexed `proof * dim_token + token` everywhere
//! in the crate; partial traces, reshapes and `U ⊗ I` all rely on it.

mod decomp;
mod matrix;
mod random;
mod state;

pub use decomp::{
    hermitian_eig, matrix_abs, sqrt_psd, svd, EigenDecomposition, SingularValueDecomposition,
};
pub use matrix::{tensor_product, ComplexMatrix};
pub use random::{
    random_density, random_density_with, random_pure_state, random_pure_state_with,
    random_unitary, seeded_rng, stream_rng, Rng64,
};
pub use state::{partial_trace, BipartiteState, DensityOperator, Factor, PureState};

pub use num_complex::Complex64;

/// Tolerance for state-level invariants (normalization, Hermiticity, trace).
pub const STATE_TOL: f64 = 1e-9;

/// Eigenvalues at or below this magnitude are treated as exact zeros before
/// square roots. Roughly `64 * f64::EPSILON`: the noise floor of a dense
/// eigensolver on a unit-trace matrix.
pub const SPECTRAL_FLOOR: f64 = 1.5e-14;
