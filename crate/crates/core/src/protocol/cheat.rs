use num_complex::Complex64;

use super::{Bit, PurificationProtocol};
use crate::distinguish::max_parallel_overlap;
use crate::linalg::{BipartiteState, ComplexMatrix, Factor, PureState};

/// Below this modulus the overlap's phase is undefined and taken as 1.
pub const DEGENERATE_OVERLAP: f64 = 1e-12;

/// Alice's optimal cheating strategy.
///
/// She prepares `psi_max`, sends its token half, and before unveiling `b`
/// applies `u_b` to the proof she kept.
#[derive(Debug, Clone)]
pub struct CheatKit {
    pub psi_max: BipartiteState,
    pub u0: ComplexMatrix,
    pub u1: ComplexMatrix,
    /// Maximizes `⟨χ_1| (U ⊗ I) |χ_0⟩`; equals `u0 · u1`.
    pub u_max: ComplexMatrix,
    /// `(1 + F) / 2`, the success probability for either target bit.
    pub per_bit_success: f64,
}

impl CheatKit {
    pub fn unitary(&self, bit: Bit) -> &ComplexMatrix {
        match bit {
            Bit::Zero => &self.u0,
            Bit::One => &self.u1,
        }
    }

    /// `|⟨χ_b| (u_b ⊗ I) |ψ_max⟩|²` computed from the states.
    pub fn success_probability(&self, p: &PurificationProtocol, bit: Bit) -> f64 {
        let rotated = self
            .psi_max
            .apply_local(Factor::Proof, self.unitary(bit))
            .expect("kit matches protocol dimensions");
        p.chi(bit).state().inner(rotated.state()).norm_sqr()
    }
}

/// Builds the optimal cheat with the split `u0 = I`, `u1 = U_max`.
///
/// Unveiling `b` succeeds with amplitude `⟨φ_b|ψ⟩` where
/// `φ_b = (u_b† ⊗ I)|χ_b⟩`; the best `ψ` is the normalized phase-aligned sum
/// `φ_0 + e^{−i arg⟨φ_0|φ_1⟩} φ_1`, which reaches `(1 + |⟨φ_0|φ_1⟩|) / 2`
/// for both bits. With this split `⟨φ_0|φ_1⟩` is the Uhlmann overlap.
pub fn optimal_cheat_kit(p: &PurificationProtocol) -> CheatKit {
    let parallel =
        max_parallel_overlap(p.chi1(), p.chi0(), Factor::Proof).expect("protocol states share dimensions");
    let u_max = parallel.maximizing_unitary;
    let u0 = ComplexMatrix::identity(p.dim_proof());
    let u1 = u_max.clone();

    let phi0 = p.chi0().apply_local(Factor::Proof, &u0.adjoint()).expect("square unitary");
    let phi1 = p.chi1().apply_local(Factor::Proof, &u1.adjoint()).expect("square unitary");
    let overlap = phi0.state().inner(phi1.state());
    let phase = if overlap.norm() <= DEGENERATE_OVERLAP {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::from_polar(1.0, -overlap.arg())
    };
    let amps = phi0
        .state()
        .amplitudes()
        .iter()
        .zip(phi1.state().amplitudes())
        .map(|(a, b)| a + phase * b)
        .collect();
    let psi = PureState::normalize(amps).expect("norm² = 2 + 2|overlap| ≥ 2");
    CheatKit {
        psi_max: BipartiteState::new(p.dim_proof(), p.dim_token(), psi).expect("same dimensions"),
        u0,
        u1,
        u_max,
        per_bit_success: 0.5 * (1.0 + parallel.overlap),
    }
}
