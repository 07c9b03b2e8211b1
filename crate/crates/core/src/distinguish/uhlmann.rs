use num_complex::Complex64;

use super::{check_dims, fidelity};
use crate::linalg::{hermitian_eig, partial_trace, svd, BipartiteState, ComplexMatrix, DensityOperator, Factor, PureState};
use crate::{Error, Result};

/// Maximum of `|⟨ψ| (U ⊗ I) |χ⟩|` over unitaries on one factor.
#[derive(Debug, Clone)]
pub struct ParallelPurificationResult {
    pub overlap: f64,
    /// Achieves `⟨ψ| (U ⊗ I) |χ⟩ = overlap`, real and nonnegative.
    pub maximizing_unitary: ComplexMatrix,
}

/// Uhlmann's maximization over unitaries acting on `act_on`.
///
/// With `A_ψ`, `A_χ` the amplitude matrices indexed (acted × kept), the
/// functional is `Tr(U A_χ A_ψ†)`. For `A_χ A_ψ† = W Σ V†` the optimum is
/// `U = V W†`, giving `Tr Σ`.
pub fn max_parallel_overlap(
    psi: &BipartiteState,
    chi: &BipartiteState,
    act_on: Factor,
) -> Result<ParallelPurificationResult> {
    if !psi.same_dims(chi) {
        return Err(Error::DimMismatch {
            expected: psi.state().dim(),
            found: chi.state().dim(),
        });
    }
    let a_psi = psi.reshape(act_on);
    let a_chi = chi.reshape(act_on);
    let dec = svd(&(&a_chi * &a_psi.adjoint()));
    Ok(ParallelPurificationResult {
        overlap: dec.nuclear_norm().clamp(0.0, 1.0),
        maximizing_unitary: &dec.right_vectors * &dec.left_vectors.adjoint(),
    })
}

/// Canonical purification `Σ_k √λ_k |k⟩_proof |v_k⟩_token` of `rho` on a
/// `d ⊗ d` space; `rho` is the token reduction.
pub fn purify(rho: &DensityOperator) -> BipartiteState {
    let d = rho.dim();
    let eig = hermitian_eig(rho.matrix()).expect("density operators are Hermitian");
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        let w = l.max(0.0).sqrt();
        for t in 0..d {
            amps[k * d + t] = eig.eigenvectors[(t, k)] * w;
        }
    }
    let state = PureState::normalize(amps).expect("unit-trace operator");
    BipartiteState::new(d, d, state).expect("d*d amplitudes")
}

#[derive(Debug, Clone)]
pub struct FidelitySumMax {
    /// `max_ρ F(ρ,σ)² + F(ρ,ω)² = 1 + F(σ,ω)`.
    pub value: f64,
    pub achiever: DensityOperator,
}

/// Maximizes `F(ρ,σ)² + F(ρ,ω)²` over `ρ`.
///
/// The achiever is the token reduction of the normalized superposition of
/// maximally parallel purifications of `σ` and `ω`.
pub fn max_fidelity_sum(sigma: &DensityOperator, omega: &DensityOperator) -> Result<FidelitySumMax> {
    check_dims(sigma, omega)?;
    let f = fidelity(sigma, omega)?;
    let s = purify(sigma);
    let w = purify(omega);
    let parallel = max_parallel_overlap(&s, &w, Factor::Proof)?;
    let w = w.apply_local(Factor::Proof, &parallel.maximizing_unitary)?;
    let amps = s
        .state()
        .amplitudes()
        .iter()
        .zip(w.state().amplitudes())
        .map(|(a, b)| a + b)
        .collect();
    let sum = BipartiteState::new(s.dim_proof(), s.dim_token(), PureState::normalize(amps)?)?;
    Ok(FidelitySumMax {
        value: 1.0 + f,
        achiever: partial_trace(&sum, Factor::Token),
    })
}
