//! Purification bit-commitment protocols: instances, security measures,
//! optimal cheating strategies and Born-rule simulation.
//!
//! Honest flow: Alice prepares `|χ_b⟩`, sends the token, later sends the
//! proof, and Bob measures `{|χ_0⟩⟨χ_0|, |χ_1⟩⟨χ_1|, I − Π_0 − Π_1}`.
//! Bob's only cheat is to measure the token during the holding phase;
//! Alice's is to prepare a different joint state and rotate the proof
//! before handing it over.

mod cheat;
mod measure;
mod simulate;

pub use cheat::{optimal_cheat_kit, CheatKit, DEGENERATE_OVERLAP};
pub use measure::{born_sample, Measurement, MEASUREMENT_TOL};
pub use simulate::{
    estimate_statistics, estimate_statistics_with, simulate_run, AliceStrategy, Bit, BobStrategy, Estimate,
    Outcome, Prediction, RunRecord, Simulator, Statistics,
};

use crate::distinguish::{fidelity, trace_distance};
use crate::linalg::{partial_trace, BipartiteState, DensityOperator, Factor, STATE_TOL};
use crate::{Error, Result};

/// Two orthogonal states on proof ⊗ token.
#[derive(Debug, Clone, PartialEq)]
pub struct PurificationProtocol {
    chi0: BipartiteState,
    chi1: BipartiteState,
}

pub fn make_protocol(chi0: BipartiteState, chi1: BipartiteState) -> Result<PurificationProtocol> {
    if !chi0.same_dims(&chi1) {
        return Err(Error::DimMismatch {
            expected: chi0.state().dim(),
            found: chi1.state().dim(),
        });
    }
    let overlap = chi0.state().inner(chi1.state()).norm();
    if overlap > STATE_TOL {
        return Err(Error::NotOrthogonal(overlap));
    }
    Ok(PurificationProtocol { chi0, chi1 })
}

impl PurificationProtocol {
    pub fn chi(&self, bit: Bit) -> &BipartiteState {
        match bit {
            Bit::Zero => &self.chi0,
            Bit::One => &self.chi1,
        }
    }

    pub fn chi0(&self) -> &BipartiteState {
        &self.chi0
    }

    pub fn chi1(&self) -> &BipartiteState {
        &self.chi1
    }

    pub fn dim_proof(&self) -> usize {
        self.chi0.dim_proof()
    }

    pub fn dim_token(&self) -> usize {
        self.chi0.dim_token()
    }
}

/// Token states `ρ_b = Tr_proof |χ_b⟩⟨χ_b|` Bob holds if Alice is honest.
pub fn honest_reduced_states(p: &PurificationProtocol) -> (DensityOperator, DensityOperator) {
    (partial_trace(&p.chi0, Factor::Token), partial_trace(&p.chi1, Factor::Token))
}

/// Exact concealment and bindingness of a purification protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecurityReport {
    pub trace_distance: f64,
    pub fidelity: f64,
    /// Bob's maximal information gain, `D / 2`.
    pub g_max: f64,
    /// Alice's maximal control, `F / 2`.
    pub c_max: f64,
}

impl SecurityReport {
    pub fn from_measures(trace_distance: f64, fidelity: f64) -> Self {
        Self {
            trace_distance,
            fidelity,
            g_max: 0.5 * trace_distance,
            c_max: 0.5 * fidelity,
        }
    }

    /// Probability that an optimally cheating Alice unveils the bit she wants.
    pub fn per_bit_success(&self) -> f64 {
        0.5 * (1.0 + self.fidelity)
    }

    /// Probability that a Helstrom-measuring Bob guesses the committed bit.
    pub fn helstrom_success(&self) -> f64 {
        0.5 * (1.0 + self.trace_distance)
    }

    /// `2 G + √(2 C) − 1`; nonnegative for every protocol.
    pub fn lower_bound_slack(&self) -> f64 {
        2.0 * self.g_max + (2.0 * self.c_max).sqrt() - 1.0
    }

    /// The general lower bounds `G ≥ D/2` and `C ≥ F²/2`, valid for any
    /// commitment protocol, evaluated on this one.
    pub fn general_bounds_hold(&self) -> bool {
        self.g_max >= 0.5 * self.trace_distance - 1e-12
            && self.c_max >= 0.5 * self.fidelity * self.fidelity - 1e-12
    }
}

pub fn security_report(p: &PurificationProtocol) -> SecurityReport {
    let (rho0, rho1) = honest_reduced_states(p);
    let d = trace_distance(&rho0, &rho1).expect("reductions share the token dimension");
    let f = fidelity(&rho0, &rho1).expect("reductions share the token dimension");
    SecurityReport::from_measures(d, f)
}

/// Random protocol on `dim_proof ⊗ dim_token`: two random states, the second
/// orthogonalized against the first.
pub fn random_protocol<R: rand::Rng + ?Sized>(
    dim_proof: usize,
    dim_token: usize,
    rng: &mut R,
) -> Result<PurificationProtocol> {
    use crate::linalg::{random_pure_state_with, PureState};
    let n = dim_proof * dim_token;
    if n < 2 {
        return Err(Error::DimMismatch { expected: 2, found: n });
    }
    let a = random_pure_state_with(n, rng);
    let b = loop {
        let b = random_pure_state_with(n, rng);
        let o = a.inner(&b);
        let amps = b
            .amplitudes()
            .iter()
            .zip(a.amplitudes())
            .map(|(y, x)| y - x * o)
            .collect::<Vec<_>>();
        if let Ok(s) = PureState::normalize(amps) {
            if s.inner(&a).norm() < 1e-12 {
                break s;
            }
        }
    };
    make_protocol(
        BipartiteState::new(dim_proof, dim_token, a)?,
        BipartiteState::new(dim_proof, dim_token, b)?,
    )
}
