use rand::Rng;

use super::{optimal_cheat_kit, security_report, CheatKit, Measurement, PurificationProtocol, SecurityReport};
use crate::distinguish::{helstrom, HelstromMeasurement};
use crate::exec::{count_indexed, Execution};
use crate::linalg::{stream_rng, tensor_product, ComplexMatrix, PureState};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl Bit {
    pub const BOTH: [Bit; 2] = [Bit::Zero, Bit::One];

    pub fn index(self) -> usize {
        match self {
            Bit::Zero => 0,
            Bit::One => 1,
        }
    }

    pub fn from_index(i: usize) -> Bit {
        if i == 0 {
            Bit::Zero
        } else {
            Bit::One
        }
    }

    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Bit {
        if rng.random::<bool>() {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AliceStrategy {
    /// Commits the given bit and unveils it.
    Honest(Bit),
    /// Prepares `ψ_max` and rotates the proof toward the target bit.
    OptimalCheat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BobStrategy {
    Honest,
    /// Helstrom-measures the token during the holding phase.
    HelstromCheat,
}

/// Result of Bob's final measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Zero,
    One,
    Fail,
}

impl Outcome {
    fn from_index(i: usize) -> Outcome {
        match i {
            0 => Outcome::Zero,
            1 => Outcome::One,
            _ => Outcome::Fail,
        }
    }

    pub fn bit(self) -> Option<Bit> {
        match self {
            Outcome::Zero => Some(Bit::Zero),
            Outcome::One => Some(Bit::One),
            Outcome::Fail => None,
        }
    }
}

/// Transcript of one commitment run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunRecord {
    pub alice: AliceStrategy,
    pub bob: BobStrategy,
    /// The bit Alice wished to unveil in this run.
    pub target_bit: Bit,
    pub bob_estimate: Option<Bit>,
    pub outcome: Outcome,
}

impl RunRecord {
    /// The bit Alice actually tries to unveil: her commitment if honest.
    pub fn unveiled_bit(&self) -> Bit {
        match self.alice {
            AliceStrategy::Honest(b) => b,
            AliceStrategy::OptimalCheat => self.target_bit,
        }
    }

    pub fn unveil_succeeded(&self) -> bool {
        self.outcome.bit() == Some(self.target_bit)
    }

    pub fn estimate_correct(&self) -> Option<bool> {
        self.bob_estimate.map(|e| e == self.unveiled_bit())
    }
}

/// Empirical probability with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn from_counts(hits: u64, runs: u64) -> Self {
        let p = hits as f64 / runs as f64;
        Self {
            value: p,
            stderr: (p * (1.0 - p) / runs as f64).sqrt(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, stderr: 0.0 }
    }

    /// `|value − expected| ≤ k σ`, with σ the binomial error at `expected`.
    pub fn within_sigmas(&self, expected: f64, k: f64, runs: u64) -> bool {
        let sigma = (expected * (1.0 - expected) / runs as f64).sqrt();
        (self.value - expected).abs() <= k * sigma + 1e-15
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Statistics {
    pub runs: u64,
    /// Fraction of runs where Bob's estimate equals the bit Alice unveils;
    /// exactly ½ for an honest Bob, who makes no estimate.
    pub p_estimate: Estimate,
    /// Fraction of runs where the outcome equals Alice's uniformly drawn target.
    pub p_unveil: Estimate,
    pub fail_rate: Estimate,
}

/// Exact expectations of the Monte Carlo statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub p_estimate: f64,
    pub p_unveil: f64,
    pub fail_rate: f64,
}

/// A protocol with everything both parties need precomputed.
#[derive(Debug, Clone)]
pub struct Simulator {
    protocol: PurificationProtocol,
    report: SecurityReport,
    kit: CheatKit,
    helstrom: HelstromMeasurement,
    token_measurement: Measurement,
    unveil_measurement: Measurement,
    cheat_ops: [ComplexMatrix; 2],
}

impl Simulator {
    pub fn new(p: &PurificationProtocol) -> Self {
        let (rho0, rho1) = super::honest_reduced_states(p);
        let helstrom = helstrom(&rho0, &rho1).expect("reductions share the token dimension");
        let id_proof = ComplexMatrix::identity(p.dim_proof());
        let token_measurement = Measurement::new(vec![
            tensor_product(&id_proof, &helstrom.projector0),
            tensor_product(&id_proof, &helstrom.projector1),
        ])
        .expect("Helstrom projectors are complete");

        let n = p.dim_proof() * p.dim_token();
        let pi0 = p.chi0().state().projector();
        let pi1 = p.chi1().state().projector();
        let fail = &(&ComplexMatrix::identity(n) - &pi0) - &pi1;
        let unveil_measurement =
            Measurement::new(vec![pi0, pi1, fail]).expect("orthogonal protocol states");

        let kit = optimal_cheat_kit(p);
        let id_token = ComplexMatrix::identity(p.dim_token());
        let cheat_ops = [tensor_product(&kit.u0, &id_token), tensor_product(&kit.u1, &id_token)];
        Self {
            protocol: p.clone(),
            report: security_report(p),
            kit,
            helstrom,
            token_measurement,
            unveil_measurement,
            cheat_ops,
        }
    }

    pub fn protocol(&self) -> &PurificationProtocol {
        &self.protocol
    }

    pub fn report(&self) -> &SecurityReport {
        &self.report
    }

    pub fn cheat_kit(&self) -> &CheatKit {
        &self.kit
    }

    pub fn helstrom(&self) -> &HelstromMeasurement {
        &self.helstrom
    }

    /// State prepared at the commitment phase.
    pub fn committed_state(&self, alice: AliceStrategy) -> &PureState {
        match alice {
            AliceStrategy::Honest(b) => self.protocol.chi(b).state(),
            AliceStrategy::OptimalCheat => self.kit.psi_max.state(),
        }
    }

    /// Alice's pre-unveiling action for `target`.
    fn unveil(&self, alice: AliceStrategy, target: Bit, state: PureState) -> PureState {
        match alice {
            AliceStrategy::Honest(_) => state,
            AliceStrategy::OptimalCheat => state
                .apply(&self.cheat_ops[target.index()])
                .expect("operator matches state dimension"),
        }
    }

    pub fn run<R: Rng + ?Sized>(&self, alice: AliceStrategy, bob: BobStrategy, target: Bit, rng: &mut R) -> RunRecord {
        let mut state = self.committed_state(alice).clone();
        let bob_estimate = match bob {
            BobStrategy::Honest => None,
            BobStrategy::HelstromCheat => {
                let (k, post) = self.token_measurement.sample_and_collapse(&state, rng);
                state = post;
                Some(Bit::from_index(k))
            }
        };
        let state = self.unveil(alice, target, state);
        let outcome = Outcome::from_index(self.unveil_measurement.sample(&state, rng));
        RunRecord {
            alice,
            bob,
            target_bit: target,
            bob_estimate,
            outcome,
        }
    }

    /// Exact expectations by enumerating targets and Bob's outcomes.
    pub fn predict(&self, alice: AliceStrategy, bob: BobStrategy) -> Prediction {
        let start = self.committed_state(alice);
        let branches: Vec<(f64, Option<Bit>, PureState)> = match bob {
            BobStrategy::Honest => vec![(1.0, None, start.clone())],
            BobStrategy::HelstromCheat => {
                let probs = self.token_measurement.probabilities(start);
                probs
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 1e-15)
                    .map(|(k, &p)| {
                        let post = self.token_measurement.projectors()[k].mul_vec(start.amplitudes());
                        (p, Some(Bit::from_index(k)), PureState::normalize(post).expect("p > 0"))
                    })
                    .collect()
            }
        };
        let mut p_unveil = 0.0;
        let mut p_estimate = 0.0;
        let mut fail_rate = 0.0;
        for target in Bit::BOTH {
            let unveiled = match alice {
                AliceStrategy::Honest(b) => b,
                AliceStrategy::OptimalCheat => target,
            };
            for (p, estimate, post) in &branches {
                let final_probs = self.unveil_measurement.probabilities(&self.unveil(alice, target, post.clone()));
                p_unveil += 0.5 * p * final_probs[target.index()];
                fail_rate += 0.5 * p * final_probs[2];
                if *estimate == Some(unveiled) {
                    p_estimate += 0.5 * p;
                }
            }
        }
        if bob == BobStrategy::Honest {
            p_estimate = 0.5;
        }
        Prediction {
            p_estimate,
            p_unveil,
            fail_rate,
        }
    }

    /// Monte Carlo estimate over `runs` independent runs. Run `i` draws
    /// from substream `i` of `seed`, so results do not depend on `exec`.
    pub fn estimate(&self, alice: AliceStrategy, bob: BobStrategy, runs: u64, seed: u64, exec: Execution) -> Result<Statistics> {
        if runs == 0 {
            return Err(Error::ParamOutOfRange {
                name: "runs",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        let [estimate_hits, unveil_hits, fails] = count_indexed(runs as usize, exec, |i| {
            let mut rng = stream_rng(seed, i as u64);
            let target = Bit::random(&mut rng);
            let rec = self.run(alice, bob, target, &mut rng);
            [
                u64::from(rec.estimate_correct() == Some(true)),
                u64::from(rec.unveil_succeeded()),
                u64::from(rec.outcome == Outcome::Fail),
            ]
        });
        let p_estimate = match bob {
            BobStrategy::Honest => Estimate::exact(0.5),
            BobStrategy::HelstromCheat => Estimate::from_counts(estimate_hits, runs),
        };
        Ok(Statistics {
            runs,
            p_estimate,
            p_unveil: Estimate::from_counts(unveil_hits, runs),
            fail_rate: Estimate::from_counts(fails, runs),
        })
    }
}

/// One run. Builds a [`Simulator`]; reuse one directly for many runs.
pub fn simulate_run<R: Rng + ?Sized>(
    p: &PurificationProtocol,
    alice: AliceStrategy,
    bob: BobStrategy,
    target: Bit,
    rng: &mut R,
) -> RunRecord {
    Simulator::new(p).run(alice, bob, target, rng)
}

pub fn estimate_statistics(
    p: &PurificationProtocol,
    alice: AliceStrategy,
    bob: BobStrategy,
    runs: u64,
    seed: u64,
) -> Result<Statistics> {
    estimate_statistics_with(p, alice, bob, runs, seed, Execution::default())
}

pub fn estimate_statistics_with(
    p: &PurificationProtocol,
    alice: AliceStrategy,
    bob: BobStrategy,
    runs: u64,
    seed: u64,
    exec: Execution,
) -> Result<Statistics> {
    Simulator::new(p).estimate(alice, bob, runs, seed, exec)
}
