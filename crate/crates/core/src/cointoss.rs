//! Coin tossing built on a purification bit commitment.
//!
//! Alice commits a bit, Bob announces a guess, Alice unveils. Bob wins when
//! his guess matches the unveiled bit. A failed unveiling counts as a win
//! for Bob.

use rand::Rng;

use crate::exec::{count_indexed, Execution};
use crate::linalg::stream_rng;
use crate::protocol::{AliceStrategy, Bit, BobStrategy, Estimate, PurificationProtocol, Simulator};
use crate::tradeoff::{family_protocol, ProtocolFamily};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CoinTossProtocol {
    sim: Simulator,
}

impl CoinTossProtocol {
    pub fn new(base: &PurificationProtocol) -> Self {
        Self {
            sim: Simulator::new(base),
        }
    }

    pub fn base(&self) -> &PurificationProtocol {
        self.sim.protocol()
    }

    pub fn simulator(&self) -> &Simulator {
        &self.sim
    }
}

/// Maximal biases: Alice can win with probability `½ + alpha`, Bob with
/// `½ + beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiasReport {
    pub alpha: f64,
    pub beta: f64,
}

impl BiasReport {
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta
    }
}

pub fn biases(ct: &CoinTossProtocol) -> BiasReport {
    let report = ct.sim.report();
    BiasReport {
        alpha: report.c_max,
        beta: report.g_max,
    }
}

/// The toss over the λ = ½ commuting protocol, with both biases ¼.
pub fn fair_toss_protocol() -> CoinTossProtocol {
    let base = family_protocol(ProtocolFamily::Commuting3D(0.5)).expect("parameter in range");
    CoinTossProtocol::new(&base)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Party {
    Alice,
    Bob,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TossResult {
    pub winner: Party,
    /// Bob's final measurement returned Fail on a cheating unveiling.
    pub alice_caught: bool,
    pub guess: Bit,
    /// `None` when Alice was caught.
    pub unveiled: Option<Bit>,
}

/// One toss. At most one party may cheat.
pub fn simulate_toss<R: Rng + ?Sized>(
    ct: &CoinTossProtocol,
    alice_cheats: bool,
    bob_cheats: bool,
    rng: &mut R,
) -> Result<TossResult> {
    let (guess, unveiled) = match (alice_cheats, bob_cheats) {
        (true, true) => return Err(Error::BothCheat),
        (false, false) => {
            let b = Bit::random(rng);
            let guess = Bit::random(rng);
            let rec = ct.sim.run(AliceStrategy::Honest(b), BobStrategy::Honest, b, rng);
            (guess, rec.outcome.bit())
        }
        (false, true) => {
            let b = Bit::random(rng);
            let rec = ct.sim.run(AliceStrategy::Honest(b), BobStrategy::HelstromCheat, b, rng);
            (rec.bob_estimate.expect("cheating Bob estimates"), Some(b))
        }
        (true, false) => {
            let guess = Bit::random(rng);
            let rec = ct.sim.run(AliceStrategy::OptimalCheat, BobStrategy::Honest, guess.flip(), rng);
            (guess, rec.outcome.bit())
        }
    };
    let winner = match unveiled {
        Some(u) if u != guess => Party::Alice,
        _ => Party::Bob,
    };
    Ok(TossResult {
        winner,
        alice_caught: unveiled.is_none(),
        guess,
        unveiled,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cheater {
    Nobody,
    Alice,
    Bob,
}

impl Cheater {
    fn flags(self) -> (bool, bool) {
        (self == Cheater::Alice, self == Cheater::Bob)
    }

    /// Exact probability that Alice wins.
    pub fn predicted_alice_win(self, b: &BiasReport) -> f64 {
        match self {
            Cheater::Nobody => 0.5,
            Cheater::Alice => 0.5 + b.alpha,
            Cheater::Bob => 0.5 - b.beta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TossStatistics {
    pub tosses: u64,
    pub alice_wins: Estimate,
    pub bob_wins: Estimate,
    pub alice_caught: Estimate,
}

pub fn toss_statistics(ct: &CoinTossProtocol, cheater: Cheater, tosses: u64, seed: u64) -> Result<TossStatistics> {
    toss_statistics_with(ct, cheater, tosses, seed, Execution::default())
}

/// Toss `i` draws from substream `i` of `seed`.
pub fn toss_statistics_with(
    ct: &CoinTossProtocol,
    cheater: Cheater,
    tosses: u64,
    seed: u64,
    exec: Execution,
) -> Result<TossStatistics> {
    if tosses == 0 {
        return Err(Error::ParamOutOfRange {
            name: "tosses",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let (a, b) = cheater.flags();
    let [alice, caught] = count_indexed(tosses as usize, exec, |i| {
        let r = simulate_toss(ct, a, b, &mut stream_rng(seed, i as u64)).expect("one-sided cheating");
        [u64::from(r.winner == Party::Alice), u64::from(r.alice_caught)]
    });
    Ok(TossStatistics {
        tosses,
        alice_wins: Estimate::from_counts(alice, tosses),
        bob_wins: Estimate::from_counts(tosses - alice, tosses),
        alice_caught: Estimate::from_counts(caught, tosses),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{seeded_rng, ComplexMatrix};
    use crate::protocol::{honest_reduced_states, random_protocol};

    #[test]
    fn fair_protocol_biases() {
        let ct = fair_toss_protocol();
        let b = biases(&ct);
        assert!((b.alpha - 0.25).abs() < 1e-12 && (b.beta - 0.25).abs() < 1e-12);
        assert!(2.0 * b.alpha + (2.0 * b.beta).sqrt() >= 1.0);
        let (r0, r1) = honest_reduced_states(ct.base());
        assert!(r0.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0])) < 1e-12);
        assert!(r1.matrix().max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.0, 0.5, 0.5])) < 1e-12);
    }

    #[test]
    fn revealing_base() {
        let ct = CoinTossProtocol::new(&family_protocol(ProtocolFamily::PurePair(std::f64::consts::FRAC_PI_2)).unwrap());
        let b = biases(&ct);
        assert!(b.alpha.abs() < 1e-12 && (b.beta - 0.5).abs() < 1e-12);
    }

    #[test]
    fn commuting_family_saturates() {
        for i in 0..=20 {
            let ct = CoinTossProtocol::new(&family_protocol(ProtocolFamily::Commuting3D(i as f64 / 20.0)).unwrap());
            assert!((biases(&ct).sum() - 0.5).abs() <= 1e-9);
        }
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let ct = CoinTossProtocol::new(&random_protocol(3, 3, &mut rng).unwrap());
            assert!(biases(&ct).sum() >= 0.5 - 1e-9);
        }
    }

    #[test]
    fn both_cheating_rejected() {
        let ct = fair_toss_protocol();
        assert!(matches!(simulate_toss(&ct, true, true, &mut seeded_rng(1)), Err(Error::BothCheat)));
    }

    #[test]
    fn honest_tosses_are_fair_and_clean() {
        let ct = fair_toss_protocol();
        let s = toss_statistics(&ct, Cheater::Nobody, 100_000, 11).unwrap();
        assert!(s.alice_wins.within_sigmas(0.5, 3.0, s.tosses));
        assert_eq!(s.alice_caught.value, 0.0);
    }

    #[test]
    fn cheaters_reach_their_bias() {
        let ct = fair_toss_protocol();
        let s = toss_statistics(&ct, Cheater::Alice, 100_000, 12).unwrap();
        assert!(s.alice_wins.within_sigmas(0.75, 3.0, s.tosses));
        assert!(s.alice_caught.value > 0.0);
        let s = toss_statistics(&ct, Cheater::Bob, 100_000, 13).unwrap();
        assert!(s.bob_wins.within_sigmas(0.75, 3.0, s.tosses));
    }

    #[test]
    fn modes_agree() {
        let ct = fair_toss_protocol();
        for c in [Cheater::Nobody, Cheater::Alice, Cheater::Bob] {
            assert_eq!(
                toss_statistics_with(&ct, c, 3000, 5, Execution::Sequential).unwrap(),
                toss_statistics_with(&ct, c, 3000, 5, Execution::Parallel).unwrap()
            );
        }
    }
}
