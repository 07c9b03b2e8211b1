//! Analysis and simulation of purification-type quantum bit-commitment
//! protocols.
//!
//! A purification protocol is specified by two orthogonal states `|χ_0⟩`,
//! `|χ_1⟩` on a proof ⊗ token space. Alice commits to bit `b` by preparing
//! `|χ_b⟩` and handing Bob the token; she unveils by handing over the proof,
//! and Bob checks with the measurement `{|χ_0⟩⟨χ_0|, |χ_1⟩⟨χ_1|, fail}`.
//!
//! For such protocols Bob's maximal information gain is `D(ρ_0, ρ_1) / 2`
//! and Alice's maximal control is `F(ρ_0, ρ_1) / 2`, where `ρ_b` are the
//! honest token states. This crate computes those quantities exactly,
//! builds both parties' optimal cheating strategies, simulates them by
//! Monte Carlo, sweeps the standard protocol families that trace out the
//! concealment/bindingness trade-off curves, and derives the coin-tossing
//! protocol built on top of a commitment.
//!
//! Modules:
//!
//! - [`linalg`]: dense complex matrices, pure states, density operators,
//!   partial traces and spectral decompositions.
//! - [`distinguish`]: trace distance, fidelity, Helstrom measurement,
//!   maximally parallel purifications and the Bloch-vector formulas.
//! - [`protocol`]: protocol instances, security reports, cheat kits and
//!   Born-rule simulation.
//! - [`tradeoff`]: protocol families, sweeps, curves and fair points.
//! - [`cointoss`]: coin tossing on top of a commitment.
//!
//! Monte Carlo loops and sweeps run on rayon when the `parallel` feature is
//! enabled (the default). Results are bit-identical to the sequential path
//! for a given seed.

pub mod cointoss;
pub mod distinguish;
mod error;
pub mod exec;
pub mod linalg;
pub mod protocol;
pub mod tradeoff;

pub use error::{Error, Result};
