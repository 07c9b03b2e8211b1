use thiserror::Error;

/// Errors raised by the analysis and simulation routines.
///
/// Every message starts with the name of the violated invariant so that
/// front ends can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NotHermitian: max |H - H†| entry is {0:e}")]
    NotHermitian(f64),

    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("DimMismatch: expected {expected}, got {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("NotNormalized: norm is {0}")]
    NotNormalized(f64),

    #[error("NotDensity: {0}")]
    NotDensity(String),

    #[error("BadRank: rank {rank} not in 1..={dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("NotQubit: dimension is {0}")]
    NotQubit(usize),

    #[error("NotOrthogonal: |<chi0|chi1>| = {0:e}")]
    NotOrthogonal(f64),

    #[error("NotAMeasurement: {0}")]
    NotAMeasurement(String),

    #[error("ParamOutOfRange: {name} = {value} outside [{min}, {max}]")]
    ParamOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("BothCheat: the coin toss is analysed for one-sided cheating only")]
    BothCheat,

    #[error("NumericFailure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
