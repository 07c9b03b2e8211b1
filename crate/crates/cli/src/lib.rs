//! Library half of the `qbc` command-line tool.
//!
//! Exit codes: 0 success, 1 a violation found by `check`, 2 bad usage or
//! invalid input, 3 a numeric or I/O failure.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod protocol_file;

pub use error::CliError;

/// Caps the rayon pool at `QBC_THREADS` workers when the variable is set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QBC_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("QBC_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("QBC_THREADS: {e}")))
}
