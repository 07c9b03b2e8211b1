use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qbc_core::tradeoff::FamilyKind;

#[derive(Debug, Parser)]
#[command(name = "qbc", version, about = "Analyse and simulate purification bit-commitment protocols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace distance, fidelity and the optimal cheating values of a protocol
    Analyze {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Sweep a protocol family and emit trade-off points with reference curves
    Sweep {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long, default_value_t = qbc_core::tradeoff::DEFAULT_POINTS)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Monte Carlo runs of the commitment with chosen strategies
    Simulate {
        #[command(flatten)]
        source: ProtocolSource,
        #[arg(long, value_enum)]
        alice: AliceArg,
        #[arg(long, value_enum)]
        bob: BobArg,
        #[arg(long, default_value_t = 100_000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coin tosses built on a commitment; defaults to the fair protocol
    Cointoss {
        #[command(flatten)]
        source: ProtocolSource,
        #[arg(long, value_enum, default_value_t = CheaterArg::None)]
        cheater: CheaterArg,
        #[arg(long, default_value_t = 100_000)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check distinguishability inequalities and trade-off bounds; exits 1 on a violation
    Check {
        spec: Option<PathBuf>,
        /// A `G,C` point to check against the bounds; repeatable
        #[arg(long = "point", value_parser = parse_point, allow_hyphen_values = true)]
        points: Vec<(f64, f64)>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Write a family member as a protocol file
    Export {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long)]
        param: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A protocol file, or a member of a built-in family.
#[derive(Debug, Args)]
pub struct ProtocolSource {
    /// Protocol file (JSON)
    #[arg(conflicts_with_all = ["family", "param"])]
    pub spec: Option<PathBuf>,
    #[arg(long, value_parser = parse_family, requires = "param")]
    pub family: Option<FamilyKind>,
    #[arg(long, requires = "family")]
    pub param: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AliceArg {
    Honest0,
    Honest1,
    Cheat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BobArg {
    Honest,
    Helstrom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheaterArg {
    None,
    Alice,
    Bob,
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse()
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    let (g, c) = s.split_once(',').ok_or_else(|| format!("expected G,C but got '{s}'"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    Ok((num(g)?, num(c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("0.25, 0.1").unwrap(), (0.25, 0.1));
        assert!(parse_point("0.25").is_err());
        assert!(parse_point("a,b").is_err());
    }
}
