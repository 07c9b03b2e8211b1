use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qbc_core::cointoss::{biases, fair_toss_protocol, toss_statistics, Cheater, CoinTossProtocol};
use qbc_core::distinguish::check_inequalities;
use qbc_core::protocol::{
    honest_reduced_states, security_report, AliceStrategy, Bit, BobStrategy, PurificationProtocol, Simulator,
};
use qbc_core::tradeoff::{check_bounds, curve_value, family_protocol, sweep, CurveId, FamilyKind, TradeoffPoint};
use serde::Serialize;

use crate::args::{AliceArg, BobArg, CheaterArg, Cli, Command, ProtocolSource, ReportFormat, TableFormat};
use crate::error::CliError;
use crate::output::{fmt_num, to_json, EstimateOut, Num};
use crate::protocol_file::{ProtocolSpecFile, SCHEMA_VERSION};

/// What a command produced.
#[derive(Debug)]
pub struct Report {
    pub body: String,
    pub out: Option<PathBuf>,
    pub exit_code: u8,
}

impl Report {
    fn new(body: String, out: Option<PathBuf>) -> Self {
        Self { body, out, exit_code: 0 }
    }

    /// Writes the body to the requested file or to stdout.
    pub fn emit(&self) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, &self.body).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            }),
            None => {
                print!("{}", self.body);
                Ok(())
            }
        }
    }
}

pub fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Analyze { spec, format } => analyze(&spec, format),
        Command::Sweep {
            family,
            points,
            out,
            format,
        } => sweep_cmd(family, points, format).map(|b| Report::new(b, out)),
        Command::Simulate {
            source,
            alice,
            bob,
            runs,
            seed,
            format,
            out,
        } => {
            let p = source.resolve()?.ok_or_else(|| {
                CliError::Usage("simulate needs a protocol file or --family with --param".into())
            })?;
            simulate(&p, alice, bob, runs, seed, format).map(|b| Report::new(b, out))
        }
        Command::Cointoss {
            source,
            cheater,
            runs,
            seed,
            format,
            out,
        } => {
            let ct = match source.resolve()? {
                Some(p) => CoinTossProtocol::new(&p),
                None => fair_toss_protocol(),
            };
            cointoss(&ct, cheater, runs, seed, format).map(|b| Report::new(b, out))
        }
        Command::Check { spec, points, format } => check(spec.as_deref(), &points, format),
        Command::Export { family, param, out } => {
            let p = family_protocol(family.instance(param)?)?;
            Ok(Report::new(ProtocolSpecFile::from_protocol(&p).to_json(), out))
        }
    }
}

impl ProtocolSource {
    fn resolve(&self) -> Result<Option<PurificationProtocol>, CliError> {
        if let Some(path) = &self.spec {
            return ProtocolSpecFile::read(path)?.to_protocol().map(Some);
        }
        match (self.family, self.param) {
            (Some(kind), Some(x)) => Ok(Some(family_protocol(kind.instance(x)?)?)),
            _ => Ok(None),
        }
    }
}

fn load(path: &Path) -> Result<PurificationProtocol, CliError> {
    ProtocolSpecFile::read(path)?.to_protocol()
}

/// Left-aligned `key value` lines.
fn key_values(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().fold(String::new(), |mut s, (k, v)| {
        let _ = writeln!(s, "{k:<width$}  {v}");
        s
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeOut {
    schema_version: u32,
    command: &'static str,
    dim_proof: usize,
    dim_token: usize,
    trace_distance: Num,
    fidelity: Num,
    g_max: Num,
    c_max: Num,
    per_bit_success: Num,
    helstrom_success: Num,
    lower_bound_slack: Num,
}

fn analyze(path: &Path, format: ReportFormat) -> Result<Report, CliError> {
    let p = load(path)?;
    let r = security_report(&p);
    let body = match format {
        ReportFormat::Json => to_json(&AnalyzeOut {
            schema_version: SCHEMA_VERSION,
            command: "analyze",
            dim_proof: p.dim_proof(),
            dim_token: p.dim_token(),
            trace_distance: Num(r.trace_distance),
            fidelity: Num(r.fidelity),
            g_max: Num(r.g_max),
            c_max: Num(r.c_max),
            per_bit_success: Num(r.per_bit_success()),
            helstrom_success: Num(r.helstrom_success()),
            lower_bound_slack: Num(r.lower_bound_slack()),
        }),
        ReportFormat::Text => key_values(&[
            ("dims", format!("proof {} x token {}", p.dim_proof(), p.dim_token())),
            ("D", fmt_num(r.trace_distance)),
            ("F", fmt_num(r.fidelity)),
            ("gMax", fmt_num(r.g_max)),
            ("cMax", fmt_num(r.c_max)),
            ("perBitSuccess", fmt_num(r.per_bit_success())),
            ("helstromSuccess", fmt_num(r.helstrom_success())),
            ("lowerBoundSlack", fmt_num(r.lower_bound_slack())),
        ]),
    };
    Ok(Report::new(body, None))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SweepPointOut {
    param: Num,
    g_max: Num,
    c_max: Num,
    #[serde(rename = "curveI")]
    curve_i: Num,
    #[serde(rename = "curveII")]
    curve_ii: Num,
    #[serde(rename = "curveIII")]
    curve_iii: Num,
    #[serde(rename = "curveIV")]
    curve_iv: Num,
}

impl From<&TradeoffPoint> for SweepPointOut {
    fn from(pt: &TradeoffPoint) -> Self {
        let c = |id| Num(curve_value(id, pt.g_max));
        Self {
            param: Num(pt.param),
            g_max: Num(pt.g_max),
            c_max: Num(pt.c_max),
            curve_i: c(CurveId::I),
            curve_ii: c(CurveId::II),
            curve_iii: c(CurveId::III),
            curve_iv: c(CurveId::IV),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SweepOut {
    schema_version: u32,
    command: &'static str,
    family: &'static str,
    param_name: &'static str,
    curve: &'static str,
    points: Vec<SweepPointOut>,
}

pub const SWEEP_COLUMNS: [&str; 7] = ["param", "gMax", "cMax", "curveI", "curveII", "curveIII", "curveIV"];

fn sweep_cmd(kind: FamilyKind, n: usize, format: TableFormat) -> Result<String, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    let points = sweep(kind, &kind.grid(n))?;
    match format {
        TableFormat::Json => Ok(to_json(&SweepOut {
            schema_version: SCHEMA_VERSION,
            command: "sweep",
            family: kind.name(),
            param_name: kind.param_name(),
            curve: kind.curve().label(),
            points: points.iter().map(SweepPointOut::from).collect(),
        })),
        TableFormat::Csv => {
            // writes go to memory and cannot fail
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(SWEEP_COLUMNS).expect("in-memory write");
            for pt in &points {
                let mut row = vec![fmt_num(pt.param), fmt_num(pt.g_max), fmt_num(pt.c_max)];
                row.extend(CurveId::ALL.iter().map(|&c| fmt_num(curve_value(c, pt.g_max))));
                w.write_record(&row).expect("in-memory write");
            }
            let bytes = w.into_inner().expect("in-memory flush");
            Ok(String::from_utf8(bytes).expect("ascii output"))
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Triple<T> {
    p_estimate: T,
    p_unveil: T,
    fail_rate: T,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimulateOut {
    schema_version: u32,
    command: &'static str,
    alice: &'static str,
    bob: &'static str,
    runs: u64,
    seed: u64,
    empirical: Triple<EstimateOut>,
    predicted: Triple<Num>,
    per_bit_success: Num,
    helstrom_success: Num,
}

fn alice_strategy(a: AliceArg) -> (AliceStrategy, &'static str) {
    match a {
        AliceArg::Honest0 => (AliceStrategy::Honest(Bit::Zero), "honest0"),
        AliceArg::Honest1 => (AliceStrategy::Honest(Bit::One), "honest1"),
        AliceArg::Cheat => (AliceStrategy::OptimalCheat, "cheat"),
    }
}

fn bob_strategy(b: BobArg) -> (BobStrategy, &'static str) {
    match b {
        BobArg::Honest => (BobStrategy::Honest, "honest"),
        BobArg::Helstrom => (BobStrategy::HelstromCheat, "helstrom"),
    }
}

fn simulate(
    p: &PurificationProtocol,
    alice: AliceArg,
    bob: BobArg,
    runs: u64,
    seed: u64,
    format: ReportFormat,
) -> Result<String, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let (a, a_name) = alice_strategy(alice);
    let (b, b_name) = bob_strategy(bob);
    let sim = Simulator::new(p);
    let stats = sim.estimate(a, b, runs, seed, Default::default())?;
    let pred = sim.predict(a, b);
    let report = sim.report();
    Ok(match format {
        ReportFormat::Json => to_json(&SimulateOut {
            schema_version: SCHEMA_VERSION,
            command: "simulate",
            alice: a_name,
            bob: b_name,
            runs,
            seed,
            empirical: Triple {
                p_estimate: stats.p_estimate.into(),
                p_unveil: stats.p_unveil.into(),
                fail_rate: stats.fail_rate.into(),
            },
            predicted: Triple {
                p_estimate: Num(pred.p_estimate),
                p_unveil: Num(pred.p_unveil),
                fail_rate: Num(pred.fail_rate),
            },
            per_bit_success: Num(report.per_bit_success()),
            helstrom_success: Num(report.helstrom_success()),
        }),
        ReportFormat::Text => {
            let mut s = format!("alice {a_name}, bob {b_name}, {runs} runs, seed {seed}\n");
            let _ = writeln!(s, "{:<10}  {:<23}  {:<23}  {}", "", "empirical", "stderr", "predicted");
            for (name, e, p) in [
                ("pEstimate", stats.p_estimate, pred.p_estimate),
                ("pUnveil", stats.p_unveil, pred.p_unveil),
                ("failRate", stats.fail_rate, pred.fail_rate),
            ] {
                let _ = writeln!(s, "{name:<10}  {:<23}  {:<23}  {}", fmt_num(e.value), fmt_num(e.stderr), fmt_num(p));
            }
            s + &key_values(&[
                ("perBitSuccess", fmt_num(report.per_bit_success())),
                ("helstromSuccess", fmt_num(report.helstrom_success())),
            ])
        }
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CointossOut {
    schema_version: u32,
    command: &'static str,
    cheater: &'static str,
    tosses: u64,
    seed: u64,
    alice_wins: EstimateOut,
    bob_wins: EstimateOut,
    alice_caught: EstimateOut,
    predicted_alice_wins: Num,
    alpha: Num,
    beta: Num,
}

fn cointoss(ct: &CoinTossProtocol, cheater: CheaterArg, runs: u64, seed: u64, format: ReportFormat) -> Result<String, CliError> {
    if runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let (c, name) = match cheater {
        CheaterArg::None => (Cheater::Nobody, "none"),
        CheaterArg::Alice => (Cheater::Alice, "alice"),
        CheaterArg::Bob => (Cheater::Bob, "bob"),
    };
    let b = biases(ct);
    let stats = toss_statistics(ct, c, runs, seed)?;
    let predicted = c.predicted_alice_win(&b);
    Ok(match format {
        ReportFormat::Json => to_json(&CointossOut {
            schema_version: SCHEMA_VERSION,
            command: "cointoss",
            cheater: name,
            tosses: runs,
            seed,
            alice_wins: stats.alice_wins.into(),
            bob_wins: stats.bob_wins.into(),
            alice_caught: stats.alice_caught.into(),
            predicted_alice_wins: Num(predicted),
            alpha: Num(b.alpha),
            beta: Num(b.beta),
        }),
        ReportFormat::Text => key_values(&[
            ("cheater", name.to_string()),
            ("tosses", format!("{runs} (seed {seed})")),
            ("aliceWins", format!("{} ± {}", fmt_num(stats.alice_wins.value), fmt_num(stats.alice_wins.stderr))),
            ("bobWins", format!("{} ± {}", fmt_num(stats.bob_wins.value), fmt_num(stats.bob_wins.stderr))),
            ("aliceCaught", fmt_num(stats.alice_caught.value)),
            ("predictedAliceWins", fmt_num(predicted)),
            ("alpha", fmt_num(b.alpha)),
            ("beta", fmt_num(b.beta)),
        ]),
    })
}

#[derive(Serialize)]
struct InequalityOut {
    name: String,
    lhs: Num,
    rhs: Num,
    holds: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PointOut {
    g_max: Num,
    c_max: Num,
    violations: Vec<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckOut {
    schema_version: u32,
    command: &'static str,
    inequalities: Vec<InequalityOut>,
    points: Vec<PointOut>,
    ok: bool,
}

fn check(spec: Option<&Path>, points: &[(f64, f64)], format: ReportFormat) -> Result<Report, CliError> {
    if spec.is_none() && points.is_empty() {
        return Err(CliError::Usage("check needs a protocol file or at least one --point G,C".into()));
    }
    let mut inequalities = Vec::new();
    let mut pts: Vec<(f64, f64)> = Vec::new();
    if let Some(path) = spec {
        let p = load(path)?;
        let (r0, r1) = honest_reduced_states(&p);
        for c in check_inequalities(&r0, &r1)?.checks {
            inequalities.push(InequalityOut {
                name: format!("{:?}", c.inequality),
                lhs: Num(c.lhs),
                rhs: Num(c.rhs),
                holds: c.holds,
            });
        }
        let r = security_report(&p);
        pts.push((r.g_max, r.c_max));
    }
    pts.extend_from_slice(points);
    let points: Vec<PointOut> = pts
        .iter()
        .map(|&(g, c)| PointOut {
            g_max: Num(g),
            c_max: Num(c),
            violations: check_bounds(&TradeoffPoint {
                param: f64::NAN,
                g_max: g,
                c_max: c,
            })
            .iter()
            .map(ToString::to_string)
            .collect(),
        })
        .collect();
    let ok = inequalities.iter().all(|i| i.holds) && points.iter().all(|p| p.violations.is_empty());
    let body = match format {
        ReportFormat::Json => to_json(&CheckOut {
            schema_version: SCHEMA_VERSION,
            command: "check",
            inequalities,
            points,
            ok,
        }),
        ReportFormat::Text => {
            let mut s = String::new();
            for i in &inequalities {
                let tag = if i.holds { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "{tag}  {:<25}  lhs {}  rhs {}", i.name, fmt_num(i.lhs.0), fmt_num(i.rhs.0));
            }
            for p in &points {
                let tag = if p.violations.is_empty() { "ok  " } else { "FAIL" };
                let _ = writeln!(s, "{tag}  point G {} C {}", fmt_num(p.g_max.0), fmt_num(p.c_max.0));
                for v in &p.violations {
                    let _ = writeln!(s, "      {v}");
                }
            }
            s
        }
    };
    Ok(Report {
        body,
        out: None,
        exit_code: if ok { 0 } else { 1 },
    })
}
