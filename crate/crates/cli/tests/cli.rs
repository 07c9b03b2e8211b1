use std::path::Path;
use std::process::{Command, Output};

use qbc_cli::protocol_file::ProtocolSpecFile;
use qbc_core::protocol::security_report;
use qbc_core::tradeoff::{family_protocol, ProtocolFamily};
use serde_json::Value;

fn qbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbc")).args(args).output().expect("binary runs")
}

fn qbc_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbc"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn num(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

fn write_file(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn analyze_commuting_family() {
    let dir = tempfile::tempdir().unwrap();
    let l = 0.3f64;
    let (a, b) = (l.sqrt(), (1.0 - l).sqrt());
    // proof 4 x token 3, amplitude index proof*3 + token
    let mut chi0 = vec![[0.0, 0.0]; 12];
    let mut chi1 = vec![[0.0, 0.0]; 12];
    chi0[0] = [a, 0.0];
    chi0[4] = [b, 0.0];
    chi1[2 * 3 + 2] = [a, 0.0];
    chi1[3 * 3 + 1] = [b, 0.0];
    let text = serde_json::json!({"dimProof": 4, "dimToken": 3, "chi0": chi0, "chi1": chi1}).to_string();
    let spec = write_file(dir.path(), "c.json", &text);
    let v = json(&qbc(&["analyze", &spec, "--format", "json"]));
    assert_eq!(v["schemaVersion"], 1);
    assert!((num(&v["gMax"]) - 0.15).abs() < 1e-9);
    assert!((num(&v["cMax"]) - 0.35).abs() < 1e-9);
    assert!((num(&v["perBitSuccess"]) - 0.85).abs() < 1e-9);
    assert!(num(&v["lowerBoundSlack"]) >= -1e-9);
}

#[test]
fn analyze_pure_pair_at_sixty_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let phi = std::f64::consts::FRAC_PI_3;
    let token1 = [phi.cos(), phi.sin()];
    let text = serde_json::json!({
        "dimProof": 2, "dimToken": 2,
        "chi0": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]],
        "chi1": [[0.0, 0.0], [0.0, 0.0], [token1[0], 0.0], [token1[1], 0.0]],
    })
    .to_string();
    let spec = write_file(dir.path(), "pp.json", &text);
    // pure tokens: F = |<t0|t1>|, D = sqrt(1 - F^2)
    let f = token1[0].abs();
    let d = (1.0 - f * f).sqrt();
    let v = json(&qbc(&["analyze", &spec, "--format", "json"]));
    assert!((num(&v["cMax"]) - f / 2.0).abs() < 1e-9);
    assert!((num(&v["gMax"]) - d / 2.0).abs() < 1e-9);
    assert!((num(&v["cMax"]) - 0.25).abs() < 1e-9);
    assert!((num(&v["gMax"]) - 3f64.sqrt() / 4.0).abs() < 1e-9);
}

#[test]
fn invalid_specs_exit_2_with_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"dimProof":2,"dimToken":1,"chi0":[[1,0],[0,0]],"chi1":[[0.6,0],[0.8,0]]}"#, "NotOrthogonal"),
        (r#"{"dimProof":2,"dimToken":2,"chi0":[[1,0],[0,0]],"chi1":[[0,0],[1,0]]}"#, "DimMismatch"),
        (r#"{"dimProof":2,"dimToken":1,"chi0":[[2,0],[0,0]],"chi1":[[0,0],[1,0]]}"#, "NotNormalized"),
        ("not json", "ParseError"),
    ];
    for (i, (text, name)) in cases.iter().enumerate() {
        let spec = write_file(dir.path(), &format!("bad{i}.json"), text);
        let o = qbc(&["analyze", &spec]);
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains(name), "{}", stderr(&o));
    }
    let o = qbc(&["analyze", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["frobnicate"],
        vec!["sweep"],
        vec!["sweep", "--family", "nope"],
        vec!["sweep", "--family", "commuting3d", "--points", "0"],
        vec!["simulate", "--alice", "cheat", "--bob", "honest"],
        vec!["simulate", "--family", "pure-pair", "--param", "0.3", "--alice", "sneaky", "--bob", "honest"],
        vec!["export", "--family", "commuting3d", "--param", "1.5"],
        vec!["check"],
    ] {
        let o = qbc(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(qbc(&["--help"]).status.code(), Some(0));
    assert_eq!(qbc_env(&["sweep", "--family", "commuting3d"], "QBC_THREADS", "zero").status.code(), Some(2));
}

#[test]
fn sweep_csv_lies_on_the_linear_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = qbc(&["sweep", "--family", "commuting3d", "--points", "101", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut reader = csv::Reader::from_path(&out).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["param", "gMax", "cMax", "curveI", "curveII", "curveIII", "curveIV"]);
    let rows: Vec<Vec<f64>> = reader
        .records()
        .map(|r| r.unwrap().iter().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 101);
    for r in &rows {
        let (g, c) = (r[1], r[2]);
        assert!((g + c - 0.5).abs() <= 1e-9);
        assert!((r[4] - c).abs() <= 1e-9);
        assert!(2.0 * g + (2.0 * c).sqrt() >= 1.0 - 1e-9);
    }
}

#[test]
fn sweep_json_has_schema_and_points() {
    let v = json(&qbc(&["sweep", "--family", "pure-pair", "--points", "11", "--format", "json"]));
    assert_eq!(v["schemaVersion"], 1);
    assert_eq!(v["curve"], "IV");
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 11);
    for p in pts {
        let (g, c) = (num(&p["gMax"]), num(&p["cMax"]));
        assert!((g * g + c * c - 0.25).abs() <= 1e-9);
    }
}

#[test]
fn simulate_fair_cheat_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("fair.json");
    let o = qbc(&["export", "--family", "commuting3d", "--param", "0.5", "--out", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let run = |name: &str, threads: Option<&str>| {
        let out = dir.path().join(name);
        let args = [
            "simulate",
            spec.to_str().unwrap(),
            "--alice",
            "cheat",
            "--bob",
            "honest",
            "--runs",
            "100000",
            "--seed",
            "42",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ];
        let o = match threads {
            Some(t) => qbc_env(&args, "QBC_THREADS", t),
            None => qbc(&args),
        };
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    let first = run("a.json", None);
    assert_eq!(first, run("b.json", None));
    assert_eq!(first, run("c.json", Some("1")));

    let v: Value = serde_json::from_slice(&first).unwrap();
    let p = num(&v["empirical"]["pUnveil"]["value"]);
    let sigma = (0.75f64 * 0.25 / 100_000.0).sqrt();
    assert!((p - 0.75).abs() <= 3.0 * sigma, "{p}");
    assert!((num(&v["predicted"]["pUnveil"]) - 0.75).abs() < 1e-9);
    assert!((num(&v["perBitSuccess"]) - 0.75).abs() < 1e-9);
}

#[test]
fn cointoss_outputs() {
    let v = json(&qbc(&["cointoss", "--cheater", "alice", "--runs", "100000", "--seed", "3", "--format", "json"]));
    let sigma = (0.75f64 * 0.25 / 100_000.0).sqrt();
    assert!((num(&v["aliceWins"]["value"]) - 0.75).abs() <= 3.0 * sigma);
    assert!((num(&v["alpha"]) - 0.25).abs() < 1e-12 && (num(&v["beta"]) - 0.25).abs() < 1e-12);
    let v = json(&qbc(&["cointoss", "--cheater", "none", "--runs", "20000", "--format", "json"]));
    assert_eq!(num(&v["aliceCaught"]["value"]), 0.0);
    let a = qbc(&["cointoss", "--family", "pure-pair", "--param", "0.4", "--cheater", "bob", "--runs", "5000", "--seed", "9"]);
    let b = qbc(&["cointoss", "--family", "pure-pair", "--param", "0.4", "--cheater", "bob", "--runs", "5000", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_exit_codes() {
    assert_eq!(qbc(&["check", "--point", "0.25,0.25"]).status.code(), Some(0));
    assert_eq!(qbc(&["check", "--point", "0.19098300562505258,0.19098300562505258"]).status.code(), Some(0));
    let o = qbc(&["check", "--point", "0.1,0.1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("q.json");
    qbc(&["export", "--family", "qubit-pure-mixed", "--param", "0.4", "--out", spec.to_str().unwrap()]);
    let o = qbc(&["check", spec.to_str().unwrap(), "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert!(v["inequalities"].as_array().unwrap().len() >= 3);
}

#[test]
fn export_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, x, family) in [
        ("commuting3d", 0.37, ProtocolFamily::Commuting3D(0.37)),
        ("qubit-pure-mixed", 0.61, ProtocolFamily::QubitPureMixed(0.61)),
        ("pure-pair", 1.1, ProtocolFamily::PurePair(1.1)),
    ] {
        let path = dir.path().join(format!("{flag}.json"));
        let o = qbc(&["export", "--family", flag, "--param", &x.to_string(), "--out", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let original = family_protocol(family).unwrap();
        let parsed = ProtocolSpecFile::read(&path).unwrap().to_protocol().unwrap();
        assert_eq!(security_report(&parsed), security_report(&original));

        let v = json(&qbc(&["analyze", path.to_str().unwrap(), "--format", "json"]));
        let r = security_report(&original);
        assert_eq!(num(&v["gMax"]).to_bits(), r.g_max.to_bits());
        assert_eq!(num(&v["cMax"]).to_bits(), r.c_max.to_bits());

        // a second export of the parsed protocol is byte-identical
        assert_eq!(
            ProtocolSpecFile::from_protocol(&parsed).to_json(),
            std::fs::read_to_string(&path).unwrap()
        );
    }
}

#[test]
fn random_protocols_round_trip() {
    let mut rng = qbc_core::linalg::seeded_rng(5);
    let dir = tempfile::tempdir().unwrap();
    for i in 0..10 {
        let p = qbc_core::protocol::random_protocol(2 + i % 3, 2 + i % 2, &mut rng).unwrap();
        let path = dir.path().join(format!("r{i}.json"));
        std::fs::write(&path, ProtocolSpecFile::from_protocol(&p).to_json()).unwrap();
        let q = ProtocolSpecFile::read(&path).unwrap().to_protocol().unwrap();
        assert_eq!(security_report(&q), security_report(&p));
    }
}
