use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qsuff::cli::documents::{channel_document, parse_channel, parse_state, state_document};
use qsuff::cli::output::to_json;
use qsuff::fixtures;
use qsuff::linalg::trace_norm;
use qsuff::quantum::{apply_channel, DensityMatrix, QuantumChannel};
use serde_json::Value;
use tempfile::TempDir;

fn qsuff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsuff"))
        .args(args)
        .env_remove(fixtures::SEED_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_state(dir: &Path, name: &str, rho: &DensityMatrix) -> String {
    let p = dir.join(name);
    std::fs::write(&p, to_json(&state_document(rho))).unwrap();
    p.to_str().unwrap().to_owned()
}

fn write_channel(dir: &Path, name: &str, phi: &QuantumChannel) -> String {
    let p = dir.join(name);
    std::fs::write(&p, to_json(&channel_document(phi))).unwrap();
    p.to_str().unwrap().to_owned()
}

fn num(v: &Value) -> f64 {
    match v {
        Value::String(s) if s == "inf" => f64::INFINITY,
        Value::String(s) if s == "-inf" => f64::NEG_INFINITY,
        _ => v.as_f64().expect("numeric field"),
    }
}

fn diag(p: &[f64]) -> DensityMatrix {
    DensityMatrix::from_diag(p).unwrap()
}

fn csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn entropy_of_diagonal_pair_by_both_methods() {
    let dir = TempDir::new().unwrap();
    let r = write_state(dir.path(), "rho.json", &diag(&[0.75, 0.25]));
    let s = write_state(dir.path(), "sigma.json", &diag(&[0.5, 0.5]));
    let out = qsuff(&["entropy", "--rho", &r, "--sigma", &s]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let oracle = 0.75 * (1.5f64).ln() + 0.25 * (0.5f64).ln();
    assert!((num(&doc["result"]["d_spectral"]) - oracle).abs() < 1e-12);
    assert!((num(&doc["result"]["d_integral"]) - oracle).abs() < 1e-6);
    assert!((num(&doc["result"]["d_omega"]) - 3f64.ln()).abs() < 1e-9);
    assert_eq!(doc["provenance"]["inputs"].as_array().unwrap().len(), 2);
    assert_eq!(
        doc["provenance"]["inputs"][0]["sha256"]
            .as_str()
            .unwrap()
            .len(),
        64
    );
}

#[test]
fn entropy_of_equal_states_is_zero() {
    let dir = TempDir::new().unwrap();
    let rho = fixtures::random_state(&mut fixtures::rng(5), 3);
    let r = write_state(dir.path(), "rho.json", &rho);
    let out = qsuff(&[
        "entropy", "--rho", &r, "--sigma", &r, "--method", "spectral",
    ]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(num(&doc["result"]["d_spectral"]).abs() < 1e-12);
    assert!(doc["result"]["d_integral"].is_null());
}

#[test]
fn support_violation_reports_inf_and_respects_finite_required() {
    let dir = TempDir::new().unwrap();
    let r = write_state(dir.path(), "rho.json", &diag(&[0.5, 0.5]));
    let s = write_state(dir.path(), "sigma.json", &diag(&[1.0, 0.0]));
    let out = qsuff(&["entropy", "--rho", &r, "--sigma", &s]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["d_spectral"], "inf");
    assert_eq!(doc["result"]["d_integral"], "inf");
    assert_eq!(doc["result"]["d_max_rho_sigma"], "inf");
    let out = qsuff(&["entropy", "--rho", &r, "--sigma", &s, "--finite-required"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn validation_and_budget_exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind":"state","dim":2,"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#,
    )
    .unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(
        qsuff(&["entropy", "--rho", bad, "--sigma", bad])
            .status
            .code(),
        Some(2)
    );
    let trailing = dir.path().join("trailing.json");
    std::fs::write(&trailing, r#"{"kind":"state","dim":1,"matrix":[[[1,0]]],}"#).unwrap();
    let trailing = trailing.to_str().unwrap();
    assert_eq!(
        qsuff(&["entropy", "--rho", trailing, "--sigma", trailing])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qsuff(&["entropy", "--rho", "/nonexistent/rho.json"])
            .status
            .code(),
        Some(2)
    );

    let mut rng = fixtures::rng(9);
    let r = write_state(dir.path(), "rho.json", &fixtures::random_state(&mut rng, 4));
    let s = write_state(
        dir.path(),
        "sigma.json",
        &fixtures::random_state(&mut rng, 4),
    );
    let out = qsuff(&[
        "entropy",
        "--rho",
        &r,
        "--sigma",
        &s,
        "--quad-tol",
        "1e-12",
        "--quad-max-nodes",
        "17",
    ]);
    assert_eq!(out.status.code(), Some(4));
    let out = qsuff(&["entropy", "--rho", &r, "--sigma", &s, "--quad-tol", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_of_equal_states_traces_abs_one_minus_s() {
    let dir = TempDir::new().unwrap();
    let rho = fixtures::random_state(&mut fixtures::rng(1), 2);
    let r = write_state(dir.path(), "rho.json", &rho);
    let out = qsuff(&[
        "sweep",
        "--rho",
        &r,
        "--sigma",
        &r,
        "--s-min",
        "0",
        "--s-max",
        "3",
        "--s-count",
        "31",
        "--s-spacing",
        "linear",
    ]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(header, ["s", "l1", "tr_pos", "tr_neg", "pe"]);
    assert_eq!(rows.len(), 31);
    for row in rows {
        assert!((row[1] - (1.0 - row[0]).abs()).abs() < 1e-12);
    }
}

#[test]
fn sweep_with_channel_emits_image_curves_and_gaps() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::depolarizing_fixture();
    let r = write_state(dir.path(), "rho.json", &f.rho);
    let s = write_state(dir.path(), "sigma.json", &f.sigma);
    let c = write_channel(dir.path(), "dep.json", &f.channel);
    let id = write_channel(dir.path(), "id.json", &QuantumChannel::identity(2));

    let out = qsuff(&["sweep", "--rho", &r, "--sigma", &s, "--channel", &c]);
    assert!(out.status.success());
    let (header, rows) = csv(&stdout(&out));
    assert_eq!(
        header,
        [
            "s",
            "l1",
            "tr_pos",
            "tr_neg",
            "pe",
            "l1_img",
            "tr_neg_img",
            "gap_l1"
        ]
    );
    assert!(rows.windows(2).all(|w| w[0][0] < w[1][0]));
    assert!(rows.iter().all(|row| row[7] >= -1e-12));
    assert!(rows.iter().any(|row| row[7] > 1e-3));

    let out = qsuff(&["sweep", "--rho", &r, "--sigma", &s, "--channel", &id]);
    let (_, rows) = csv(&stdout(&out));
    assert!(rows.iter().all(|row| row[7].abs() < 1e-12));
}

fn verify(dir: &Path, f: &fixtures::Fixture) -> Value {
    let r = write_state(dir, "rho.json", &f.rho);
    let s = write_state(dir, "sigma.json", &f.sigma);
    let c = write_channel(dir, "channel.json", &f.channel);
    let out = qsuff(&["verify", "--rho", &r, "--sigma", &s, "--channel", &c]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let mut rng = fixtures::rng(21);

    let doc = verify(dir.path(), &fixtures::unitary_fixture(&mut rng, 2));
    assert_eq!(doc["sufficiency"]["verdict"], "sufficient");

    let doc = verify(dir.path(), &fixtures::depolarizing_fixture());
    assert_eq!(doc["sufficiency"]["verdict"], "not-sufficient");
    let slacks = doc["recovery"]["chain_slacks"].as_array().unwrap();
    assert!(slacks.iter().all(|x| num(x) >= -1e-7));
    assert!(num(&doc["recovery"]["forward_min_slack"]) >= -1e-7);
    assert_eq!(doc["provenance"]["config"]["kernel_output"], "sigma");

    let rho = fixtures::random_state(&mut rng, 2);
    let id = fixtures::Fixture {
        name: "identity".into(),
        sigma: fixtures::random_state(&mut rng, 2),
        rho,
        channel: QuantumChannel::identity(2),
    };
    let doc = verify(dir.path(), &id);
    let s = &doc["sufficiency"];
    for key in [
        "max_l1_gap",
        "max_pe_gap",
        "max_trpos_gap",
        "max_trneg_gap",
        "entropy_gap",
        "petz_recovery_error",
    ] {
        assert!(num(&s[key]).abs() <= 1e-9, "{key}");
    }
    for e in s["rotated_recovery_errors"].as_array().unwrap() {
        assert!(num(&e["value"]) <= 1e-9);
    }
    for e in s["cocycle_residuals"].as_array().unwrap() {
        assert!(num(&e["value"]) <= 1e-9);
    }
}

#[test]
fn verify_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = fixtures::random_qubit_fixture(&mut fixtures::rng(4));
    let r = write_state(dir.path(), "rho.json", &f.rho);
    let s = write_state(dir.path(), "sigma.json", &f.sigma);
    let c = write_channel(dir.path(), "channel.json", &f.channel);
    let a = qsuff(&["verify", "--rho", &r, "--sigma", &s, "--channel", &c]);
    let b = qsuff(&["verify", "--rho", &r, "--sigma", &s, "--channel", &c]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

fn petz(dir: &Path, sigma: &str, channel: &str, variant: &str) -> QuantumChannel {
    let out_path = dir.join(format!("{}.json", variant.replace(':', "_")));
    let out = qsuff(&[
        "petz",
        "--sigma",
        sigma,
        "--channel",
        channel,
        "--variant",
        variant,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    parse_channel(&std::fs::read_to_string(out_path).unwrap()).unwrap()
}

#[test]
fn petz_variants_round_trip_and_recover() {
    let dir = TempDir::new().unwrap();
    let mut rng = fixtures::rng(33);
    let f = fixtures::unitary_fixture(&mut rng, 3);
    let s = write_state(dir.path(), "sigma.json", &f.sigma);
    let c = write_channel(dir.path(), "channel.json", &f.channel);
    let u = f.channel.kraus()[0].clone();

    let p = petz(dir.path(), &s, &c, "petz");
    let test = fixtures::random_state(&mut rng, 3);
    let back = apply_channel(&p, &apply_channel(&f.channel, &test).unwrap()).unwrap();
    assert!(back.matrix().distance_frobenius(test.matrix()) < 1e-10);
    let conj = test.conjugate(&u.adjoint()).unwrap();
    let direct = apply_channel(&p, &test).unwrap();
    assert!(direct.matrix().distance_frobenius(conj.matrix()) < 1e-10);

    let r0 = petz(dir.path(), &s, &c, "rotated:0");
    assert!(
        r0.to_choi()
            .matrix()
            .distance_frobenius(p.to_choi().matrix())
            < 1e-12
    );

    let g = fixtures::random_qubit_fixture(&mut rng);
    let s = write_state(dir.path(), "sigma2.json", &g.sigma);
    let c = write_channel(dir.path(), "channel2.json", &g.channel);
    let universal = petz(dir.path(), &s, &c, "universal");
    let image = apply_channel(&g.channel, &g.sigma).unwrap();
    let img_path = write_state(dir.path(), "image.json", &image);
    let image = parse_state(&std::fs::read_to_string(img_path).unwrap()).unwrap();
    let back = apply_channel(&universal, &image).unwrap();
    assert!(trace_norm(&(back.matrix() - g.sigma.matrix())).unwrap() <= 1e-7);

    let out = qsuff(&[
        "petz",
        "--sigma",
        &s,
        "--channel",
        &c,
        "--variant",
        "rotated:abc",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixture_command_writes_parseable_documents() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().join("pinch");
    let out = qsuff(&[
        "fixture",
        "--family",
        "pinching",
        "--dim",
        "4",
        "--out-dir",
        d.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let paths: Vec<PathBuf> = stdout(&out).lines().map(PathBuf::from).collect();
    assert_eq!(paths.len(), 3);
    let rho = parse_state(&std::fs::read_to_string(d.join("rho.json")).unwrap()).unwrap();
    let phi = parse_channel(&std::fs::read_to_string(d.join("channel.json")).unwrap()).unwrap();
    assert_eq!(rho.dim(), 4);
    assert_eq!(phi.dim_out(), 4);
    let again = qsuff(&[
        "fixture",
        "--family",
        "pinching",
        "--dim",
        "4",
        "--out-dir",
        dir.path().join("again").to_str().unwrap(),
    ]);
    assert!(again.status.success());
    assert_eq!(
        std::fs::read(d.join("rho.json")).unwrap(),
        std::fs::read(dir.path().join("again/rho.json")).unwrap()
    );
}
