use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monostab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn analyze_w4() {
    let out = run(&["analyze", "--family", "w", "--n", "4"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["config"]["seed"], 0);
    assert_eq!(v["config"]["orbit_cap"], 1_000_000);
    assert_eq!(v["config"]["dense_cap"], 4096);
    assert_eq!(v["config"]["group_cap"], 100_000);
    let r = &v["result"];
    assert_eq!(r["total_orbits"], 5);
    assert_eq!(r["supported_orbits"], 1);
    assert_eq!(r["dimension"], 1);
    assert_eq!(r["basis"][0]["size"], 4);
    assert!((r["basis"][0]["amplitude_modulus"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let excluded = r["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|o| o["status"] == "excluded");
    for o in excluded {
        assert!(o["witness"]["word"].is_array());
    }
}

#[test]
fn analyze_aklt_open() {
    let out = run(&["analyze", "--family", "aklt", "--n", "4", "--bc", "open"]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["dimension"], 4);
    assert_eq!(r["total_orbits"], 4);
    let out = run(&[
        "analyze", "--family", "aklt", "--n", "4", "--bc", "periodic",
    ]);
    assert_eq!(json(&out)["result"]["dimension"], 1);
}

#[test]
fn expect_w4_z1() {
    let out = run(&[
        "expect",
        "--family",
        "w",
        "--n",
        "4",
        "--pauli",
        "Z1",
        "--epsilon",
        "0.05",
        "--delta",
        "1e-3",
        "--seed",
        "7",
        "--exact",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["config"]["seed"], 7);
    let e = &v["result"]["estimate"];
    assert!((e["value"]["re"].as_f64().unwrap() - 0.5).abs() <= 0.05);
    assert_eq!(e["samples_used"], 6636);
    assert_eq!(e["seed"], 7);
    assert_eq!(e["method"], "monte-carlo");
    assert!((v["result"]["exact"]["re"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        vec![
            "analyze",
            "--family",
            "dicke",
            "--n",
            "5",
            "--k",
            "2",
            "--amplitudes",
        ],
        vec![
            "sample", "--family", "w", "--n", "6", "--count", "50", "--seed", "3",
        ],
        vec![
            "sample",
            "--family",
            "w",
            "--n",
            "6",
            "--method",
            "random-word",
            "--seed",
            "3",
        ],
        vec![
            "expect", "--family", "ghz3", "--pauli", "XXX", "--seed", "11",
        ],
        vec!["oracle", "--family", "laughlin", "--n", "3", "--projector"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(code(&a), 0, "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        // Canonical form: compact with sorted keys.
        let text = String::from_utf8(a.stdout).unwrap();
        assert!(!text.trim_end().contains('\n'));
        assert!(text.starts_with("{\"command\":"));
    }
}

#[test]
fn seeds_change_samples() {
    let a = json(&run(&[
        "sample", "--family", "dicke", "--n", "6", "--k", "3", "--count", "30", "--seed", "1",
    ]));
    let b = json(&run(&[
        "sample", "--family", "dicke", "--n", "6", "--k", "3", "--count", "30", "--seed", "2",
    ]));
    assert_eq!(a["result"]["seed"], 1);
    assert_ne!(a["result"]["samples"], b["result"]["samples"]);
    for s in a["result"]["samples"].as_array().unwrap() {
        assert_eq!(s.as_str().unwrap().chars().filter(|&c| c == '1').count(), 3);
    }
}

#[test]
fn state_amplitudes() {
    let out = run(&["state", "--family", "laughlin", "--n", "2"]);
    assert_eq!(code(&out), 0);
    let amps = json(&out)["result"]["amplitudes"].clone();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert_eq!(amps[0]["x"], "01");
    assert!((amps[0]["re"].as_f64().unwrap() - r).abs() < 1e-12);
    assert_eq!(amps[1]["x"], "10");
    assert!((amps[1]["re"].as_f64().unwrap() + r).abs() < 1e-12);

    // An unsupported representative is refused.
    let out = run(&["state", "--family", "w", "--n", "4", "--rep", "0000"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).starts_with("error [support] (seed 0):"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn family_output_feeds_back_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("qd.json");
    let out = run(&[
        "family",
        "quantum-double",
        "--lattice",
        "theta",
        "--group",
        "s3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["analyze", "--input", p]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = &json(&out)["result"];
    assert_eq!(r["dimension"], 1);
    assert_eq!(r["basis"][0]["size"], 6);
    assert_eq!(r["expected"]["support_size"], 6);
    let out = run(&["oracle", "--input", p, "--projector"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["result"]["passed"], true);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn cnf_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "one.cnf",
        "c x1 or x2 or x3\np cnf 3 1\n1 2 3 0\n",
    );
    let out = run(&["cnf", "solve", &f]);
    assert_eq!(code(&out), 0);
    let r = &json(&out)["result"];
    assert_eq!(r["dimension"], 7);
    assert_eq!(r["satisfying"].as_array().unwrap().len(), 7);

    let pinned = write(dir.path(), "pin.cnf", "p cnf 3 3\n1 0\n-2 0\n3 0\n");
    let out = run(&["cnf", "solve", &pinned, "--unique"]);
    assert_eq!(json(&out)["result"]["unique"], "101");

    let out = run(&["cnf", "reduce", &f]);
    assert_eq!(code(&out), 0);
    let spec = write(
        dir.path(),
        "spec.json",
        &serde_json::to_string(&json(&out)["result"]["spec"]).unwrap(),
    );
    let out = run(&["analyze", "--input", &spec]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(json(&out)["result"]["dimension"], 7);

    let big = write(dir.path(), "big.cnf", "p cnf 30 1\n1 2 3 0\n");
    let out = run(&["cnf", "solve", &big]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("NP-hard"));

    let bad = write(dir.path(), "bad.cnf", "p cnf 3 1\n0\n");
    let out = run(&["cnf", "solve", &bad]);
    assert_eq!(code(&out), 2);
    assert!(
        stderr(&out).starts_with("error [parse]"),
        "{}",
        stderr(&out)
    );
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));
}

#[test]
fn exit_codes() {
    // Input errors.
    for args in [
        vec!["analyze", "--family", "nope"],
        vec!["analyze", "--family", "w"],
        vec!["analyze"],
        vec!["analyze", "--input", "/nonexistent/spec.json"],
        vec!["expect", "--family", "w", "--n", "4", "--pauli", "Q1"],
        vec![
            "expect",
            "--family",
            "w",
            "--n",
            "4",
            "--pauli",
            "Z1",
            "--epsilon",
            "2",
        ],
        vec!["family", "dicke", "--n", "3", "--k", "3"],
        // Pauli estimation on qutrits.
        vec!["expect", "--family", "aklt", "--n", "4", "--pauli", "Z1"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error ["), "{args:?}");
    }
    // Refusals: orbit cap, dense cap, group cap.
    let out = run(&[
        "analyze",
        "--family",
        "aklt",
        "--n",
        "6",
        "--orbit-cap",
        "10",
    ]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).starts_with("error [analyze] (seed 0): cap exceeded"));
    let out = run(&[
        "analyze",
        "--family",
        "aklt",
        "--n",
        "6",
        "--seeds",
        "000000",
        "--orbit-cap",
        "10",
    ]);
    assert_eq!(code(&out), 1);
    let r = &json(&out)["result"];
    assert_eq!(r["conclusive"], false);
    assert_eq!(r["orbits"][0]["status"], "inconclusive");
    assert_eq!(r["dimension"], Value::Null);
    let out = run(&["oracle", "--family", "w", "--n", "8", "--dense-cap", "64"]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    let out = run(&[
        "oracle",
        "--family",
        "w",
        "--n",
        "5",
        "--projector",
        "--group-cap",
        "10",
    ]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error [group]"));
}

#[test]
fn human_format_is_indented_json() {
    let out = run(&["analyze", "--family", "ghz3", "--format", "human"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.lines().count() > 5);
    assert_eq!(json(&out)["result"]["dimension"], 1);
}
