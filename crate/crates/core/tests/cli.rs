//! Black-box tests of the command-line surface: subcommands, file formats,
//! exit codes, and the seed environment variable.

use std::process::Command;

fn dgatool() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dgatool"))
}

fn run_ok(args: &[&str]) -> String {
    let out = dgatool().args(args).output().expect("spawn dgatool");
    assert!(
        out.status.success(),
        "dgatool {args:?} failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn build_extend_and_analyze_round_trip() {
    let dir = std::env::temp_dir().join(format!("dgatool-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("surface.json");
    let ext = dir.join("heis.json");

    run_ok(&[
        "catalog",
        "build",
        "surface-g1",
        "--out",
        base.to_str().unwrap(),
    ]);
    let out = run_ok(&[
        "hirsch",
        base.to_str().unwrap(),
        "--gen",
        "t:1",
        "--tau",
        "a1*b1",
        "--out",
        ext.to_str().unwrap(),
    ]);
    assert!(out.contains("dims [1, 3, 3, 1]"));

    let coh = run_ok(&["cohomology", ext.to_str().unwrap(), "--upto", "3"]);
    assert!(coh.contains("betti [1, 2, 2, 1]"));

    let pd = run_ok(&["pd-check", ext.to_str().unwrap(), "--dim", "3", "--json"]);
    let parsed: serde_json::Value = serde_json::from_str(&pd).unwrap();
    assert_eq!(parsed["isPdCdga"], serde_json::Value::Bool(true));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn massey_json_reports_nonvanishing_obstruction() {
    let out = run_ok(&[
        "massey", "sp5su5", "--triple", "x6", "x6", "x10", "--json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["vanishes"], serde_json::Value::Bool(false));
    assert_eq!(parsed["degree"], serde_json::json!(21));
    assert_eq!(parsed["indeterminacy_dim"], serde_json::json!(0));
}

#[test]
fn regular_prints_witness_on_failure() {
    let out = run_ok(&["regular", "sp5su5", "--q", "20"]);
    assert!(out.contains("verdict: false"));
    assert!(out.contains("x6"));
    let ok = run_ok(&["regular", "sp5su5", "--q", "19"]);
    assert!(ok.contains("verdict: true"));
}

#[test]
fn formality_emits_quotient_model() {
    let dir = std::env::temp_dir().join(format!("dgatool-quot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let quot = dir.join("quotient.json");
    let out = run_ok(&[
        "formality",
        "sp5su5",
        "--emit-quotient",
        quot.to_str().unwrap(),
        "--json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["verified"], serde_json::Value::Bool(true));
    // the emitted file parses back into a valid model
    let text = std::fs::read_to_string(&quot).unwrap();
    let reparsed = dgatool::io::model_from_json(&text).unwrap();
    assert_eq!(reparsed.dim(6), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn holonomy_elimination_profile() {
    let out = run_ok(&["holonomy", "heis-n1", "--eliminate", "--json"]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["degreeProfile"], serde_json::json!([3, 3]));
    assert_eq!(parsed["lcsDims"], serde_json::json!([2, 1, 0, 0, 0]));
}

#[test]
fn seed_env_var_reproduces_runs() {
    let run = |seed: &str| {
        let out = dgatool()
            .env("DGATOOL_SEED", seed)
            .args(["resonance", "link-g2", "--lie", "sl2", "--samples", "10", "--json"])
            .output()
            .expect("spawn");
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout).to_string()
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn exit_codes_follow_the_contract() {
    // usage error: 2
    let out = dgatool().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // failed computation (unknown key): 1
    let out = dgatool()
        .args(["cohomology", "missing-model", "--upto", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // flat-classify rejects a non-flat connection with exit 1
    let dir = std::env::temp_dir().join(format!("dgatool-omega-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let omega = dir.join("omega.json");
    std::fs::write(
        &omega,
        r#"{ "lie": "sl2",
             "coeffs": [["0","1","0"],["0","0","1"],["0","0","0"],["0","0","0"],["0","0","0"]] }"#,
    )
    .unwrap();
    let out = dgatool()
        .args(["flat-classify", "link-g2", "--omega", omega.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not flat"), "stderr: {err}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn product_check_agrees_and_exits_zero() {
    let out = run_ok(&[
        "product-check",
        "surface-g2",
        "circle",
        "--q",
        "1",
        "--samples",
        "20",
        "--seed",
        "42",
        "--json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["agreements"], parsed["samples"]);
}
