//! End-to-end tests of the command-line contract: exit codes, determinism,
//! frozen golden outputs, and the CSV mirror.

use bp_cli::run;

fn invoke(args: &[&str]) -> bp_cli::Outcome {
    let mut argv = vec!["bpw"];
    argv.extend_from_slice(args);
    run(argv)
}

#[test]
fn simples_p5_reports_six_records() {
    let out = invoke(&["simples", "--p", "5"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["count"], 6);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["results"]["records"][0]["xi"], "(2)/(3)");
}

#[test]
fn null_vector_p5_is_in_the_maximal_submodule() {
    let out = invoke(&["null-vector", "--p", "5"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["in_maximal_submodule"], true);
}

#[test]
fn central_charge_at_p7() {
    let out = invoke(&["central-charge", "--p", "7"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"]["c"], "-48/7");
    assert_eq!(v["results"]["forms_equal"], true);
}

#[test]
fn exit_codes_follow_the_contract() {
    // usage errors are 2
    assert_eq!(invoke(&["simples", "--p", "4"]).code, 2);
    assert_eq!(invoke(&["central-charge", "--k", "1/0"]).code, 2);
    assert_eq!(invoke(&["central-charge", "--k", "-3"]).code, 2);
    assert_eq!(invoke(&["no-such-command"]).code, 2);
    // an injected fault in the reference table is a mismatch: 1
    let faulted = invoke(&["verify-brackets", "--grid", "2", "--inject-fault", "gg-central"]);
    assert_eq!(faulted.code, 1);
    assert!(faulted.stdout.contains("[G+_m, G-_n]"));
    // a window too small to certify a null vector is inconclusive: 3
    let small = invoke(&["null-vector", "--p", "7", "--depth", "2", "--charge", "3"]);
    assert_eq!(small.code, 3);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = invoke(&["simples", "--p", "7"]);
    let b = invoke(&["simples", "--p", "7"]);
    assert_eq!(a.stdout, b.stdout);
    let a = invoke(&["verify-jacobi", "--grid", "1", "--vectors", "1"]);
    let b = invoke(&["verify-jacobi", "--grid", "1", "--vectors", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timing_flag_is_opt_in() {
    let plain = invoke(&["central-charge", "--p", "5"]);
    assert!(!plain.stdout.contains("timing_ms"));
    let timed = invoke(&["central-charge", "--p", "5", "--timing"]);
    assert!(timed.stdout.contains("timing_ms"));
}

#[test]
fn csv_mirrors_the_json_fields() {
    let csv = invoke(&["simples", "--p", "5", "--format", "csv"]);
    let mut lines = csv.stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,i,j,xi,chi,lambda_a1,lambda_a2,lambda_k"
    );
    assert_eq!(lines.clone().count(), 6);
    assert_eq!(lines.next().unwrap(), "5,1,1,(2)/(3),(0)/(1),0,2,-1/2");
}

#[test]
fn golden_outputs_are_frozen() {
    let cases: &[(&str, &[&str])] = &[
        ("brackets.json", &["brackets", "--grid", "1"]),
        ("verify-brackets.json", &["verify-brackets", "--grid", "2"]),
        ("verify-jacobi.json", &["verify-jacobi", "--grid", "1", "--vectors", "1"]),
        ("simples.json", &["simples", "--p", "5"]),
        ("character.json", &["character", "--p", "3"]),
        ("null-vector.json", &["null-vector", "--p", "5"]),
        ("top-dims.json", &["top-dims", "--p", "5"]),
        ("spectral-flow.json", &["spectral-flow", "--p", "5", "--i", "1", "--j", "1"]),
        ("central-charge.json", &["central-charge", "--p", "7"]),
        ("verify-all.json", &["verify-all"]),
    ];
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../docs/golden");
    for (file, args) in cases {
        let want = std::fs::read_to_string(root.join(file))
            .unwrap_or_else(|e| panic!("missing golden file {file}: {e}"));
        let got = invoke(args);
        assert_eq!(got.stdout, want, "golden mismatch for {file}");
    }
}

#[test]
fn verify_all_quick_passes() {
    let out = invoke(&["verify-all"]);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "verified");
}

#[test]
fn character_vacuum_p3_collapses() {
    let out = invoke(&["character", "--p", "3", "--depth", "3"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let blocks = v["results"]["blocks"].as_array().unwrap();
    for b in blocks {
        let want = if b["charge"] == 0 && b["depth"] == 0 { 1 } else { 0 };
        assert_eq!(b["dim"], want, "block {b}");
    }
}

#[test]
fn binary_smoke() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_bpw"))
        .args(["central-charge", "--p", "5"])
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("-8/5"));
}
