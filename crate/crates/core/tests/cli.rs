use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_solenoid"))
}

fn config(name: &str) -> String {
    format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn reducible_point_is_confirmed() {
    let out = bin()
        .args(["check-irreducible", "--json-only", "--config", &config("reducible_point.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let suite = &report["suites"][0];
    assert_eq!(suite["details"]["verdict"], "reducible");
    assert_eq!(suite["details"]["criterion_reducible"], true);
}

#[test]
fn broken_divisibility_chain_is_a_config_error() {
    let out = bin().args(["suite", "--config", &config("bad_orders.json")]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("presentation.orders"));
}

#[test]
fn unknown_key_is_reported_with_its_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(
        &path,
        r#"{"presentation": {"d": 2, "z": 1, "orders": [2]}, "module": {"alpha": ["0", "0"], "beta": "0", "W": {"type": "regular"}, "B": 2, "colour": 1}}"#,
    )
    .unwrap();
    let out = bin().args(["build-module", "--config", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("module") && err.contains("colour"), "{err}");
}

#[test]
fn report_goes_to_out_and_seed_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = bin()
        .args(["verify-algebra", "--config", &config("k3.json"), "--seed", "5", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["seed"], 5);
    assert_eq!(report["command"], "verify-algebra");
    assert!(report["timing"]["started_unix_ms"].as_u64().unwrap() > 0);
}

#[test]
fn suite_selection_rejects_unknown_names() {
    let out = bin()
        .args(["suite", "--suite", "algebra,nope", "--config", &config("k3.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
