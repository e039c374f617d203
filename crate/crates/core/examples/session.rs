//! Driving suites from a config, as the binary does.
use solenoid::cli::{run, Command, SessionConfig};

fn main() {
    let cfg = SessionConfig::from_json(
        r#"{"presentation": {"d": 2, "z": 0},
            "module": {"alpha": ["0", "0"], "beta": "0", "W": {"type": "trivial"}, "B": 3}}"#,
    )
    .unwrap();
    let report = run(Command::CheckIrreducible, &cfg, None).unwrap();
    print!("{}", report.summary());
    println!("exit code {}", report.exit_code);
}
