use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use solenoid::cli::{run, Command, SessionConfig, EXIT_CONFIG};

#[derive(Parser)]
#[command(version, about = "Exact checks for solenoidal Lie algebras and their cuspidal modules")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// JSON session config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Where to write the JSON report; overrides the config's `out`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled checks; overrides the config's `seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated suites for `suite`.
    #[arg(long, global = true, value_delimiter = ',')]
    suite: Option<Vec<String>>,
    /// Print only the JSON report on stdout.
    #[arg(long, global = true)]
    json_only: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Lie axioms and structural checks for the configured algebras.
    VerifyAlgebra,
    /// Build the configured modules and check the module axioms.
    BuildModule,
    /// Decide irreducibility on the inner window and compare with the closed-form criterion.
    CheckIrreducible,
    /// Extract, fit and analyze the representation behind the configured module.
    Correspond,
    /// Build the cover on growing windows.
    Cover,
    /// Every selected suite.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = match cli.command {
        Cmd::VerifyAlgebra => Command::VerifyAlgebra,
        Cmd::BuildModule => Command::BuildModule,
        Cmd::CheckIrreducible => Command::CheckIrreducible,
        Cmd::Correspond => Command::Correspond,
        Cmd::Cover => Command::Cover,
        Cmd::Suite => Command::Suite,
    };
    let Some(path) = cli.config else {
        eprintln!("config error: --config: a config file is required");
        return ExitCode::from(EXIT_CONFIG as u8);
    };
    let mut cfg = match SessionConfig::load(&path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    let out = cli.out.or_else(|| cfg.out.clone());
    let report = match run(cmd, &cfg, cli.suite.as_deref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let json = report.to_json();
    match &out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &json) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_CONFIG as u8);
            }
            if cli.json_only {
                println!("{json}");
            }
        }
        None => println!("{json}"),
    }
    if !cli.json_only {
        eprint!("{}", report.summary());
    }
    ExitCode::from(report.exit_code as u8)
}
