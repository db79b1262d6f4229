//! `madirac`: run verification scenarios, print the coupling constraints,
//! list the built-in scenarios.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use madirac::harness::{load_scenario, Registry, BUILTIN_SCENARIOS};
use madirac::spinor::{derive_constraints, ConstraintSolution, PartValue};

#[derive(Parser)]
#[command(name = "madirac", version, about = "Dirac-operator consistency checks on metric-affine geometries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (or a built-in scenario by name).
    Run {
        file: String,
        /// Sampling seed; also selects the geometry of generated scenarios.
        #[arg(long)]
        seed: Option<u64>,
        /// Suite to run; repeatable. Defaults to the scenario's list.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Derive and print the coupling constraints.
    Constraints,
    /// List built-in scenarios and registered suites.
    List,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Run { file, seed, suites, format } => run(&file, seed, &suites, format),
        Command::Constraints => match derive_constraints() {
            Ok(s) => {
                print!("{}", constraints_text(&s));
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Command::List => {
            print!("{}", listing());
            ExitCode::SUCCESS
        }
    }
}

fn run(file: &str, seed: Option<u64>, suites: &[String], format: Format) -> ExitCode {
    let registry = Registry::builtin();
    let scenario = match load_scenario(file, seed) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {file}: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(bad) = suites.iter().find(|s| registry.get(s).is_none()) {
        eprintln!("error: unknown suite `{bad}` (registered: {})", registry.names().join(", "));
        return ExitCode::from(2);
    }
    let names = if suites.is_empty() { &scenario.suites } else { suites };
    let report = match registry.run(&scenario, names) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Text => print!("{}", report.text()),
        Format::Machine => print!("{}", report.machine()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn constraints_text(s: &ConstraintSolution) -> String {
    let mut out = s.to_string();
    out.push_str("summary:\n");
    for v in &s.values {
        match (&v.re, &v.im) {
            (PartValue::Fixed(re), PartValue::Free(_)) => out.push_str(&format!("  Re {} = {re}\n", v.name)),
            (PartValue::Free(_), PartValue::Fixed(im)) if im.is_zero() => out.push_str(&format!("  {} real\n", v.name)),
            _ => out.push_str(&format!("  {} = {}\n", v.name, v.value())),
        }
    }
    out.push_str("special points:\n");
    out.push_str(
        "  Einstein-Cartan-Dirac: A1..A4 = B1..B4 = 0, so b1 = -1/2 and Ω = ½σ_ab ω^ab - ½T on metric-compatible geometry\n",
    );
    out.push_str(
        "  Einstein-Dirac: on Riemannian geometry (Q = P = T = 0) with b3 = b4 = 0 every member gives Ω = ½σ_ab ω^ab\n",
    );
    out
}

fn listing() -> String {
    let mut out = String::from("built-in scenarios:\n");
    for b in &BUILTIN_SCENARIOS {
        out.push_str(&format!("  {}\n      {}\n      suites: {}\n", b.name, b.description(), b.suites().join(", ")));
    }
    out.push_str("suites:\n");
    for s in Registry::builtin().iter() {
        out.push_str(&format!("  {:<18} {}\n", s.name(), s.description()));
    }
    out
}
