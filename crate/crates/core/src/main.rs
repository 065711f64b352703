use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use frt::pipeline::{fixture, run_pipeline, ProblemSpec, EXIT_INPUT_ERROR, FIXTURES};

#[derive(Parser)]
#[command(name = "frt", version, about = "FRT bialgebroids and Hopf algebroids with exact verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the presentation for a problem spec and run the requested checks.
    Build {
        /// Problem spec (JSON). Omit when using --fixture.
        spec: Option<PathBuf>,
        /// Built-in problem spec.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(FIXTURES))]
        fixture: Option<String>,
        /// Truncation degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Extra degree for the filtered (Hopf) quotient.
        #[arg(long)]
        horizon: Option<usize>,
        /// Comma-separated check names, or `all`.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Write the presentation artifact here.
        #[arg(long)]
        emit_presentation: Option<PathBuf>,
        /// Write the verification report here.
        #[arg(long)]
        emit_report: Option<PathBuf>,
    },
}

fn input_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT_ERROR as u8)
}

fn main() -> ExitCode {
    let Command::Build { spec, fixture: fx, degree, horizon, checks, emit_presentation, emit_report } =
        Cli::parse().command;
    let mut problem = match (spec, fx) {
        (Some(path), None) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            match ProblemSpec::from_json(&text) {
                Ok(s) => s,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            }
        }
        (None, Some(name)) => fixture(&name).expect("fixture names are validated"),
        _ => return input_error("give exactly one of a spec path or --fixture".into()),
    };
    if let Some(d) = degree {
        problem.degree = d;
    }
    if let Some(h) = horizon {
        problem.horizon = h;
    }
    if let Some(c) = checks {
        problem.checks = c;
    }

    let out = run_pipeline(&problem);
    if let Some(path) = emit_report {
        if let Err(e) = std::fs::write(&path, out.report_json()) {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    if let (Some(path), Some(text)) = (emit_presentation, out.presentation_json()) {
        if let Err(e) = std::fs::write(&path, text) {
            return input_error(format!("{}: {e}", path.display()));
        }
    }

    let r = &out.report;
    println!("status: {}", r["status"].as_str().unwrap_or("?"));
    if let Some(h) = r["hilbert"].as_array() {
        let dims: Vec<String> = h.iter().map(|e| e["dim"].to_string()).collect();
        println!("hilbert: [{}]", dims.join(", "));
    }
    if let Some(s) = r["stabilization"].as_object() {
        println!("stabilization: {}", serde_json::Value::Object(s.clone()));
    }
    for c in r["checks"].as_array().into_iter().flatten() {
        let mark = if c["passed"].as_bool() == Some(true) { "ok  " } else { "FAIL" };
        println!(
            "{mark} {} (degree {}, {} instances)",
            c["axiom"].as_str().unwrap_or("?"),
            c["degree"],
            c["instances"]
        );
        if let Some(w) = c["witness"].as_str() {
            println!("     {w}");
        }
    }
    if let Some(e) = r["error"].as_object() {
        eprintln!("error: {}: {}", e["kind"].as_str().unwrap_or("?"), e["message"].as_str().unwrap_or(""));
    }
    ExitCode::from(out.exit_code as u8)
}
