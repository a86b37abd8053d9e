use std::process::ExitCode;
use std::time::Instant;

use bkit::commands::{run, Command};
use bkit::formats::Loader;
use bkit::report::Report;
use clap::Parser;

/// Finite categories, presheaves and the comprehensive factorization.
#[derive(Debug, Parser)]
#[command(name = "bkit", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut loader = Loader::new();
    let start = Instant::now();
    let out = match run(&cli.command, &mut loader) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    if cli.json {
        let report = Report {
            command: cli.command.name().to_string(),
            inputs: loader.inputs().to_vec(),
            result: out.result,
            laws: out.laws,
            timing_ms: cli.timing.then_some(elapsed),
        };
        print!("{}", report.to_json());
    } else {
        print!("{}", out.text);
        if cli.timing {
            println!("time: {elapsed} ms");
        }
    }
    if out.check_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
