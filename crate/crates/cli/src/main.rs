use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jgate::doc::env_tolerance;
use jgate::{
    run_classify_command, run_gate_command, run_iterate_command, run_sample_command, CliError,
    InputDocument, MatrixDocument, SampleConfig,
};

#[derive(Parser, Debug)]
#[command(name = "jgate", version, about = "Jørgensen-type discreteness gates for ⟨g, h⟩ in SL(2,C)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run all gates on a pair document and print the verdict report.
    Gate {
        file: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Classify a single matrix.
    Classify {
        file: PathBuf,
        #[arg(long)]
        pretty: bool,
    },
    /// Iterate h -> h g h^-1 in the diagonal frame of g.
    Iterate {
        file: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        csv: bool,
    },
    /// Seeded sampling sweep written as CSV.
    Sample {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        lambda_min: f64,
        #[arg(long)]
        lambda_max: f64,
        #[arg(long)]
        h_scale: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        emit_h: bool,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    Ok(fs::read_to_string(path)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let env = env_tolerance();
    let env = env.as_deref();
    match cli.command {
        Command::Gate { file, pretty } => {
            let doc = InputDocument::parse(&read(&file)?)?;
            let report = run_gate_command(&doc, env)?;
            if pretty {
                print!("{}", report.to_pretty_text());
            } else {
                println!("{}", to_json(&report));
            }
            Ok(report.exit_code)
        }
        Command::Classify { file, pretty } => {
            let doc = MatrixDocument::parse(&read(&file)?)?;
            let report = run_classify_command(&doc, env)?;
            if pretty {
                print!("{}", report.to_pretty_text());
            } else {
                println!("{}", to_json(&report));
            }
            Ok(0)
        }
        Command::Iterate { file, steps, csv } => {
            let doc = InputDocument::parse(&read(&file)?)?;
            let trace = run_iterate_command(&doc, steps, env)?;
            if let Some(k) = trace.overflowed_at {
                eprintln!("warning: entries exceeded the overflow limit at step {k}; trace truncated");
            }
            if csv {
                print!("{}", trace.to_csv()?);
            } else {
                println!("{}", to_json(&trace));
            }
            Ok(0)
        }
        Command::Sample {
            seed,
            count,
            lambda_min,
            lambda_max,
            h_scale,
            out,
            emit_h,
        } => {
            run_sample_command(&SampleConfig {
                seed,
                count,
                lambda_min,
                lambda_max,
                h_scale,
                output: out,
                emit_h,
            })?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1; exit 2 is reserved for "not applicable".
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
