//! `verifier`: runs named verification scenarios and validates definition
//! files.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use gperfect::evmodule::DEFAULT_DEPTH;
use gperfect::io::load_definition;
use gperfect::report::Format;
use gperfect::scenarios::{self, Params};

#[derive(Parser)]
#[command(name = "verifier", version, about = "Verification scenarios for sequence rings and their G-flat covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its report.
    Run {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial count; each scenario has its own default.
        #[arg(long)]
        trials: Option<u64>,
        /// Truncation levels checked beyond the stable index.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Report path; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        /// Include run and per-check durations in JSON output.
        #[arg(long)]
        timings: bool,
    },
    /// List the registered scenarios.
    List,
    /// Validate algebra, module, ring and presented-module definition files.
    CheckFiles {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { scenario, seed, trials, depth, out, format, timings } => {
            let params = Params { seed, trials, depth, ..Params::default() };
            let report = scenarios::run(&scenario, &params)?;
            match out {
                Some(path) => report.write(&path, format.into(), timings)?,
                None => match format {
                    OutputFormat::Json => print!("{}", report.to_json(timings)),
                    OutputFormat::Text => print!("{}", report.to_text()),
                },
            }
            Ok(report.all_passed())
        }
        Command::List => {
            for s in scenarios::scenarios() {
                println!("{:<24} {:>6}  {}", s.name, s.default_trials, s.summary);
            }
            Ok(true)
        }
        Command::CheckFiles { paths } => {
            let mut ok = true;
            for path in &paths {
                match load_definition(path).with_context(|| format!("checking {}", path.display())) {
                    Ok(def) => println!("ok      {}: {}", path.display(), def.describe()),
                    Err(e) => {
                        ok = false;
                        println!("invalid {}: {:#}", path.display(), e);
                    }
                }
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
