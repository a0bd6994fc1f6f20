use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use valext::catalog;
use valext::properties::{run_properties, Suite};
use valext::report::Report;
use valext::runner::{run_scenario, RunOptions, DEFAULT_SAMPLES};
use valext::scenario::{ScenarioConfig, ScenarioName};
use valext::valgroup::GroupElement;

const USAGE_ERROR: u8 = 64;
const PROPERTY_SAMPLES: usize = 200;

#[derive(Parser, Debug)]
#[command(
    name = "valext",
    version,
    about = "Exact truncated checks for valuations extended to formal completions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario's full check list.
    Run {
        /// example_2_2 | example_2_9 | example_4_1 | example_4_2
        #[arg(long)]
        scenario: String,
        /// Truncation order N (default is scenario-specific).
        #[arg(long)]
        truncation: Option<u32>,
        /// Value bound B, e.g. `10`, `3,0` or `lex:10,10`.
        #[arg(long)]
        value_bound: Option<String>,
        #[arg(long)]
        max_precision: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a seeded property suite.
    Properties {
        /// valuation-axioms | additivity-nu-hat-minus | uniqueness | faithful-flatness |
        /// semigroup-finiteness | canonical-form | stabilization
        #[arg(long)]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include per-check wall-clock times (output is then not byte-stable).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Output {
    Json,
    Text,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("valext: {msg}");
    ExitCode::from(USAGE_ERROR)
}

/// Bare bounds take the value group of the scenario's default bound.
fn parse_bound(name: ScenarioName, text: &str) -> Result<GroupElement, String> {
    let text = if text.contains(':') {
        text.to_string()
    } else {
        let default = &catalog::entry(name.as_str())
            .ok_or("missing catalog entry")?
            .default_value_bound;
        let kind = default.split(':').next().unwrap_or("lex");
        format!("{kind}:{text}")
    };
    GroupElement::parse(&text).map_err(|e| e.to_string())
}

fn emit(report: &Report, common: &Common) -> ExitCode {
    let body = match common.output {
        Output::Json => report.to_json(),
        Output::Text => report.to_text(),
    };
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("valext: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(report.verdict.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(USAGE_ERROR),
            };
        }
    };
    match cli.command {
        Command::Run {
            scenario,
            truncation,
            value_bound,
            max_precision,
            common,
        } => {
            let name: ScenarioName = match scenario.parse() {
                Ok(n) => n,
                Err(e) => return usage(e),
            };
            let value_bound = match value_bound
                .as_deref()
                .map(|b| parse_bound(name, b))
                .transpose()
            {
                Ok(b) => b,
                Err(e) => return usage(format!("bad --value-bound: {e}")),
            };
            let opts = RunOptions {
                config: ScenarioConfig {
                    truncation,
                    value_bound,
                    max_precision,
                    seed: common.seed,
                },
                samples: common.samples.unwrap_or(DEFAULT_SAMPLES),
                timings: common.timings,
            };
            match run_scenario(name, &opts) {
                Ok(r) => emit(&r, &common),
                Err(e) => usage(e),
            }
        }
        Command::Properties { suite, common } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let opts = RunOptions {
                config: ScenarioConfig {
                    seed: common.seed,
                    ..ScenarioConfig::default()
                },
                samples: common.samples.unwrap_or(PROPERTY_SAMPLES),
                timings: common.timings,
            };
            match run_properties(suite, &opts) {
                Ok(r) => emit(&r, &common),
                Err(e) => usage(e),
            }
        }
    }
}
