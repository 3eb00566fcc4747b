mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::CliError;

#[derive(Parser, Debug)]
#[command(name = "frri", version, about = "Fuzzy-rough rule induction with attribute ordering")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "FRRI_JOBS")]
    jobs: Option<usize>,
    /// More log output; repeat for debug.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Settings {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. `--set theta=0.7`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the attributes of a dataset and print the ordering as JSON.
    Rank {
        dataset: PathBuf,
        #[arg(long, default_value = "ofrfs")]
        method: String,
        #[arg(long, default_value = "full")]
        retain: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        settings: Settings,
    },
    /// Induce a ruleset from a training file.
    Fit {
        train: PathBuf,
        #[arg(long, default_value = "identity")]
        method: String,
        #[arg(long, default_value = "full")]
        retain: String,
        /// Where to write the ruleset JSON (stdout if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also print the rules in original units to stderr.
        #[arg(long)]
        show: bool,
        #[command(flatten)]
        settings: Settings,
    },
    /// Classify a file with a saved ruleset.
    Predict {
        ruleset: PathBuf,
        test: PathBuf,
        /// Predictions CSV destination (stdout if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        settings: Settings,
    },
    /// Cross-validate every configured variant on every configured dataset.
    Experiment {
        config: PathBuf,
        /// Overrides `output_dir`.
        #[arg(short, long)]
        output_dir: Option<PathBuf>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    match cli.command {
        Command::Rank {
            dataset,
            method,
            retain,
            output,
            settings,
        } => commands::rank(&dataset, &method, &retain, output.as_deref(), &settings),
        Command::Fit {
            train,
            method,
            retain,
            output,
            show,
            settings,
        } => commands::fit(&train, &method, &retain, output.as_deref(), show, &settings),
        Command::Predict {
            ruleset,
            test,
            output,
            settings,
        } => commands::predict(&ruleset, &test, output.as_deref(), &settings),
        Command::Experiment {
            config,
            output_dir,
            overrides,
        } => commands::experiment(
            &Settings {
                config: Some(config),
                overrides,
            },
            output_dir,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
