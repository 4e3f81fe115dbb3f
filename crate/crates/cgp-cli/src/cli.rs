//! Command-line surface of the `cgp` binary. Parsing is a pure function of
//! argv; dispatch and process exit live in `main`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "cgp", about = "Cartesian Genetic Programming experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Parameter file (line-oriented `key = value`)
    #[arg(short = 'p', long = "params")]
    params: PathBuf,
    /// Directory for result and checkpoint files
    #[arg(short = 'o', long = "output", default_value = "out")]
    output: PathBuf,
    /// Parameter override, repeatable (e.g. --set lambda=8)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Shorthand for --set num_jobs=<n>
    #[arg(long)]
    jobs: Option<usize>,
    /// Shorthand for --set seed=<n>
    #[arg(long)]
    seed: Option<u64>,
    /// Shorthand for --set num_eval_threads=<n>
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a batch of evolutionary jobs
    Run(RunArgs),
    /// Continue an interrupted job from its checkpoint
    Resume {
        #[command(flatten)]
        run: RunArgs,
        /// Checkpoint file written by a previous run
        #[arg(short = 'c', long = "checkpoint")]
        checkpoint: PathBuf,
    },
    /// Sample a benchmark dataset and emit it as CSV
    GenDataset {
        /// Benchmark name (e.g. koza-1, nguyen-5)
        benchmark: String,
        /// Sampling seed
        seed: u64,
        /// Write to a file instead of standard output
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Expand a packed PLU truth table into one line per entry
    PrintPlu {
        /// PLU file to expand
        file: PathBuf,
    },
}

/// A validated invocation, ready for dispatch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliInvocation {
    Run {
        parameter_file: PathBuf,
        overrides: Vec<String>,
        output_dir: PathBuf,
    },
    Resume {
        parameter_file: PathBuf,
        checkpoint_path: PathBuf,
        overrides: Vec<String>,
        output_dir: PathBuf,
    },
    GenDataset {
        benchmark: String,
        seed: u64,
        output: Option<PathBuf>,
    },
    PrintPlu {
        file: PathBuf,
    },
}

fn collect_overrides(args: &RunArgs) -> Vec<String> {
    let mut overrides = args.set.clone();
    // the shorthand flags are sugar for --set and take precedence over it
    if let Some(jobs) = args.jobs {
        overrides.push(format!("num_jobs={jobs}"));
    }
    if let Some(seed) = args.seed {
        overrides.push(format!("seed={seed}"));
    }
    if let Some(threads) = args.threads {
        overrides.push(format!("num_eval_threads={threads}"));
    }
    overrides
}

/// Parses argv (including the program name) into an invocation; pure.
pub fn parse_cli<I, S>(argv: I) -> Result<CliInvocation, clap::Error>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(match cli.command {
        Command::Run(args) => CliInvocation::Run {
            overrides: collect_overrides(&args),
            parameter_file: args.params,
            output_dir: args.output,
        },
        Command::Resume { run, checkpoint } => CliInvocation::Resume {
            overrides: collect_overrides(&run),
            parameter_file: run.params,
            checkpoint_path: checkpoint,
            output_dir: run.output,
        },
        Command::GenDataset {
            benchmark,
            seed,
            output,
        } => CliInvocation::GenDataset {
            benchmark,
            seed,
            output,
        },
        Command::PrintPlu { file } => CliInvocation::PrintPlu { file },
    })
}
