//! The `cgp` binary: batch experiment runner.
//!
//! Exit codes: 0 success, 1 configuration error (including usage), 2 runtime
//! failure.

use std::path::Path;
use std::process::ExitCode;

use cgp_cli::cli::{parse_cli, CliInvocation};
use cgp_cli::engine::{load_checkpoint, run_jobs, Composite, EngineError};
use cgp_cli::io;
use cgp_core::params::CgpParameters;
use cgp_core::problems::generate_sr_dataset;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> ExitCode {
    let invocation = match parse_cli(std::env::args()) {
        Ok(inv) => inv,
        Err(e) => {
            // clap renders --help/--version as "errors" that exit cleanly
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match dispatch(invocation) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn load_effective_params(
    parameter_file: &Path,
    overrides: &[String],
) -> Result<CgpParameters, EngineError> {
    let mut params = io::load_parameters(parameter_file)?;
    params.merge_cli_overrides(overrides)?;
    Ok(params)
}

fn dispatch(invocation: CliInvocation) -> Result<(), EngineError> {
    match invocation {
        CliInvocation::Run {
            parameter_file,
            overrides,
            output_dir,
        } => {
            let params = load_effective_params(&parameter_file, &overrides)?;
            std::fs::create_dir_all(&output_dir).map_err(|source| EngineError::Io {
                path: output_dir.clone(),
                source,
            })?;
            let summary = run_jobs(&params, Some(&output_dir), |line| println!("{line}"));
            for outcome in &summary.outcomes {
                if let Err(e) = outcome {
                    eprintln!("error: {e}");
                }
            }
            println!("{}", summary.line());
            // a batch fails only when every job failed to run at all
            if summary.outcomes.iter().all(|o| o.is_err()) {
                if let Some(Err(e)) = summary.outcomes.into_iter().next() {
                    return Err(e);
                }
            }
            Ok(())
        }
        CliInvocation::Resume {
            parameter_file,
            checkpoint_path,
            overrides,
            output_dir,
        } => {
            let params = load_effective_params(&parameter_file, &overrides)?;
            let checkpoint = load_checkpoint(&checkpoint_path, params.genome_kind)?;
            let mut composite = Composite::resume(&params, &checkpoint)?;
            std::fs::create_dir_all(&output_dir).map_err(|source| EngineError::Io {
                path: output_dir.clone(),
                source,
            })?;
            let outcome = composite.run_job(Some(&output_dir), |line| println!("{line}"));
            print!("{}", outcome.result_text());
            Ok(())
        }
        CliInvocation::GenDataset {
            benchmark,
            seed,
            output,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let dataset = generate_sr_dataset(&benchmark, &mut rng).map_err(EngineError::Config)?;
            let csv = io::dataset_csv(&dataset);
            match output {
                Some(path) => io::write_atomic(&path, &csv).map_err(|source| EngineError::Io {
                    path: path.clone(),
                    source,
                })?,
                None => print!("{csv}"),
            }
            Ok(())
        }
        CliInvocation::PrintPlu { file } => {
            let table = io::read_plu(&file)?;
            let header: Vec<String> = (0..table.n_inputs)
                .map(|i| format!("x{i}"))
                .chain((0..table.n_outputs).map(|o| format!("y{o}")))
                .collect();
            println!("{}", header.join(" "));
            for entry in 0..table.total_entries() {
                let bits: Vec<String> = (0..table.n_inputs)
                    .map(|i| ((entry >> i) & 1).to_string())
                    .chain(
                        (0..table.n_outputs)
                            .map(|o| (table.entry_output(entry, o) as u8).to_string()),
                    )
                    .collect();
                println!("{}", bits.join(" "));
            }
            Ok(())
        }
    }
}
