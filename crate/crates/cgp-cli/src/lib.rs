//! Experiment runner around `cgp-core`: job orchestration with chunked
//! concurrent evaluation and checkpoint/resume, file formats (parameter
//! files, PLU truth tables, CSV datasets), and the `cgp` command line.

pub mod cli;
pub mod engine;
pub mod io;

pub use cli::{parse_cli, CliInvocation};
pub use engine::{Composite, EngineError, JobOutcome, ParallelEvaluator, Summary};
