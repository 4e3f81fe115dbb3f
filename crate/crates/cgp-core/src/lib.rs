//! Core building blocks for Cartesian Genetic Programming (CGP).
//!
//! A candidate program is encoded as a fixed-length gene vector describing an
//! acyclic graph of function nodes on an `n_rows x n_columns` grid. This crate
//! provides the genotype representation (integer and real-valued), the
//! backward-search decoder, mutation and crossover operators, the (1+lambda)
//! evolutionary algorithm with neutral genetic drift and a (mu+lambda) variant,
//! plus logic-synthesis and symbolic-regression benchmark problems.
//!
//! The crate is `no_std` (with `alloc`); all file and thread handling lives in
//! the companion `cgp-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algorithm;
pub mod checkpoint;
pub mod decoder;
pub mod function_set;
pub mod genome;
pub mod params;
pub mod problems;
pub mod variation;

pub use algorithm::{Individual, Population, RunResult, Termination};
pub use decoder::DecodedProgram;
pub use function_set::{FunctionOp, FunctionSet, TerminalConstants};
pub use genome::{GeneBounds, GeneKind, Genotype, Layout};
pub use params::{AlgorithmKind, CgpParameters, ConfigError, CrossoverKind, GenomeKind, ProblemKind};
pub use problems::{Problem, SrDataset, TruthTable};
pub use variation::MutationPipeline;
