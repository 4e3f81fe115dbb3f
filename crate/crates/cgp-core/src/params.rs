//! Parameter model: every structural and evolutionary hyperparameter of a run,
//! parsed from a line-oriented `key = value` file with CLI overrides on top.
//!
//! Precedence is CLI override > file value > documented default.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Search algorithm selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmKind {
    OnePlusLambda,
    MuPlusLambda,
}

/// Genotype encoding: natural-number genes or reals in `[0,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenomeKind {
    Integer,
    Real,
}

/// Recombination operator used under the (mu+lambda)-EA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossoverKind {
    Discrete,
    Block,
}

/// Benchmark domain of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    LogicSynthesis,
    SymbolicRegression,
}

/// How a strictly improving offspring is chosen during selection.
///
/// `Uniform` picks uniformly at random among all improving offspring;
/// `Best` picks the one with the lowest fitness (common CGP convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImprovingSelection {
    Uniform,
    Best,
}

impl FromStr for AlgorithmKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "one_plus_lambda" => Ok(Self::OnePlusLambda),
            "mu_plus_lambda" => Ok(Self::MuPlusLambda),
            _ => Err(()),
        }
    }
}

impl AlgorithmKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::OnePlusLambda => "one_plus_lambda",
            Self::MuPlusLambda => "mu_plus_lambda",
        }
    }
}

impl FromStr for GenomeKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "integer" => Ok(Self::Integer),
            "real" => Ok(Self::Real),
            _ => Err(()),
        }
    }
}

impl GenomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Integer => "integer",
            Self::Real => "real",
        }
    }
}

impl FromStr for CrossoverKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "discrete" => Ok(Self::Discrete),
            "block" => Ok(Self::Block),
            _ => Err(()),
        }
    }
}

impl CrossoverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Discrete => "discrete",
            Self::Block => "block",
        }
    }
}

impl FromStr for ProblemKind {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "logic_synthesis" => Ok(Self::LogicSynthesis),
            "symbolic_regression" => Ok(Self::SymbolicRegression),
            _ => Err(()),
        }
    }
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::LogicSynthesis => "logic_synthesis",
            Self::SymbolicRegression => "symbolic_regression",
        }
    }
}

impl FromStr for ImprovingSelection {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "best" => Ok(Self::Best),
            _ => Err(()),
        }
    }
}

impl ImprovingSelection {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Uniform => "uniform",
            Self::Best => "best",
        }
    }
}

/// Configuration and validation failures.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// A required key was absent from the parameter file.
    MissingKey(&'static str),
    /// A key that is not part of the parameter model.
    UnknownKey(String),
    /// A value that could not be parsed for its key.
    InvalidValue { key: String, value: String },
    /// A parsed value that violates an invariant.
    OutOfRange { key: String, requirement: String },
    /// A line that is not `key = value`, a comment or blank.
    Syntax { line: usize },
    /// An override that is not of the form `key=value`.
    MalformedOverride(String),
    /// Empty or inverted ERC range.
    EmptyRange { lo: f64, hi: f64 },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingKey(k) => write!(f, "missing required parameter \"{k}\""),
            Self::UnknownKey(k) => write!(
                f,
                "unknown parameter \"{k}\" (valid keys: {})",
                PARAMETER_KEYS.join(", ")
            ),
            Self::InvalidValue { key, value } => {
                write!(f, "invalid value \"{value}\" for parameter \"{key}\"")
            }
            Self::OutOfRange { key, requirement } => {
                write!(f, "parameter \"{key}\" out of range: requires {requirement}")
            }
            Self::Syntax { line } => write!(f, "syntax error in parameter file at line {line}"),
            Self::MalformedOverride(s) => {
                write!(f, "malformed override \"{s}\" (expected key=value)")
            }
            Self::EmptyRange { lo, hi } => {
                write!(f, "empty constant range [{lo}, {hi})")
            }
        }
    }
}

impl core::error::Error for ConfigError {}

/// Every recognized parameter key, in canonical serialization order.
pub const PARAMETER_KEYS: &[&str] = &[
    "n_inputs",
    "n_outputs",
    "n_rows",
    "n_columns",
    "max_arity",
    "levels_back",
    "mu",
    "lambda",
    "algorithm",
    "genome_kind",
    "point_mutation_rate",
    "inversion_rate",
    "inversion_max_segment",
    "duplication_rate",
    "duplication_max_segment",
    "mutation_pipeline",
    "crossover_rate",
    "crossover",
    "block_size",
    "improving_selection",
    "neutrality_epsilon",
    "max_generations",
    "max_fitness_evaluations",
    "ideal_fitness",
    "num_jobs",
    "num_eval_threads",
    "seed",
    "num_constants",
    "constant_range",
    "problem",
    "plu_file",
    "benchmark",
    "checkpoint_interval",
];

const REQUIRED_KEYS: &[&str] = &["n_inputs", "n_outputs", "n_columns", "max_arity", "lambda"];

/// All hyperparameters of a CGP run.
///
/// `levels_back` and `neutrality_epsilon` stay `None` until explicitly set;
/// the accessor methods of the same name resolve their documented defaults
/// (`levels_back = n_columns`, epsilon 0 for logic synthesis and relative
/// `1e-9` for symbolic regression).
#[derive(Debug, Clone)]
pub struct CgpParameters {
    pub n_inputs: usize,
    pub n_outputs: usize,
    pub n_rows: usize,
    pub n_columns: usize,
    pub max_arity: usize,
    pub levels_back: Option<usize>,
    pub mu: usize,
    pub lambda: usize,
    pub algorithm: AlgorithmKind,
    pub genome_kind: GenomeKind,
    pub point_mutation_rate: f64,
    pub inversion_rate: f64,
    pub inversion_max_segment: usize,
    pub duplication_rate: f64,
    pub duplication_max_segment: usize,
    pub mutation_pipeline: Option<String>,
    pub crossover_rate: f64,
    pub crossover: CrossoverKind,
    pub block_size: usize,
    pub improving_selection: ImprovingSelection,
    pub neutrality_epsilon: Option<f64>,
    pub max_generations: u64,
    pub max_fitness_evaluations: u64,
    pub ideal_fitness: f64,
    pub num_jobs: usize,
    pub num_eval_threads: usize,
    pub seed: u64,
    pub num_constants: usize,
    pub constant_range: (f64, f64),
    pub problem: ProblemKind,
    pub plu_file: Option<String>,
    pub benchmark: Option<String>,
    pub checkpoint_interval: u64,
}

impl Default for CgpParameters {
    fn default() -> Self {
        Self {
            n_inputs: 1,
            n_outputs: 1,
            n_rows: 1,
            n_columns: 1,
            max_arity: 2,
            levels_back: None,
            mu: 1,
            lambda: 4,
            algorithm: AlgorithmKind::OnePlusLambda,
            genome_kind: GenomeKind::Integer,
            point_mutation_rate: 0.05,
            inversion_rate: 0.0,
            inversion_max_segment: 4,
            duplication_rate: 0.0,
            duplication_max_segment: 4,
            mutation_pipeline: None,
            crossover_rate: 0.0,
            crossover: CrossoverKind::Discrete,
            block_size: 1,
            improving_selection: ImprovingSelection::Uniform,
            neutrality_epsilon: None,
            max_generations: 100,
            max_fitness_evaluations: 0,
            ideal_fitness: 0.0,
            num_jobs: 1,
            num_eval_threads: 1,
            seed: 0,
            num_constants: 0,
            constant_range: (-1.0, 1.0),
            problem: ProblemKind::LogicSynthesis,
            plu_file: None,
            benchmark: None,
            checkpoint_interval: 100,
        }
    }
}

fn parse_as<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

impl CgpParameters {
    /// Effective levels-back: explicit value, or `n_columns` (unconstrained).
    pub fn levels_back(&self) -> usize {
        self.levels_back.unwrap_or(self.n_columns)
    }

    /// Effective neutrality epsilon: explicit value, or 0 for integer-valued
    /// (logic synthesis) fitness and relative `1e-9` for real-valued fitness.
    pub fn neutrality_epsilon(&self) -> f64 {
        self.neutrality_epsilon.unwrap_or(match self.problem {
            ProblemKind::LogicSynthesis => 0.0,
            ProblemKind::SymbolicRegression => 1e-9,
        })
    }

    /// Sets one parameter from its textual value.
    pub fn set_key(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let inv = || ConfigError::InvalidValue {
            key: key.to_string(),
            value: value.to_string(),
        };
        match key {
            "n_inputs" => self.n_inputs = parse_as(key, value)?,
            "n_outputs" => self.n_outputs = parse_as(key, value)?,
            "n_rows" => self.n_rows = parse_as(key, value)?,
            "n_columns" => self.n_columns = parse_as(key, value)?,
            "max_arity" => self.max_arity = parse_as(key, value)?,
            "levels_back" => self.levels_back = Some(parse_as(key, value)?),
            "mu" => self.mu = parse_as(key, value)?,
            "lambda" => self.lambda = parse_as(key, value)?,
            "algorithm" => self.algorithm = value.parse().map_err(|_| inv())?,
            "genome_kind" => self.genome_kind = value.parse().map_err(|_| inv())?,
            "point_mutation_rate" => self.point_mutation_rate = parse_as(key, value)?,
            "inversion_rate" => self.inversion_rate = parse_as(key, value)?,
            "inversion_max_segment" => self.inversion_max_segment = parse_as(key, value)?,
            "duplication_rate" => self.duplication_rate = parse_as(key, value)?,
            "duplication_max_segment" => self.duplication_max_segment = parse_as(key, value)?,
            "mutation_pipeline" => self.mutation_pipeline = Some(value.to_string()),
            "crossover_rate" => self.crossover_rate = parse_as(key, value)?,
            "crossover" => self.crossover = value.parse().map_err(|_| inv())?,
            "block_size" => self.block_size = parse_as(key, value)?,
            "improving_selection" => self.improving_selection = value.parse().map_err(|_| inv())?,
            "neutrality_epsilon" => self.neutrality_epsilon = Some(parse_as(key, value)?),
            "max_generations" => self.max_generations = parse_as(key, value)?,
            "max_fitness_evaluations" => self.max_fitness_evaluations = parse_as(key, value)?,
            "ideal_fitness" => self.ideal_fitness = parse_as(key, value)?,
            "num_jobs" => self.num_jobs = parse_as(key, value)?,
            "num_eval_threads" => self.num_eval_threads = parse_as(key, value)?,
            "seed" => self.seed = parse_as(key, value)?,
            "num_constants" => self.num_constants = parse_as(key, value)?,
            "constant_range" => {
                let (lo, hi) = value.split_once(',').ok_or_else(inv)?;
                self.constant_range = (
                    lo.trim().parse().map_err(|_| inv())?,
                    hi.trim().parse().map_err(|_| inv())?,
                );
            }
            "problem" => self.problem = value.parse().map_err(|_| inv())?,
            "plu_file" => self.plu_file = Some(value.to_string()),
            "benchmark" => self.benchmark = Some(value.to_string()),
            "checkpoint_interval" => self.checkpoint_interval = parse_as(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Checks all structural invariants, returning the first violation.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let range = |key: &str, requirement: &str| {
            Err(ConfigError::OutOfRange {
                key: key.to_string(),
                requirement: requirement.to_string(),
            })
        };
        if self.n_inputs < 1 {
            return range("n_inputs", ">= 1");
        }
        if self.n_outputs < 1 {
            return range("n_outputs", ">= 1");
        }
        if self.n_rows < 1 {
            return range("n_rows", ">= 1");
        }
        if self.n_columns < 1 {
            return range("n_columns", ">= 1");
        }
        if self.max_arity < 1 {
            return range("max_arity", ">= 1");
        }
        let l = self.levels_back();
        if l < 1 || l > self.n_columns {
            return range("levels_back", "1 <= levels_back <= n_columns");
        }
        if self.mu < 1 {
            return range("mu", ">= 1");
        }
        if self.lambda < 1 {
            return range("lambda", ">= 1");
        }
        for (key, rate) in [
            ("point_mutation_rate", self.point_mutation_rate),
            ("inversion_rate", self.inversion_rate),
            ("duplication_rate", self.duplication_rate),
            ("crossover_rate", self.crossover_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return range(key, "a probability in [0, 1]");
            }
        }
        if self.neutrality_epsilon() < 0.0 {
            return range("neutrality_epsilon", ">= 0");
        }
        if self.num_eval_threads < 1 {
            return range("num_eval_threads", ">= 1");
        }
        if self.num_jobs < 1 {
            return range("num_jobs", ">= 1");
        }
        if self.block_size < 1 || self.block_size > self.n_rows * self.n_columns {
            return range("block_size", "1 <= block_size <= n_rows * n_columns");
        }
        if self.num_constants > 0 && self.constant_range.0 >= self.constant_range.1 {
            return range("constant_range", "lo < hi");
        }
        Ok(())
    }

    /// Applies a list of `key=value` overrides, then re-validates.
    pub fn merge_cli_overrides<S: AsRef<str>>(&mut self, overrides: &[S]) -> Result<(), ConfigError> {
        for item in overrides {
            let item = item.as_ref();
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| ConfigError::MalformedOverride(item.to_string()))?;
            self.set_key(key.trim(), value.trim())?;
        }
        self.validate()
    }

    /// Canonical `(key, value)` listing with defaults resolved; keys whose
    /// value is unset (`plu_file`, `benchmark`, `mutation_pipeline`) are
    /// omitted.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        for &key in PARAMETER_KEYS {
            let value = match key {
                "n_inputs" => self.n_inputs.to_string(),
                "n_outputs" => self.n_outputs.to_string(),
                "n_rows" => self.n_rows.to_string(),
                "n_columns" => self.n_columns.to_string(),
                "max_arity" => self.max_arity.to_string(),
                "levels_back" => self.levels_back().to_string(),
                "mu" => self.mu.to_string(),
                "lambda" => self.lambda.to_string(),
                "algorithm" => self.algorithm.as_str().to_string(),
                "genome_kind" => self.genome_kind.as_str().to_string(),
                "point_mutation_rate" => self.point_mutation_rate.to_string(),
                "inversion_rate" => self.inversion_rate.to_string(),
                "inversion_max_segment" => self.inversion_max_segment.to_string(),
                "duplication_rate" => self.duplication_rate.to_string(),
                "duplication_max_segment" => self.duplication_max_segment.to_string(),
                "mutation_pipeline" => match &self.mutation_pipeline {
                    Some(s) => s.clone(),
                    None => continue,
                },
                "crossover_rate" => self.crossover_rate.to_string(),
                "crossover" => self.crossover.as_str().to_string(),
                "block_size" => self.block_size.to_string(),
                "improving_selection" => self.improving_selection.as_str().to_string(),
                "neutrality_epsilon" => self.neutrality_epsilon().to_string(),
                "max_generations" => self.max_generations.to_string(),
                "max_fitness_evaluations" => self.max_fitness_evaluations.to_string(),
                "ideal_fitness" => self.ideal_fitness.to_string(),
                "num_jobs" => self.num_jobs.to_string(),
                "num_eval_threads" => self.num_eval_threads.to_string(),
                "seed" => self.seed.to_string(),
                "num_constants" => self.num_constants.to_string(),
                "constant_range" => format!("{},{}", self.constant_range.0, self.constant_range.1),
                "problem" => self.problem.as_str().to_string(),
                "plu_file" => match &self.plu_file {
                    Some(s) => s.clone(),
                    None => continue,
                },
                "benchmark" => match &self.benchmark {
                    Some(s) => s.clone(),
                    None => continue,
                },
                "checkpoint_interval" => self.checkpoint_interval.to_string(),
                _ => unreachable!(),
            };
            out.push((key, value));
        }
        out
    }

    /// Serializes to parameter-file text that `parse_parameter_text` accepts.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for (key, value) in self.to_pairs() {
            s.push_str(key);
            s.push_str(" = ");
            s.push_str(&value);
            s.push('\n');
        }
        s
    }

    /// The pairs that determine a job's per-generation search trajectory.
    ///
    /// Batching and scheduling keys (`num_jobs`, `num_eval_threads`) and the
    /// stopping budgets (`max_generations`, `max_fitness_evaluations`,
    /// `checkpoint_interval`) are excluded: they decide how much of the
    /// trajectory runs and how it is evaluated, never what it is, so a
    /// checkpoint may legitimately be resumed under different values — in
    /// particular with an extended budget.
    pub fn fingerprint_pairs(&self) -> Vec<(&'static str, String)> {
        const NON_TRAJECTORY: [&str; 5] = [
            "num_jobs",
            "num_eval_threads",
            "max_generations",
            "max_fitness_evaluations",
            "checkpoint_interval",
        ];
        self.to_pairs()
            .into_iter()
            .filter(|(key, _)| !NON_TRAJECTORY.contains(key))
            .collect()
    }

    /// FNV-1a hash over the trajectory-determining pairs; used to match
    /// checkpoints against the configuration they were written under.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for (key, value) in self.fingerprint_pairs() {
            for byte in key.bytes().chain([b'=']).chain(value.bytes()).chain([b'\n']) {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

impl PartialEq for CgpParameters {
    fn eq(&self, other: &Self) -> bool {
        self.to_pairs() == other.to_pairs()
    }
}

/// Parses parameter-file text: `key = value` lines, `#` comments, blank lines.
pub fn parse_parameter_text(text: &str) -> Result<CgpParameters, ConfigError> {
    let mut params = CgpParameters::default();
    let mut seen: Vec<&'static str> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: idx + 1 })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(ConfigError::Syntax { line: idx + 1 });
        }
        params.set_key(key, value)?;
        if let Some(k) = PARAMETER_KEYS.iter().find(|&&k| k == key) {
            seen.push(k);
        }
    }
    for &req in REQUIRED_KEYS {
        if !seen.contains(&req) {
            return Err(ConfigError::MissingKey(req));
        }
    }
    params.validate()?;
    Ok(params)
}
