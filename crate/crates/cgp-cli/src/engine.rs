//! Job orchestration: composite construction, chunked concurrent evaluation,
//! checkpointed runs, resume, and multi-job aggregation.
//!
//! All randomness lives on the coordinating thread: breeding, selection and
//! checkpointing never run concurrently, and evaluation workers receive only
//! deterministic work (a deep-cloned problem plus disjoint individuals), so
//! results are bit-identical for any thread count.

use std::path::{Path, PathBuf};

use cgp_core::algorithm::{
    run, Evaluator, HistoryEntry, Individual, Population, SearchContext, Termination,
};
use cgp_core::checkpoint::{diff_params, Checkpoint, RngState};
use cgp_core::decoder::decode_expression;
use cgp_core::function_set::{generate_erc, FunctionSet, TerminalConstants};
use cgp_core::genome::{random_genotype, Layout};
use cgp_core::params::{AlgorithmKind, CgpParameters, ConfigError, GenomeKind, ProblemKind};
use cgp_core::problems::{generate_sr_dataset, Problem};
use cgp_core::variation::MutationPipeline;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::io;

/// Failures surfaced by the engine and the file layer.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("checkpoint does not match the current configuration:\n  {}", diff.join("\n  "))]
    CheckpointMismatch { diff: Vec<String> },
    #[error("{0}")]
    Pipeline(String),
}

impl EngineError {
    /// Process exit code: 1 for configuration problems, 2 for runtime
    /// failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::CheckpointMismatch { .. } | Self::Pipeline(_) => 1,
            Self::Parse { .. } | Self::Io { .. } => 2,
        }
    }
}

/// Fork-join evaluator: splits the individuals into `threads` contiguous
/// chunks (sizes differing by at most one, longer chunks first), gives each
/// worker a deep-cloned problem, and joins all workers before returning.
pub struct ParallelEvaluator {
    pub problem: Problem,
    pub layout: Layout,
    pub function_set: FunctionSet,
    pub constants: TerminalConstants,
    pub threads: usize,
}

fn evaluate_chunk(
    problem: &Problem,
    layout: &Layout,
    function_set: &FunctionSet,
    constants: &TerminalConstants,
    chunk: &mut [Individual],
) {
    for ind in chunk {
        if ind.fitness.is_none() {
            ind.fitness = Some(problem.fitness(&ind.genotype, layout, function_set, constants));
        }
    }
}

/// Chunk sizes for `n` items over `t` workers: `n/t` each, with the first
/// `n mod t` chunks one longer (5 items, 4 workers: 2,1,1,1).
pub fn chunk_sizes(n: usize, t: usize) -> Vec<usize> {
    let t = t.min(n).max(1);
    (0..t).map(|i| n / t + usize::from(i < n % t)).collect()
}

impl Evaluator for ParallelEvaluator {
    fn evaluate(&mut self, individuals: &mut [Individual]) {
        if individuals.iter().all(|i| i.fitness.is_some()) {
            return;
        }
        if self.threads <= 1 || individuals.len() <= 1 {
            evaluate_chunk(
                &self.problem,
                &self.layout,
                &self.function_set,
                &self.constants,
                individuals,
            );
            return;
        }
        let sizes = chunk_sizes(individuals.len(), self.threads);
        std::thread::scope(|scope| {
            let mut rest = &mut *individuals;
            for size in sizes {
                let (chunk, tail) = rest.split_at_mut(size);
                rest = tail;
                let problem = self.problem.deep_clone();
                let (layout, function_set, constants) =
                    (&self.layout, &self.function_set, &self.constants);
                scope.spawn(move || {
                    evaluate_chunk(&problem, layout, function_set, constants, chunk)
                });
            }
        });
    }
}

/// Everything one job owns: configuration, problem, operators, population,
/// and the single rng that makes all stochastic decisions.
pub struct Composite {
    pub params: CgpParameters,
    pub function_set: FunctionSet,
    pub constants: TerminalConstants,
    pub problem: Problem,
    pub layout: Layout,
    pub pipeline: MutationPipeline,
    pub population: Population,
    pub rng: ChaCha8Rng,
    pub evaluations: u64,
    pub job_index: usize,
    resumed: bool,
}

fn build_problem(params: &CgpParameters) -> Result<Problem, EngineError> {
    match params.problem {
        ProblemKind::LogicSynthesis => {
            let path = params.plu_file.as_ref().ok_or(ConfigError::MissingKey("plu_file"))?;
            let table = io::read_plu(Path::new(path))?;
            Ok(Problem::LogicSynthesis(table))
        }
        ProblemKind::SymbolicRegression => {
            let name = params
                .benchmark
                .as_ref()
                .ok_or(ConfigError::MissingKey("benchmark"))?;
            // dataset depends on the base seed only, so every job of a batch
            // (and every resume) solves the same problem instance
            let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
            Ok(Problem::SymbolicRegression(generate_sr_dataset(
                name, &mut rng,
            )?))
        }
    }
}

fn build_function_set(params: &CgpParameters) -> Result<FunctionSet, EngineError> {
    let fs = match params.problem {
        ProblemKind::LogicSynthesis => FunctionSet::boolean_default(),
        ProblemKind::SymbolicRegression => FunctionSet::sr_default(),
    };
    fs.check_arity(params.max_arity)?;
    if params.problem == ProblemKind::LogicSynthesis {
        if !fs.is_bitwise_capable() {
            return Err(ConfigError::OutOfRange {
                key: "problem".into(),
                requirement: "a bitwise-capable function set for logic synthesis".into(),
            }
            .into());
        }
        if params.num_constants > 0 {
            return Err(ConfigError::OutOfRange {
                key: "num_constants".into(),
                requirement: "0 under logic synthesis (terminals are inputs only)".into(),
            }
            .into());
        }
    }
    Ok(fs)
}

fn check_problem_shape(params: &CgpParameters, problem: &Problem) -> Result<(), EngineError> {
    if params.n_inputs != problem.n_inputs() {
        return Err(ConfigError::OutOfRange {
            key: "n_inputs".into(),
            requirement: format!("= {} (the problem's input count)", problem.n_inputs()),
        }
        .into());
    }
    if params.n_outputs != problem.n_outputs() {
        return Err(ConfigError::OutOfRange {
            key: "n_outputs".into(),
            requirement: format!("= {} (the problem's output count)", problem.n_outputs()),
        }
        .into());
    }
    Ok(())
}

fn population_size(params: &CgpParameters) -> usize {
    match params.algorithm {
        AlgorithmKind::OnePlusLambda => 1 + params.lambda,
        AlgorithmKind::MuPlusLambda => params.mu + params.lambda,
    }
}

impl Composite {
    /// Builds a fresh job: problem and sets from the parameters, rng seeded
    /// with `seed + job_index`, ERC constants drawn first, then the random
    /// initial population (unevaluated).
    pub fn initialize(params: &CgpParameters, job_index: usize) -> Result<Self, EngineError> {
        params.validate()?;
        let problem = build_problem(params)?;
        let function_set = build_function_set(params)?;
        check_problem_shape(params, &problem)?;
        let layout = Layout::new(params, &function_set);
        let pipeline =
            MutationPipeline::from_params(params).map_err(|e| EngineError::Pipeline(e.to_string()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed.wrapping_add(job_index as u64));
        let constants = generate_erc(params.num_constants, params.constant_range, &mut rng)?;
        let individuals = (0..population_size(params))
            .map(|_| Individual::new(random_genotype(&layout, params.genome_kind, &mut rng)))
            .collect();
        Ok(Self {
            params: params.clone(),
            function_set,
            constants,
            problem,
            layout,
            pipeline,
            population: Population::new(individuals),
            rng,
            evaluations: 0,
            job_index,
            resumed: false,
        })
    }

    /// Rebuilds a job from a checkpoint. The parameters must fingerprint-match
    /// the ones the checkpoint was written under; on mismatch the refusal
    /// carries a per-key diff.
    pub fn resume(params: &CgpParameters, checkpoint: &Checkpoint) -> Result<Self, EngineError> {
        params.validate()?;
        if checkpoint.fingerprint != params.fingerprint() {
            let current: Vec<(String, String)> = params
                .fingerprint_pairs()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect();
            let mut diff = diff_params(&checkpoint.params, &current);
            if diff.is_empty() {
                diff.push(format!(
                    "fingerprint: checkpoint={:016x} current={:016x}",
                    checkpoint.fingerprint,
                    params.fingerprint()
                ));
            }
            return Err(EngineError::CheckpointMismatch { diff });
        }
        let problem = build_problem(params)?;
        let function_set = build_function_set(params)?;
        check_problem_shape(params, &problem)?;
        let layout = Layout::new(params, &function_set);
        let pipeline =
            MutationPipeline::from_params(params).map_err(|e| EngineError::Pipeline(e.to_string()))?;
        let mut population = Population::new(
            checkpoint
                .genomes
                .iter()
                .map(|g| Individual::new(g.clone()))
                .collect(),
        );
        population.generation = checkpoint.generation;
        Ok(Self {
            params: params.clone(),
            function_set,
            constants: TerminalConstants {
                values: checkpoint.constants.clone(),
            },
            problem,
            layout,
            pipeline,
            population,
            rng: checkpoint.rng.restore(),
            evaluations: checkpoint.evaluations,
            job_index: checkpoint.job_index,
            resumed: true,
        })
    }

    fn snapshot(&self) -> Checkpoint {
        Checkpoint {
            fingerprint: self.params.fingerprint(),
            job_index: self.job_index,
            params: self
                .params
                .fingerprint_pairs()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            rng: RngState::capture(&self.rng),
            generation: self.population.generation,
            evaluations: self.evaluations,
            constants: self.constants.values.clone(),
            genomes: self
                .population
                .individuals
                .iter()
                .map(|i| i.genotype.clone())
                .collect(),
        }
    }

    fn write_checkpoint(&self, output_dir: &Path) {
        let path = io::checkpoint_path(output_dir, self.job_index);
        if let Err(e) = crate::io::write_atomic(&path, &self.snapshot().encode()) {
            // checkpointing must never kill a run
            eprintln!("warning: could not write checkpoint {}: {e}", path.display());
        }
    }

    /// Runs the job to termination, emitting one report line per generation
    /// and a checkpoint every `checkpoint_interval` generations (and at job
    /// end) when an output directory is given.
    pub fn run_job(
        &mut self,
        output_dir: Option<&Path>,
        mut report: impl FnMut(&str),
    ) -> JobOutcome {
        let base = Termination::from_params(&self.params);
        // a symbolic-regression run is solved at its hit threshold even when
        // exact interpolation (ideal 0) is unreachable
        let ideal = base.ideal_fitness.max(self.problem.success_threshold());
        let interval = self.params.checkpoint_interval;

        let mut evaluator = ParallelEvaluator {
            problem: self.problem.deep_clone(),
            layout: self.layout.clone(),
            function_set: self.function_set.clone(),
            constants: self.constants.clone(),
            threads: self.params.num_eval_threads,
        };
        let mut history: Vec<HistoryEntry> = Vec::new();
        let mut best: Option<Individual> = None;
        let mut record_initial = !self.resumed;
        loop {
            let segment_end = if interval == 0 {
                base.max_generations
            } else {
                let next = (self.population.generation / interval + 1) * interval;
                Some(match base.max_generations {
                    Some(max) => next.min(max),
                    None => next,
                })
            };
            let ctx = SearchContext {
                params: &self.params,
                layout: &self.layout,
                function_set: &self.function_set,
                pipeline: &self.pipeline,
            };
            let termination = Termination {
                ideal_fitness: ideal,
                max_generations: segment_end,
                max_evaluations: base.max_evaluations,
            };
            let job = self.job_index;
            let result = run(
                &mut self.population,
                &ctx,
                &mut evaluator,
                &mut self.rng,
                &termination,
                self.evaluations,
                record_initial,
                |_, entry, evals| {
                    report(&format!(
                        "job={job} gen={} evals={evals} best={} active={}",
                        entry.generation, entry.best_fitness, entry.active_nodes
                    ));
                },
            );
            record_initial = false;
            self.evaluations = result.evaluations;
            history.extend(result.history);
            let better = match &best {
                Some(b) => result.best.fitness() < b.fitness(),
                None => true,
            };
            if better {
                best = Some(result.best);
            }
            let solved = best.as_ref().expect("one segment ran").fitness() <= ideal;
            let out_of_generations = base
                .max_generations
                .is_some_and(|m| self.population.generation >= m);
            let out_of_evaluations = base
                .max_evaluations
                .is_some_and(|m| self.evaluations >= m);
            let done = solved || out_of_generations || out_of_evaluations;
            if let Some(dir) = output_dir {
                self.write_checkpoint(dir);
            }
            if done {
                break;
            }
        }

        let best = best.expect("at least one segment ran");
        let outcome = JobOutcome {
            job_index: self.job_index,
            solved: best.fitness() <= ideal,
            expressions: decode_expression(&best.genotype, &self.layout, &self.function_set),
            best,
            generations: self.population.generation,
            evaluations: self.evaluations,
            history,
            final_rng: RngState::capture(&self.rng),
        };
        if let Some(dir) = output_dir {
            let path = io::result_path(dir, self.job_index);
            if let Err(e) = crate::io::write_atomic(&path, &outcome.result_text()) {
                eprintln!("warning: could not write result {}: {e}", path.display());
            }
        }
        outcome
    }
}

/// Outcome of one finished job.
#[derive(Debug, Clone, PartialEq)]
pub struct JobOutcome {
    pub job_index: usize,
    pub best: Individual,
    pub solved: bool,
    pub expressions: Vec<String>,
    pub generations: u64,
    pub evaluations: u64,
    pub history: Vec<HistoryEntry>,
    pub final_rng: RngState,
}

impl JobOutcome {
    /// Text of the per-job result file: best fitness, evaluations used, and
    /// the best phenotype as expressions.
    pub fn result_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("job {}\n", self.job_index));
        out.push_str(&format!("fitness {}\n", self.best.fitness()));
        out.push_str(&format!("evaluations {}\n", self.evaluations));
        out.push_str(&format!("generations {}\n", self.generations));
        out.push_str(&format!("solved {}\n", self.solved));
        for expr in &self.expressions {
            out.push_str(&format!("expression {expr}\n"));
        }
        out
    }
}

/// Aggregate over a batch of jobs.
#[derive(Debug)]
pub struct Summary {
    pub outcomes: Vec<Result<JobOutcome, EngineError>>,
    pub solved: usize,
    /// Median evaluations used among solved jobs; `None` when none solved.
    pub median_evaluations_to_success: Option<f64>,
}

impl Summary {
    pub fn line(&self) -> String {
        let median = match self.median_evaluations_to_success {
            Some(m) => m.to_string(),
            None => "n/a".to_string(),
        };
        format!(
            "jobs={} solved={} median_evals_to_success={median}",
            self.outcomes.len(),
            self.solved
        )
    }
}

/// Runs `num_jobs` consecutive jobs; job `i` uses seed `seed + i`. A failing
/// job is recorded and the remaining jobs proceed.
pub fn run_jobs(
    params: &CgpParameters,
    output_dir: Option<&Path>,
    mut report: impl FnMut(&str),
) -> Summary {
    let mut outcomes = Vec::with_capacity(params.num_jobs);
    for job in 0..params.num_jobs {
        let outcome = Composite::initialize(params, job)
            .map(|mut composite| composite.run_job(output_dir, &mut report));
        outcomes.push(outcome);
    }
    summarize(outcomes)
}

fn summarize(outcomes: Vec<Result<JobOutcome, EngineError>>) -> Summary {
    let mut solved_evals: Vec<u64> = outcomes
        .iter()
        .filter_map(|o| o.as_ref().ok())
        .filter(|o| o.solved)
        .map(|o| o.evaluations)
        .collect();
    solved_evals.sort_unstable();
    let median = match solved_evals.len() {
        0 => None,
        n if n % 2 == 1 => Some(solved_evals[n / 2] as f64),
        n => Some((solved_evals[n / 2 - 1] + solved_evals[n / 2]) as f64 / 2.0),
    };
    Summary {
        solved: solved_evals.len(),
        median_evaluations_to_success: median,
        outcomes,
    }
}

/// Loads and decodes a checkpoint file.
pub fn load_checkpoint(path: &Path, kind: GenomeKind) -> Result<Checkpoint, EngineError> {
    let text = std::fs::read_to_string(path).map_err(|source| EngineError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Checkpoint::decode(&text, kind).map_err(|e| EngineError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
