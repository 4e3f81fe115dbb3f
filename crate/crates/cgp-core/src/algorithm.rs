//! Evolutionary algorithms: the (1+lambda)-EA with neutral genetic drift and
//! a (mu+lambda)-EA for the recombination-based use of CGP.
//!
//! Neutral genetic drift extends plain elitist selection: offspring that are
//! strictly better than the parent are preferred (one chosen uniformly at
//! random), otherwise an equal-fitness offspring is chosen uniformly at
//! random, otherwise the parent is retained. The random walk over the
//! equal-fitness neighborhood is what lets the search escape local optima.
//!
//! Fitness is minimized throughout. Breeding and selection draw all their
//! randomness from the caller's rng; evaluation is delegated to an
//! [`Evaluator`] and must be deterministic, which keeps whole runs a pure
//! function of (seed, parameters, problem).

use alloc::vec::Vec;

use rand::Rng;

use crate::decoder::active_nodes;
use crate::function_set::FunctionSet;
use crate::genome::{Genotype, Layout};
use crate::params::{CgpParameters, CrossoverKind, ImprovingSelection};
use crate::variation::{block_crossover, discrete_crossover, MutationPipeline};

/// A genotype paired with its fitness; fitness is meaningful only after
/// evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genotype: Genotype,
    pub fitness: Option<f64>,
}

impl Individual {
    pub fn new(genotype: Genotype) -> Self {
        Self {
            genotype,
            fitness: None,
        }
    }

    pub fn fitness(&self) -> f64 {
        self.fitness.expect("individual evaluated")
    }
}

/// Ordered population; under (1+lambda) the parent is index 0, under
/// (mu+lambda) the parents are the first mu entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub individuals: Vec<Individual>,
    pub generation: u64,
}

impl Population {
    pub fn new(individuals: Vec<Individual>) -> Self {
        Self {
            individuals,
            generation: 0,
        }
    }

    /// Index of the best (lowest fitness) individual, lowest index on ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, ind) in self.individuals.iter().enumerate() {
            if ind.fitness() < self.individuals[best].fitness() {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Individual {
        &self.individuals[self.best_index()]
    }
}

/// Assigns fitness to every not-yet-evaluated individual in the slice.
/// Implementations must be deterministic in the genotypes alone.
pub trait Evaluator {
    fn evaluate(&mut self, individuals: &mut [Individual]);
}

/// Evaluator backed by a plain fitness function; used by tests and the
/// single-threaded path.
pub struct FnEvaluator<F: FnMut(&Genotype) -> f64>(pub F);

impl<F: FnMut(&Genotype) -> f64> Evaluator for FnEvaluator<F> {
    fn evaluate(&mut self, individuals: &mut [Individual]) {
        for ind in individuals.iter_mut() {
            if ind.fitness.is_none() {
                ind.fitness = Some((self.0)(&ind.genotype));
            }
        }
    }
}

/// Read-only bundle of the search configuration handed to the stepping
/// functions.
pub struct SearchContext<'a> {
    pub params: &'a CgpParameters,
    pub layout: &'a Layout,
    pub function_set: &'a FunctionSet,
    pub pipeline: &'a MutationPipeline,
}

/// Termination contract: stop at ideal fitness or when a budget runs out,
/// whichever happens first.
#[derive(Debug, Clone, PartialEq)]
pub struct Termination {
    pub ideal_fitness: f64,
    pub max_generations: Option<u64>,
    pub max_evaluations: Option<u64>,
}

impl Termination {
    pub fn from_params(params: &CgpParameters) -> Self {
        let bound = |v: u64| if v == 0 { None } else { Some(v) };
        Self {
            ideal_fitness: params.ideal_fitness,
            max_generations: bound(params.max_generations),
            max_evaluations: bound(params.max_fitness_evaluations),
        }
    }
}

/// Neutral-genetic-drift selection. Returns the index of the selected
/// offspring, or `None` when the parent is retained.
///
/// Strictly better offspring win first, one chosen uniformly at random
/// (or the best one under [`ImprovingSelection::Best`]); otherwise an
/// offspring within `epsilon * max(1, |parent fitness|)` of the parent is
/// chosen uniformly; otherwise the parent survives. With `epsilon = 0`
/// neutrality means exact fitness equality.
pub fn ngd_select<R: Rng>(
    parent: &Individual,
    offspring: &[Individual],
    epsilon: f64,
    improving: ImprovingSelection,
    rng: &mut R,
) -> Option<usize> {
    assert!(!offspring.is_empty(), "lambda must be at least 1");
    let pf = parent.fitness();
    let better: Vec<usize> = (0..offspring.len())
        .filter(|&i| offspring[i].fitness() < pf)
        .collect();
    if !better.is_empty() {
        return Some(match improving {
            ImprovingSelection::Uniform => better[rng.gen_range(0..better.len())],
            ImprovingSelection::Best => *better
                .iter()
                .min_by(|&&a, &&b| {
                    offspring[a]
                        .fitness()
                        .partial_cmp(&offspring[b].fitness())
                        .expect("finite fitness")
                })
                .expect("non-empty"),
        });
    }
    let tol = if epsilon == 0.0 {
        0.0
    } else {
        epsilon * pf.abs().max(1.0)
    };
    let equal: Vec<usize> = (0..offspring.len())
        .filter(|&i| (offspring[i].fitness() - pf).abs() <= tol)
        .collect();
    if !equal.is_empty() {
        return Some(equal[rng.gen_range(0..equal.len())]);
    }
    None
}

/// One generation of the (1+lambda)-EA: breed lambda offspring from the
/// parent by mutation, evaluate, select by neutral genetic drift. Returns the
/// number of fitness evaluations performed.
pub fn step_one_plus_lambda<E: Evaluator, R: Rng>(
    population: &mut Population,
    ctx: &SearchContext<'_>,
    evaluator: &mut E,
    rng: &mut R,
) -> u64 {
    let lambda = ctx.params.lambda;
    let parent = population.individuals[0].clone();
    let mut offspring: Vec<Individual> = (0..lambda)
        .map(|_| {
            Individual::new(
                ctx.pipeline
                    .apply(&parent.genotype, ctx.layout, ctx.function_set, rng),
            )
        })
        .collect();
    evaluator.evaluate(&mut offspring);

    let selected = ngd_select(
        &parent,
        &offspring,
        ctx.params.neutrality_epsilon(),
        ctx.params.improving_selection,
        rng,
    );
    let new_parent = match selected {
        Some(i) => offspring[i].clone(),
        None => parent,
    };
    population.individuals.clear();
    population.individuals.push(new_parent);
    population.individuals.extend(offspring);
    population.generation += 1;
    lambda as u64
}

/// One generation of the (mu+lambda)-EA: uniform parent selection, optional
/// crossover, mutation, then truncation survival over parents and offspring
/// with ties preferring offspring (and lower index among equals). Returns the
/// number of fitness evaluations performed.
pub fn step_mu_plus_lambda<E: Evaluator, R: Rng>(
    population: &mut Population,
    ctx: &SearchContext<'_>,
    evaluator: &mut E,
    rng: &mut R,
) -> u64 {
    let mu = ctx.params.mu;
    let lambda = ctx.params.lambda;
    assert!(population.individuals.len() >= mu, "mu parents required");
    let parents: Vec<Individual> = population.individuals[..mu].to_vec();

    let mut offspring: Vec<Individual> = Vec::with_capacity(lambda);
    for _ in 0..lambda {
        let a = rng.gen_range(0..mu);
        let b = rng.gen_range(0..mu);
        let recombined = if rng.gen::<f64>() < ctx.params.crossover_rate {
            match ctx.params.crossover {
                CrossoverKind::Discrete => discrete_crossover(
                    &parents[a].genotype,
                    &parents[b].genotype,
                    ctx.layout,
                    rng,
                )
                .expect("parents share parameters"),
                CrossoverKind::Block => {
                    block_crossover(
                        &parents[a].genotype,
                        &parents[b].genotype,
                        ctx.layout,
                        ctx.params.block_size,
                        rng,
                    )
                    .expect("parents share parameters")
                    .0
                }
            }
        } else {
            parents[a].genotype.clone()
        };
        offspring.push(Individual::new(ctx.pipeline.apply(
            &recombined,
            ctx.layout,
            ctx.function_set,
            rng,
        )));
    }
    evaluator.evaluate(&mut offspring);

    // (fitness, offspring-preferred, lower index) truncation order
    let mut order: Vec<(usize, bool)> = (0..offspring.len())
        .map(|i| (i, false))
        .chain((0..mu).map(|i| (i, true)))
        .collect();
    order.sort_by(|&(ia, pa), &(ib, pb)| {
        let fa = if pa { parents[ia].fitness() } else { offspring[ia].fitness() };
        let fb = if pb { parents[ib].fitness() } else { offspring[ib].fitness() };
        fa.partial_cmp(&fb)
            .expect("finite fitness")
            .then(pa.cmp(&pb))
            .then(ia.cmp(&ib))
    });
    let survivors: Vec<Individual> = order[..mu]
        .iter()
        .map(|&(i, is_parent)| {
            if is_parent {
                parents[i].clone()
            } else {
                offspring[i].clone()
            }
        })
        .collect();

    population.individuals.clear();
    population.individuals.extend(survivors);
    population.individuals.extend(offspring);
    population.generation += 1;
    lambda as u64
}

/// One per-generation report entry.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryEntry {
    pub generation: u64,
    pub best_fitness: f64,
    pub active_nodes: usize,
}

/// Outcome of a run: best-ever individual, budgets used, per-generation
/// best-fitness history.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best: Individual,
    pub generations: u64,
    pub evaluations: u64,
    pub history: Vec<HistoryEntry>,
}

fn history_entry(population: &Population, ctx: &SearchContext<'_>) -> HistoryEntry {
    let best = population.best();
    HistoryEntry {
        generation: population.generation,
        best_fitness: best.fitness(),
        active_nodes: active_nodes(&best.genotype, ctx.layout, ctx.function_set).len(),
    }
}

/// Runs the configured algorithm until the termination contract triggers.
///
/// `evaluations` carries the running fitness-evaluation counter (nonzero when
/// resuming); the initial population evaluation is not counted against it.
/// `record_initial` controls whether the starting state is emitted as a
/// history entry (true for fresh runs, false when resuming). The observer is
/// invoked after every recorded entry with the current population, entry and
/// evaluation counter.
pub fn run<E: Evaluator, R: Rng>(
    population: &mut Population,
    ctx: &SearchContext<'_>,
    evaluator: &mut E,
    rng: &mut R,
    termination: &Termination,
    mut evaluations: u64,
    record_initial: bool,
    mut observer: impl FnMut(&Population, &HistoryEntry, u64),
) -> RunResult {
    evaluator.evaluate(&mut population.individuals);
    let mut history = Vec::new();
    let mut best_ever = population.best().clone();
    if record_initial {
        let entry = history_entry(population, ctx);
        observer(population, &entry, evaluations);
        history.push(entry);
    }
    loop {
        if population.best().fitness() <= termination.ideal_fitness {
            break;
        }
        if let Some(max_g) = termination.max_generations {
            if population.generation >= max_g {
                break;
            }
        }
        if let Some(max_e) = termination.max_evaluations {
            if evaluations >= max_e {
                break;
            }
        }
        evaluations += match ctx.params.algorithm {
            crate::params::AlgorithmKind::OnePlusLambda => {
                step_one_plus_lambda(population, ctx, evaluator, rng)
            }
            crate::params::AlgorithmKind::MuPlusLambda => {
                step_mu_plus_lambda(population, ctx, evaluator, rng)
            }
        };
        let entry = history_entry(population, ctx);
        if entry.best_fitness < best_ever.fitness() {
            best_ever = population.best().clone();
        }
        observer(population, &entry, evaluations);
        history.push(entry);
    }
    RunResult {
        best: best_ever,
        generations: population.generation,
        evaluations,
        history,
    }
}
