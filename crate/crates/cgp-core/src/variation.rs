//! Mutation and crossover operators.
//!
//! Point mutation resamples genes within their valid set (excluding the
//! current value, so the rate semantics is exact). Inversion and duplication
//! act on the function genes of *active* nodes only, so they always change
//! phenotype-relevant material and never touch inactive genes. Crossover
//! recombines at node-group granularity, which keeps every offspring valid
//! without gene repair since positional bounds are parent-independent.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::decoder::active_nodes;
use crate::function_set::FunctionSet;
use crate::genome::{Genotype, Layout};
use crate::params::CgpParameters;

/// Variation-level failures.
#[derive(Debug, Clone, PartialEq)]
pub enum VariationError {
    /// Pipeline stage with an operator id that is not `point`, `inversion`
    /// or `duplication`.
    UnknownOperator { id: String },
    /// Pipeline stage that does not match `operator:rate[:max_segment]`.
    MalformedStage { stage: String },
    /// Crossover parents with different encodings or lengths.
    ParentMismatch,
    /// Block size outside `1..=n_rows*n_columns`.
    BlockSizeOutOfRange { block_size: usize, max: usize },
}

impl fmt::Display for VariationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnknownOperator { id } => write!(
                f,
                "unknown mutation operator \"{id}\" (valid: point, inversion, duplication)"
            ),
            Self::MalformedStage { stage } => write!(
                f,
                "malformed pipeline stage \"{stage}\" (expected operator:rate[:max_segment])"
            ),
            Self::ParentMismatch => write!(f, "crossover parents have mismatching parameters"),
            Self::BlockSizeOutOfRange { block_size, max } => {
                write!(f, "block size {block_size} outside 1..={max}")
            }
        }
    }
}

impl core::error::Error for VariationError {}

/// Resamples each gene independently with probability `rate` from its valid
/// set minus the current value; singleton sets leave the gene unchanged.
pub fn point_mutation<R: Rng>(
    genotype: &Genotype,
    layout: &Layout,
    rate: f64,
    rng: &mut R,
) -> Genotype {
    let mut out = genotype.clone();
    if rate <= 0.0 {
        return out;
    }
    match &mut out {
        Genotype::Integer(genes) => {
            for (pos, gene) in genes.iter_mut().enumerate() {
                if rng.gen::<f64>() < rate {
                    let bounds = layout.gene_bounds(pos).expect("valid position");
                    *gene = bounds.sample_excluding(rng, *gene);
                }
            }
        }
        Genotype::Real(genes) => {
            for gene in genes.iter_mut() {
                if rng.gen::<f64>() < rate {
                    *gene = rng.gen::<f64>();
                }
            }
        }
    }
    out
}

/// Function-gene positions of the active nodes, in evaluation order.
fn active_function_positions(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
) -> Vec<usize> {
    active_nodes(genotype, layout, function_set)
        .into_iter()
        .map(|node| layout.group_start(node - layout.n_terminals()))
        .collect()
}

fn read_genes(genotype: &Genotype, positions: &[usize]) -> Vec<GeneValue> {
    positions
        .iter()
        .map(|&p| match genotype {
            Genotype::Integer(g) => GeneValue::Integer(g[p]),
            Genotype::Real(g) => GeneValue::Real(g[p]),
        })
        .collect()
}

fn write_genes(genotype: &mut Genotype, positions: &[usize], values: &[GeneValue]) {
    for (&p, v) in positions.iter().zip(values) {
        match (&mut *genotype, v) {
            (Genotype::Integer(g), GeneValue::Integer(v)) => g[p] = *v,
            (Genotype::Real(g), GeneValue::Real(v)) => g[p] = *v,
            _ => unreachable!("gene value kind matches genotype kind"),
        }
    }
}

#[derive(Clone, Copy)]
enum GeneValue {
    Integer(usize),
    Real(f64),
}

/// With probability `rate`, reverses the function genes of a random
/// contiguous run of `2..=max_segment` active nodes. Identity when fewer
/// than two nodes are active.
pub fn inversion_mutation<R: Rng>(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    rate: f64,
    max_segment: usize,
    rng: &mut R,
) -> Genotype {
    let mut out = genotype.clone();
    if rate <= 0.0 || rng.gen::<f64>() >= rate {
        return out;
    }
    let positions = active_function_positions(genotype, layout, function_set);
    let active = positions.len();
    let k_max = max_segment.min(active);
    if k_max < 2 {
        return out;
    }
    let k = rng.gen_range(2..=k_max);
    let start = rng.gen_range(0..=active - k);
    let segment = &positions[start..start + k];
    let mut values = read_genes(genotype, segment);
    values.reverse();
    write_genes(&mut out, segment, &values);
    out
}

/// With probability `rate`, copies the function gene of a random active node
/// onto a run of `1..=max_segment` subsequent active nodes. Identity when
/// fewer than two nodes are active.
pub fn duplication_mutation<R: Rng>(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    rate: f64,
    max_segment: usize,
    rng: &mut R,
) -> Genotype {
    let mut out = genotype.clone();
    if rate <= 0.0 || rng.gen::<f64>() >= rate {
        return out;
    }
    let positions = active_function_positions(genotype, layout, function_set);
    let active = positions.len();
    if active < 2 || max_segment < 1 {
        return out;
    }
    let source = rng.gen_range(0..active - 1);
    let k = rng.gen_range(1..=max_segment.min(active - 1 - source));
    let value = read_genes(genotype, &positions[source..source + 1]);
    let targets = &positions[source + 1..source + 1 + k];
    let values: Vec<GeneValue> = core::iter::repeat(value[0]).take(targets.len()).collect();
    write_genes(&mut out, targets, &values);
    out
}

/// One stage of a mutation pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum MutationStage {
    Point { rate: f64 },
    Inversion { rate: f64, max_segment: usize },
    Duplication { rate: f64, max_segment: usize },
}

/// Ordered list of mutation operators, applied left to right to each
/// offspring.
#[derive(Debug, Clone, PartialEq)]
pub struct MutationPipeline {
    stages: Vec<MutationStage>,
}

impl MutationPipeline {
    pub fn new(stages: Vec<MutationStage>) -> Self {
        Self { stages }
    }

    pub fn stages(&self) -> &[MutationStage] {
        &self.stages
    }

    /// Parses `operator:rate[:max_segment]` stages separated by commas, e.g.
    /// `point:0.05, inversion:0.1:4, duplication:0.1:4`. Unknown operators
    /// fail here, never at apply time.
    pub fn from_spec(spec: &str) -> Result<Self, VariationError> {
        let mut stages = Vec::new();
        for part in spec.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let malformed = || VariationError::MalformedStage {
                stage: part.to_string(),
            };
            let rate: f64 = fields
                .get(1)
                .ok_or_else(malformed)?
                .parse()
                .map_err(|_| malformed())?;
            let segment = |default: usize| -> Result<usize, VariationError> {
                match fields.get(2) {
                    Some(s) => s.parse().map_err(|_| malformed()),
                    None => Ok(default),
                }
            };
            let stage = match fields[0] {
                "point" if fields.len() == 2 => MutationStage::Point { rate },
                "inversion" if fields.len() <= 3 => MutationStage::Inversion {
                    rate,
                    max_segment: segment(4)?,
                },
                "duplication" if fields.len() <= 3 => MutationStage::Duplication {
                    rate,
                    max_segment: segment(4)?,
                },
                "point" | "inversion" | "duplication" => return Err(malformed()),
                other => {
                    return Err(VariationError::UnknownOperator {
                        id: other.to_string(),
                    })
                }
            };
            stages.push(stage);
        }
        Ok(Self { stages })
    }

    /// Builds the pipeline for a parameter set: the explicit
    /// `mutation_pipeline` spec when present, otherwise point mutation plus
    /// any inversion/duplication stage with a nonzero rate.
    pub fn from_params(params: &CgpParameters) -> Result<Self, VariationError> {
        if let Some(spec) = &params.mutation_pipeline {
            return Self::from_spec(spec);
        }
        let mut stages = alloc::vec![MutationStage::Point {
            rate: params.point_mutation_rate,
        }];
        if params.inversion_rate > 0.0 {
            stages.push(MutationStage::Inversion {
                rate: params.inversion_rate,
                max_segment: params.inversion_max_segment,
            });
        }
        if params.duplication_rate > 0.0 {
            stages.push(MutationStage::Duplication {
                rate: params.duplication_rate,
                max_segment: params.duplication_max_segment,
            });
        }
        Ok(Self { stages })
    }

    /// Applies all stages in order; the output of stage `i` feeds stage `i+1`.
    pub fn apply<R: Rng>(
        &self,
        genotype: &Genotype,
        layout: &Layout,
        function_set: &FunctionSet,
        rng: &mut R,
    ) -> Genotype {
        let mut current = genotype.clone();
        for stage in &self.stages {
            current = match *stage {
                MutationStage::Point { rate } => point_mutation(&current, layout, rate, rng),
                MutationStage::Inversion { rate, max_segment } => {
                    inversion_mutation(&current, layout, function_set, rate, max_segment, rng)
                }
                MutationStage::Duplication { rate, max_segment } => {
                    duplication_mutation(&current, layout, function_set, rate, max_segment, rng)
                }
            };
        }
        current
    }
}

fn check_parents(a: &Genotype, b: &Genotype, layout: &Layout) -> Result<(), VariationError> {
    if a.kind() != b.kind()
        || a.len() != b.len()
        || a.len() != layout.genotype_length()
    {
        return Err(VariationError::ParentMismatch);
    }
    Ok(())
}

/// Per node group and per output gene, the offspring inherits the whole unit
/// from either parent with probability one half.
pub fn discrete_crossover<R: Rng>(
    parent_a: &Genotype,
    parent_b: &Genotype,
    layout: &Layout,
    rng: &mut R,
) -> Result<Genotype, VariationError> {
    check_parents(parent_a, parent_b, layout)?;
    fn recombine<T: Clone, R: Rng>(a: &[T], b: &[T], layout: &Layout, rng: &mut R) -> Vec<T> {
        let group = layout.group_size();
        let mut out = Vec::with_capacity(a.len());
        for ordinal in 0..layout.n_function_nodes() {
            let start = ordinal * group;
            let src = if rng.gen::<bool>() { a } else { b };
            out.extend_from_slice(&src[start..start + group]);
        }
        for k in 0..layout.n_outputs {
            let pos = layout.output_position(k);
            let src = if rng.gen::<bool>() { a } else { b };
            out.push(src[pos].clone());
        }
        out
    }
    Ok(match (parent_a, parent_b) {
        (Genotype::Integer(a), Genotype::Integer(b)) => {
            Genotype::Integer(recombine(a, b, layout, rng))
        }
        (Genotype::Real(a), Genotype::Real(b)) => Genotype::Real(recombine(a, b, layout, rng)),
        _ => unreachable!("kinds checked above"),
    })
}

/// Swaps one random contiguous run of `block_size` node groups between the
/// parents; all other genes, output genes included, stay with their parent.
pub fn block_crossover<R: Rng>(
    parent_a: &Genotype,
    parent_b: &Genotype,
    layout: &Layout,
    block_size: usize,
    rng: &mut R,
) -> Result<(Genotype, Genotype), VariationError> {
    check_parents(parent_a, parent_b, layout)?;
    let n_nodes = layout.n_function_nodes();
    if block_size < 1 || block_size > n_nodes {
        return Err(VariationError::BlockSizeOutOfRange {
            block_size,
            max: n_nodes,
        });
    }
    let start = rng.gen_range(0..=n_nodes - block_size);
    let group = layout.group_size();
    let lo = start * group;
    let hi = (start + block_size) * group;
    fn swapped<T: Clone>(a: &[T], b: &[T], lo: usize, hi: usize) -> (Vec<T>, Vec<T>) {
        let mut oa = a.to_vec();
        let mut ob = b.to_vec();
        oa[lo..hi].clone_from_slice(&b[lo..hi]);
        ob[lo..hi].clone_from_slice(&a[lo..hi]);
        (oa, ob)
    }
    Ok(match (parent_a, parent_b) {
        (Genotype::Integer(a), Genotype::Integer(b)) => {
            let (oa, ob) = swapped(a, b, lo, hi);
            (Genotype::Integer(oa), Genotype::Integer(ob))
        }
        (Genotype::Real(a), Genotype::Real(b)) => {
            let (oa, ob) = swapped(a, b, lo, hi);
            (Genotype::Real(oa), Genotype::Real(ob))
        }
        _ => unreachable!("kinds checked above"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::{random_genotype, validate};
    use crate::params::{CgpParameters, GenomeKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (CgpParameters, FunctionSet, Layout) {
        let mut p = CgpParameters::default();
        p.n_inputs = 2;
        p.n_outputs = 1;
        p.n_columns = 3;
        p.max_arity = 2;
        let fs = FunctionSet::boolean_default();
        let layout = Layout::new(&p, &fs);
        (p, fs, layout)
    }

    /// All three nodes active: node2 -> node3 -> node4 -> output.
    fn chain_genotype() -> Genotype {
        Genotype::Integer(alloc::vec![4, 0, 1, 5, 2, 0, 0, 3, 2, 4])
    }

    #[test]
    fn point_rate_zero_is_identity() {
        let (_, _, layout) = setup();
        let g = chain_genotype();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(point_mutation(&g, &layout, 0.0, &mut rng), g);
    }

    #[test]
    fn point_rate_one_changes_every_multi_valued_gene() {
        let (_, _, layout) = setup();
        let g = chain_genotype();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mutated = point_mutation(&g, &layout, 1.0, &mut rng);
        let (Genotype::Integer(before), Genotype::Integer(after)) = (&g, &mutated) else {
            unreachable!()
        };
        for (pos, (b, a)) in before.iter().zip(after).enumerate() {
            if layout.gene_bounds(pos).unwrap().len() >= 2 {
                assert_ne!(b, a, "gene {pos} unchanged");
            }
        }
        assert!(validate(&mutated, &layout).is_empty());
    }

    #[test]
    fn point_mutation_binomial_statistics() {
        let mut p = CgpParameters::default();
        p.n_inputs = 4;
        p.n_outputs = 2;
        p.n_columns = 166; // genotype length 166*3 + 2 = 500
        p.max_arity = 2;
        let fs = FunctionSet::boolean_default();
        let layout = Layout::new(&p, &fs);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_genotype(&layout, GenomeKind::Integer, &mut rng);
        let mut total_changed = 0usize;
        let trials = 2000;
        for _ in 0..trials {
            let m = point_mutation(&g, &layout, 0.1, &mut rng);
            let (Genotype::Integer(a), Genotype::Integer(b)) = (&g, &m) else {
                unreachable!()
            };
            total_changed += a.iter().zip(b).filter(|(x, y)| x != y).count();
        }
        // every position has at least two valid values here, so the mean
        // changed-gene count is binomial(500, 0.1)
        let mean = total_changed as f64 / trials as f64;
        assert!((mean - 50.0).abs() < 2.5, "mean changed genes {mean}");
    }

    #[test]
    fn inversion_reverses_active_function_genes() {
        let (_, fs, layout) = setup();
        let g = chain_genotype(); // active function genes [4, 5, 0]
        // force rate 1 and segment covering all three nodes
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen_full_reversal = false;
        for _ in 0..200 {
            let m = inversion_mutation(&g, &layout, &fs, 1.0, 3, &mut rng);
            let Genotype::Integer(after) = &m else { unreachable!() };
            assert!(validate(&m, &layout).is_empty());
            // connection and output genes untouched
            let Genotype::Integer(before) = &g else { unreachable!() };
            for pos in 0..before.len() {
                if ![0usize, 3, 6].contains(&pos) {
                    assert_eq!(before[pos], after[pos]);
                }
            }
            if after[0] == 0 && after[3] == 5 && after[6] == 4 {
                seen_full_reversal = true;
            }
        }
        assert!(seen_full_reversal);
    }

    #[test]
    fn inversion_identity_without_active_nodes() {
        let (_, fs, layout) = setup();
        let mut genes = match chain_genotype() {
            Genotype::Integer(g) => g,
            _ => unreachable!(),
        };
        genes[9] = 0; // output to an input: no active nodes
        let g = Genotype::Integer(genes);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(inversion_mutation(&g, &layout, &fs, 1.0, 3, &mut rng), g);
    }

    #[test]
    fn duplication_copies_source_function_gene() {
        let (_, fs, layout) = setup();
        let g = chain_genotype(); // active function genes [4, 5, 0]
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut seen_full_copy = false;
        for _ in 0..200 {
            let m = duplication_mutation(&g, &layout, &fs, 1.0, 2, &mut rng);
            let Genotype::Integer(after) = &m else { unreachable!() };
            assert!(validate(&m, &layout).is_empty());
            if after[0] == 4 && after[3] == 4 && after[6] == 4 {
                seen_full_copy = true; // source node 0, k = 2
            }
        }
        assert!(seen_full_copy);
    }

    #[test]
    fn pipeline_spec_parsing() {
        let p = MutationPipeline::from_spec("point:0.05, inversion:0.1:4, duplication:0.2:3").unwrap();
        assert_eq!(
            p.stages(),
            &[
                MutationStage::Point { rate: 0.05 },
                MutationStage::Inversion { rate: 0.1, max_segment: 4 },
                MutationStage::Duplication { rate: 0.2, max_segment: 3 },
            ]
        );
        assert!(matches!(
            MutationPipeline::from_spec("swizzle:0.5"),
            Err(VariationError::UnknownOperator { .. })
        ));
        assert!(matches!(
            MutationPipeline::from_spec("point:abc"),
            Err(VariationError::MalformedStage { .. })
        ));
    }

    #[test]
    fn single_stage_pipeline_equals_bare_operator() {
        let (_, fs, layout) = setup();
        let g = chain_genotype();
        let pipeline = MutationPipeline::new(alloc::vec![MutationStage::Point { rate: 1.0 }]);
        let a = pipeline.apply(&g, &layout, &fs, &mut ChaCha8Rng::seed_from_u64(7));
        let b = point_mutation(&g, &layout, 1.0, &mut ChaCha8Rng::seed_from_u64(7));
        assert_eq!(a, b);
    }

    #[test]
    fn all_zero_rates_pipeline_is_identity() {
        let (_, fs, layout) = setup();
        let g = chain_genotype();
        let pipeline = MutationPipeline::from_spec("point:0, inversion:0:4, duplication:0:4").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        assert_eq!(pipeline.apply(&g, &layout, &fs, &mut rng), g);
    }

    #[test]
    fn stage_order_matters() {
        let (_, fs, layout) = setup();
        let g = chain_genotype();
        let ab = MutationPipeline::from_spec("inversion:1:3, point:1").unwrap();
        let ba = MutationPipeline::from_spec("point:1, inversion:1:3").unwrap();
        let x = ab.apply(&g, &layout, &fs, &mut ChaCha8Rng::seed_from_u64(123));
        let y = ba.apply(&g, &layout, &fs, &mut ChaCha8Rng::seed_from_u64(123));
        assert_ne!(x, y);
    }

    #[test]
    fn discrete_crossover_on_equal_parents_is_identity() {
        let (_, _, layout) = setup();
        let g = chain_genotype();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(discrete_crossover(&g, &g, &layout, &mut rng).unwrap(), g);
    }

    #[test]
    fn discrete_crossover_inheritance_is_balanced() {
        let (_, _, layout) = setup();
        let a = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        let b = Genotype::Integer(alloc::vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut from_a = [0usize; 4]; // 3 node groups + 1 output gene
        let trials = 10_000;
        for _ in 0..trials {
            let o = discrete_crossover(&a, &b, &layout, &mut rng).unwrap();
            let Genotype::Integer(genes) = &o else { unreachable!() };
            for unit in 0..3 {
                // units are inherited whole
                assert!(genes[unit * 3..unit * 3 + 3].iter().all(|&g| g == genes[unit * 3]));
                if genes[unit * 3] == 0 {
                    from_a[unit] += 1;
                }
            }
            if genes[9] == 0 {
                from_a[3] += 1;
            }
        }
        for count in from_a {
            let freq = count as f64 / trials as f64;
            assert!((freq - 0.5).abs() < 0.02, "inheritance frequency {freq}");
        }
    }

    #[test]
    fn crossover_rejects_mismatched_parents() {
        let (_, _, layout) = setup();
        let a = chain_genotype();
        let b = Genotype::Real(alloc::vec![0.5; 10]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert_eq!(
            discrete_crossover(&a, &b, &layout, &mut rng),
            Err(VariationError::ParentMismatch)
        );
    }

    #[test]
    fn block_crossover_full_swap() {
        let (_, _, layout) = setup();
        let a = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 4]);
        let b = Genotype::Integer(alloc::vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 4]);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (oa, ob) = block_crossover(&a, &b, &layout, 3, &mut rng).unwrap();
        assert_eq!(oa, Genotype::Integer(alloc::vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 4]));
        assert_eq!(ob, Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 4]));
    }

    #[test]
    fn block_crossover_size_one_changes_one_group() {
        let (_, _, layout) = setup();
        let a = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 2]);
        let b = Genotype::Integer(alloc::vec![1, 1, 1, 1, 1, 1, 1, 1, 1, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let (oa, ob) = block_crossover(&a, &b, &layout, 1, &mut rng).unwrap();
        let Genotype::Integer(ga) = &oa else { unreachable!() };
        let Genotype::Integer(gb) = &ob else { unreachable!() };
        let changed_a = (0..3).filter(|&u| ga[u * 3] == 1).count();
        let changed_b = (0..3).filter(|&u| gb[u * 3] == 0).count();
        assert_eq!(changed_a, 1);
        assert_eq!(changed_b, 1);
        assert_eq!(ga[9], 2); // output genes stay with their parent
        assert_eq!(gb[9], 3);
    }

    #[test]
    fn block_crossover_rejects_oversized_block() {
        let (_, _, layout) = setup();
        let g = chain_genotype();
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        assert!(matches!(
            block_crossover(&g, &g, &layout, 4, &mut rng),
            Err(VariationError::BlockSizeOutOfRange { .. })
        ));
    }

    #[test]
    fn operators_are_deterministic() {
        let (_, fs, layout) = setup();
        let g = chain_genotype();
        let pipeline = MutationPipeline::from_spec("point:0.3, inversion:0.5:3, duplication:0.5:3").unwrap();
        let a = pipeline.apply(&g, &layout, &fs, &mut ChaCha8Rng::seed_from_u64(77));
        let b = pipeline.apply(&g, &layout, &fs, &mut ChaCha8Rng::seed_from_u64(77));
        assert_eq!(a, b);
    }
}
