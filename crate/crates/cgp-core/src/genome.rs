//! Genotype representation and gene bounds.
//!
//! A genotype is a fixed-length gene vector: `n_rows * n_columns` node groups
//! of one function gene plus `max_arity` connection genes, followed by
//! `n_outputs` output genes. Node indexing is column-major: terminals occupy
//! indices `0..n_terminals` (primary inputs first, then ERC constants) and the
//! function node in row `r`, column `c` has index
//! `n_terminals + c * n_rows + r`.
//!
//! The real-valued encoding stores every gene as a real in `[0,1)`; it is
//! discretized gene-wise onto the ordered valid set of the gene's position
//! before decoding, and is otherwise treated identically to the integer
//! encoding.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::function_set::FunctionSet;
use crate::params::{CgpParameters, GenomeKind};

/// Role of a gene position within the genotype.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneKind {
    Function,
    Connection,
    Output,
}

/// Structural view of a parameter set: everything needed to interpret gene
/// positions, independent of any concrete genotype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub n_inputs: usize,
    pub n_constants: usize,
    pub n_rows: usize,
    pub n_columns: usize,
    pub max_arity: usize,
    pub n_outputs: usize,
    pub levels_back: usize,
    pub function_count: usize,
}

impl Layout {
    pub fn new(params: &CgpParameters, function_set: &FunctionSet) -> Self {
        Self {
            n_inputs: params.n_inputs,
            n_constants: params.num_constants,
            n_rows: params.n_rows,
            n_columns: params.n_columns,
            max_arity: params.max_arity,
            n_outputs: params.n_outputs,
            levels_back: params.levels_back(),
            function_count: function_set.len(),
        }
    }

    /// Terminals: primary inputs plus ERC constants.
    pub fn n_terminals(&self) -> usize {
        self.n_inputs + self.n_constants
    }

    pub fn n_function_nodes(&self) -> usize {
        self.n_rows * self.n_columns
    }

    /// Total node count: terminals plus function nodes.
    pub fn node_total(&self) -> usize {
        self.n_terminals() + self.n_function_nodes()
    }

    /// Genes per node group: one function gene plus `max_arity` connections.
    pub fn group_size(&self) -> usize {
        self.max_arity + 1
    }

    pub fn genotype_length(&self) -> usize {
        self.n_function_nodes() * self.group_size() + self.n_outputs
    }

    /// Node index of the function node with the given group ordinal.
    pub fn node_index(&self, ordinal: usize) -> usize {
        self.n_terminals() + ordinal
    }

    /// Gene position of the function gene of the given group ordinal.
    pub fn group_start(&self, ordinal: usize) -> usize {
        ordinal * self.group_size()
    }

    /// Gene position of output gene `k`.
    pub fn output_position(&self, k: usize) -> usize {
        self.n_function_nodes() * self.group_size() + k
    }

    /// Column of the function node with the given group ordinal.
    pub fn column_of(&self, ordinal: usize) -> usize {
        ordinal / self.n_rows
    }

    pub fn classify(&self, position: usize) -> Option<GenePos> {
        let node_genes = self.n_function_nodes() * self.group_size();
        if position < node_genes {
            let ordinal = position / self.group_size();
            let within = position % self.group_size();
            Some(GenePos {
                kind: if within == 0 {
                    GeneKind::Function
                } else {
                    GeneKind::Connection
                },
                node_ordinal: ordinal,
                column: self.column_of(ordinal),
            })
        } else if position < self.genotype_length() {
            Some(GenePos {
                kind: GeneKind::Output,
                node_ordinal: position - node_genes,
                column: self.n_columns,
            })
        } else {
            None
        }
    }

    /// The ordered set of valid integer values for a gene position.
    ///
    /// Function genes index the function set. Connection genes of a node in
    /// column `c` may reference every terminal plus the function nodes of
    /// columns `max(0, c - levels_back) .. c`. Output genes may reference any
    /// node, terminals included.
    pub fn gene_bounds(&self, position: usize) -> Result<GeneBounds, GenomeError> {
        let pos = self
            .classify(position)
            .ok_or(GenomeError::PositionOutOfRange { position })?;
        Ok(match pos.kind {
            GeneKind::Function => GeneBounds::contiguous(GeneKind::Function, 0, self.function_count),
            GeneKind::Connection => {
                let c = pos.column;
                let c_min = c.saturating_sub(self.levels_back);
                let fn_start = self.n_terminals() + c_min * self.n_rows;
                let fn_len = (c - c_min) * self.n_rows;
                GeneBounds::two_segments(
                    GeneKind::Connection,
                    (0, self.n_terminals()),
                    (fn_start, fn_len),
                )
            }
            GeneKind::Output => GeneBounds::contiguous(GeneKind::Output, 0, self.node_total()),
        })
    }
}

/// Classification of a gene position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenePos {
    pub kind: GeneKind,
    /// Group ordinal for function/connection genes, output index for outputs.
    pub node_ordinal: usize,
    pub column: usize,
}

/// Ordered set of valid integer gene values, stored as at most two
/// contiguous runs (terminals and reachable function nodes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneBounds {
    pub kind: GeneKind,
    segs: [(usize, usize); 2],
    n_segs: usize,
}

impl GeneBounds {
    fn contiguous(kind: GeneKind, start: usize, len: usize) -> Self {
        Self {
            kind,
            segs: [(start, len), (0, 0)],
            n_segs: 1,
        }
    }

    fn two_segments(kind: GeneKind, a: (usize, usize), b: (usize, usize)) -> Self {
        if b.1 == 0 {
            Self::contiguous(kind, a.0, a.1)
        } else if a.0 + a.1 == b.0 {
            Self::contiguous(kind, a.0, a.1 + b.1)
        } else {
            Self {
                kind,
                segs: [a, b],
                n_segs: 2,
            }
        }
    }

    pub fn len(&self) -> usize {
        self.segs[..self.n_segs].iter().map(|&(_, l)| l).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `k`-th element of the ordered valid set.
    pub fn nth(&self, k: usize) -> usize {
        let mut k = k;
        for &(start, len) in &self.segs[..self.n_segs] {
            if k < len {
                return start + k;
            }
            k -= len;
        }
        panic!("gene bounds index {k} out of range");
    }

    pub fn contains(&self, value: usize) -> bool {
        self.segs[..self.n_segs]
            .iter()
            .any(|&(start, len)| value >= start && value < start + len)
    }

    /// Rank of `value` within the ordered valid set.
    pub fn index_of(&self, value: usize) -> Option<usize> {
        let mut offset = 0;
        for &(start, len) in &self.segs[..self.n_segs] {
            if value >= start && value < start + len {
                return Some(offset + value - start);
            }
            offset += len;
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.segs[..self.n_segs]
            .iter()
            .flat_map(|&(start, len)| start..start + len)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Uniform draw from the valid set.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        self.nth(rng.gen_range(0..self.len()))
    }

    /// Uniform draw from the valid set minus `current`. Returns `current`
    /// unchanged when it is the only member.
    pub fn sample_excluding<R: Rng>(&self, rng: &mut R, current: usize) -> usize {
        match self.index_of(current) {
            Some(idx) if self.len() > 1 => {
                let k = rng.gen_range(0..self.len() - 1);
                self.nth(if k >= idx { k + 1 } else { k })
            }
            Some(_) => current,
            None => self.sample(rng),
        }
    }
}

/// Fixed-length gene vector in either encoding.
#[derive(Debug, Clone, PartialEq)]
pub enum Genotype {
    Integer(Vec<usize>),
    Real(Vec<f64>),
}

impl Genotype {
    pub fn kind(&self) -> GenomeKind {
        match self {
            Self::Integer(_) => GenomeKind::Integer,
            Self::Real(_) => GenomeKind::Real,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Integer(g) => g.len(),
            Self::Real(g) => g.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integer gene value at `position`; real genes are discretized onto the
    /// ordered valid set of the position.
    pub fn int_gene(&self, position: usize, layout: &Layout) -> usize {
        match self {
            Self::Integer(g) => g[position],
            Self::Real(g) => {
                let bounds = layout
                    .gene_bounds(position)
                    .expect("position within genotype");
                let m = bounds.len();
                let k = ((g[position] * m as f64) as usize).min(m - 1);
                bounds.nth(k)
            }
        }
    }

    /// One genotype per line, genes space-separated. Integer genes print as
    /// decimals, real genes in shortest round-trip form.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        match self {
            Self::Integer(g) => {
                for (i, v) in g.iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                    }
                    s.push_str(&v.to_string());
                }
            }
            Self::Real(g) => {
                for (i, v) in g.iter().enumerate() {
                    if i > 0 {
                        s.push(' ');
                    }
                    s.push_str(&alloc::format!("{v}"));
                }
            }
        }
        s
    }

    pub fn parse(line: &str, kind: GenomeKind) -> Result<Self, GenomeError> {
        let bad = |tok: &str| GenomeError::ParseGene {
            token: tok.to_string(),
        };
        match kind {
            GenomeKind::Integer => {
                let genes = line
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad(t)))
                    .collect::<Result<Vec<usize>, _>>()?;
                Ok(Self::Integer(genes))
            }
            GenomeKind::Real => {
                let genes = line
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad(t)))
                    .collect::<Result<Vec<f64>, _>>()?;
                Ok(Self::Real(genes))
            }
        }
    }
}

/// Genome-level failures.
#[derive(Debug, Clone, PartialEq)]
pub enum GenomeError {
    PositionOutOfRange { position: usize },
    ValueOutOfDomain { value: f64 },
    ParseGene { token: String },
}

impl fmt::Display for GenomeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PositionOutOfRange { position } => {
                write!(f, "gene position {position} out of range")
            }
            Self::ValueOutOfDomain { value } => {
                write!(f, "real gene value {value} outside [0, 1)")
            }
            Self::ParseGene { token } => write!(f, "unparseable gene \"{token}\""),
        }
    }
}

impl core::error::Error for GenomeError {}

/// A single validity violation; violations are data, not errors.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// `None` for whole-genotype violations such as a length mismatch.
    pub position: Option<usize>,
    pub message: String,
}

/// Genotype length for a parameter set:
/// `n_rows * n_columns * (max_arity + 1) + n_outputs`.
pub fn genotype_length(params: &CgpParameters) -> usize {
    params.n_rows * params.n_columns * (params.max_arity + 1) + params.n_outputs
}

/// Draws a uniformly random valid genotype.
pub fn random_genotype<R: Rng>(layout: &Layout, kind: GenomeKind, rng: &mut R) -> Genotype {
    let len = layout.genotype_length();
    match kind {
        GenomeKind::Integer => Genotype::Integer(
            (0..len)
                .map(|pos| layout.gene_bounds(pos).expect("valid position").sample(rng))
                .collect(),
        ),
        GenomeKind::Real => Genotype::Real((0..len).map(|_| rng.gen::<f64>()).collect()),
    }
}

/// Lists every bound violation; an empty list means the genotype is valid.
pub fn validate(genotype: &Genotype, layout: &Layout) -> Vec<Violation> {
    let expected = layout.genotype_length();
    if genotype.len() != expected {
        return alloc::vec![Violation {
            position: None,
            message: alloc::format!(
                "genotype length {} does not match expected {expected}",
                genotype.len()
            ),
        }];
    }
    let mut violations = Vec::new();
    match genotype {
        Genotype::Integer(genes) => {
            for (pos, &g) in genes.iter().enumerate() {
                let bounds = layout.gene_bounds(pos).expect("valid position");
                if !bounds.contains(g) {
                    violations.push(Violation {
                        position: Some(pos),
                        message: alloc::format!("gene value {g} outside valid set"),
                    });
                }
            }
        }
        Genotype::Real(genes) => {
            for (pos, &g) in genes.iter().enumerate() {
                if !(0.0..1.0).contains(&g) {
                    violations.push(Violation {
                        position: Some(pos),
                        message: alloc::format!("real gene {g} outside [0, 1)"),
                    });
                }
            }
        }
    }
    violations
}

/// Maps a real gene in `[0,1)` onto the `floor(value * m)`-th element of the
/// size-`m` ordered valid set at `position`.
pub fn discretize_real_gene(
    value: f64,
    position: usize,
    layout: &Layout,
) -> Result<usize, GenomeError> {
    if !(0.0..1.0).contains(&value) {
        return Err(GenomeError::ValueOutOfDomain { value });
    }
    let bounds = layout.gene_bounds(position)?;
    let m = bounds.len();
    Ok(bounds.nth(((value * m as f64) as usize).min(m - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_set::FunctionSet;
    use crate::params::CgpParameters;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// n_i=2, n_r=1, n_c=3, n_a=2, l=3, |F|=2.
    fn small_layout() -> Layout {
        let mut p = CgpParameters::default();
        p.n_inputs = 2;
        p.n_outputs = 1;
        p.n_rows = 1;
        p.n_columns = 3;
        p.max_arity = 2;
        p.levels_back = Some(3);
        let fs = FunctionSet::new(
            FunctionSet::boolean_default().entries()[..2].to_vec(),
        );
        Layout::new(&p, &fs)
    }

    #[test]
    fn genotype_length_formula() {
        let mut p = CgpParameters::default();
        p.n_rows = 1;
        p.n_columns = 3;
        p.max_arity = 2;
        p.n_outputs = 1;
        assert_eq!(genotype_length(&p), 10);
        p.n_rows = 2;
        p.n_columns = 2;
        p.n_outputs = 2;
        assert_eq!(genotype_length(&p), 14);
        p.n_rows = 1;
        p.n_columns = 100;
        p.n_outputs = 1;
        assert_eq!(genotype_length(&p), 301);
    }

    #[test]
    fn gene_bounds_small_instance() {
        let layout = small_layout();
        assert_eq!(layout.gene_bounds(0).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(layout.gene_bounds(1).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(layout.gene_bounds(4).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(layout.gene_bounds(9).unwrap().to_vec(), vec![0, 1, 2, 3, 4]);
        assert!(matches!(
            layout.gene_bounds(10),
            Err(GenomeError::PositionOutOfRange { position: 10 })
        ));
    }

    #[test]
    fn gene_bounds_respects_levels_back() {
        let mut p = CgpParameters::default();
        p.n_inputs = 2;
        p.n_outputs = 1;
        p.n_columns = 4;
        p.max_arity = 2;
        p.levels_back = Some(1);
        let layout = Layout::new(&p, &FunctionSet::boolean_default());
        // column 3 node: inputs plus only the column-2 node
        let bounds = layout.gene_bounds(layout.group_start(3) + 1).unwrap();
        assert_eq!(bounds.to_vec(), vec![0, 1, 4]);
    }

    #[test]
    fn random_genotypes_are_valid_and_deterministic() {
        let layout = small_layout();
        let a = random_genotype(&layout, GenomeKind::Integer, &mut ChaCha8Rng::seed_from_u64(3));
        let b = random_genotype(&layout, GenomeKind::Integer, &mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
        assert!(validate(&a, &layout).is_empty());
        let r = random_genotype(&layout, GenomeKind::Real, &mut ChaCha8Rng::seed_from_u64(3));
        assert!(validate(&r, &layout).is_empty());
    }

    #[test]
    fn function_gene_sampling_is_uniform() {
        let layout = small_layout();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut counts = [0usize; 2];
        for _ in 0..10_000 {
            let g = random_genotype(&layout, GenomeKind::Integer, &mut rng);
            if let Genotype::Integer(genes) = &g {
                counts[genes[0]] += 1;
            }
        }
        for c in counts {
            let freq = c as f64 / 10_000.0;
            assert!((freq - 0.5).abs() < 0.02, "frequency {freq}");
        }
    }

    #[test]
    fn validate_flags_out_of_bound_output_gene() {
        let layout = small_layout();
        let mut genes = match random_genotype(&layout, GenomeKind::Integer, &mut ChaCha8Rng::seed_from_u64(5)) {
            Genotype::Integer(g) => g,
            _ => unreachable!(),
        };
        genes[9] = layout.node_total(); // one past the last node index
        let v = validate(&Genotype::Integer(genes), &layout);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].position, Some(9));
    }

    #[test]
    fn validate_flags_wrong_length() {
        let layout = small_layout();
        let v = validate(&Genotype::Integer(alloc::vec![0; 7]), &layout);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].position, None);
    }

    #[test]
    fn discretize_floor_mapping() {
        let layout = small_layout();
        // position 4: valid set {0, 1, 2}
        assert_eq!(discretize_real_gene(0.0, 4, &layout).unwrap(), 0);
        assert_eq!(discretize_real_gene(0.99, 4, &layout).unwrap(), 2);
        assert_eq!(discretize_real_gene(0.5, 4, &layout).unwrap(), 1);
        assert!(matches!(
            discretize_real_gene(1.0, 4, &layout),
            Err(GenomeError::ValueOutOfDomain { .. })
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let layout = small_layout();
        for kind in [GenomeKind::Integer, GenomeKind::Real] {
            let g = random_genotype(&layout, kind, &mut ChaCha8Rng::seed_from_u64(9));
            let parsed = Genotype::parse(&g.serialize(), kind).unwrap();
            assert_eq!(g, parsed);
        }
    }

    #[test]
    fn sample_excluding_forces_change() {
        let layout = small_layout();
        let bounds = layout.gene_bounds(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let v = bounds.sample_excluding(&mut rng, 3);
            assert!(bounds.contains(v));
            assert_ne!(v, 3);
        }
    }
}
