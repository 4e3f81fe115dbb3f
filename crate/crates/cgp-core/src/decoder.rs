//! Genotype-to-phenotype decoding and evaluation.
//!
//! Decoding is a backward search from the output genes: only the function
//! nodes reachable through connection genes become active, and they are
//! listed in ascending node index order, which is topological because every
//! connection references a strictly earlier column or a terminal. Evaluation
//! walks the active list once and caches each node's value, so every active
//! node's function is applied exactly once per call.

use alloc::string::String;
use alloc::vec::Vec;

use crate::function_set::{apply_bool, apply_packed, apply_real, FunctionSet};
use crate::genome::{Genotype, Layout};

/// One active function node: its node index, function gene and the source
/// node of each consumed connection gene (truncated to the function's arity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSpec {
    pub node: usize,
    pub function: usize,
    pub sources: Vec<usize>,
}

/// Result of decoding a genotype: the active nodes in evaluation order plus
/// the source node of every program output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodedProgram {
    pub nodes: Vec<NodeSpec>,
    pub output_sources: Vec<usize>,
}

impl DecodedProgram {
    /// Active function node indices in evaluation (topological) order.
    pub fn active_nodes(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n.node).collect()
    }

    /// Evaluates the program over any value domain. `terminals` supplies the
    /// value of every terminal node (primary inputs followed by constants);
    /// `apply` maps a function-set index and argument slice to a value and is
    /// called exactly once per active node.
    pub fn eval_with<V: Clone>(
        &self,
        layout: &Layout,
        terminals: &[V],
        mut apply: impl FnMut(usize, &[V]) -> V,
    ) -> Vec<V> {
        debug_assert_eq!(terminals.len(), layout.n_terminals());
        let mut values: Vec<Option<V>> = Vec::with_capacity(layout.node_total());
        values.extend(terminals.iter().cloned().map(Some));
        values.resize(layout.node_total(), None);

        let mut args: Vec<V> = Vec::with_capacity(layout.max_arity);
        for spec in &self.nodes {
            args.clear();
            for &src in &spec.sources {
                args.push(values[src].clone().expect("source evaluated before consumer"));
            }
            values[spec.node] = Some(apply(spec.function, &args));
        }
        self.output_sources
            .iter()
            .map(|&src| values[src].clone().expect("output source evaluated"))
            .collect()
    }
}

/// Decodes a genotype by backward search from all output genes.
pub fn decode(genotype: &Genotype, layout: &Layout, function_set: &FunctionSet) -> DecodedProgram {
    let n_terminals = layout.n_terminals();
    let mut reachable = alloc::vec![false; layout.node_total()];
    let mut stack: Vec<usize> = Vec::new();

    let output_sources: Vec<usize> = (0..layout.n_outputs)
        .map(|k| genotype.int_gene(layout.output_position(k), layout))
        .collect();
    for &src in &output_sources {
        stack.push(src);
    }
    while let Some(node) = stack.pop() {
        if node < n_terminals || reachable[node] {
            continue;
        }
        reachable[node] = true;
        let ordinal = node - n_terminals;
        let start = layout.group_start(ordinal);
        let function = genotype.int_gene(start, layout);
        let arity = function_set.entry(function).arity;
        for a in 0..arity {
            stack.push(genotype.int_gene(start + 1 + a, layout));
        }
    }

    // Ascending node index is a topological order: sources always precede.
    let nodes = (n_terminals..layout.node_total())
        .filter(|&node| reachable[node])
        .map(|node| {
            let start = layout.group_start(node - n_terminals);
            let function = genotype.int_gene(start, layout);
            let arity = function_set.entry(function).arity;
            NodeSpec {
                node,
                function,
                sources: (0..arity)
                    .map(|a| genotype.int_gene(start + 1 + a, layout))
                    .collect(),
            }
        })
        .collect();

    DecodedProgram {
        nodes,
        output_sources,
    }
}

/// Function nodes reachable from the outputs, in evaluation order.
pub fn active_nodes(genotype: &Genotype, layout: &Layout, function_set: &FunctionSet) -> Vec<usize> {
    decode(genotype, layout, function_set).active_nodes()
}

/// Logical evaluation of a Boolean program on one truth-table row.
pub fn evaluate_bool(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    inputs: &[bool],
) -> Vec<bool> {
    decode(genotype, layout, function_set).eval_with(layout, inputs, |f, args| {
        apply_bool(function_set.entry(f).op, args)
    })
}

/// Real-valued evaluation; terminals are the inputs followed by the ERC
/// constants.
pub fn evaluate_real(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    inputs: &[f64],
    constants: &[f64],
) -> Vec<f64> {
    let mut terminals = Vec::with_capacity(layout.n_terminals());
    terminals.extend_from_slice(inputs);
    terminals.extend_from_slice(constants);
    decode(genotype, layout, function_set).eval_with(layout, &terminals, |f, args| {
        apply_real(function_set.entry(f).op, args)
    })
}

/// Bitwise-parallel evaluation: bit `k` of every output word equals the
/// logical evaluation on the bit-`k` slice of the input words. Requires a
/// bitwise-capable function set (checked at problem setup).
pub fn evaluate_packed(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    input_words: &[u64],
) -> Vec<u64> {
    decode(genotype, layout, function_set).eval_with(layout, input_words, |f, args| {
        apply_packed(function_set.entry(f).op, args)
    })
}

/// Exports one fully parenthesized expression string per output, naming
/// inputs `x0..`, constants `c0..` and functions by their set names. Shared
/// subgraphs are printed in full at every use site.
pub fn decode_expression(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
) -> Vec<String> {
    let program = decode(genotype, layout, function_set);
    let mut exprs: Vec<Option<String>> = alloc::vec![None; layout.node_total()];
    for i in 0..layout.n_inputs {
        exprs[i] = Some(alloc::format!("x{i}"));
    }
    for c in 0..layout.n_constants {
        exprs[layout.n_inputs + c] = Some(alloc::format!("c{c}"));
    }
    for spec in &program.nodes {
        let name = &function_set.entry(spec.function).name;
        let mut s = String::new();
        s.push_str(name);
        s.push('(');
        for (i, &src) in spec.sources.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(exprs[src].as_ref().expect("source expression built"));
        }
        s.push(')');
        exprs[spec.node] = Some(s);
    }
    program
        .output_sources
        .iter()
        .map(|&src| exprs[src].clone().expect("output expression built"))
        .collect()
}
