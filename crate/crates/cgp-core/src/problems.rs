//! Benchmark problems: logic synthesis over compressed truth tables and
//! symbolic regression over generated datasets.
//!
//! Truth tables are stored packed: `word_width` table entries per machine
//! word, entry `t` living in bit `t % word_width` of row `t / word_width`,
//! and input `i` of entry `t` being `(t >> i) & 1` (LSB-first). Packing makes
//! one bitwise program evaluation cover up to 64 table entries at once.
//!
//! The PLU text format is self-describing: `.i`/`.o`/`.p` (and optional `.w`,
//! default 64) header directives, then `.p` data rows of input words followed
//! by output words (decimal or 0x-hex), then the `.e` terminator. `#` starts
//! a comment.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::distributions::{Distribution, Uniform};
use rand::Rng;

use crate::decoder::decode;
use crate::function_set::{apply_packed, apply_real, FunctionSet, TerminalConstants};
use crate::genome::{Genotype, Layout};
use crate::params::{ConfigError, ProblemKind};

/// Penalty added to symbolic-regression fitness for each data point whose
/// prediction is non-finite.
pub const NONFINITE_PENALTY: f64 = 1e12;

/// Default PLU word width when the `.w` directive is absent.
pub const DEFAULT_WORD_WIDTH: usize = 64;

fn low_mask(bits: usize) -> u64 {
    if bits >= 64 {
        !0
    } else {
        (1u64 << bits) - 1
    }
}

/// A complete Boolean specification, packed `word_width` entries per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub n_inputs: usize,
    pub n_outputs: usize,
    pub word_width: usize,
    /// Each row holds `n_inputs` input words followed by `n_outputs` output
    /// words, all in one flat vector.
    pub rows: Vec<Vec<u64>>,
}

/// Errors raised by PLU parsing and truth-table validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PluError {
    /// Malformed directive or data row, with its 1-based line number.
    Syntax { line: usize, message: String },
    /// Header and body disagree (for example row count vs `.p`).
    Consistency { message: String },
    /// A data word does not fit in `word_width` bits.
    Range { line: usize, word: String },
    /// A structurally well-formed table that violates a packing invariant.
    Invalid { message: String },
}

impl fmt::Display for PluError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax { line, message } => write!(f, "line {line}: {message}"),
            Self::Consistency { message } => write!(f, "inconsistent table: {message}"),
            Self::Range { line, word } => {
                write!(f, "line {line}: word {word} exceeds the declared word width")
            }
            Self::Invalid { message } => write!(f, "invalid table: {message}"),
        }
    }
}

impl core::error::Error for PluError {}

impl TruthTable {
    /// Builds a table from a predicate `f(entry, output) -> bit`, packing
    /// entries in the canonical LSB-first order.
    pub fn from_fn(
        n_inputs: usize,
        n_outputs: usize,
        word_width: usize,
        f: impl Fn(usize, usize) -> bool,
    ) -> Self {
        assert!(n_inputs >= 1 && n_outputs >= 1, "non-degenerate table");
        assert!((1..=64).contains(&word_width), "word width in 1..=64");
        let total = 1usize << n_inputs;
        let n_rows = (total + word_width - 1) / word_width;
        let mut rows = Vec::with_capacity(n_rows);
        for j in 0..n_rows {
            let mut row = Vec::with_capacity(n_inputs + n_outputs);
            for i in 0..n_inputs {
                let mut word = 0u64;
                for k in 0..word_width {
                    let t = j * word_width + k;
                    if t < total && (t >> i) & 1 == 1 {
                        word |= 1 << k;
                    }
                }
                row.push(word);
            }
            for o in 0..n_outputs {
                let mut word = 0u64;
                for k in 0..word_width {
                    let t = j * word_width + k;
                    if t < total && f(t, o) {
                        word |= 1 << k;
                    }
                }
                row.push(word);
            }
            rows.push(row);
        }
        let table = Self {
            n_inputs,
            n_outputs,
            word_width,
            rows,
        };
        debug_assert!(table.validate().is_ok());
        table
    }

    pub fn total_entries(&self) -> usize {
        1usize << self.n_inputs
    }

    /// Output bit of one table entry, unpacked from the word storage.
    pub fn entry_output(&self, entry: usize, output: usize) -> bool {
        let row = &self.rows[entry / self.word_width];
        (row[self.n_inputs + output] >> (entry % self.word_width)) & 1 == 1
    }

    /// Checks the packing invariants: coverage, canonical input words, zero
    /// padding, and word range.
    pub fn validate(&self) -> Result<(), PluError> {
        if self.n_inputs == 0 || self.n_outputs == 0 {
            return Err(PluError::Invalid {
                message: "n_inputs and n_outputs must be at least 1".to_string(),
            });
        }
        if !(1..=64).contains(&self.word_width) {
            return Err(PluError::Invalid {
                message: format!("word width {} outside 1..=64", self.word_width),
            });
        }
        let total = self.total_entries();
        if self.rows.len() * self.word_width < total {
            return Err(PluError::Invalid {
                message: format!(
                    "{} rows of {} bits cover fewer than {total} entries",
                    self.rows.len(),
                    self.word_width
                ),
            });
        }
        for (j, row) in self.rows.iter().enumerate() {
            if row.len() != self.n_inputs + self.n_outputs {
                return Err(PluError::Invalid {
                    message: format!("row {j} has {} words", row.len()),
                });
            }
            let live = total.saturating_sub(j * self.word_width).min(self.word_width);
            let mask = low_mask(live);
            for (w, &word) in row.iter().enumerate() {
                if word & !low_mask(self.word_width) != 0 {
                    return Err(PluError::Invalid {
                        message: format!("row {j} word {w} exceeds the word width"),
                    });
                }
                if word & !mask != 0 {
                    return Err(PluError::Invalid {
                        message: format!("row {j} word {w} has nonzero padding bits"),
                    });
                }
            }
            for i in 0..self.n_inputs {
                let mut expect = 0u64;
                for k in 0..live {
                    if ((j * self.word_width + k) >> i) & 1 == 1 {
                        expect |= 1 << k;
                    }
                }
                if row[i] != expect {
                    return Err(PluError::Invalid {
                        message: format!("row {j} input word {i} is not in canonical packing"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Re-packs the same Boolean specification at a different word width.
    pub fn repack(&self, word_width: usize) -> Self {
        Self::from_fn(self.n_inputs, self.n_outputs, word_width, |t, o| {
            self.entry_output(t, o)
        })
    }
}

/// Parses PLU text into a validated truth table.
pub fn parse_plu(text: &str) -> Result<TruthTable, PluError> {
    let mut n_inputs: Option<usize> = None;
    let mut n_outputs: Option<usize> = None;
    let mut declared_rows: Option<usize> = None;
    let mut word_width = DEFAULT_WORD_WIDTH;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut terminated = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if terminated {
            return Err(PluError::Syntax {
                line: line_no,
                message: "content after .e terminator".to_string(),
            });
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("non-empty line");
        if let Some(directive) = first.strip_prefix('.') {
            let arg = |tokens: &mut core::str::SplitWhitespace<'_>| -> Result<usize, PluError> {
                tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| PluError::Syntax {
                        line: line_no,
                        message: format!(".{directive} needs one numeric argument"),
                    })
            };
            match directive {
                "i" => n_inputs = Some(arg(&mut tokens)?),
                "o" => n_outputs = Some(arg(&mut tokens)?),
                "p" => declared_rows = Some(arg(&mut tokens)?),
                "w" => word_width = arg(&mut tokens)?,
                "e" => terminated = true,
                other => {
                    return Err(PluError::Syntax {
                        line: line_no,
                        message: format!("unknown directive .{other}"),
                    })
                }
            }
            if tokens.next().is_some() {
                return Err(PluError::Syntax {
                    line: line_no,
                    message: format!("trailing tokens after .{directive}"),
                });
            }
            continue;
        }
        // data row
        let (ni, no) = match (n_inputs, n_outputs) {
            (Some(ni), Some(no)) => (ni, no),
            _ => {
                return Err(PluError::Syntax {
                    line: line_no,
                    message: "data row before .i/.o header".to_string(),
                })
            }
        };
        let mut row = Vec::with_capacity(ni + no);
        for token in core::iter::once(first).chain(tokens) {
            let parsed = match token.strip_prefix("0x").or_else(|| token.strip_prefix("0X")) {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => token.parse(),
            };
            let word = parsed.map_err(|_| PluError::Syntax {
                line: line_no,
                message: format!("malformed word {token}"),
            })?;
            if word & !low_mask(word_width) != 0 {
                return Err(PluError::Range {
                    line: line_no,
                    word: token.to_string(),
                });
            }
            row.push(word);
        }
        if row.len() != ni + no {
            return Err(PluError::Syntax {
                line: line_no,
                message: format!("expected {} words, found {}", ni + no, row.len()),
            });
        }
        rows.push(row);
    }

    if !terminated {
        return Err(PluError::Consistency {
            message: "missing .e terminator".to_string(),
        });
    }
    let n_inputs = n_inputs.ok_or_else(|| PluError::Consistency {
        message: "missing .i directive".to_string(),
    })?;
    let n_outputs = n_outputs.ok_or_else(|| PluError::Consistency {
        message: "missing .o directive".to_string(),
    })?;
    let declared = declared_rows.ok_or_else(|| PluError::Consistency {
        message: "missing .p directive".to_string(),
    })?;
    if rows.len() != declared {
        return Err(PluError::Consistency {
            message: format!(".p declares {declared} rows, found {}", rows.len()),
        });
    }
    let table = TruthTable {
        n_inputs,
        n_outputs,
        word_width,
        rows,
    };
    table.validate()?;
    Ok(table)
}

/// Renders a table as PLU text; `parse_plu` of the result is field-equal.
pub fn format_plu(table: &TruthTable) -> String {
    let mut out = String::new();
    out.push_str(&format!(".i {}\n", table.n_inputs));
    out.push_str(&format!(".o {}\n", table.n_outputs));
    out.push_str(&format!(".p {}\n", table.rows.len()));
    out.push_str(&format!(".w {}\n", table.word_width));
    for row in &table.rows {
        let words: Vec<String> = row.iter().map(|w| format!("0x{w:X}")).collect();
        out.push_str(&words.join(" "));
        out.push('\n');
    }
    out.push_str(".e\n");
    out
}

/// Wrong-bit count of a Boolean program against a table; 0 means a perfect
/// match. Padding bits never contribute.
pub fn ls_fitness(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    table: &TruthTable,
) -> f64 {
    debug_assert!(function_set.is_bitwise_capable());
    debug_assert_eq!(layout.n_inputs, table.n_inputs);
    debug_assert_eq!(layout.n_outputs, table.n_outputs);
    let program = decode(genotype, layout, function_set);
    let total = table.total_entries();
    let mut wrong = 0u64;
    for (j, row) in table.rows.iter().enumerate() {
        let live = total.saturating_sub(j * table.word_width).min(table.word_width);
        let mask = low_mask(live);
        let outputs = program.eval_with(layout, &row[..table.n_inputs], |f, args| {
            apply_packed(function_set.entry(f).op, args)
        });
        for (k, &out) in outputs.iter().enumerate() {
            wrong += ((out ^ row[table.n_inputs + k]) & mask).count_ones() as u64;
        }
    }
    wrong as f64
}

/// A finite sample of a target function: input vectors with target vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SrDataset {
    pub benchmark: Option<String>,
    pub points: Vec<(Vec<f64>, Vec<f64>)>,
}

impl SrDataset {
    pub fn new(points: Vec<(Vec<f64>, Vec<f64>)>) -> Self {
        assert!(!points.is_empty(), "dataset must be non-empty");
        Self {
            benchmark: None,
            points,
        }
    }

    /// A run counts as solved when fitness drops to this threshold.
    pub fn hit_threshold(&self) -> f64 {
        0.01 * self.points.len() as f64
    }
}

/// Known regression benchmarks: name, closed form, sampling range, points.
pub const BENCHMARK_NAMES: [&str; 7] = [
    "koza-1", "koza-2", "koza-3", "nguyen-4", "nguyen-5", "nguyen-6", "nguyen-7",
];

const BENCHMARK_POINTS: usize = 20;
const BENCHMARK_RANGE: (f64, f64) = (-1.0, 1.0);

/// Closed form of a named benchmark.
pub fn benchmark_target(name: &str) -> Option<fn(f64) -> f64> {
    Some(match name {
        "koza-1" => |x| x * x * x * x + x * x * x + x * x + x,
        "koza-2" => |x| x * x * x * x * x - 2.0 * x * x * x + x,
        "koza-3" => |x: f64| {
            let x2 = x * x;
            x2 * x2 * x2 - 2.0 * x2 * x2 + x2
        },
        "nguyen-4" => |x| {
            let x2 = x * x;
            x2 * x2 * x2 + x2 * x2 * x + x2 * x2 + x2 * x + x2 + x
        },
        "nguyen-5" => |x| libm::sin(x * x) * libm::cos(x) - 1.0,
        "nguyen-6" => |x| libm::sin(x) + libm::sin(x + x * x),
        "nguyen-7" => |x| libm::log(x + 1.0) + libm::log(x * x + 1.0),
        _ => return None,
    })
}

/// Samples a benchmark dataset: 20 inputs uniform on [-1, 1], targets from
/// the closed form. Pure in (name, rng state); inputs yielding a non-finite
/// target are redrawn so the dataset invariant holds.
pub fn generate_sr_dataset<R: Rng>(name: &str, rng: &mut R) -> Result<SrDataset, ConfigError> {
    let target = benchmark_target(name).ok_or_else(|| ConfigError::OutOfRange {
        key: "benchmark".to_string(),
        requirement: format!("one of {}", BENCHMARK_NAMES.join(", ")),
    })?;
    let dist = Uniform::new_inclusive(BENCHMARK_RANGE.0, BENCHMARK_RANGE.1);
    let mut points = Vec::with_capacity(BENCHMARK_POINTS);
    while points.len() < BENCHMARK_POINTS {
        let x = dist.sample(rng);
        let y = target(x);
        if y.is_finite() {
            points.push((alloc::vec![x], alloc::vec![y]));
        }
    }
    Ok(SrDataset {
        benchmark: Some(name.to_string()),
        points,
    })
}

/// Sum of absolute errors over the dataset; any point with a non-finite
/// prediction contributes [`NONFINITE_PENALTY`] instead.
pub fn sr_fitness(
    genotype: &Genotype,
    layout: &Layout,
    function_set: &FunctionSet,
    constants: &TerminalConstants,
    dataset: &SrDataset,
) -> f64 {
    let program = decode(genotype, layout, function_set);
    let mut error = 0.0;
    let mut terminals = Vec::with_capacity(layout.n_terminals());
    for (inputs, targets) in &dataset.points {
        terminals.clear();
        terminals.extend_from_slice(inputs);
        terminals.extend_from_slice(&constants.values);
        let outputs = program.eval_with(layout, &terminals, |f, args| {
            apply_real(function_set.entry(f).op, args)
        });
        if outputs.iter().any(|v| !v.is_finite()) {
            error += NONFINITE_PENALTY;
        } else {
            error += outputs
                .iter()
                .zip(targets)
                .map(|(p, t)| (p - t).abs())
                .sum::<f64>();
        }
    }
    error
}

/// An evaluation target with its fitness semantics. `Clone` is a deep clone:
/// both payload variants own all their data.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    LogicSynthesis(TruthTable),
    SymbolicRegression(SrDataset),
}

impl Problem {
    pub fn kind(&self) -> ProblemKind {
        match self {
            Self::LogicSynthesis(_) => ProblemKind::LogicSynthesis,
            Self::SymbolicRegression(_) => ProblemKind::SymbolicRegression,
        }
    }

    pub fn n_inputs(&self) -> usize {
        match self {
            Self::LogicSynthesis(t) => t.n_inputs,
            Self::SymbolicRegression(d) => d.points[0].0.len(),
        }
    }

    pub fn n_outputs(&self) -> usize {
        match self {
            Self::LogicSynthesis(t) => t.n_outputs,
            Self::SymbolicRegression(d) => d.points[0].1.len(),
        }
    }

    /// Minimized fitness of one genotype; deterministic and side-effect free.
    pub fn fitness(
        &self,
        genotype: &Genotype,
        layout: &Layout,
        function_set: &FunctionSet,
        constants: &TerminalConstants,
    ) -> f64 {
        match self {
            Self::LogicSynthesis(table) => ls_fitness(genotype, layout, function_set, table),
            Self::SymbolicRegression(dataset) => {
                sr_fitness(genotype, layout, function_set, constants, dataset)
            }
        }
    }

    /// Fitness at or below which a run counts as solved.
    pub fn success_threshold(&self) -> f64 {
        match self {
            Self::LogicSynthesis(_) => 0.0,
            Self::SymbolicRegression(d) => d.hit_threshold(),
        }
    }

    /// An isolated copy sharing no mutable state with the original.
    pub fn deep_clone(&self) -> Self {
        self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::evaluate_bool;
    use crate::genome::random_genotype;
    use crate::params::{CgpParameters, GenomeKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn and_table(width: usize) -> TruthTable {
        TruthTable::from_fn(2, 1, width, |t, _| t == 3)
    }

    #[test]
    fn and_table_packs_canonically_at_width_4() {
        let t = and_table(4);
        assert_eq!(t.rows, alloc::vec![alloc::vec![0xA, 0xC, 0x8]]);
    }

    #[test]
    fn plu_example_parses_to_and_table() {
        let text = ".i 2\n.o 1\n.p 1\n.w 4\n0xA 0xC 0x8\n.e\n";
        let t = parse_plu(text).unwrap();
        assert_eq!(t, and_table(4));
        let outputs: Vec<bool> = (0..4).map(|e| t.entry_output(e, 0)).collect();
        assert_eq!(outputs, alloc::vec![false, false, false, true]);
    }

    #[test]
    fn plu_round_trip_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let ni = rng.gen_range(1..=6);
            let no = rng.gen_range(1..=3);
            let width = [8, 16, 64][rng.gen_range(0..3)];
            let bits: Vec<bool> = (0..(1usize << ni) * no).map(|_| rng.gen()).collect();
            let t = TruthTable::from_fn(ni, no, width, |e, o| bits[e * no + o]);
            assert_eq!(parse_plu(&format_plu(&t)).unwrap(), t);
        }
    }

    #[test]
    fn plu_errors_carry_line_numbers() {
        assert_eq!(
            parse_plu(".i 2\n.o 1\n.p 1\n.q 3\n.e\n"),
            Err(PluError::Syntax {
                line: 4,
                message: "unknown directive .q".to_string()
            })
        );
        assert!(matches!(
            parse_plu(".i 2\n.o 1\n.p 1\n.w 4\n0xA 0xC 0x10\n.e\n"),
            Err(PluError::Range { line: 5, .. })
        ));
        assert!(matches!(
            parse_plu(".i 2\n.o 1\n.p 2\n.w 4\n0xA 0xC 0x8\n.e\n"),
            Err(PluError::Consistency { .. })
        ));
        assert!(matches!(
            parse_plu(".i 2\n.o 1\n.p 1\n.w 4\n0xA 0xC 0x8\n"),
            Err(PluError::Consistency { .. })
        ));
    }

    #[test]
    fn validate_rejects_broken_packing() {
        let mut t = and_table(4);
        t.rows[0][2] = 0x18; // padding bit set (width-4 row holds all 4 entries, but word 0x18 needs bit 4)
        assert!(matches!(t.validate(), Err(PluError::Invalid { .. })));
        let mut t = and_table(4);
        t.rows[0][0] = 0xC; // non-canonical input word
        assert!(matches!(t.validate(), Err(PluError::Invalid { .. })));
    }

    fn ls_setup() -> (CgpParameters, FunctionSet, Layout) {
        let mut p = CgpParameters::default();
        p.n_inputs = 2;
        p.n_outputs = 1;
        p.n_columns = 1;
        p.max_arity = 2;
        p.lambda = 1;
        let fs = FunctionSet::boolean_default();
        let layout = Layout::new(&p, &fs);
        (p, fs, layout)
    }

    #[test]
    fn ls_fitness_frozen_oracles() {
        let (_, fs, layout) = ls_setup();
        let table = and_table(64);
        // node 2 = f(x0, x1), output -> node 2
        let and = Genotype::Integer(alloc::vec![0, 0, 1, 2]);
        let xor_self = Genotype::Integer(alloc::vec![4, 0, 0, 2]); // constant 0
        let xnor_self = Genotype::Integer(alloc::vec![5, 0, 0, 2]); // constant 1
        assert_eq!(ls_fitness(&and, &layout, &fs, &table), 0.0);
        assert_eq!(ls_fitness(&xor_self, &layout, &fs, &table), 1.0);
        assert_eq!(ls_fitness(&xnor_self, &layout, &fs, &table), 3.0);
    }

    #[test]
    fn ls_fitness_is_word_width_invariant() {
        let mut p = CgpParameters::default();
        p.n_inputs = 4;
        p.n_outputs = 2;
        p.n_columns = 8;
        p.max_arity = 2;
        p.lambda = 1;
        let fs = FunctionSet::boolean_default();
        let layout = Layout::new(&p, &fs);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let bits: Vec<bool> = (0..32).map(|_| rng.gen()).collect();
        let base = TruthTable::from_fn(4, 2, 64, |e, o| bits[e * 2 + o]);
        for _ in 0..20 {
            let g = random_genotype(&layout, GenomeKind::Integer, &mut rng);
            let reference = ls_fitness(&g, &layout, &fs, &base);
            for width in [8, 16, 64] {
                assert_eq!(ls_fitness(&g, &layout, &fs, &base.repack(width)), reference);
            }
        }
    }

    #[test]
    fn packed_fitness_matches_row_by_row_logical_count() {
        let mut p = CgpParameters::default();
        p.n_inputs = 3;
        p.n_outputs = 2;
        p.n_columns = 6;
        p.max_arity = 2;
        p.lambda = 1;
        let fs = FunctionSet::boolean_default();
        let layout = Layout::new(&p, &fs);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let bits: Vec<bool> = (0..16).map(|_| rng.gen()).collect();
        let table = TruthTable::from_fn(3, 2, 8, |e, o| bits[e * 2 + o]);
        for _ in 0..25 {
            let g = random_genotype(&layout, GenomeKind::Integer, &mut rng);
            let mut wrong = 0.0;
            for e in 0..8 {
                let inputs: Vec<bool> = (0..3).map(|i| (e >> i) & 1 == 1).collect();
                let out = evaluate_bool(&g, &layout, &fs, &inputs);
                for o in 0..2 {
                    if out[o] != table.entry_output(e, o) {
                        wrong += 1.0;
                    }
                }
            }
            assert_eq!(ls_fitness(&g, &layout, &fs, &table), wrong);
        }
    }

    #[test]
    fn benchmark_closed_forms_frozen_points() {
        let koza1 = benchmark_target("koza-1").unwrap();
        assert_eq!(koza1(0.0), 0.0);
        assert_eq!(koza1(1.0), 4.0);
        assert_eq!(koza1(-1.0), 0.0);
        let koza2 = benchmark_target("koza-2").unwrap();
        assert_eq!(koza2(1.0), 0.0);
        assert_eq!(koza2(2.0), 18.0);
        let nguyen4 = benchmark_target("nguyen-4").unwrap();
        assert_eq!(nguyen4(1.0), 6.0);
        let nguyen7 = benchmark_target("nguyen-7").unwrap();
        assert_eq!(nguyen7(0.0), 0.0);
        assert!(benchmark_target("koza-9").is_none());
    }

    #[test]
    fn dataset_generation_is_pure_in_seed() {
        for name in BENCHMARK_NAMES {
            let a = generate_sr_dataset(name, &mut ChaCha8Rng::seed_from_u64(21)).unwrap();
            let b = generate_sr_dataset(name, &mut ChaCha8Rng::seed_from_u64(21)).unwrap();
            let c = generate_sr_dataset(name, &mut ChaCha8Rng::seed_from_u64(22)).unwrap();
            assert_eq!(a, b);
            assert_ne!(a.points, c.points);
            assert_eq!(a.points.len(), 20);
            for (x, y) in &a.points {
                assert!((-1.0..=1.0).contains(&x[0]));
                assert!(y[0].is_finite());
            }
            let target = benchmark_target(name).unwrap();
            for (x, y) in &a.points {
                assert_eq!(y[0], target(x[0]));
            }
        }
        assert!(matches!(
            generate_sr_dataset("koza-9", &mut ChaCha8Rng::seed_from_u64(1)),
            Err(ConfigError::OutOfRange { .. })
        ));
    }

    fn sr_setup(n_constants: usize) -> (CgpParameters, FunctionSet, Layout) {
        let mut p = CgpParameters::default();
        p.n_inputs = 1;
        p.n_outputs = 1;
        p.n_columns = 2;
        p.max_arity = 2;
        p.lambda = 1;
        p.num_constants = n_constants;
        let fs = FunctionSet::sr_default();
        let layout = Layout::new(&p, &fs);
        (p, fs, layout)
    }

    #[test]
    fn sr_fitness_frozen_oracles() {
        let (_, fs, layout) = sr_setup(1);
        let constants = TerminalConstants {
            values: alloc::vec![1.5],
        };
        // terminals: x0 = node 0, constant = node 1; two function nodes 2..3
        let echo_input = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0]); // output -> x0
        let echo_const = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 1]); // output -> constant
        let dataset = SrDataset::new(alloc::vec![(alloc::vec![1.0], alloc::vec![1.0])]);
        assert_eq!(sr_fitness(&echo_input, &layout, &fs, &constants, &dataset), 0.0);
        assert_eq!(sr_fitness(&echo_const, &layout, &fs, &constants, &dataset), 0.5);

        // exact interpolation over a generated dataset: identity genotype on
        // a dataset whose target is the identity
        let identity = SrDataset::new(
            (0..20)
                .map(|i| {
                    let x = -1.0 + 0.1 * i as f64;
                    (alloc::vec![x], alloc::vec![x])
                })
                .collect(),
        );
        assert_eq!(sr_fitness(&echo_input, &layout, &fs, &constants, &identity), 0.0);
        assert_eq!(identity.hit_threshold(), 0.2);
    }

    #[test]
    fn non_finite_prediction_is_penalized_per_point() {
        let (_, fs, layout) = sr_setup(1);
        let constants = TerminalConstants {
            values: alloc::vec![1e9],
        };
        // node 2 = exp(constant) = inf; output -> node 2
        let overflow = Genotype::Integer(alloc::vec![6, 1, 1, 0, 0, 0, 2]);
        let dataset = SrDataset::new(alloc::vec![
            (alloc::vec![0.0], alloc::vec![0.0]),
            (alloc::vec![0.5], alloc::vec![0.5]),
        ]);
        assert_eq!(
            sr_fitness(&overflow, &layout, &fs, &constants, &dataset),
            2.0 * NONFINITE_PENALTY
        );
    }

    #[test]
    fn deep_clone_is_isolated() {
        let (_, fs, layout) = sr_setup(0);
        let dataset = SrDataset::new(alloc::vec![(alloc::vec![1.0], alloc::vec![1.0])]);
        let problem = Problem::SymbolicRegression(dataset);
        let constants = TerminalConstants::empty();
        let g = Genotype::Integer(alloc::vec![0, 0, 0, 0, 0, 0, 0]);
        let before = problem.fitness(&g, &layout, &fs, &constants);
        let mut clone = problem.deep_clone();
        assert_eq!(clone.fitness(&g, &layout, &fs, &constants), before);
        if let Problem::SymbolicRegression(d) = &mut clone {
            d.points[0].1[0] = 99.0;
        }
        assert_eq!(problem.fitness(&g, &layout, &fs, &constants), before);
        assert_ne!(clone.fitness(&g, &layout, &fs, &constants), before);
        let clone2 = clone.deep_clone();
        assert_eq!(clone2, clone);
    }
}
