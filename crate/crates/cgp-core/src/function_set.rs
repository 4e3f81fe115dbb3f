//! Function set registry and ephemeral random constants.
//!
//! A function set is an ordered list of named primitives with declared
//! arities; function genes index into it. Boolean primitives carry both a
//! logical (per-row) and a bitwise (packed machine word) semantics; the
//! arithmetic primitives operate on `f64` with protected division and
//! logarithm so that evaluation is total.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::distributions::{Distribution, Uniform};
use rand::Rng;

use crate::params::ConfigError;

/// Floor below which protected division and logarithm clamp their argument.
pub const PROTECTED_EPS: f64 = 1e-12;

/// Primitive operations available to function nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionOp {
    And,
    Or,
    Nand,
    Nor,
    Xor,
    Xnor,
    Not,
    Identity,
    Add,
    Sub,
    Mul,
    /// Protected division: returns 1 when the denominator magnitude is below
    /// [`PROTECTED_EPS`].
    Div,
    Sin,
    Cos,
    Exp,
    /// Protected natural logarithm of the argument magnitude, floored at
    /// [`PROTECTED_EPS`].
    Log,
}

impl FunctionOp {
    /// True for primitives whose packed-word semantics is plain bitwise logic.
    pub fn is_bitwise(self) -> bool {
        matches!(
            self,
            Self::And
                | Self::Or
                | Self::Nand
                | Self::Nor
                | Self::Xor
                | Self::Xnor
                | Self::Not
                | Self::Identity
        )
    }
}

/// One named primitive with its arity.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionEntry {
    pub name: String,
    pub arity: usize,
    pub op: FunctionOp,
}

/// Ordered, non-empty set of primitives; indices are stable `0..len-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSet {
    entries: Vec<FunctionEntry>,
}

impl FunctionSet {
    pub fn new(entries: Vec<FunctionEntry>) -> Self {
        assert!(!entries.is_empty(), "function set must be non-empty");
        Self { entries }
    }

    /// Standard Boolean suite for logic synthesis.
    pub fn boolean_default() -> Self {
        let two = [
            ("AND", FunctionOp::And),
            ("OR", FunctionOp::Or),
            ("NAND", FunctionOp::Nand),
            ("NOR", FunctionOp::Nor),
            ("XOR", FunctionOp::Xor),
            ("XNOR", FunctionOp::Xnor),
        ];
        let mut entries: Vec<FunctionEntry> = two
            .iter()
            .map(|&(name, op)| FunctionEntry {
                name: name.to_string(),
                arity: 2,
                op,
            })
            .collect();
        entries.push(FunctionEntry {
            name: "NOT".to_string(),
            arity: 1,
            op: FunctionOp::Not,
        });
        entries.push(FunctionEntry {
            name: "ID".to_string(),
            arity: 1,
            op: FunctionOp::Identity,
        });
        Self::new(entries)
    }

    /// Standard arithmetic suite for symbolic regression.
    pub fn sr_default() -> Self {
        let defs = [
            ("add", 2, FunctionOp::Add),
            ("sub", 2, FunctionOp::Sub),
            ("mul", 2, FunctionOp::Mul),
            ("div", 2, FunctionOp::Div),
            ("sin", 1, FunctionOp::Sin),
            ("cos", 1, FunctionOp::Cos),
            ("exp", 1, FunctionOp::Exp),
            ("log", 1, FunctionOp::Log),
        ];
        Self::new(
            defs.iter()
                .map(|&(name, arity, op)| FunctionEntry {
                    name: name.to_string(),
                    arity,
                    op,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entry(&self, index: usize) -> &FunctionEntry {
        &self.entries[index]
    }

    pub fn entries(&self) -> &[FunctionEntry] {
        &self.entries
    }

    pub fn max_entry_arity(&self) -> usize {
        self.entries.iter().map(|e| e.arity).max().unwrap_or(0)
    }

    /// True when every primitive supports packed bitwise evaluation.
    pub fn is_bitwise_capable(&self) -> bool {
        self.entries.iter().all(|e| e.op.is_bitwise())
    }

    /// Checks that every arity fits the configured maximum.
    pub fn check_arity(&self, max_arity: usize) -> Result<(), ConfigError> {
        for e in &self.entries {
            if e.arity > max_arity {
                return Err(ConfigError::OutOfRange {
                    key: "max_arity".to_string(),
                    requirement: alloc::format!(
                        ">= {} (arity of function \"{}\")",
                        e.arity,
                        e.name
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Logical (single truth-table row) semantics.
pub fn apply_bool(op: FunctionOp, args: &[bool]) -> bool {
    match op {
        FunctionOp::And => args[0] && args[1],
        FunctionOp::Or => args[0] || args[1],
        FunctionOp::Nand => !(args[0] && args[1]),
        FunctionOp::Nor => !(args[0] || args[1]),
        FunctionOp::Xor => args[0] != args[1],
        FunctionOp::Xnor => args[0] == args[1],
        FunctionOp::Not => !args[0],
        FunctionOp::Identity => args[0],
        _ => panic!("non-Boolean primitive in Boolean evaluation"),
    }
}

/// Bitwise packed-word semantics; one call covers up to 64 truth-table rows.
pub fn apply_packed(op: FunctionOp, args: &[u64]) -> u64 {
    match op {
        FunctionOp::And => args[0] & args[1],
        FunctionOp::Or => args[0] | args[1],
        FunctionOp::Nand => !(args[0] & args[1]),
        FunctionOp::Nor => !(args[0] | args[1]),
        FunctionOp::Xor => args[0] ^ args[1],
        FunctionOp::Xnor => !(args[0] ^ args[1]),
        FunctionOp::Not => !args[0],
        FunctionOp::Identity => args[0],
        _ => panic!("non-bitwise primitive in packed evaluation"),
    }
}

/// Real-valued semantics; total on all finite inputs via protected operators.
pub fn apply_real(op: FunctionOp, args: &[f64]) -> f64 {
    match op {
        FunctionOp::Add => args[0] + args[1],
        FunctionOp::Sub => args[0] - args[1],
        FunctionOp::Mul => args[0] * args[1],
        FunctionOp::Div => {
            if args[1].abs() < PROTECTED_EPS {
                1.0
            } else {
                args[0] / args[1]
            }
        }
        FunctionOp::Sin => libm::sin(args[0]),
        FunctionOp::Cos => libm::cos(args[0]),
        FunctionOp::Exp => libm::exp(args[0]),
        FunctionOp::Log => libm::log(args[0].abs().max(PROTECTED_EPS)),
        _ => panic!("Boolean primitive in real-valued evaluation"),
    }
}

/// Ephemeral random constants: the numeric terminals of a run, drawn once at
/// initialization and recorded in checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalConstants {
    pub values: Vec<f64>,
}

impl TerminalConstants {
    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for TerminalConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Draws `count` constants uniformly from `[lo, hi)`; pure in (rng state,
/// count, range).
pub fn generate_erc<R: Rng>(
    count: usize,
    range: (f64, f64),
    rng: &mut R,
) -> Result<TerminalConstants, ConfigError> {
    if count == 0 {
        return Ok(TerminalConstants::empty());
    }
    let (lo, hi) = range;
    if lo >= hi {
        return Err(ConfigError::EmptyRange { lo, hi });
    }
    let dist = Uniform::new(lo, hi);
    Ok(TerminalConstants {
        values: (0..count).map(|_| dist.sample(rng)).collect(),
    })
}
