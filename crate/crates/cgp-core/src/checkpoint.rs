//! Checkpoint snapshots and their line-oriented text encoding.
//!
//! A checkpoint captures everything a job needs to continue bit-identically:
//! the full random-generator state (not merely the seed — mid-run state makes
//! resume unconditional), the population genotypes, the ERC constants, the
//! generation and evaluation counters, and a fingerprint of the effective
//! parameters. The effective parameters themselves are embedded as `#`
//! comment lines so a fingerprint mismatch can be reported as a key diff.
//!
//! Layout, one field per line:
//!
//! ```text
//! version 1
//! fingerprint <16 hex digits>
//! job <index>
//! # <key> = <value>          (one line per effective parameter)
//! rng_state <112 hex digits: seed, stream, word position>
//! generation <count>
//! evaluations <count>
//! constants <space-separated values, possibly none>
//! <one genotype per line, genome-module serialization>
//! ```

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::genome::Genotype;
use crate::params::GenomeKind;

/// Complete serialized state of the stochastic stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngState {
    pub seed: [u8; 32],
    pub stream: u64,
    pub word_pos: u128,
}

impl RngState {
    pub fn capture(rng: &ChaCha8Rng) -> Self {
        Self {
            seed: rng.get_seed(),
            stream: rng.get_stream(),
            word_pos: rng.get_word_pos(),
        }
    }

    /// Reconstructs a generator that continues exactly where the captured
    /// one left off.
    pub fn restore(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(self.word_pos);
        rng
    }
}

/// One resumable snapshot of a job.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub fingerprint: u64,
    pub job_index: usize,
    /// Effective `key = value` pairs of the run, for mismatch diffing.
    pub params: Vec<(String, String)>,
    pub rng: RngState,
    pub generation: u64,
    pub evaluations: u64,
    pub constants: Vec<f64>,
    pub genomes: Vec<Genotype>,
}

/// Decoding failures, with 1-based line numbers where applicable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckpointError {
    Parse { line: usize, message: String },
    Truncated { missing: &'static str },
    UnsupportedVersion { found: String },
}

impl fmt::Display for CheckpointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parse { line, message } => write!(f, "line {line}: {message}"),
            Self::Truncated { missing } => write!(f, "checkpoint truncated: missing {missing}"),
            Self::UnsupportedVersion { found } => {
                write!(f, "unsupported checkpoint version {found}")
            }
        }
    }
}

impl core::error::Error for CheckpointError {}

const VERSION: &str = "1";

fn push_hex(out: &mut String, bytes: &[u8]) {
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
}

fn parse_hex_bytes(s: &str, out: &mut [u8]) -> Result<(), ()> {
    if s.len() != out.len() * 2 || !s.is_ascii() {
        return Err(());
    }
    for (i, byte) in out.iter_mut().enumerate() {
        *byte = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).map_err(|_| ())?;
    }
    Ok(())
}

impl Checkpoint {
    pub fn encode(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("version {VERSION}\n"));
        out.push_str(&format!("fingerprint {:016x}\n", self.fingerprint));
        out.push_str(&format!("job {}\n", self.job_index));
        for (key, value) in &self.params {
            out.push_str(&format!("# {key} = {value}\n"));
        }
        out.push_str("rng_state ");
        push_hex(&mut out, &self.rng.seed);
        push_hex(&mut out, &self.rng.stream.to_be_bytes());
        push_hex(&mut out, &self.rng.word_pos.to_be_bytes());
        out.push('\n');
        out.push_str(&format!("generation {}\n", self.generation));
        out.push_str(&format!("evaluations {}\n", self.evaluations));
        out.push_str("constants");
        for c in &self.constants {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
        for genome in &self.genomes {
            out.push_str(&genome.serialize());
            out.push('\n');
        }
        out
    }

    pub fn decode(text: &str, kind: GenomeKind) -> Result<Self, CheckpointError> {
        let parse_err = |line: usize, message: String| CheckpointError::Parse { line, message };
        let mut fingerprint: Option<u64> = None;
        let mut job_index: Option<usize> = None;
        let mut params: Vec<(String, String)> = Vec::new();
        let mut rng: Option<RngState> = None;
        let mut generation: Option<u64> = None;
        let mut evaluations: Option<u64> = None;
        let mut constants: Option<Vec<f64>> = None;
        let mut genomes: Vec<Genotype> = Vec::new();
        let mut version_seen = false;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once('=') {
                    params.push((key.trim().to_string(), value.trim().to_string()));
                }
                continue;
            }
            if !version_seen {
                let found = line
                    .strip_prefix("version ")
                    .ok_or_else(|| parse_err(line_no, "expected version header".to_string()))?;
                if found != VERSION {
                    return Err(CheckpointError::UnsupportedVersion {
                        found: found.to_string(),
                    });
                }
                version_seen = true;
                continue;
            }
            let (field, rest) = line.split_once(' ').unwrap_or((line, ""));
            match field {
                "fingerprint" => {
                    fingerprint = Some(
                        u64::from_str_radix(rest, 16)
                            .map_err(|_| parse_err(line_no, "malformed fingerprint".to_string()))?,
                    )
                }
                "job" => {
                    job_index = Some(
                        rest.parse()
                            .map_err(|_| parse_err(line_no, "malformed job index".to_string()))?,
                    )
                }
                "rng_state" => {
                    let mut bytes = [0u8; 56];
                    parse_hex_bytes(rest, &mut bytes)
                        .map_err(|_| parse_err(line_no, "malformed rng state".to_string()))?;
                    let mut seed = [0u8; 32];
                    seed.copy_from_slice(&bytes[..32]);
                    rng = Some(RngState {
                        seed,
                        stream: u64::from_be_bytes(bytes[32..40].try_into().expect("8 bytes")),
                        word_pos: u128::from_be_bytes(bytes[40..56].try_into().expect("16 bytes")),
                    });
                }
                "generation" => {
                    generation = Some(
                        rest.parse()
                            .map_err(|_| parse_err(line_no, "malformed generation".to_string()))?,
                    )
                }
                "evaluations" => {
                    evaluations = Some(
                        rest.parse()
                            .map_err(|_| parse_err(line_no, "malformed evaluations".to_string()))?,
                    )
                }
                "constants" => {
                    let mut values = Vec::new();
                    for token in rest.split_whitespace() {
                        values.push(token.parse().map_err(|_| {
                            parse_err(line_no, format!("malformed constant {token}"))
                        })?);
                    }
                    constants = Some(values);
                }
                _ => {
                    // body: one genotype per line
                    if constants.is_none() {
                        return Err(parse_err(line_no, format!("unknown field {field}")));
                    }
                    genomes.push(Genotype::parse(line, kind).map_err(|e| {
                        parse_err(line_no, format!("malformed genotype: {e}"))
                    })?);
                }
            }
        }

        if !version_seen {
            return Err(CheckpointError::Truncated { missing: "version" });
        }
        let missing = |name: &'static str| CheckpointError::Truncated { missing: name };
        let checkpoint = Self {
            fingerprint: fingerprint.ok_or(missing("fingerprint"))?,
            job_index: job_index.ok_or(missing("job"))?,
            params,
            rng: rng.ok_or(missing("rng_state"))?,
            generation: generation.ok_or(missing("generation"))?,
            evaluations: evaluations.ok_or(missing("evaluations"))?,
            constants: constants.ok_or(missing("constants"))?,
            genomes,
        };
        if checkpoint.genomes.is_empty() {
            return Err(missing("genomes"));
        }
        Ok(checkpoint)
    }
}

/// Human-readable diff of two effective-parameter listings, one line per
/// differing key; empty when they agree.
pub fn diff_params(ours: &[(String, String)], theirs: &[(String, String)]) -> Vec<String> {
    let mut lines = Vec::new();
    for (key, value) in ours {
        match theirs.iter().find(|(k, _)| k == key) {
            Some((_, other)) if other == value => {}
            Some((_, other)) => lines.push(format!("{key}: checkpoint={value} current={other}")),
            None => lines.push(format!("{key}: checkpoint={value} current=<absent>")),
        }
    }
    for (key, value) in theirs {
        if !ours.iter().any(|(k, _)| k == key) {
            lines.push(format!("{key}: checkpoint=<absent> current={value}"));
        }
    }
    lines
}
