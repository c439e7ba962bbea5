//! Micro-benchmark harness comparing digit-run normalization strategies.
//!
//! Three standard implementations: the blow-up chain built for runs of up to
//! 32 digits, the four-rule length-decreasing chain, and a one-pass scanner
//! standing in for a regular-expression engine. Outputs are compared across
//! the whole corpus before anything is timed; a report exists only when all
//! implementations agree. Timing ratios are reported for inspection and are
//! deliberately never asserted anywhere, since they depend on the machine.

use std::fmt::Write as _;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::construct::{length_decreasing_chain, theorem3_chain};
use crate::engine::{translate, Chain};
use crate::oracle::{DIGIT_TRANSLATE_FROM, DIGIT_TRANSLATE_TO};

const WARMUP_PASSES: u32 = 3;
const TIMED_PASSES: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("invalid corpus spec: {0}")]
    InvalidCorpusSpec(String),
    /// Implementations computed different outputs for one input; the report
    /// would compare timings of functions that do not compute the same
    /// thing, so no report is produced.
    #[error("implementations disagree on {input:?}: {}",
            outputs.iter().map(|(n, o)| format!("{n}={o:?}")).collect::<Vec<_>>().join(", "))]
    Disagreement {
        input: String,
        outputs: Vec<(String, String)>,
    },
}

/// Deterministic corpus description: the same spec always generates the same
/// strings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSpec {
    seed: u64,
    count: usize,
    max_len: usize,
    digit_density: f64,
}

impl CorpusSpec {
    pub fn new(
        seed: u64,
        count: usize,
        max_len: usize,
        digit_density: f64,
    ) -> Result<Self, BenchError> {
        if count < 1 {
            return Err(BenchError::InvalidCorpusSpec("count must be >= 1".into()));
        }
        if max_len < 1 {
            return Err(BenchError::InvalidCorpusSpec("max_len must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&digit_density) {
            return Err(BenchError::InvalidCorpusSpec(
                "digit_density must lie in [0, 1]".into(),
            ));
        }
        Ok(CorpusSpec {
            seed,
            count,
            max_len,
            digit_density,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn digit_density(&self) -> f64 {
        self.digit_density
    }
}

/// Generates `count` strings of length up to `max_len`, mixing digit runs
/// and lowercase filler at roughly `digit_density`.
pub fn generate_corpus(spec: &CorpusSpec) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    (0..spec.count)
        .map(|_| {
            let len = rng.random_range(0..=spec.max_len);
            (0..len)
                .map(|_| {
                    if rng.random_bool(spec.digit_density) {
                        char::from(b'0' + rng.random_range(0..10u8))
                    } else {
                        char::from(b'a' + rng.random_range(0..26u8))
                    }
                })
                .collect()
        })
        .collect()
}

/// A named normalization strategy.
pub struct Normalizer {
    name: String,
    run: Box<dyn Fn(&str) -> String + Sync>,
}

impl Normalizer {
    pub fn new(name: impl Into<String>, run: impl Fn(&str) -> String + Sync + 'static) -> Self {
        Normalizer {
            name: name.into(),
            run: Box::new(run),
        }
    }

    /// Chain-based strategy: translate digits to ones, then apply the chain.
    pub fn from_chain(name: impl Into<String>, chain: Chain) -> Self {
        Normalizer::new(name, move |s: &str| {
            let ones = translate(s, DIGIT_TRANSLATE_FROM, DIGIT_TRANSLATE_TO)
                .expect("preamble arguments are fixed and valid");
            chain.apply(&ones)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn normalize(&self, s: &str) -> String {
        (self.run)(s)
    }
}

/// One-pass collapse of every maximal digit run to `'1'`; the stand-in for
/// a regex-based solution.
pub fn scanner_normalize(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_run = false;
    for c in s.chars() {
        if c.is_ascii_digit() {
            if !in_run {
                out.push('1');
                in_run = true;
            }
        } else {
            out.push(c);
            in_run = false;
        }
    }
    out
}

/// The three implementations every report is expected to include.
pub fn standard_implementations() -> Vec<Normalizer> {
    vec![
        Normalizer::from_chain("theorem3", theorem3_chain(32)),
        Normalizer::from_chain(
            "length-decreasing",
            length_decreasing_chain(4).expect("four terms are far from overflow"),
        ),
        Normalizer::new("scanner", |s: &str| scanner_normalize(s)),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchEntry {
    pub name: String,
    /// Median of the per-pass wall-clock totals.
    pub total: Duration,
    pub mean_per_string: Duration,
    /// Hex prefix of a SHA-256 over all outputs, for cheap cross-run
    /// comparison of what was computed.
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub entries: Vec<BenchEntry>,
    pub agreement: bool,
    pub corpus_size: usize,
    pub warmup_passes: u32,
    pub timed_passes: u32,
}

impl BenchReport {
    /// Aligned plain-text rendering, one row per implementation.
    pub fn render_text(&self) -> String {
        let best = self
            .entries
            .iter()
            .map(|e| e.total)
            .min()
            .unwrap_or(Duration::ZERO);
        let name_width = self
            .entries
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(0)
            .max("implementation".len());
        let mut out = String::new();
        let _ = writeln!(
            out,
            "corpus: {} strings; passes: {} warmup + {} timed (median reported)",
            self.corpus_size, self.warmup_passes, self.timed_passes
        );
        let _ = writeln!(out, "agreement: {}", self.agreement);
        let _ = writeln!(
            out,
            "{:<name_width$}  {:>12}  {:>16}  {:>8}  digest",
            "implementation", "total(us)", "per-string(ns)", "vs-best"
        );
        for entry in &self.entries {
            let ratio = if best.is_zero() {
                1.0
            } else {
                entry.total.as_secs_f64() / best.as_secs_f64()
            };
            let _ = writeln!(
                out,
                "{:<name_width$}  {:>12.1}  {:>16.1}  {:>7.2}x  {}",
                entry.name,
                entry.total.as_secs_f64() * 1e6,
                entry.mean_per_string.as_secs_f64() * 1e9,
                ratio,
                entry.digest
            );
        }
        out
    }

    /// Line-oriented `key=value` records for scripting.
    pub fn render_records(&self) -> String {
        let best = self
            .entries
            .iter()
            .map(|e| e.total)
            .min()
            .unwrap_or(Duration::ZERO);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "corpus_size={} warmup_passes={} timed_passes={} agreement={}",
            self.corpus_size, self.warmup_passes, self.timed_passes, self.agreement
        );
        for entry in &self.entries {
            let ratio = if best.is_zero() {
                1.0
            } else {
                entry.total.as_secs_f64() / best.as_secs_f64()
            };
            let _ = writeln!(
                out,
                "impl={} total_ns={} mean_ns={} ratio={:.4} digest={}",
                entry.name,
                entry.total.as_nanos(),
                entry.mean_per_string.as_nanos(),
                ratio,
                entry.digest
            );
        }
        out
    }
}

/// Applies every implementation to every corpus string, verifies that all
/// outputs agree, then times `TIMED_PASSES` full passes per implementation
/// after `WARMUP_PASSES` untimed ones.
pub fn run_bench(
    corpus: &[String],
    implementations: &[Normalizer],
) -> Result<BenchReport, BenchError> {
    let outputs: Vec<Vec<String>> = implementations
        .iter()
        .map(|imp| corpus.iter().map(|s| imp.normalize(s)).collect())
        .collect();

    if let Some((reference, rest)) = outputs.split_first() {
        for (i, s) in corpus.iter().enumerate() {
            if rest.iter().any(|other| other[i] != reference[i]) {
                return Err(BenchError::Disagreement {
                    input: s.clone(),
                    outputs: implementations
                        .iter()
                        .zip(&outputs)
                        .map(|(imp, outs)| (imp.name().to_string(), outs[i].clone()))
                        .collect(),
                });
            }
        }
    }

    let entries = implementations
        .iter()
        .zip(&outputs)
        .map(|(imp, outs)| {
            if corpus.is_empty() {
                return BenchEntry {
                    name: imp.name().to_string(),
                    total: Duration::ZERO,
                    mean_per_string: Duration::ZERO,
                    digest: digest_outputs(outs),
                };
            }
            for _ in 0..WARMUP_PASSES {
                for s in corpus {
                    black_box(imp.normalize(black_box(s)));
                }
            }
            let mut totals: Vec<Duration> = (0..TIMED_PASSES)
                .map(|_| {
                    let start = Instant::now();
                    for s in corpus {
                        black_box(imp.normalize(black_box(s)));
                    }
                    start.elapsed()
                })
                .collect();
            totals.sort();
            let total = median(&totals);
            let mean_per_string = if corpus.is_empty() {
                Duration::ZERO
            } else {
                total / corpus.len() as u32
            };
            BenchEntry {
                name: imp.name().to_string(),
                total,
                mean_per_string,
                digest: digest_outputs(outs),
            }
        })
        .collect();

    Ok(BenchReport {
        entries,
        agreement: true,
        corpus_size: corpus.len(),
        warmup_passes: WARMUP_PASSES,
        timed_passes: TIMED_PASSES,
    })
}

fn median(sorted: &[Duration]) -> Duration {
    if sorted.is_empty() {
        return Duration::ZERO;
    }
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2
    }
}

fn digest_outputs(outputs: &[String]) -> String {
    let mut hasher = Sha256::new();
    for out in outputs {
        hasher.update(out.as_bytes());
        hasher.update(b"\n");
    }
    hex::encode(hasher.finalize())[..16].to_string()
}
