//! Ground-truth verification of run-normalization tasks.
//!
//! Task `R(m)` requires a chain to map every run `1^k`, `1 <= k <= m`, to the
//! single character `"1"`. Checks run on the unary length maps for speed; the
//! string-engine route is available separately so the fast path can always be
//! cross-validated.

use std::fmt;

use thiserror::Error;

use crate::engine::{self, Chain};
use crate::unary::{self, UnaryRule};

/// Source characters of the digit-normalization preamble: every digit except
/// `'1'` itself.
pub const DIGIT_TRANSLATE_FROM: &str = "023456789";
/// Target characters of the digit-normalization preamble.
pub const DIGIT_TRANSLATE_TO: &str = "111111111";

/// Default probe cap for [`max_solved`].
pub const DEFAULT_MAX_SOLVED_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("chain has rules outside the unary alphabet")]
    NonUnaryChain,
    #[error("digit run of length {run} exceeds what the chain verifiably normalizes")]
    RunTooLong { run: u64 },
}

/// The task of normalizing runs of up to `m` ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaskR {
    m: u64,
}

impl TaskR {
    /// Panics if `m` is zero; the task is defined for `m >= 1`.
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "task R(m) requires m >= 1");
        TaskR { m }
    }

    pub fn m(self) -> u64 {
        self.m
    }

    pub fn is_solved_by(self, chain: &Chain) -> Result<bool, OracleError> {
        solves(chain, self.m)
    }
}

impl fmt::Display for TaskR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({})", self.m)
    }
}

/// Result of probing for the largest solved task: exact when a failure was
/// observed one past the value, `at-least` when the probe cap was reached
/// without any failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxM {
    Exact(u64),
    AtLeast(u64),
}

impl MaxM {
    pub fn value(self) -> u64 {
        match self {
            MaxM::Exact(v) | MaxM::AtLeast(v) => v,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, MaxM::Exact(_))
    }
}

impl fmt::Display for MaxM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaxM::Exact(v) => write!(f, "exact {v}"),
            MaxM::AtLeast(v) => write!(f, "at-least {v}"),
        }
    }
}

/// True iff the chain maps every `'1'^k`, `1 <= k <= m`, to `"1"`.
///
/// Evaluated through the unary length maps. `m = 0` is vacuously true.
pub fn solves(chain: &Chain, m: u64) -> Result<bool, OracleError> {
    let rules = unary_view(chain)?;
    Ok(solves_unary(&rules, m))
}

/// Length-map evaluation of [`solves`] on an already-unary chain.
pub fn solves_unary(rules: &[UnaryRule], m: u64) -> bool {
    (1..=m).all(|k| unary::chain_length_map(rules, k) == 1)
}

/// Same check as [`solves`], but through actual string replacement. Slower;
/// used to cross-validate the length-map fast path.
pub fn solves_via_engine(chain: &Chain, m: u64) -> Result<bool, OracleError> {
    if !chain.is_unary() {
        return Err(OracleError::NonUnaryChain);
    }
    Ok((1..=m).all(|k| chain.apply(&"1".repeat(k as usize)) == "1"))
}

/// Largest `m <= cap` with [`solves`]; `at-least cap` when no failure shows
/// up within the cap.
///
/// The cap is explicit because nothing guarantees a chain has a finite
/// maximal solved task.
pub fn max_solved(chain: &Chain, cap: u64) -> Result<MaxM, OracleError> {
    assert!(cap >= 1, "probe cap must be at least 1");
    let rules = unary_view(chain)?;
    for k in 1..=cap {
        if unary::chain_length_map(&rules, k) != 1 {
            return Ok(MaxM::Exact(k - 1));
        }
    }
    Ok(MaxM::AtLeast(cap))
}

/// Collapses every maximal digit run in `s` to a single `'1'` by translating
/// digits to ones and applying the chain; non-digit characters pass through.
///
/// Verifies first that the chain solves `R(L)` for the longest digit run `L`
/// in `s`, and reports [`OracleError::RunTooLong`] otherwise. Callers that
/// have already verified the chain can use
/// [`normalize_digit_runs_unverified`].
pub fn normalize_digit_runs(chain: &Chain, s: &str) -> Result<String, OracleError> {
    let rules = unary_view(chain)?;
    let longest = longest_digit_run(s);
    if longest > 0 && !solves_unary(&rules, longest) {
        return Err(OracleError::RunTooLong { run: longest });
    }
    Ok(translate_and_apply(chain, s))
}

/// [`normalize_digit_runs`] without the per-call capability check.
pub fn normalize_digit_runs_unverified(chain: &Chain, s: &str) -> Result<String, OracleError> {
    if !chain.is_unary() {
        return Err(OracleError::NonUnaryChain);
    }
    Ok(translate_and_apply(chain, s))
}

fn translate_and_apply(chain: &Chain, s: &str) -> String {
    let ones = engine::translate(s, DIGIT_TRANSLATE_FROM, DIGIT_TRANSLATE_TO)
        .expect("preamble arguments are fixed and valid");
    chain.apply(&ones)
}

/// Length of the longest maximal run of ASCII digits in `s`.
pub fn longest_digit_run(s: &str) -> u64 {
    let mut longest = 0u64;
    let mut current = 0u64;
    for c in s.chars() {
        if c.is_ascii_digit() {
            current += 1;
            longest = longest.max(current);
        } else {
            current = 0;
        }
    }
    longest
}

fn unary_view(chain: &Chain) -> Result<Vec<UnaryRule>, OracleError> {
    unary::unary_rules(chain).map_err(|_| OracleError::NonUnaryChain)
}
