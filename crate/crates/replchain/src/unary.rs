//! Closed-form length arithmetic for unary rules.
//!
//! On a run of `k` ones, a single-pass replace of `1^ell` by `1^r` consumes
//! `floor(k / ell)` disjoint occurrences and leaves the remainder untouched,
//! so the output length is `floor(k / ell) * r + k mod ell`. That turns every
//! question about unary chains into integer arithmetic, with the string
//! engine kept around as the ground-truth oracle.

use std::fmt;

use thiserror::Error;

use crate::engine::{Chain, Rule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnaryError {
    #[error("unary pattern length must be at least 1")]
    ZeroPatternLength,
    #[error("rule uses characters outside the unary alphabet")]
    NonUnaryRule,
    #[error("rule (ell={ell}, r={r}) is not length-decreasing")]
    NotLengthDecreasing { ell: u64, r: u64 },
}

/// A replacement rule over the unary alphabet, stored as lengths: the
/// pattern is `1^ell` and the replacement is `1^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnaryRule {
    ell: u64,
    r: u64,
}

impl UnaryRule {
    pub fn new(ell: u64, r: u64) -> Result<Self, UnaryError> {
        if ell == 0 {
            return Err(UnaryError::ZeroPatternLength);
        }
        Ok(UnaryRule { ell, r })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn is_length_decreasing(&self) -> bool {
        self.r <= self.ell
    }

    pub fn to_rule(&self) -> Rule {
        Rule::new("1".repeat(self.ell as usize), "1".repeat(self.r as usize))
            .expect("ell >= 1 makes the pattern non-empty")
    }

    pub fn from_rule(rule: &Rule) -> Result<Self, UnaryError> {
        if !rule.is_unary() {
            return Err(UnaryError::NonUnaryRule);
        }
        UnaryRule::new(rule.pattern().len() as u64, rule.replacement().len() as u64)
    }
}

impl fmt::Display for UnaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.ell, self.r)
    }
}

/// Output-length range of a rule over inputs `1..=n`; see [`image_range`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImageRange {
    pub min: u64,
    pub max: u64,
    /// True when every integer in `[min, max]` is attained.
    pub consecutive: bool,
}

/// Length of `replace('1'^k, '1'^ell, '1'^r)`.
///
/// Saturates at `u64::MAX`; saturation cannot make a non-1 result look like
/// 1, so task checks stay truthful even for absurd inputs.
pub fn rule_length_map(rule: UnaryRule, k: u64) -> u64 {
    (k / rule.ell)
        .saturating_mul(rule.r)
        .saturating_add(k % rule.ell)
}

/// Output length of a whole chain on `'1'^k`: the per-rule maps folded in
/// application order.
pub fn chain_length_map(rules: &[UnaryRule], k: u64) -> u64 {
    rules
        .iter()
        .fold(k, |len, &rule| rule_length_map(rule, len))
}

/// Minimum and maximum of the rule's length map over inputs `1..=n`, plus
/// whether the attained lengths form a consecutive range.
///
/// Only meaningful for length-decreasing rules (`r <= ell`); others are
/// rejected.
pub fn image_range(rule: UnaryRule, n: u64) -> Result<ImageRange, UnaryError> {
    if !rule.is_length_decreasing() {
        return Err(UnaryError::NotLengthDecreasing {
            ell: rule.ell,
            r: rule.r,
        });
    }
    assert!(n >= 1, "image_range needs at least one input length");
    let mut min = u64::MAX;
    let mut max = 0u64;
    let mut attained = vec![false; (rule_length_map(rule, n).max(n) + 1) as usize];
    for k in 1..=n {
        let f = rule_length_map(rule, k);
        min = min.min(f);
        max = max.max(f);
        attained[f as usize] = true;
    }
    let consecutive = (min..=max).all(|v| attained[v as usize]);
    Ok(ImageRange {
        min,
        max,
        consecutive,
    })
}

/// Largest `n` such that the rule `(ell, r=1)` maps every `k` in `[1, n]`
/// to a length in `[1, a_max]`.
///
/// This scans upward from `k = 1` until the first violation; it is the
/// defining brute force against which the closed form
/// [`max_reach_closed_form`] is validated.
pub fn max_reach(ell: u64, a_max: u64) -> u64 {
    assert!(ell >= 1, "pattern length must be at least 1");
    assert!(a_max >= 1, "target range must be at least [1, 1]");
    let rule = UnaryRule::new(ell, 1).expect("ell checked above");
    let mut k = 1u64;
    loop {
        let f = rule_length_map(rule, k);
        if f < 1 || f > a_max {
            return k - 1;
        }
        k += 1;
    }
}

/// Closed form `ell * (a_max + 3 - ell) - 2` for [`max_reach`], valid for
/// `2 <= ell <= a_max + 2`.
pub fn max_reach_closed_form(ell: u64, a_max: u64) -> u64 {
    assert!(
        ell >= 2 && ell <= a_max + 2,
        "closed form only holds for 2 <= ell <= a_max + 2"
    );
    ell * (a_max + 3 - ell) - 2
}

/// Views a chain as unary rules, innermost first.
pub fn unary_rules(chain: &Chain) -> Result<Vec<UnaryRule>, UnaryError> {
    chain.rules().iter().map(UnaryRule::from_rule).collect()
}

/// Materializes unary rules as a string-rule chain.
pub fn to_chain(rules: &[UnaryRule]) -> Chain {
    Chain::new(rules.iter().map(UnaryRule::to_rule).collect())
}
