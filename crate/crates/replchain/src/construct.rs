//! Chain constructors.
//!
//! `theorem3_chain` builds the three-rule chain that solves `R(m)` for any
//! `m`: blow every `'1'` up to `1^(m-1)`, reduce blocks of `m` to one, then
//! erase blocks of `m-2`. The blow-up step is what makes depth three
//! sufficient; restricting to length-decreasing rules instead caps the
//! reachable task at `a(n)` for `n` rules, where `a(1) = 2` and
//! `a(n) = a(n-1) * (a(n-1) + 6) / 4` (`length_decreasing_chain` realizes
//! those optima).

use thiserror::Error;

use crate::engine::Chain;
use crate::unary::{self, max_reach, UnaryRule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("reach sequence term a({n}) exceeds 64-bit integer range")]
    Overflow { n: u32 },
}

/// Verify `max_reach(ell, a(n-1)) == a(n)` by brute force only while the scan
/// stays cheap; later terms grow doubly exponentially.
const REACH_SELF_CHECK_LIMIT: u64 = 1_000_000;

/// The three-rule chain solving `R(m)`, innermost first:
/// `[1 -> 1^(m-1), 1^m -> 1, 1^(m-2) -> empty]` for `m >= 5`.
///
/// For `m <= 4` that template degenerates (its third pattern would be empty),
/// so the known minimal chains are returned instead: the empty chain for
/// `m = 1`, `[11 -> 1]` for `m = 2`, and `[11 -> 1, 11 -> 1]` for `m` 3 or 4.
pub fn theorem3_chain(m: u64) -> Chain {
    assert!(m >= 1, "tasks start at R(1)");
    let pairs: Vec<(u64, u64)> = match m {
        1 => vec![],
        2 => vec![(2, 1)],
        3 | 4 => vec![(2, 1), (2, 1)],
        _ => vec![(1, m - 1), (m, 1), (m - 2, 0)],
    };
    from_pairs(&pairs)
}

/// The four-rule chain replacing `1111`, `111`, `11`, and again `11` with
/// `1`; normalizes runs of up to 34 ones.
pub fn intro_chain() -> Chain {
    from_pairs(&[(4, 1), (3, 1), (2, 1), (2, 1)])
}

/// `n`-th term of the reach sequence: the largest task solvable with `n`
/// length-decreasing replacements. `a(1) = 2`,
/// `a(n) = a(n-1) * (a(n-1) + 6) / 4` in exact integer arithmetic.
pub fn a159860(n: u32) -> Result<u64, ConstructError> {
    assert!(n >= 1, "the sequence starts at n = 1");
    ReachSequence::new()
        .nth(n as usize - 1)
        .ok_or(ConstructError::Overflow { n })
}

/// Iterator over the reach sequence `2, 4, 10, 40, 460, ...`; stops before
/// the first term that would overflow `u64`.
#[derive(Debug, Clone)]
pub struct ReachSequence {
    next: Option<u64>,
}

impl ReachSequence {
    pub fn new() -> Self {
        ReachSequence { next: Some(2) }
    }
}

impl Default for ReachSequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ReachSequence {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        // every term is even, so a * (a + 6) is divisible by 4
        self.next = current
            .checked_add(6)
            .and_then(|s| current.checked_mul(s))
            .map(|p| p / 4);
        Some(current)
    }
}

/// The optimal chain of `n` length-decreasing rules: it solves exactly
/// `R(a(n))`.
///
/// Built inductively: `chain(1) = [11 -> 1]`, and `chain(n)` prepends
/// `1^ell -> 1` with `ell = a(n-1)/2 + 1` as the new innermost rule, which
/// maps every run in `[1, a(n)]` into `[1, a(n-1)]`. While terms are small
/// the construction re-derives `a(n)` from [`max_reach`] by brute force as a
/// self-check.
pub fn length_decreasing_chain(n: u32) -> Result<Chain, ConstructError> {
    assert!(n >= 1, "chains have at least one rule");
    let mut pairs = vec![(2u64, 1u64)];
    let mut reach = 2u64; // a(1)
    for i in 2..=n {
        let ell = reach / 2 + 1;
        let next_reach = a159860(i)?;
        if next_reach <= REACH_SELF_CHECK_LIMIT {
            assert_eq!(
                max_reach(ell, reach),
                next_reach,
                "inner pattern length {ell} does not realize a({i})"
            );
        }
        pairs.insert(0, (ell, 1));
        reach = next_reach;
    }
    Ok(from_pairs(&pairs))
}

fn from_pairs(pairs: &[(u64, u64)]) -> Chain {
    let rules: Vec<UnaryRule> = pairs
        .iter()
        .map(|&(ell, r)| UnaryRule::new(ell, r).expect("constructed patterns are non-empty"))
        .collect();
    unary::to_chain(&rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{max_solved, solves, MaxM};
    use crate::unary::{chain_length_map, unary_rules};

    fn pairs_of(chain: &Chain) -> Vec<(u64, u64)> {
        unary_rules(chain)
            .unwrap()
            .iter()
            .map(|r| (r.ell(), r.r()))
            .collect()
    }

    #[test]
    fn theorem3_at_5() {
        assert_eq!(pairs_of(&theorem3_chain(5)), vec![(1, 4), (5, 1), (3, 0)]);
    }

    #[test]
    fn theorem3_small_cases() {
        assert_eq!(pairs_of(&theorem3_chain(1)), vec![]);
        assert_eq!(pairs_of(&theorem3_chain(2)), vec![(2, 1)]);
        assert_eq!(pairs_of(&theorem3_chain(3)), vec![(2, 1), (2, 1)]);
        assert_eq!(pairs_of(&theorem3_chain(4)), vec![(2, 1), (2, 1)]);
    }

    #[test]
    fn theorem3_at_32_is_tight() {
        let chain = theorem3_chain(32);
        assert_eq!(max_solved(&chain, 100).unwrap(), MaxM::Exact(32));
    }

    #[test]
    fn theorem3_first_rule_grows_for_m_at_least_3() {
        for m in 3..=20 {
            let pairs = pairs_of(&theorem3_chain(m));
            if m >= 5 {
                let (ell, r) = pairs[0];
                assert!(r > ell, "m={m}: blow-up rule must be length-increasing");
            }
        }
    }

    #[test]
    fn reach_sequence_known_prefix() {
        let terms: Vec<u64> = ReachSequence::new().take(6).collect();
        assert_eq!(terms, vec![2, 4, 10, 40, 460, 53_590]);
    }

    #[test]
    fn a159860_known_values() {
        assert_eq!(a159860(1).unwrap(), 2);
        assert_eq!(a159860(2).unwrap(), 4);
        assert_eq!(a159860(3).unwrap(), 10);
        assert_eq!(a159860(4).unwrap(), 40);
        assert_eq!(a159860(5).unwrap(), 460);
        assert_eq!(a159860(6).unwrap(), 53_590);
    }

    #[test]
    fn a159860_overflows_eventually() {
        // terms grow doubly exponentially; u64 runs out at n = 9
        assert_eq!(a159860(8).map(|v| v > 0), Ok(true));
        assert_eq!(a159860(9), Err(ConstructError::Overflow { n: 9 }));
    }

    #[test]
    fn length_decreasing_known_chains() {
        assert_eq!(pairs_of(&length_decreasing_chain(1).unwrap()), vec![(2, 1)]);
        assert_eq!(
            pairs_of(&length_decreasing_chain(2).unwrap()),
            vec![(2, 1), (2, 1)]
        );
        assert_eq!(
            pairs_of(&length_decreasing_chain(3).unwrap()),
            vec![(3, 1), (2, 1), (2, 1)]
        );
        assert_eq!(
            pairs_of(&length_decreasing_chain(4).unwrap()),
            vec![(6, 1), (3, 1), (2, 1), (2, 1)]
        );
    }

    #[test]
    fn length_decreasing_rules_never_grow() {
        for n in 1..=6 {
            let chain = length_decreasing_chain(n).unwrap();
            for rule in unary_rules(&chain).unwrap() {
                assert!(rule.is_length_decreasing());
            }
        }
    }

    #[test]
    fn length_decreasing_chain_6_reaches_a6() {
        // cross-check of a(6) = 53590: the 6-rule chain normalizes every run
        // up to the term and fails one past it
        let rules = unary_rules(&length_decreasing_chain(6).unwrap()).unwrap();
        assert!((1..=53_590).all(|k| chain_length_map(&rules, k) == 1));
        assert_ne!(chain_length_map(&rules, 53_591), 1);
    }

    #[test]
    fn intro_chain_shape_and_reach() {
        let chain = intro_chain();
        assert_eq!(pairs_of(&chain), vec![(4, 1), (3, 1), (2, 1), (2, 1)]);
        assert_eq!(max_solved(&chain, 100).unwrap(), MaxM::Exact(34));
        assert!(solves(&chain, 32).unwrap());
        assert!(!solves(&chain, 40).unwrap());
    }
}
