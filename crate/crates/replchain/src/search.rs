//! Exhaustive enumeration of unary chains: minimal-depth search and bounded
//! refutation.
//!
//! Candidates are pruned by two facts about minimal solutions of `R(m)`: the
//! innermost rule must have `ell <= m` (a longer pattern never touches the
//! inputs) and `r >= 1` (an empty replacement erases `1^ell` entirely), and
//! the outermost rule must have `ell >= 2` and `r <= 1` (anything else is
//! inert or leaves more than one character). A single rule is both innermost
//! and outermost and must satisfy all four constraints at once.
//!
//! Refutation within bounds is corroboration of the analytic case analysis,
//! not a replacement for it; no finite `r` bound is known that would make
//! bounded search complete.

use std::fmt;

use rayon::prelude::*;

use crate::oracle;
use crate::unary::{self, rule_length_map, UnaryRule};

/// Finite parameter box for the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_ell: u64,
    pub max_r: u64,
    pub max_depth: usize,
}

impl SearchBounds {
    /// Defaults scale with the task: `ell` and `r` up to `2m + 2`, depth up
    /// to 4. Comfortably covers every chain this crate constructs.
    pub fn default_for(m: u64) -> Self {
        let limit = m.saturating_mul(2).saturating_add(2);
        SearchBounds {
            max_ell: limit,
            max_r: limit,
            max_depth: 4,
        }
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ell<={},r<={}", self.max_ell, self.max_r)
    }
}

/// Which depths a result covers: a sweep up to a maximum, or one exact depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthsSearched {
    UpTo(usize),
    Exactly(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { depth: usize, chain: Vec<UnaryRule> },
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Number of candidates tested before the result was known, counted in
    /// enumeration order.
    pub tested: u64,
    pub bounds: SearchBounds,
    pub depths: DepthsSearched,
}

impl SearchResult {
    /// True when the search space was exhausted without a solution.
    pub fn refuted(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Exhausted)
    }

    pub fn found_chain(&self) -> Option<&[UnaryRule]> {
        match &self.outcome {
            SearchOutcome::Found { chain, .. } => Some(chain),
            SearchOutcome::Exhausted => None,
        }
    }

    pub fn found_depth(&self) -> Option<usize> {
        match &self.outcome {
            SearchOutcome::Found { depth, .. } => Some(*depth),
            SearchOutcome::Exhausted => None,
        }
    }

    /// One-line record: `FOUND depth=<d> chain=<ell r;ell r;...>` or
    /// `EXHAUSTED tested=<n> bounds=<...>`.
    pub fn record(&self) -> String {
        match &self.outcome {
            SearchOutcome::Found { depth, chain } => {
                let rules: Vec<String> = chain.iter().map(|r| r.to_string()).collect();
                format!("FOUND depth={} chain={}", depth, rules.join(";"))
            }
            SearchOutcome::Exhausted => {
                let depths = match self.depths {
                    DepthsSearched::UpTo(d) => format!("depth<={d}"),
                    DepthsSearched::Exactly(d) => format!("depth={d}"),
                };
                format!(
                    "EXHAUSTED tested={} bounds={},{}",
                    self.tested, self.bounds, depths
                )
            }
        }
    }
}

/// Deepest supported enumeration; the candidate count explodes long before
/// this matters.
const MAX_DEPTH: usize = 16;

/// The candidate chains of one depth, addressable by index in enumeration
/// order (lexicographic over the rule tuples, innermost rule most
/// significant, `ell` before `r`, ascending).
struct CandidateSpace {
    per_pos: Vec<Vec<UnaryRule>>,
    strides: Vec<u64>,
    total: u64,
}

impl CandidateSpace {
    fn pruned(depth: usize, m: u64, bounds: &SearchBounds) -> Self {
        assert!(depth >= 1, "chains have at least one rule");
        Self::build(depth, |pos| {
            let innermost = pos == 0;
            let outermost = pos == depth - 1;
            let ell_lo = if outermost { 2 } else { 1 };
            let ell_hi = if innermost {
                m.min(bounds.max_ell)
            } else {
                bounds.max_ell
            };
            let r_lo = if innermost { 1 } else { 0 };
            let r_hi = if outermost {
                bounds.max_r.min(1)
            } else {
                bounds.max_r
            };
            (ell_lo, ell_hi, r_lo, r_hi)
        })
    }

    fn unpruned(depth: usize, bounds: &SearchBounds) -> Self {
        assert!(depth >= 1, "chains have at least one rule");
        Self::build(depth, |_| (1, bounds.max_ell, 0, bounds.max_r))
    }

    fn build(depth: usize, ranges: impl Fn(usize) -> (u64, u64, u64, u64)) -> Self {
        assert!(
            depth <= MAX_DEPTH,
            "enumeration supports depth <= {MAX_DEPTH}"
        );
        let per_pos: Vec<Vec<UnaryRule>> = (0..depth)
            .map(|pos| {
                let (ell_lo, ell_hi, r_lo, r_hi) = ranges(pos);
                let mut rules = Vec::new();
                for ell in ell_lo..=ell_hi {
                    for r in r_lo..=r_hi {
                        rules.push(UnaryRule::new(ell, r).expect("ell_lo >= 1"));
                    }
                }
                rules
            })
            .collect();
        // innermost position is the most significant digit, so its stride is
        // the product of all later position sizes
        let mut strides = vec![0u64; depth];
        let mut acc = 1u64;
        for pos in (0..depth).rev() {
            strides[pos] = acc;
            acc = acc
                .checked_mul(per_pos[pos].len() as u64)
                .expect("search space exceeds u64 indexing");
        }
        CandidateSpace {
            per_pos,
            strides,
            total: acc,
        }
    }

    fn rule_at(&self, index: u64, pos: usize) -> UnaryRule {
        let len = self.per_pos[pos].len() as u64;
        self.per_pos[pos][((index / self.strides[pos]) % len) as usize]
    }

    fn decode(&self, index: u64) -> Vec<UnaryRule> {
        (0..self.per_pos.len())
            .map(|pos| self.rule_at(index, pos))
            .collect()
    }

    /// Length-map check without allocating the candidate.
    fn solves_at(&self, index: u64, m: u64) -> bool {
        let depth = self.per_pos.len();
        let mut rules = [self.per_pos[0][0]; MAX_DEPTH];
        let mut rest = index;
        for pos in (0..depth).rev() {
            let len = self.per_pos[pos].len() as u64;
            rules[pos] = self.per_pos[pos][(rest % len) as usize];
            rest /= len;
        }
        for k in 1..=m {
            let mut len = k;
            for &rule in &rules[..depth] {
                len = rule_length_map(rule, len);
            }
            if len != 1 {
                return false;
            }
        }
        true
    }

    /// Index of the first solving candidate in enumeration order.
    ///
    /// Large spaces are scanned in consecutive chunks, each tested in
    /// parallel; chunks are visited in order and `find_first` reports the
    /// leftmost hit within a chunk, so the result is identical to the
    /// sequential scan.
    fn find_first_solving(&self, m: u64) -> Option<u64> {
        const CHUNK: u64 = 1 << 21;
        if self.total <= CHUNK {
            return (0..self.total).find(|&i| self.solves_at(i, m));
        }
        let mut start = 0u64;
        while start < self.total {
            let end = self.total.min(start + CHUNK);
            let hit = (start..end)
                .into_par_iter()
                .find_first(|&i| self.solves_at(i, m));
            if hit.is_some() {
                return hit;
            }
            start = end;
        }
        None
    }
}

/// Iterator over all candidate chains of one depth, in enumeration order.
pub struct ChainEnumerator {
    space: CandidateSpace,
    next: u64,
}

impl Iterator for ChainEnumerator {
    type Item = Vec<UnaryRule>;

    fn next(&mut self) -> Option<Vec<UnaryRule>> {
        if self.next >= self.space.total {
            return None;
        }
        let chain = self.space.decode(self.next);
        self.next += 1;
        Some(chain)
    }
}

/// Yields every unary chain of exactly `depth` rules within `bounds`,
/// innermost-rule pruning for task `R(m)` applied.
pub fn enumerate_chains(depth: usize, m: u64, bounds: SearchBounds) -> ChainEnumerator {
    ChainEnumerator {
        space: CandidateSpace::pruned(depth, m, &bounds),
        next: 0,
    }
}

/// The same enumeration with no pruning at all; exists so the pruning rules
/// can be checked against a full scan.
pub fn enumerate_chains_unpruned(depth: usize, bounds: SearchBounds) -> ChainEnumerator {
    ChainEnumerator {
        space: CandidateSpace::unpruned(depth, &bounds),
        next: 0,
    }
}

/// Searches depths `1..=bounds.max_depth` in order and returns the first
/// chain (in enumeration order) that solves `R(m)`, or an exhaustion record.
///
/// Every hit found through the length-map fast path is re-verified through
/// the string engine before being reported.
pub fn find_min_depth(m: u64, bounds: SearchBounds) -> SearchResult {
    let mut tested = 0u64;
    for depth in 1..=bounds.max_depth {
        let space = CandidateSpace::pruned(depth, m, &bounds);
        match space.find_first_solving(m) {
            Some(index) => {
                tested += index + 1;
                let chain = space.decode(index);
                verify_through_engine(&chain, m);
                return SearchResult {
                    outcome: SearchOutcome::Found { depth, chain },
                    tested,
                    bounds,
                    depths: DepthsSearched::UpTo(bounds.max_depth),
                };
            }
            None => tested += space.total,
        }
    }
    SearchResult {
        outcome: SearchOutcome::Exhausted,
        tested,
        bounds,
        depths: DepthsSearched::UpTo(bounds.max_depth),
    }
}

/// Tests every chain of exactly `depth` rules within `bounds` against
/// `R(m)`. The result is a refutation when the scan exhausts the space; a
/// found chain (re-verified through the engine) disproves the refutation.
pub fn refute_depth(m: u64, depth: usize, bounds: SearchBounds) -> SearchResult {
    let space = CandidateSpace::pruned(depth, m, &bounds);
    match space.find_first_solving(m) {
        Some(index) => {
            let chain = space.decode(index);
            verify_through_engine(&chain, m);
            SearchResult {
                outcome: SearchOutcome::Found { depth, chain },
                tested: index + 1,
                bounds,
                depths: DepthsSearched::Exactly(depth),
            }
        }
        None => SearchResult {
            outcome: SearchOutcome::Exhausted,
            tested: space.total,
            bounds,
            depths: DepthsSearched::Exactly(depth),
        },
    }
}

fn verify_through_engine(chain: &[UnaryRule], m: u64) {
    let materialized = unary::to_chain(chain);
    let confirmed = oracle::solves_via_engine(&materialized, m)
        .expect("materialized chain is unary by construction");
    assert!(
        confirmed,
        "length-map fast path accepted a chain the string engine rejects: {chain:?}"
    );
}
