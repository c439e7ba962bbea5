//! Nested string-replacement chains over a unary alphabet.
//!
//! A chain is an ordered list of literal replacement rules, applied
//! innermost-first with exact SQL `REPLACE` semantics: one left-to-right
//! pass, leftmost non-overlapping matches, no rescanning of emitted text.
//! Task `R(m)` asks a chain to collapse every run `1^k`, `1 <= k <= m`, to a
//! single `'1'`; together with a `TRANSLATE` preamble that maps all digits to
//! `'1'`, such a chain normalizes every number embedded in a string to the
//! digit `1` using only portable SQL string functions.
//!
//! The crate provides:
//!
//! - [`engine`]: `replace`, `translate`, chain application, and the chain
//!   text format;
//! - [`unary`]: closed-form length arithmetic replacing string manipulation
//!   with integer computation;
//! - [`oracle`]: ground-truth task verification and digit-run normalization;
//! - [`search`]: exhaustive minimal-depth search and bounded refutation;
//! - [`construct`]: the three-rule chain solving `R(m)` for any `m`, optimal
//!   length-decreasing chains, and the reach recurrence behind them;
//! - [`sqlgen`]: portable SQL expression emission;
//! - [`mod@bench`]: a correctness-checked micro-benchmark harness.
//!
//! The `replchain` binary exposes all of it on the command line.

pub mod bench;
pub mod construct;
pub mod engine;
pub mod oracle;
pub mod search;
pub mod sqlgen;
pub mod unary;

pub use engine::{apply_chain, parse_chain, replace, translate, Chain, EngineError, Rule};
pub use oracle::{max_solved, solves, MaxM, TaskR};
pub use unary::UnaryRule;
