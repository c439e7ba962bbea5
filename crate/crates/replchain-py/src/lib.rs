//! Python bindings: the main chain types and operations as a `_replchain`
//! extension module.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use replchain::construct;
use replchain::engine;
use replchain::oracle;
use replchain::search::{self, SearchBounds};
use replchain::sqlgen;
use replchain::unary::{self, UnaryRule};

fn value_error(err: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn unary_pairs(pairs: &[(u64, u64)]) -> PyResult<Vec<UnaryRule>> {
    pairs
        .iter()
        .map(|&(ell, r)| UnaryRule::new(ell, r).map_err(value_error))
        .collect()
}

/// A found chain for Python: its depth and (ell, r) pairs.
type FoundChain = (usize, Vec<(u64, u64)>);

fn max_m_tuple(m: oracle::MaxM) -> (String, u64) {
    match m {
        oracle::MaxM::Exact(v) => ("exact".to_string(), v),
        oracle::MaxM::AtLeast(v) => ("at-least".to_string(), v),
    }
}

/// An ordered list of replacement rules, innermost first.
#[pyclass(skip_from_py_object)]
#[derive(Clone)]
struct Chain {
    inner: engine::Chain,
}

#[pymethods]
impl Chain {
    /// Builds a chain from (pattern, replacement) pairs.
    #[new]
    fn new(rules: Vec<(String, String)>) -> PyResult<Self> {
        let rules = rules
            .into_iter()
            .map(|(p, r)| engine::Rule::new(p, r).map_err(value_error))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Chain {
            inner: engine::Chain::new(rules),
        })
    }

    /// Parses the chain text format (one rule per line, innermost first).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Chain {
            inner: engine::parse_chain(text).map_err(value_error)?,
        })
    }

    /// The three-rule blow-up chain solving R(m).
    #[staticmethod]
    fn theorem3(m: u64) -> PyResult<Self> {
        if m < 1 {
            return Err(PyValueError::new_err("m must be at least 1"));
        }
        Ok(Chain {
            inner: construct::theorem3_chain(m),
        })
    }

    /// The optimal chain of n length-decreasing rules.
    #[staticmethod]
    fn length_decreasing(n: u32) -> PyResult<Self> {
        if n < 1 {
            return Err(PyValueError::new_err("n must be at least 1"));
        }
        Ok(Chain {
            inner: construct::length_decreasing_chain(n)
                .map_err(|e| PyOverflowError::new_err(e.to_string()))?,
        })
    }

    /// The four-rule chain normalizing runs of up to 34 ones.
    #[staticmethod]
    fn intro() -> Self {
        Chain {
            inner: construct::intro_chain(),
        }
    }

    /// Applies every rule in order to `s`.
    fn apply(&self, s: &str) -> String {
        self.inner.apply(s)
    }

    /// True iff the chain maps every run of 1..=m ones to a single one.
    fn solves(&self, m: u64) -> PyResult<bool> {
        oracle::solves(&self.inner, m).map_err(value_error)
    }

    /// Largest solved m as a ("exact" | "at-least", value) pair.
    #[pyo3(signature = (cap = oracle::DEFAULT_MAX_SOLVED_CAP))]
    fn max_solved(&self, cap: u64) -> PyResult<(String, u64)> {
        if cap < 1 {
            return Err(PyValueError::new_err("cap must be at least 1"));
        }
        oracle::max_solved(&self.inner, cap)
            .map(max_m_tuple)
            .map_err(value_error)
    }

    /// Collapses every digit run in `s` to a single '1'. With verify=True
    /// (the default), raises if a run exceeds what the chain solves.
    #[pyo3(signature = (s, verify = true))]
    fn normalize(&self, s: &str, verify: bool) -> PyResult<String> {
        let result = if verify {
            oracle::normalize_digit_runs(&self.inner, s)
        } else {
            oracle::normalize_digit_runs_unverified(&self.inner, s)
        };
        result.map_err(value_error)
    }

    /// Serializes to the chain text format.
    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Renders the chain as a portable SQL expression.
    #[pyo3(signature = (column = "s", include_translate = true,
                        replace_name = "REPLACE", translate_name = "TRANSLATE",
                        empty_literal = "''"))]
    fn to_sql(
        &self,
        column: &str,
        include_translate: bool,
        replace_name: &str,
        translate_name: &str,
        empty_literal: &str,
    ) -> PyResult<String> {
        let options = sqlgen::SqlOptions {
            replace_name: replace_name.to_string(),
            translate_name: translate_name.to_string(),
            include_translate,
            empty_literal: empty_literal.to_string(),
            ..sqlgen::SqlOptions::default()
        };
        sqlgen::emit_sql(&self.inner, column, &options).map_err(value_error)
    }

    /// The rules as (pattern, replacement) pairs.
    fn rules(&self) -> Vec<(String, String)> {
        self.inner
            .rules()
            .iter()
            .map(|r| (r.pattern().to_string(), r.replacement().to_string()))
            .collect()
    }

    /// The rules as (ell, r) length pairs; raises for non-unary chains.
    fn unary_rules(&self) -> PyResult<Vec<(u64, u64)>> {
        Ok(unary::unary_rules(&self.inner)
            .map_err(value_error)?
            .iter()
            .map(|r| (r.ell(), r.r()))
            .collect())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        let pairs: Vec<String> = self
            .inner
            .rules()
            .iter()
            .map(|r| format!("{:?} -> {:?}", r.pattern(), r.replacement()))
            .collect();
        format!("Chain([{}])", pairs.join(", "))
    }
}

/// Single-pass leftmost non-overlapping replacement; emitted text is never
/// rescanned.
#[pyfunction]
fn replace(s: &str, pattern: &str, replacement: &str) -> PyResult<String> {
    engine::replace(s, pattern, replacement).map_err(value_error)
}

/// Per-character substitution: characters of `from_chars` map to the
/// corresponding characters of `to_chars`, everything else passes through.
#[pyfunction]
fn translate(s: &str, from_chars: &str, to_chars: &str) -> PyResult<String> {
    engine::translate(s, from_chars, to_chars).map_err(value_error)
}

/// Output length of replace('1'*k, '1'*ell, '1'*r).
#[pyfunction]
fn rule_length_map(ell: u64, r: u64, k: u64) -> PyResult<u64> {
    let rule = UnaryRule::new(ell, r).map_err(value_error)?;
    Ok(unary::rule_length_map(rule, k))
}

/// Output length of a whole (ell, r) chain on a run of k ones.
#[pyfunction]
fn chain_length_map(rules: Vec<(u64, u64)>, k: u64) -> PyResult<u64> {
    Ok(unary::chain_length_map(&unary_pairs(&rules)?, k))
}

/// (min, max, consecutive) of the rule's length map over inputs 1..=n.
#[pyfunction]
fn image_range(ell: u64, r: u64, n: u64) -> PyResult<(u64, u64, bool)> {
    let rule = UnaryRule::new(ell, r).map_err(value_error)?;
    let range = unary::image_range(rule, n).map_err(value_error)?;
    Ok((range.min, range.max, range.consecutive))
}

/// Largest n such that rule (ell, 1) maps every k in [1, n] into [1, a_max].
#[pyfunction]
fn max_reach(ell: u64, a_max: u64) -> PyResult<u64> {
    if ell < 1 || a_max < 1 {
        return Err(PyValueError::new_err("ell and a_max must be at least 1"));
    }
    Ok(unary::max_reach(ell, a_max))
}

/// n-th term of the reach sequence 2, 4, 10, 40, ...
#[pyfunction]
fn a159860(n: u32) -> PyResult<u64> {
    if n < 1 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    construct::a159860(n).map_err(|e| PyOverflowError::new_err(e.to_string()))
}

/// The first `count` terms of the reach sequence (fewer when terms overflow
/// 64-bit integers).
#[pyfunction]
fn reach_sequence(count: usize) -> Vec<u64> {
    construct::ReachSequence::new().take(count).collect()
}

/// Minimal-depth search; returns (depth, [(ell, r), ...]) or None when the
/// bounded space is exhausted.
#[pyfunction]
#[pyo3(signature = (m, max_ell = None, max_r = None, max_depth = None))]
fn find_min_depth(
    m: u64,
    max_ell: Option<u64>,
    max_r: Option<u64>,
    max_depth: Option<usize>,
) -> PyResult<Option<FoundChain>> {
    if m < 1 {
        return Err(PyValueError::new_err("m must be at least 1"));
    }
    let defaults = SearchBounds::default_for(m);
    let bounds = SearchBounds {
        max_ell: max_ell.unwrap_or(defaults.max_ell),
        max_r: max_r.unwrap_or(defaults.max_r),
        max_depth: max_depth.unwrap_or(defaults.max_depth),
    };
    let result = search::find_min_depth(m, bounds);
    Ok(result.found_depth().map(|depth| {
        let chain = result
            .found_chain()
            .expect("found results carry a chain")
            .iter()
            .map(|r| (r.ell(), r.r()))
            .collect();
        (depth, chain)
    }))
}

/// Exhaustive refutation at one exact depth; returns (refuted, tested).
#[pyfunction]
#[pyo3(signature = (m, depth, max_ell = None, max_r = None))]
fn refute_depth(
    m: u64,
    depth: usize,
    max_ell: Option<u64>,
    max_r: Option<u64>,
) -> PyResult<(bool, u64)> {
    if m < 1 || depth < 1 {
        return Err(PyValueError::new_err("m and depth must be at least 1"));
    }
    let defaults = SearchBounds::default_for(m);
    let bounds = SearchBounds {
        max_ell: max_ell.unwrap_or(defaults.max_ell),
        max_r: max_r.unwrap_or(defaults.max_r),
        max_depth: depth,
    };
    let result = search::refute_depth(m, depth, bounds);
    Ok((result.refuted(), result.tested))
}

/// One-pass digit-run collapser (the regex stand-in baseline).
#[pyfunction]
fn scanner_normalize(s: &str) -> String {
    replchain::bench::scanner_normalize(s)
}

/// Deterministic benchmark corpus.
#[pyfunction]
#[pyo3(signature = (seed, count, max_len = 32, density = 0.5))]
fn generate_corpus(seed: u64, count: usize, max_len: usize, density: f64) -> PyResult<Vec<String>> {
    let spec =
        replchain::bench::CorpusSpec::new(seed, count, max_len, density).map_err(value_error)?;
    Ok(replchain::bench::generate_corpus(&spec))
}

#[pymodule]
fn _replchain(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Chain>()?;
    m.add_function(wrap_pyfunction!(replace, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(rule_length_map, m)?)?;
    m.add_function(wrap_pyfunction!(chain_length_map, m)?)?;
    m.add_function(wrap_pyfunction!(image_range, m)?)?;
    m.add_function(wrap_pyfunction!(max_reach, m)?)?;
    m.add_function(wrap_pyfunction!(a159860, m)?)?;
    m.add_function(wrap_pyfunction!(reach_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(find_min_depth, m)?)?;
    m.add_function(wrap_pyfunction!(refute_depth, m)?)?;
    m.add_function(wrap_pyfunction!(scanner_normalize, m)?)?;
    m.add_function(wrap_pyfunction!(generate_corpus, m)?)?;
    Ok(())
}
