//! SQL-style `REPLACE`/`TRANSLATE` string functions and replacement chains.
//!
//! `replace` makes a single left-to-right pass over the input: occurrences of
//! the pattern are matched leftmost and non-overlapping, and after a
//! substitution the scan resumes immediately past the matched occurrence, so
//! emitted replacement text is never rescanned. `translate` substitutes
//! single characters. A [`Chain`] is an ordered list of replacement rules
//! applied innermost-first; re-running a chain on its own output may change
//! it further (application over concatenated inputs does not distribute
//! either, because rules can match across what used to be a block boundary).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from the string engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// SQL systems disagree on what an empty search pattern means, so we
    /// reject it instead of guessing.
    #[error("replace pattern must be non-empty")]
    EmptyPattern,
    /// `translate` with fewer target than source characters would delete;
    /// that feature is intentionally unsupported.
    #[error("translate arguments differ in length ({from_len} vs {to_len})")]
    LengthMismatch { from_len: usize, to_len: usize },
    #[error("duplicate character {0:?} in translate source characters")]
    DuplicateSourceChar(char),
}

/// One replacement step: substitute `replacement` for every occurrence of
/// `pattern`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pattern: String,
    replacement: String,
}

impl Rule {
    /// Builds a rule; the pattern must be non-empty.
    pub fn new(
        pattern: impl Into<String>,
        replacement: impl Into<String>,
    ) -> Result<Self, EngineError> {
        let pattern = pattern.into();
        if pattern.is_empty() {
            return Err(EngineError::EmptyPattern);
        }
        Ok(Rule {
            pattern,
            replacement: replacement.into(),
        })
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    pub fn replacement(&self) -> &str {
        &self.replacement
    }

    /// True when both sides are runs of `'1'` (the replacement may be empty).
    pub fn is_unary(&self) -> bool {
        self.pattern.chars().all(|c| c == '1') && self.replacement.chars().all(|c| c == '1')
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.pattern, self.replacement)
    }
}

/// An ordered list of rules; index 0 is applied first (the innermost call in
/// nested-function notation). The empty chain is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain {
    rules: Vec<Rule>,
}

impl Chain {
    pub fn new(rules: Vec<Rule>) -> Self {
        Chain { rules }
    }

    pub fn empty() -> Self {
        Chain::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn is_unary(&self) -> bool {
        self.rules.iter().all(Rule::is_unary)
    }

    /// Applies every rule in order to `s`. Rules are validated at
    /// construction, so application cannot fail.
    pub fn apply(&self, s: &str) -> String {
        let mut current = s.to_string();
        for rule in &self.rules {
            current = replace(&current, &rule.pattern, &rule.replacement)
                .expect("rule patterns are non-empty by construction");
        }
        current
    }

    /// Serializes to the chain text format, one rule per line, innermost
    /// first. Unary rules use the `<ell> <r>` shorthand; other rules the
    /// quoted literal form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            if rule.is_unary() {
                out.push_str(&format!(
                    "{} {}\n",
                    rule.pattern.len(),
                    rule.replacement.len()
                ));
            } else {
                out.push_str(&format!(
                    "\"{}\" -> \"{}\"\n",
                    rule.pattern, rule.replacement
                ));
            }
        }
        out
    }
}

impl FromStr for Chain {
    type Err = ChainParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_chain(s)
    }
}

/// Substitutes `replacement` for all occurrences of `pattern` in `s`.
///
/// The scan is a single left-to-right pass. Occurrences are leftmost and
/// non-overlapping; after each substitution scanning continues at the
/// position just past the matched occurrence in the input, so replacement
/// text emitted earlier in the pass is never matched again.
pub fn replace(s: &str, pattern: &str, replacement: &str) -> Result<String, EngineError> {
    if pattern.is_empty() {
        return Err(EngineError::EmptyPattern);
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find(pattern) {
        out.push_str(&rest[..pos]);
        out.push_str(replacement);
        rest = &rest[pos + pattern.len()..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Maps each character of `s` appearing in `from` to the character of `to`
/// at the same position; all other characters are copied unchanged.
///
/// `from` and `to` must have the same number of characters (the SQL deletion
/// behavior for a shorter `to` is unsupported) and `from` must not repeat a
/// character.
pub fn translate(s: &str, from: &str, to: &str) -> Result<String, EngineError> {
    let from_chars: Vec<char> = from.chars().collect();
    let to_chars: Vec<char> = to.chars().collect();
    if from_chars.len() != to_chars.len() {
        return Err(EngineError::LengthMismatch {
            from_len: from_chars.len(),
            to_len: to_chars.len(),
        });
    }
    for (i, c) in from_chars.iter().enumerate() {
        if from_chars[..i].contains(c) {
            return Err(EngineError::DuplicateSourceChar(*c));
        }
    }
    Ok(s.chars()
        .map(|c| match from_chars.iter().position(|&f| f == c) {
            Some(i) => to_chars[i],
            None => c,
        })
        .collect())
}

/// Applies `chain` to `s`, innermost rule first.
pub fn apply_chain(chain: &Chain, s: &str) -> String {
    chain.apply(s)
}

/// Error produced while parsing the chain text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ChainParseError {
    pub line: usize,
    pub kind: ChainParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainParseErrorKind {
    #[error("expected `<ell> <r>` or `\"<pattern>\" -> \"<replacement>\"`")]
    Malformed,
    #[error("pattern length must be at least 1")]
    ZeroPatternLength,
}

/// Parses the chain text format: one rule per line, innermost first.
///
/// A line is either the unary shorthand `<ell> <r>` (two decimal integers,
/// `ell >= 1`, one space between them) or the literal form
/// `"<pattern>" -> "<replacement>"`. Lines starting with `#` are comments;
/// blank lines are ignored.
pub fn parse_chain(text: &str) -> Result<Chain, ChainParseError> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let rule = if trimmed.starts_with('"') {
            parse_literal_rule(trimmed).ok_or(ChainParseError {
                line,
                kind: ChainParseErrorKind::Malformed,
            })?
        } else {
            parse_unary_rule(trimmed).map_err(|kind| ChainParseError { line, kind })?
        };
        rules.push(rule);
    }
    Ok(Chain::new(rules))
}

fn parse_literal_rule(line: &str) -> Option<Rule> {
    // "<pattern>" -> "<replacement>"  with no escape sequences; literals may
    // not themselves contain a double quote.
    let rest = line.strip_prefix('"')?;
    let close = rest.find('"')?;
    let pattern = &rest[..close];
    let rest = rest[close + 1..].strip_prefix(" -> ")?;
    let rest = rest.strip_prefix('"')?;
    let replacement = rest.strip_suffix('"')?;
    if replacement.contains('"') || pattern.is_empty() {
        return None;
    }
    Some(Rule::new(pattern, replacement).expect("pattern checked non-empty"))
}

fn parse_unary_rule(line: &str) -> Result<Rule, ChainParseErrorKind> {
    let mut parts = line.split(' ');
    let ell: u64 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(ChainParseErrorKind::Malformed)?;
    let r: u64 = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(ChainParseErrorKind::Malformed)?;
    if parts.next().is_some() {
        return Err(ChainParseErrorKind::Malformed);
    }
    if ell == 0 {
        return Err(ChainParseErrorKind::ZeroPatternLength);
    }
    Ok(Rule::new("1".repeat(ell as usize), "1".repeat(r as usize))
        .expect("ell >= 1 makes the pattern non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(k: usize) -> String {
        "1".repeat(k)
    }

    fn intro_rules() -> Chain {
        Chain::new(vec![
            Rule::new("1111", "1").unwrap(),
            Rule::new("111", "1").unwrap(),
            Rule::new("11", "1").unwrap(),
            Rule::new("11", "1").unwrap(),
        ])
    }

    #[test]
    fn replace_three_ones() {
        assert_eq!(replace("111", "11", "1").unwrap(), "11");
    }

    #[test]
    fn replace_empty_input() {
        assert_eq!(replace("", "11", "1").unwrap(), "");
    }

    #[test]
    fn replace_never_rescans_emitted_text() {
        // two disjoint matches, each emitting three characters
        assert_eq!(replace("1111", "11", "111").unwrap(), "111111");
    }

    #[test]
    fn replace_rejects_empty_pattern() {
        assert_eq!(replace("11", "", "1"), Err(EngineError::EmptyPattern));
    }

    #[test]
    fn replace_without_occurrence_is_identity() {
        assert_eq!(replace("abc", "11", "1").unwrap(), "abc");
    }

    #[test]
    fn replace_is_not_idempotent() {
        // 35 ones: one pass of the four-rule chain leaves "11", and a second
        // application of the final rule would shorten it again.
        let after = intro_rules().apply(&ones(35));
        assert_eq!(after, "11");
        assert_eq!(replace(&after, "11", "1").unwrap(), "1");
    }

    #[test]
    fn translate_digits_to_ones() {
        assert_eq!(translate("2021", "023456789", "111111111").unwrap(), "1111");
    }

    #[test]
    fn translate_empty_input() {
        assert_eq!(translate("", "023456789", "111111111").unwrap(), "");
    }

    #[test]
    fn translate_leaves_unmapped_characters() {
        assert_eq!(translate("abc", "023456789", "111111111").unwrap(), "abc");
    }

    #[test]
    fn translate_rejects_length_mismatch() {
        assert_eq!(
            translate("a", "01", "1"),
            Err(EngineError::LengthMismatch {
                from_len: 2,
                to_len: 1
            })
        );
    }

    #[test]
    fn translate_rejects_duplicate_source() {
        assert_eq!(
            translate("a", "00", "12"),
            Err(EngineError::DuplicateSourceChar('0'))
        );
    }

    #[test]
    fn chain_reduces_34_ones() {
        assert_eq!(intro_rules().apply(&ones(34)), "1");
    }

    #[test]
    fn chain_fails_at_35_ones() {
        // engine trace: 35 -> 11 -> 5 -> 3 -> 2
        assert_eq!(intro_rules().apply(&ones(35)), "11");
    }

    #[test]
    fn empty_chain_is_identity() {
        assert_eq!(Chain::empty().apply("11"), "11");
    }

    #[test]
    fn parse_unary_shorthand() {
        let chain = parse_chain("4 1\n3 1\n2 1\n2 1\n").unwrap();
        assert_eq!(chain, intro_rules());
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let chain = parse_chain("# innermost first\n\n2 1\n\n# done\n").unwrap();
        assert_eq!(chain.rules(), &[Rule::new("11", "1").unwrap()]);
    }

    #[test]
    fn parse_literal_form() {
        let chain = parse_chain("\"ab\" -> \"\"\n\"1\" -> \"b\"\n").unwrap();
        assert_eq!(
            chain.rules(),
            &[Rule::new("ab", "").unwrap(), Rule::new("1", "b").unwrap(),]
        );
    }

    #[test]
    fn parse_rejects_zero_pattern_length() {
        let err = parse_chain("2 1\n0 3\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.kind, ChainParseErrorKind::ZeroPatternLength);
    }

    #[test]
    fn parse_rejects_garbage() {
        let err = parse_chain("not a rule\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.kind, ChainParseErrorKind::Malformed);
    }

    #[test]
    fn text_round_trip_mixed_chain() {
        let chain = Chain::new(vec![
            Rule::new("11", "1").unwrap(),
            Rule::new("ab", "x").unwrap(),
            Rule::new("111", "").unwrap(),
        ]);
        assert_eq!(parse_chain(&chain.to_text()).unwrap(), chain);
    }

    #[test]
    fn rule_rejects_empty_pattern() {
        assert_eq!(Rule::new("", "1"), Err(EngineError::EmptyPattern));
    }
}
