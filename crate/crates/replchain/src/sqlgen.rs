//! Emission of portable SQL expressions realizing a chain: nested `REPLACE`
//! calls around an optional `TRANSLATE` preamble that folds all digits into
//! `'1'`.

use thiserror::Error;

use crate::engine::Chain;
use crate::oracle::{DIGIT_TRANSLATE_FROM, DIGIT_TRANSLATE_TO};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SqlGenError {
    #[error("chain has rules outside the unary alphabet")]
    NonUnaryChain,
    #[error("column expression must be non-empty")]
    EmptyColumnExpr,
    #[error("translate arguments differ in length ({from_len} vs {to_len})")]
    TranslateLengthMismatch { from_len: usize, to_len: usize },
}

/// Rendering options. Function names are configurable because some systems
/// spell these functions differently; `empty_literal` exists because an
/// erasure rule needs an empty string literal and some systems treat `''`
/// as NULL (swap in an expression those systems accept, or avoid chains
/// with erasure rules there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqlOptions {
    pub replace_name: String,
    pub translate_name: String,
    pub include_translate: bool,
    pub translate_from: String,
    pub translate_to: String,
    pub empty_literal: String,
}

impl Default for SqlOptions {
    fn default() -> Self {
        SqlOptions {
            replace_name: "REPLACE".to_string(),
            translate_name: "TRANSLATE".to_string(),
            include_translate: true,
            translate_from: DIGIT_TRANSLATE_FROM.to_string(),
            translate_to: DIGIT_TRANSLATE_TO.to_string(),
            empty_literal: "''".to_string(),
        }
    }
}

/// Renders the chain as a single-line SQL expression over `column_expr`.
///
/// The innermost term is the `TRANSLATE` preamble (or the bare column when
/// disabled); each rule then wraps the term in a `REPLACE` call, innermost
/// first. One space after each comma, no other whitespace.
pub fn emit_sql(
    chain: &Chain,
    column_expr: &str,
    options: &SqlOptions,
) -> Result<String, SqlGenError> {
    if column_expr.is_empty() {
        return Err(SqlGenError::EmptyColumnExpr);
    }
    if !chain.is_unary() {
        return Err(SqlGenError::NonUnaryChain);
    }
    if options.include_translate {
        let from_len = options.translate_from.chars().count();
        let to_len = options.translate_to.chars().count();
        if from_len != to_len {
            return Err(SqlGenError::TranslateLengthMismatch { from_len, to_len });
        }
    }

    let mut term = if options.include_translate {
        format!(
            "{}({}, '{}', '{}')",
            options.translate_name, column_expr, options.translate_from, options.translate_to
        )
    } else {
        column_expr.to_string()
    };
    for rule in chain.rules() {
        let replacement = if rule.replacement().is_empty() {
            options.empty_literal.clone()
        } else {
            format!("'{}'", rule.replacement())
        };
        term = format!(
            "{}({}, '{}', {})",
            options.replace_name,
            term,
            rule.pattern(),
            replacement
        );
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{intro_chain, theorem3_chain};
    use crate::engine::Rule;

    #[test]
    fn intro_chain_with_defaults() {
        let sql = emit_sql(&intro_chain(), "s", &SqlOptions::default()).unwrap();
        assert_eq!(
            sql,
            "REPLACE(REPLACE(REPLACE(REPLACE(TRANSLATE(s, '023456789', '111111111'), \
             '1111', '1'), '111', '1'), '11', '1'), '11', '1')"
        );
    }

    #[test]
    fn empty_chain_without_translate_is_bare_column() {
        let options = SqlOptions {
            include_translate: false,
            ..SqlOptions::default()
        };
        assert_eq!(emit_sql(&Chain::empty(), "s", &options).unwrap(), "s");
    }

    #[test]
    fn blow_up_chain_without_translate() {
        let options = SqlOptions {
            include_translate: false,
            ..SqlOptions::default()
        };
        assert_eq!(
            emit_sql(&theorem3_chain(5), "s", &options).unwrap(),
            "REPLACE(REPLACE(REPLACE(s, '1', '1111'), '11111', '1'), '111', '')"
        );
    }

    #[test]
    fn replace_nesting_matches_chain_length() {
        let options = SqlOptions::default();
        for m in [1u64, 2, 5, 9] {
            let chain = theorem3_chain(m);
            let sql = emit_sql(&chain, "col", &options).unwrap();
            assert_eq!(sql.matches("REPLACE(").count(), chain.len());
            assert_eq!(sql.matches("TRANSLATE(").count(), 1);
        }
    }

    #[test]
    fn custom_names_and_empty_literal() {
        let options = SqlOptions {
            replace_name: "replace".to_string(),
            translate_name: "translate".to_string(),
            empty_literal: "CHR(0)".to_string(),
            ..SqlOptions::default()
        };
        let sql = emit_sql(&theorem3_chain(5), "t.col", &options).unwrap();
        assert_eq!(
            sql,
            "replace(replace(replace(translate(t.col, '023456789', '111111111'), \
             '1', '1111'), '11111', '1'), '111', CHR(0))"
        );
    }

    #[test]
    fn rejects_empty_column() {
        assert_eq!(
            emit_sql(&intro_chain(), "", &SqlOptions::default()),
            Err(SqlGenError::EmptyColumnExpr)
        );
    }

    #[test]
    fn rejects_non_unary_chain() {
        let chain = Chain::new(vec![Rule::new("ab", "1").unwrap()]);
        assert_eq!(
            emit_sql(&chain, "s", &SqlOptions::default()),
            Err(SqlGenError::NonUnaryChain)
        );
    }

    #[test]
    fn rejects_mismatched_translate_arguments() {
        let options = SqlOptions {
            translate_to: "11".to_string(),
            ..SqlOptions::default()
        };
        assert_eq!(
            emit_sql(&intro_chain(), "s", &options),
            Err(SqlGenError::TranslateLengthMismatch {
                from_len: 9,
                to_len: 2
            })
        );
    }
}
