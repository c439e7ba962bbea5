//! Shared helpers for the integration suites: a tiny evaluator for the
//! emitted SQL expressions (so emission can be checked end to end against
//! the library's own normalization) and a deterministic string generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use replchain::engine;

/// Evaluates an expression of the emitted shape -- nested
/// `NAME(<expr>, '<lit>', '<lit>')` calls around a bare column identifier --
/// by running `REPLACE`/`TRANSLATE` through the string engine with `input`
/// bound to the column.
pub fn eval_sql_expr(expr: &str, column: &str, input: &str) -> String {
    let mut parser = SqlParser {
        src: expr.as_bytes(),
        pos: 0,
    };
    let value = parser.expr(column, input);
    assert_eq!(parser.pos, parser.src.len(), "trailing input in {expr:?}");
    value
}

struct SqlParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl SqlParser<'_> {
    fn expr(&mut self, column: &str, input: &str) -> String {
        let name = self.identifier();
        if !self.eat(b'(') {
            assert_eq!(name, column, "unknown bare identifier {name:?}");
            return input.to_string();
        }
        let inner = self.expr(column, input);
        self.expect_str(", ");
        let first = self.literal();
        self.expect_str(", ");
        let second = self.literal();
        assert!(self.eat(b')'), "missing closing parenthesis");
        match name.as_str() {
            "REPLACE" => engine::replace(&inner, &first, &second).expect("valid arguments"),
            "TRANSLATE" => engine::translate(&inner, &first, &second).expect("valid arguments"),
            other => panic!("unknown function {other:?}"),
        }
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8(self.src[start..self.pos].to_vec()).unwrap()
    }

    fn literal(&mut self) -> String {
        assert!(self.eat(b'\''), "expected string literal");
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos] != b'\'' {
            self.pos += 1;
        }
        let value = String::from_utf8(self.src[start..self.pos].to_vec()).unwrap();
        assert!(self.eat(b'\''), "unterminated string literal");
        value
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.pos < self.src.len() && self.src[self.pos] == byte {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_str(&mut self, s: &str) {
        let end = self.pos + s.len();
        assert!(
            end <= self.src.len() && &self.src[self.pos..end] == s.as_bytes(),
            "expected {s:?} at byte {}",
            self.pos
        );
        self.pos = end;
    }
}

/// Deterministic mixed digit/letter strings with every maximal digit run
/// capped at `max_run`.
pub fn random_strings(seed: u64, count: usize, max_len: usize, max_run: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            let mut out = String::with_capacity(len);
            let mut run = 0usize;
            for _ in 0..len {
                if run < max_run && rng.random_bool(0.6) {
                    out.push(char::from(b'0' + rng.random_range(0..10u8)));
                    run += 1;
                } else {
                    out.push(char::from(b'a' + rng.random_range(0..26u8)));
                    run = 0;
                }
            }
            out
        })
        .collect()
}
