use std::error::Error;
use std::io::Read;
use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand};

use replchain::bench::{generate_corpus, run_bench, standard_implementations, CorpusSpec};
use replchain::construct::{intro_chain, length_decreasing_chain, theorem3_chain, ReachSequence};
use replchain::engine::{parse_chain, Chain};
use replchain::oracle::{max_solved, solves, DEFAULT_MAX_SOLVED_CAP};
use replchain::search::{find_min_depth, refute_depth, SearchBounds};
use replchain::sqlgen::{emit_sql, SqlOptions};

/// Nested string-replacement chains over a unary alphabet.
#[derive(Parser)]
#[command(name = "replchain", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a chain to an input string
    Apply {
        #[command(flatten)]
        chain: ChainSource,
        #[command(flatten)]
        input: InputSource,
    },
    /// Check whether a chain solves R(m)
    Verify {
        #[command(flatten)]
        chain: ChainSource,
        /// Task index m
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Report the largest m the chain solves, probing up to a cap
    Max {
        #[command(flatten)]
        chain: ChainSource,
        /// Probe cap
        #[arg(long, default_value_t = DEFAULT_MAX_SOLVED_CAP,
              value_parser = clap::value_parser!(u64).range(1..))]
        cap: u64,
    },
    /// Search for a minimal-depth chain solving R(m)
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[command(flatten)]
        bounds: BoundsFlags,
        /// Largest chain depth to try (default 4)
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        max_depth: Option<usize>,
    },
    /// Exhaustively check that no chain of the given depth solves R(m)
    /// within the bounds; exits 1 if a solution was found
    Refute {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        /// Exact chain depth to test
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        depth: usize,
        #[command(flatten)]
        bounds: BoundsFlags,
    },
    /// Print a constructed chain in the chain text format
    Chain {
        #[command(flatten)]
        constructor: ConstructorSource,
    },
    /// Print the reach sequence a(1..n): the largest tasks solvable with
    /// 1..n length-decreasing replacements
    Seq {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Emit a SQL expression realizing a chain
    Sql {
        #[command(flatten)]
        chain: ChainSource,
        /// Column expression the innermost call wraps
        #[arg(long, default_value = "s")]
        column: String,
        /// Skip the digit-folding TRANSLATE preamble
        #[arg(long)]
        no_translate: bool,
        #[arg(long, default_value = "REPLACE")]
        replace_name: String,
        #[arg(long, default_value = "TRANSLATE")]
        translate_name: String,
        /// Literal emitted for an empty replacement
        #[arg(long, default_value = "''")]
        empty_literal: String,
    },
    /// Generate a corpus and compare the normalization implementations
    Bench {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 32)]
        max_len: usize,
        /// Fraction of digit characters in the corpus, in [0, 1]
        #[arg(long, default_value_t = 0.5, value_parser = parse_density)]
        density: f64,
        /// Emit key=value records instead of the aligned table
        #[arg(long)]
        records: bool,
    },
}

/// Where a chain comes from: a file or one of the built-in constructors.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ChainSource {
    /// Chain file in the chain text format
    #[arg(long, value_name = "FILE")]
    chain: Option<PathBuf>,
    /// Three-rule blow-up chain solving R(M)
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
    theorem3: Option<u64>,
    /// Optimal chain of N length-decreasing rules
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    ld: Option<u32>,
    /// The four-rule chain normalizing runs of up to 34 ones
    #[arg(long)]
    intro: bool,
}

impl ChainSource {
    fn resolve(&self) -> Result<Chain, Box<dyn Error>> {
        if let Some(path) = &self.chain {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            return Ok(
                parse_chain(&text).map_err(|e| format!("cannot parse {}: {e}", path.display()))?
            );
        }
        if let Some(m) = self.theorem3 {
            return Ok(theorem3_chain(m));
        }
        if let Some(n) = self.ld {
            return Ok(length_decreasing_chain(n)?);
        }
        debug_assert!(self.intro);
        Ok(intro_chain())
    }
}

/// Built-in constructors only (no file input).
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ConstructorSource {
    /// Three-rule blow-up chain solving R(M)
    #[arg(long, value_name = "M", value_parser = clap::value_parser!(u64).range(1..))]
    theorem3: Option<u64>,
    /// Optimal chain of N length-decreasing rules
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    ld: Option<u32>,
    /// The four-rule chain normalizing runs of up to 34 ones
    #[arg(long)]
    intro: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputSource {
    /// Literal input string
    #[arg(long)]
    input: Option<String>,
    /// Read the input from standard input (one trailing newline stripped)
    #[arg(long)]
    stdin: bool,
    /// Use a run of K ones as the input
    #[arg(long, value_name = "K")]
    ones: Option<u64>,
}

impl InputSource {
    fn resolve(&self) -> Result<String, Box<dyn Error>> {
        if let Some(s) = &self.input {
            return Ok(s.clone());
        }
        if let Some(k) = self.ones {
            return Ok("1".repeat(k as usize));
        }
        debug_assert!(self.stdin);
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        if buf.ends_with('\n') {
            buf.pop();
            if buf.ends_with('\r') {
                buf.pop();
            }
        }
        Ok(buf)
    }
}

/// Per-depth parameter bounds; defaults scale with m (2m + 2).
#[derive(Args)]
struct BoundsFlags {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_ell: Option<u64>,
    #[arg(long)]
    max_r: Option<u64>,
}

impl BoundsFlags {
    fn resolve(&self, m: u64, max_depth: Option<usize>) -> SearchBounds {
        let defaults = SearchBounds::default_for(m);
        SearchBounds {
            max_ell: self.max_ell.unwrap_or(defaults.max_ell),
            max_r: self.max_r.unwrap_or(defaults.max_r),
            max_depth: max_depth.unwrap_or(defaults.max_depth),
        }
    }
}

fn parse_density(s: &str) -> Result<f64, String> {
    let value: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err("density must lie in [0, 1]".to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<i32, Box<dyn Error>> {
    match command {
        Command::Apply { chain, input } => {
            let chain = chain.resolve()?;
            println!("{}", chain.apply(&input.resolve()?));
            Ok(0)
        }
        Command::Verify { chain, m } => {
            println!("{}", solves(&chain.resolve()?, m)?);
            Ok(0)
        }
        Command::Max { chain, cap } => {
            println!("{}", max_solved(&chain.resolve()?, cap)?);
            Ok(0)
        }
        Command::Solve {
            m,
            bounds,
            max_depth,
        } => {
            let result = find_min_depth(m, bounds.resolve(m, max_depth));
            println!("{}", result.record());
            Ok(0)
        }
        Command::Refute { m, depth, bounds } => {
            let result = refute_depth(m, depth, bounds.resolve(m, Some(depth)));
            println!("{}", result.record());
            Ok(if result.refuted() { 0 } else { 1 })
        }
        Command::Chain { constructor } => {
            let chain = match (constructor.theorem3, constructor.ld) {
                (Some(m), _) => theorem3_chain(m),
                (_, Some(n)) => length_decreasing_chain(n)?,
                _ => intro_chain(),
            };
            print!("{}", chain.to_text());
            Ok(0)
        }
        Command::Seq { n } => {
            let terms: Vec<u64> = ReachSequence::new().take(n as usize).collect();
            if terms.len() < n as usize {
                return Err(format!(
                    "a({}) exceeds 64-bit integer range (largest representable term is a({}))",
                    terms.len() + 1,
                    terms.len()
                )
                .into());
            }
            let rendered: Vec<String> = terms.iter().map(u64::to_string).collect();
            println!("{}", rendered.join(" "));
            Ok(0)
        }
        Command::Sql {
            chain,
            column,
            no_translate,
            replace_name,
            translate_name,
            empty_literal,
        } => {
            let options = SqlOptions {
                replace_name,
                translate_name,
                include_translate: !no_translate,
                empty_literal,
                ..SqlOptions::default()
            };
            println!("{}", emit_sql(&chain.resolve()?, &column, &options)?);
            Ok(0)
        }
        Command::Bench {
            seed,
            count,
            max_len,
            density,
            records,
        } => {
            let spec = CorpusSpec::new(seed, count, max_len, density)?;
            let corpus = generate_corpus(&spec);
            let report = run_bench(&corpus, &standard_implementations())?;
            let rendered = if records {
                report.render_records()
            } else {
                report.render_text()
            };
            print!("{rendered}");
            Ok(0)
        }
    }
}
