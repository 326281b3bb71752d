//! Command-line front end.
//!
//! Exit codes: 0 success or pass, 1 property false or check failed, 2 usage
//! error, 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use critpal_core::catalog;
use critpal_core::constructions::{self, ConstructOptions, MinimalPalindromeResult, Provenance};
use critpal_core::repetitions::{critical_exponent, find_violation};
use critpal_core::verification::{render_or_epsilon, verify_proposition_with, VerifyOptions};
use critpal_core::word::parse_letter;
use critpal_core::{Error, ErrorKind, Execution, Exponent, Morphism, PowerOccurrence, Threshold, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "critpal", version, about = "Critical exponents of words and palindromes of minimal critical exponent")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Debug)]
struct WordInput {
    /// The word, as digits then lowercase letters; `-` or omitted reads standard input.
    word: Option<String>,

    /// Read the word from a file instead.
    #[arg(long, conflicts_with = "word")]
    file: Option<PathBuf>,

    /// Alphabet size; inferred from the word when omitted.
    #[arg(short = 'k', long = "alphabet")]
    k: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Critical exponent of a word, with a witness factor.
    Cexp(WordInput),

    /// Check that a word avoids p/q-powers (or p/q+-powers).
    Free {
        /// Threshold as p/q, or p/q+ to forbid only exponents strictly above p/q.
        #[arg(long)]
        alpha: String,
        #[command(flatten)]
        input: WordInput,
    },

    /// Prefix of the fixed point of a morphism.
    Generate {
        /// Built-in name (mu, f, g, g3, h, alpha) or a morphism file.
        #[arg(long)]
        morphism: String,
        #[arg(long, default_value = "0")]
        seed: String,
        #[arg(long)]
        letters: usize,
    },

    /// Palindrome of the given length with least critical exponent.
    Construct {
        #[arg(short = 'k', long = "alphabet")]
        k: usize,
        #[arg(long)]
        length: usize,
        /// Skip recomputing the critical exponent of the result.
        #[arg(long)]
        no_verify: bool,
    },

    /// Central window of the bi-infinite word generated around a fixed center.
    Window {
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value = "0")]
        center: String,
    },

    /// Re-check a named claim and print its certificate.
    Verify {
        /// One of the proposition names, or `all`.
        name: String,
        /// Prefix length for claims about infinite words.
        #[arg(long)]
        prefix: Option<usize>,
    },
}

/// Structured output of `cexp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CexpOutput {
    pub value: Exponent,
    pub start: usize,
    pub length: usize,
    pub period: usize,
    pub factor: Word,
}

/// Structured output of `free`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeOutput {
    pub threshold: Threshold,
    pub free: bool,
    pub violation: Option<PowerOccurrence>,
    pub factor: Option<Word>,
}

/// Structured output of `generate` and `window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordOutput {
    pub morphism: String,
    pub seed: Word,
    pub word: Word,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Usage => EXIT_USAGE,
            ErrorKind::Resource => EXIT_RESOURCE,
            ErrorKind::Verification => EXIT_FALSE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

/// Runs the CLI with explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            return if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(out, "{e}");
                EXIT_OK
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    match dispatch(cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let json = serde_json::to_string(value).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "{json}").map_err(|e| usage(e.to_string()))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|e| usage(e.to_string()))
    };
}

fn read_word(input: &WordInput, stdin: &mut dyn Read) -> Result<Word, Failure> {
    let text = match (&input.word, &input.file) {
        (_, Some(path)) => std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?,
        (Some(w), None) if w != "-" => w.clone(),
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| usage(format!("standard input: {e}")))?;
            s
        }
    };
    let text = text.trim();
    Ok(match input.k {
        Some(k) => Word::parse(text, k)?,
        None => Word::parse_inferred(text)?,
    })
}

fn parse_single_letter(s: &str) -> Result<u8, Failure> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(parse_letter(c, 0)?),
        _ => Err(usage(format!("expected a single letter, got {s:?}"))),
    }
}

fn resolve_morphism(name: &str) -> Result<Morphism, Failure> {
    if let Ok(entry) = catalog::lookup(name) {
        return Ok(entry.morphism.clone());
    }
    let text = std::fs::read_to_string(name)
        .map_err(|e| usage(format!("{name:?} is neither a built-in morphism ({}) nor a readable file: {e}", catalog::NAMES.join(", "))))?;
    Ok(text.parse::<Morphism>()?)
}

fn describe(result: &MinimalPalindromeResult) -> String {
    match &result.provenance {
        Provenance::TrimmedMorphic { morphism, depth, trim } => {
            format!("central slice of {morphism}^{depth}(0), trimmed by {trim} at each end")
        }
        Provenance::ExhaustiveSearch { witnesses } => format!(
            "exhaustive search over all palindromes of this length ({} minimal); below the range of the morphic construction",
            witnesses.len()
        ),
    }
}

fn dispatch(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Cexp(input) => {
            let w = read_word(&input, stdin)?;
            let report = critical_exponent(&w)?;
            let o = report.witness;
            if json {
                emit(
                    out,
                    &CexpOutput {
                        value: report.value,
                        start: o.start,
                        length: o.length,
                        period: o.period,
                        factor: Word::try_from(o.factor(&w).to_vec())?,
                    },
                )?;
            } else {
                say!(out, "{} at {} len {} per {}", report.value, o.start, o.length, o.period)?;
            }
            Ok(EXIT_OK)
        }
        Command::Free { alpha, input } => {
            let threshold: Threshold = alpha.parse()?;
            let w = read_word(&input, stdin)?;
            let violation = find_violation(&w, threshold)?;
            let factor = violation.map(|v| Word::try_from(v.factor(&w).to_vec())).transpose()?;
            if json {
                emit(out, &FreeOutput { threshold, free: violation.is_none(), violation, factor: factor.clone() })?;
            }
            match (violation, factor) {
                (Some(v), Some(f)) => {
                    if !json {
                        say!(out, "violation {f} at {} len {} per {} (exponent {})", v.start, v.length, v.period, v.exponent)?;
                    }
                    Ok(EXIT_FALSE)
                }
                _ => {
                    if !json {
                        say!(out, "free")?;
                    }
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Generate { morphism, seed, letters } => {
            let m = resolve_morphism(&morphism)?;
            let a = parse_single_letter(&seed)?;
            let word = m.fixed_point_prefix(a, letters)?;
            if json {
                emit(out, &WordOutput { morphism, seed: Word::try_from(vec![a])?, word })?;
            } else {
                say!(out, "{}", render_or_epsilon(&word))?;
            }
            Ok(EXIT_OK)
        }
        Command::Construct { k, length, no_verify } => {
            let opts = ConstructOptions { verify: !no_verify, exec };
            let result = constructions::construct(k, length, opts)?;
            if json {
                emit(out, &result)?;
            } else {
                say!(out, "{}", render_or_epsilon(&result.word))?;
                say!(
                    out,
                    "critical exponent: {}{}",
                    result.critical_exponent,
                    if result.verified { " (verified)" } else { " (not recomputed)" }
                )?;
                say!(out, "provenance: {}", describe(&result))?;
            }
            Ok(EXIT_OK)
        }
        Command::Window { morphism, radius, center } => {
            let m = resolve_morphism(&morphism)?;
            let a = parse_single_letter(&center)?;
            match constructions::central_window(&m, a, radius) {
                Ok(word) => {
                    if json {
                        emit(out, &WordOutput { morphism, seed: Word::try_from(vec![a])?, word })?;
                    } else {
                        say!(out, "{word}")?;
                    }
                    Ok(EXIT_OK)
                }
                Err(Error::NotCenterPreserving(_)) => {
                    say!(
                        out,
                        "{morphism} is not center-preserving around {center}: its image of {center} is not a palindrome of the form reverse(x) {center} x"
                    )?;
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify { name, prefix } => {
            let opts = VerifyOptions { prefix, exec };
            let names: Vec<&str> = if name == "all" {
                critpal_core::verification::PROPOSITIONS.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut all_passed = true;
            for name in names {
                let cert = verify_proposition_with(name, opts)?;
                all_passed &= cert.passed;
                if json {
                    emit(out, &cert)?;
                } else {
                    write!(out, "{}", cert.to_text()).map_err(|e| usage(e.to_string()))?;
                }
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_FALSE })
        }
    }
}
