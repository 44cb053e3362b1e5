//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification check failed (calculus checks,
//! deciders disagreeing, growth below the binomial), 2 parse or usage error,
//! 3 precondition violated.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::calculus::{verify_calculus, CalculusError};
use crate::ncpoly::{growth_profile, normal_form, NcPoly, Word};
use crate::pbw::PbwReport;
use crate::presentation::{catalog, find_entry, find_two_gen, parse, two_generator_catalog, Presentation};
use crate::smooth::{catalog_report, classify, classify_two_gen, Mode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Literal,
    Shift,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Literal => Mode::Literal,
            ModeArg::Shift => Mode::Shift,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "biquad", version, about = "PBW checks, smoothness classification and calculus verification for bi-quadratic algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Consistency residuals, overlap defect and the PBW verdict.
    Pbw {
        /// Presentation file or catalog entry name.
        input: String,
    },
    /// Smoothness verdict in both modes.
    Classify {
        input: String,
        /// Mode reported first.
        #[arg(long, value_enum, default_value = "shift")]
        mode: ModeArg,
    },
    /// Build the calculus and run all verification checks.
    Calculus {
        input: String,
        /// Degree bound N.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        degree: u32,
        /// Number K of random Leibniz pairs.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify every built-in entry against its published verdict.
    Catalog {
        /// Only list entry names.
        #[arg(long)]
        list: bool,
        /// 0 uses the generic sample values; other seeds draw free symbols at random.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce a word to PBW normal form.
    NormalForm {
        input: String,
        /// Word such as "x3 x2 x1".
        #[arg(long)]
        word: String,
    },
    /// PBW monomial counts of degree <= n against binomial(n+3, 3).
    Growth {
        input: String,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn precondition(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_PRECONDITION, message: message.into() }
}

/// A file path if one exists, otherwise a catalog entry name.
fn load(input: &str) -> Result<Presentation, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {}", input, e)))?;
        return parse(&text).map_err(|e| usage(format!("{}: {}", input, e)));
    }
    match find_entry(input) {
        Some(e) => Ok(e.instantiate_default()),
        None => Err(usage(format!("`{}` is neither a readable file nor a catalog entry", input))),
    }
}

fn run_command(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let machine = cli.format == Format::Machine;
    let mut emit = |s: String| writeln!(out, "{}", s).map_err(|e| usage(e.to_string()));
    match &cli.command {
        Command::Pbw { input } => {
            let report = PbwReport::new(&load(input)?);
            if machine {
                let res: Vec<String> =
                    crate::pbw::RESIDUAL_LABELS.iter().zip(&report.residuals).map(|(l, r)| format!("{}={}", l, r)).collect();
                emit(format!("{} defect={} pbw={}", res.join(" "), report.defect.to_compact_string(), report.is_pbw))?;
            } else {
                emit(report.to_string())?;
            }
            Ok(if report.consistent() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Classify { input, mode } => {
            if !Path::new(input).is_file() {
                if let Some(e) = find_two_gen(input) {
                    let [q, a, b, c] = e.params(None).map_err(|e| usage(e.to_string()))?;
                    let v = classify_two_gen(&q, &a, &b, &c).map_err(|e| precondition(e.to_string()))?;
                    emit(if machine {
                        format!("verdict={} witness={}", v.label(), v.witness())
                    } else {
                        format!("{} witness={}", v.label(), v.witness())
                    })?;
                    return Ok(EXIT_OK);
                }
            }
            let p = load(input)?;
            let first: Mode = (*mode).into();
            let other = if first == Mode::Shift { Mode::Literal } else { Mode::Shift };
            for (i, m) in [first, other].into_iter().enumerate() {
                let v = classify(&p, m).map_err(|e| precondition(e.to_string()))?;
                emit(match (machine, i) {
                    (true, _) => format!("mode={} verdict={} witness={}", m.as_str(), v.label(), v.witness()),
                    (false, 0) => v.to_string(),
                    (false, _) => format!("{}: {}", m.as_str(), v),
                })?;
            }
            Ok(EXIT_OK)
        }
        Command::Calculus { input, degree, samples, seed } => {
            let p = load(input)?;
            let report = verify_calculus(&p, *degree as usize, *samples as usize, *seed).map_err(|e| match e {
                CalculusError::BadBounds => usage(e.to_string()),
                _ => precondition(e.to_string()),
            })?;
            let s = &report.shift;
            if !machine {
                emit(format!("shift = ({}, {}, {})", s[0], s[1], s[2]))?;
            }
            emit(report.to_string())?;
            Ok(if report.all_passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Catalog { list, seed } => {
            if *list {
                for e in catalog() {
                    emit(if machine {
                        format!("entry={} group={} claimed={}", e.name, e.group, e.claimed)
                    } else {
                        format!("{:<16} group {}  {}", e.name, e.group, e.display)
                    })?;
                }
                for e in two_generator_catalog() {
                    emit(if machine {
                        format!("entry={} group=two_gen claimed={}", e.name, e.claimed)
                    } else {
                        format!("{:<16} two-gen  {}", e.name, e.display)
                    })?;
                }
                return Ok(EXIT_OK);
            }
            let report = catalog_report(*seed);
            if machine {
                for line in report.machine_lines() {
                    emit(line)?;
                }
            } else {
                write!(out, "{}", report.text()).map_err(|e| usage(e.to_string()))?;
            }
            Ok(EXIT_OK)
        }
        Command::NormalForm { input, word } => {
            let p = load(input)?;
            let w = Word::parse(word).map_err(|e| usage(e.to_string()))?;
            let nf = normal_form(&NcPoly::word(w), &p);
            emit(if machine { format!("normal_form={}", nf.to_compact_string()) } else { nf.to_string() })?;
            Ok(EXIT_OK)
        }
        Command::Growth { input, max_degree } => {
            let p = load(input)?;
            let rows = growth_profile(&p, *max_degree);
            for row in &rows {
                emit(if machine {
                    format!("degree={} count={} binomial={}", row.degree, row.count, row.reference)
                } else {
                    format!("n = {:>2}  count = {:>4}  binomial = {:>4}", row.degree, row.count, row.reference)
                })?;
            }
            Ok(if rows.iter().all(|r| r.count == r.reference) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match run_command(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
