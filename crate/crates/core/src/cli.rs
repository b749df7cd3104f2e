//! Command-line front end. [`run`] is the whole program minus process exit,
//! so it can be driven from tests.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::expectation::{expect_subspace, norm, supercommutant};
use crate::multivector::{Multivector, RealVector};
use crate::subspace::Subspace;
use crate::text::{format_multivector_rounded, format_real, parse_multivector};
use crate::tol::EPS_RANK;
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "clifford",
    version,
    about = "Complex Clifford algebra calculator with conditional expectations and supercommutants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Clifford product of two or more multivectors, left to right
    Mul(MulArgs),
    /// Grading automorphism (negates odd blades)
    Gamma(Unary),
    /// Star involution
    Star(Unary),
    /// C* norm (operator norm of left multiplication)
    Norm(Unary),
    /// Conditional expectation E_Z onto C(Z⊥)
    Expect(ExpectArgs),
    /// Basis of the supercommutant C(Z)'
    Supercommutant(SubspaceArgs),
    /// Run randomized verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Unary {
    #[arg(long)]
    dim: usize,
    /// Multivector expression, or "-" to read it from stdin
    #[arg(long, allow_hyphen_values = true)]
    input: String,
}

#[derive(Debug, Args)]
struct MulArgs {
    #[arg(long)]
    dim: usize,
    /// Factors in order; repeat the flag for each one
    #[arg(long, allow_hyphen_values = true, required = true)]
    input: Vec<String>,
}

#[derive(Debug, Args)]
struct SubspaceArgs {
    #[arg(long)]
    dim: usize,
    /// Spanning vectors "v1;v2;..." with comma-separated coordinates
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    subspace: String,
}

#[derive(Debug, Args)]
struct ExpectArgs {
    #[command(flatten)]
    z: SubspaceArgs,
    #[arg(long, allow_hyphen_values = true)]
    input: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 6)]
    dim: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a single JSON document instead of text
    #[arg(long)]
    json: bool,
    /// Also write the report to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read_input(text: &str, stdin: &mut dyn Read) -> Result<String, Usage> {
    if text == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf)?;
        Ok(buf.trim().to_owned())
    } else {
        Ok(text.to_owned())
    }
}

fn multivector(text: &str, dim: usize, stdin: &mut dyn Read) -> Result<Multivector, Usage> {
    let text = read_input(text, stdin)?;
    parse_multivector(&text, dim).map_err(|e| Usage(format!("cannot parse {text:?}: {e}")))
}

/// Parses `"1,0,0;0,1,1"` into an orthonormalized subspace of `R^dim`.
pub fn parse_subspace(text: &str, dim: usize) -> Result<Subspace, String> {
    let mut vectors = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let coords = chunk
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("invalid coordinate {x:?} in {chunk:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != dim {
            return Err(format!(
                "vector {chunk:?} has {} coordinates, expected {dim}",
                coords.len()
            ));
        }
        vectors.push(RealVector::new(coords));
    }
    Subspace::from_spanning(dim, &vectors, EPS_RANK).map_err(|e| e.to_string())
}

fn format_vector(v: &RealVector) -> String {
    let parts: Vec<_> = v.components().iter().map(|&x| format_real(x)).collect();
    format!("({})", parts.join(","))
}

fn echo_basis(z: &Subspace, stderr: &mut dyn Write) -> Result<(), Usage> {
    let parts: Vec<_> = z.basis().iter().map(format_vector).collect();
    writeln!(
        stderr,
        "subspace of dimension {}: {{{}}}",
        z.dim(),
        parts.join("; ")
    )?;
    Ok(())
}

fn dispatch(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Usage> {
    match cli.command {
        Command::Mul(args) => {
            if args.input.len() < 2 {
                return Err(Usage("mul needs at least two --input factors".into()));
            }
            let mut acc = Multivector::one(args.dim)?;
            for text in &args.input {
                acc = acc.mul(&multivector(text, args.dim, stdin)?)?;
            }
            writeln!(stdout, "{}", format_multivector_rounded(&acc))?;
        }
        Command::Gamma(args) => {
            let x = multivector(&args.input, args.dim, stdin)?;
            writeln!(stdout, "{}", format_multivector_rounded(&x.gamma()))?;
        }
        Command::Star(args) => {
            let x = multivector(&args.input, args.dim, stdin)?;
            writeln!(stdout, "{}", format_multivector_rounded(&x.star()))?;
        }
        Command::Norm(args) => {
            let x = multivector(&args.input, args.dim, stdin)?;
            writeln!(stdout, "{}", format_real(norm(&x)?))?;
        }
        Command::Expect(args) => {
            let z = parse_subspace(&args.z.subspace, args.z.dim)?;
            echo_basis(&z, stderr)?;
            let x = multivector(&args.input, args.z.dim, stdin)?;
            writeln!(
                stdout,
                "{}",
                format_multivector_rounded(&expect_subspace(&z, &x)?)
            )?;
        }
        Command::Supercommutant(args) => {
            let z = parse_subspace(&args.subspace, args.dim)?;
            echo_basis(&z, stderr)?;
            let basis = supercommutant(&z)?;
            writeln!(stderr, "supercommutant of dimension {}", basis.len())?;
            for element in basis.echelon(EPS_RANK) {
                writeln!(stdout, "{}", format_multivector_rounded(&element))?;
            }
        }
        Command::Verify(args) => {
            let report = run_suite(args.suite, args.dim, args.trials, args.seed)?;
            let rendered = if args.json {
                serde_json::to_string_pretty(&report)?
            } else {
                report.to_string()
            };
            writeln!(stdout, "{rendered}")?;
            if let Some(path) = args.out {
                std::fs::write(&path, format!("{rendered}\n"))
                    .map_err(|e| Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            return Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            });
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (program name first) and returns the exit
/// code: 0 on success, 1 when a verification property fails, 2 on usage
/// errors.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
