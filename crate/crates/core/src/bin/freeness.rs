use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bounded_freeness::algebra::Rational;
use bounded_freeness::automata::{equality_automaton, EqualityAutomaton};
use bounded_freeness::decider::{decide, DecideError};
use bounded_freeness::encoder::{build_q, compile, compiled_dimension, evaluate_gadget, lemma7_check};
use bounded_freeness::io::{self, IoError, Lemma7Report};
use bounded_freeness::numeration::{Base, Digit};
use bounded_freeness::oracle::search_collisions_in;

const DIMENSION_CAP: u128 = 1 << 14;

#[derive(Parser)]
#[command(name = "freeness", version, about = "Injectivity of upper-triangular matrix morphisms on bounded languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide injectivity of an instance.
    Decide {
        #[arg(long)]
        input: PathBuf,
        /// Print the colliding exponent vectors in the summary.
        #[arg(long)]
        witness: bool,
        /// Print the verdict as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive collision search over bounded exponents.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: u32,
    },
    /// Build the equal-value automaton for a base and digit set.
    Automaton {
        #[arg(long, allow_hyphen_values = true)]
        base: String,
        /// Comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        digits: String,
        /// Write the automaton in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compile a polynomial into a matrix gadget.
    Encode {
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated point at which to compare gadget and polynomial.
        #[arg(long)]
        eval: Option<String>,
        /// Write the gadget JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for Q(a, b) = Q(a, c) with b != c.
    Lemma7 {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
}

enum Failure {
    Invalid(String),
    Unsupported(String),
    TooLarge(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 2,
            Failure::Unsupported(_) => 3,
            Failure::TooLarge(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Unsupported(m) | Failure::TooLarge(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Decide(d) => d.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<DecideError> for Failure {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::UnsupportedInstance { .. } => Failure::Unsupported(format!(
                "{e} (the decision procedure assumes every z matrix is nonsingular)"
            )),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|e| Failure::Invalid(format!("{s:?}: {e}"))))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Decide { input, witness, json } => {
            let inst = io::parse_instance(&read(&input)?)?;
            let verdict = decide(&inst)?;
            if json {
                println!("{}", io::verdict_to_json(&verdict));
            } else {
                println!("injective: {} ({})", verdict.injective, verdict.branch);
                if let (true, Some(w)) = (witness, &verdict.witness) {
                    println!("witness: {w}");
                }
            }
        }
        Command::Oracle { input, bound } => {
            let raw = io::parse_raw_instance(&read(&input)?)?;
            let report = search_collisions_in(&raw.x, &raw.z, bound);
            println!("{}", serde_json::to_string_pretty(&report).map_err(invalid)?);
        }
        Command::Automaton { base, digits, dot } => {
            let r: Rational = base.parse().map_err(invalid)?;
            let base = Base::new(r).map_err(invalid)?;
            let digits: Vec<Digit> = parse_list::<i64>(&digits)?.into_iter().map(Digit::from).collect();
            let nfa = if base.is_expanding() {
                equality_automaton(&base, &digits)
            } else {
                EqualityAutomaton::msd_first(&base, &digits).map(|a| a.to_nfa())
            }
            .map_err(invalid)?;
            println!("states: {}", nfa.len());
            if let Some(path) = dot {
                write(&path, &nfa.to_dot())?;
            }
        }
        Command::Encode { poly, eval, out } => {
            let p = io::parse_polynomial(&read(&poly)?)?;
            if !p.has_integer_coefficients() {
                return Err(Failure::Invalid(format!("{p} has non-integer coefficients")));
            }
            let dim = compiled_dimension(&p);
            if dim > DIMENSION_CAP {
                return Err(Failure::TooLarge(format!(
                    "compiled dimension {dim} exceeds the cap {DIMENSION_CAP}"
                )));
            }
            let gadget = compile(&p).map_err(invalid)?;
            if let Some(path) = &out {
                let file = fs::File::create(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
                io::write_gadget(&gadget, std::io::BufWriter::new(file))?;
            }
            match eval {
                Some(point) => {
                    let point: Vec<u32> = parse_list(&point)?;
                    let lhs = evaluate_gadget(&gadget, &point).map_err(invalid)?;
                    let rhs = p.eval_at(&point).map_err(invalid)?;
                    println!("gadget: {lhs}, polynomial: {rhs}");
                }
                None if out.is_none() => {
                    let mut stdout = std::io::BufWriter::new(std::io::stdout().lock());
                    io::write_gadget(&gadget, &mut stdout)?;
                    writeln!(stdout).map_err(invalid)?;
                }
                None => {}
            }
        }
        Command::Lemma7 { poly, a, bound } => {
            let p = io::parse_polynomial(&read(&poly)?)?;
            if !p.has_integer_coefficients() {
                return Err(Failure::Invalid(format!("{p} has non-integer coefficients")));
            }
            let (_, e) = build_q(&p).map_err(invalid)?;
            let collision = lemma7_check(&p, a, bound).map_err(invalid)?;
            let report = Lemma7Report {
                a,
                bound,
                e: e.to_string(),
                found: collision.is_some(),
                collision,
            };
            println!("{}", serde_json::to_string_pretty(&report).map_err(invalid)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
