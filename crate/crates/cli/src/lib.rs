//! Command-line frontend for the `po2` library.
//!
//! Exit codes: 0 for affirmative results, 1 for negative decisions (the
//! witness is printed), 2 for usage and input errors, 3 when a search
//! exceeds `--budget`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use po2::{
    build_sat_automaton, chain_lengths, complement, complete, det_po2_to_monomials, equivalent_with_budget,
    from_json, includes_with_budget, is_empty_with_budget, is_universal_with_budget, member, monomial_to_det_po2,
    product, run_det_traced, sat_via_emptiness_with_budget, to_json, validate, BoolOp, Difference, Emptiness,
    Equivalence, Error, Inclusion, LassoWord, OmegaMonomial, Po2Automaton, Polarity, PropFormula, SatResult,
    Universality, Verdict, DEFAULT_BUDGET,
};

#[derive(Parser, Debug)]
#[command(name = "po2", about = "Partially ordered two-way Büchi automata")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Intersect,
    Union,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the po2 structure, determinism and completeness.
    Validate { file: PathBuf },
    /// Add a rejecting sink for missing transitions.
    Complete {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complement a deterministic automaton (completed first).
    Complement {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Union or intersection of two deterministic automata.
    Product {
        #[arg(long, value_enum)]
        op: Op,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the run of a deterministic automaton on a lasso word.
    Run {
        file: PathBuf,
        word: String,
        /// Configurations to print.
        #[arg(long, default_value_t = 40)]
        trace: usize,
    },
    /// Decide membership of a lasso word such as `ba(c)`.
    Member { file: PathBuf, word: String },
    /// Decide emptiness; prints a witness `u(a)` if nonempty.
    Empty {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Decide whether L(A) is included in L(B); B must be deterministic.
    Includes {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Decide equivalence of two deterministic automata.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Decide universality of a deterministic automaton.
    Universal {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print a polynomial of restricted monomials, one per line.
    ToMonomials { file: PathBuf },
    /// Build a deterministic automaton for a monomial such as `[ab]*a.[]*c.[c]w`.
    FromMonomial {
        monomial: String,
        /// Letters of the alphabet, e.g. `abc`; defaults to the monomial's letters.
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the automaton of a propositional formula such as `v1 & !v2`.
    FromFormula {
        formula: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide satisfiability through emptiness.
    Sat {
        formula: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Print size and structure statistics.
    Stats { file: PathBuf },
}

/// Outcome of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Budget(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(n) => Failure::Budget(n),
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(bool, String), Failure>;

fn read(path: &Path) -> Result<Po2Automaton, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read '{}': {e}", path.display())))?;
    from_json(&text).map_err(|e| Failure::Usage(format!("'{}': {e}", path.display())))
}

fn lasso(word: &str) -> Result<LassoWord, Failure> {
    word.parse().map_err(|e| Failure::Usage(format!("invalid lasso word '{word}': {e}")))
}

fn formula(text: &str) -> Result<PropFormula, Failure> {
    text.parse().map_err(|e| Failure::Usage(format!("invalid formula '{text}': {e}")))
}

/// Writes to `output` if given, otherwise returns the file text.
fn emit(a: &Po2Automaton, output: Option<&Path>) -> Outcome {
    let text = to_json(a);
    match output {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write '{}': {e}", p.display())))?;
            Ok((true, format!("wrote {} ({} states)\n", p.display(), a.num_states())))
        }
        None => Ok((true, text)),
    }
}

fn name(a: &Po2Automaton, z: usize) -> &str {
    &a.state(z).name
}

fn execute(cmd: Command) -> Outcome {
    match cmd {
        Command::Validate { file } => {
            let a = read(&file)?;
            let r = validate(&a);
            let mut out = format!(
                "well-formed po2: {}\ndeterministic: {}\ncomplete: {}\n",
                r.is_well_formed_po2, r.is_deterministic, r.is_complete
            );
            for v in &r.violations {
                writeln!(out, "{:?}: {}", v.kind, v.message).unwrap();
            }
            Ok((r.is_well_formed_po2, out))
        }
        Command::Complete { file, output } => emit(&complete(&read(&file)?)?, output.as_deref()),
        Command::Complement { file, output } => {
            emit(&complement(&complete(&read(&file)?)?)?, output.as_deref())
        }
        Command::Product { op, a, b, output } => {
            let (a, b) = (complete(&read(&a)?)?, complete(&read(&b)?)?);
            let op = match op {
                Op::Intersect => BoolOp::Intersection,
                Op::Union => BoolOp::Union,
            };
            emit(&product(&a, &b, op)?, output.as_deref())
        }
        Command::Run { file, word, trace } => {
            let a = read(&file)?;
            let w = lasso(&word)?;
            let out = run_det_traced(&a, &w, trace)?;
            let mut s = String::new();
            for c in &out.trace {
                writeln!(s, "{} @ {}", name(&a, c.state), c.position).unwrap();
            }
            let (ok, line) = verdict_line(&a, out.verdict, out.stationary);
            s.push_str(&line);
            Ok((ok, s))
        }
        Command::Member { file, word } => {
            let a = read(&file)?;
            let w = lasso(&word)?;
            if a.is_deterministic() {
                let out = run_det_traced(&a, &w, 0)?;
                Ok(verdict_line(&a, out.verdict, out.stationary))
            } else {
                let ok = member(&a, &w)?;
                Ok((ok, if ok { "accepted\n" } else { "rejected\n" }.to_string()))
            }
        }
        Command::Empty { file, budget } => match is_empty_with_budget(&read(&file)?, budget)? {
            Emptiness::Empty => Ok((true, "empty\n".into())),
            Emptiness::Nonempty(w) => Ok((false, format!("nonempty, witness: {w}\n"))),
        },
        Command::Includes { a, b, budget } => match includes_with_budget(&read(&a)?, &read(&b)?, budget)? {
            Inclusion::Included => Ok((true, "included\n".into())),
            Inclusion::Counterexample(w) => Ok((false, format!("not included, counterexample: {w}\n"))),
        },
        Command::Equiv { a, b, budget } => match equivalent_with_budget(&read(&a)?, &read(&b)?, budget)? {
            Equivalence::Equivalent => Ok((true, "equivalent\n".into())),
            Equivalence::Counterexample { witness, side } => {
                let only = match side {
                    Difference::OnlyLeft => "first",
                    Difference::OnlyRight => "second",
                };
                Ok((false, format!("not equivalent, counterexample: {witness} (only in the {only})\n")))
            }
        },
        Command::Universal { file, budget } => match is_universal_with_budget(&read(&file)?, budget)? {
            Universality::Universal => Ok((true, "universal\n".into())),
            Universality::Counterexample(w) => Ok((false, format!("not universal, counterexample: {w}\n"))),
        },
        Command::ToMonomials { file } => {
            let p = det_po2_to_monomials(&read(&file)?)?;
            if p.is_empty() {
                return Ok((true, "empty polynomial\n".into()));
            }
            Ok((true, p.iter().map(|m| format!("{m}\n")).collect()))
        }
        Command::FromMonomial {
            monomial,
            alphabet,
            output,
        } => {
            let m: OmegaMonomial = monomial
                .parse()
                .map_err(|e| Failure::Usage(format!("invalid monomial '{monomial}': {e}")))?;
            let sigma: Vec<char> = match alphabet {
                Some(s) => s.chars().collect(),
                None => m.letters().into_iter().collect(),
            };
            emit(&monomial_to_det_po2(&m, &sigma)?, output.as_deref())
        }
        Command::FromFormula { formula: f, output } => emit(&build_sat_automaton(&formula(&f)?), output.as_deref()),
        Command::Sat { formula: f, budget } => match sat_via_emptiness_with_budget(&formula(&f)?, budget)? {
            SatResult::Sat(assignment) => {
                let vals: Vec<String> = assignment
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| format!("v{}={}", i + 1, u8::from(b)))
                    .collect();
                Ok((true, format!("sat {}\n", vals.join(" "))))
            }
            SatResult::Unsat => Ok((false, "unsat\n".into())),
        },
        Command::Stats { file } => {
            let a = read(&file)?;
            let xs = (0..a.num_states()).filter(|&z| a.polarity(z) == Polarity::X).count();
            let mut s = format!(
                "alphabet: {}\nstates: {} ({} X, {} Y)\ntransitions: {}\nfinal: {}\n",
                a.alphabet().iter().collect::<String>(),
                a.num_states(),
                xs,
                a.num_states() - xs,
                a.num_transitions(),
                a.states().iter().filter(|s| s.is_final).count()
            );
            let r = validate(&a);
            writeln!(s, "deterministic: {}\ncomplete: {}", r.is_deterministic, r.is_complete).unwrap();
            if r.is_well_formed_po2 {
                let c = chain_lengths(&a)?;
                writeln!(s, "longest chain: {}\nlongest X-chain: {}", c.all, c.next_states).unwrap();
            }
            Ok((true, s))
        }
    }
}

fn verdict_line(a: &Po2Automaton, verdict: Verdict, stationary: Option<usize>) -> (bool, String) {
    match (verdict, stationary) {
        (Verdict::Accepted, Some(z)) => (true, format!("accepted, stationary state: {}\n", name(a, z))),
        (Verdict::Rejected, Some(z)) => (false, format!("rejected, stationary state: {}\n", name(a, z))),
        _ => (false, "rejected, the run gets stuck\n".into()),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Report {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Report {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(cli.command) {
        Ok((ok, stdout)) => Report {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Report {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Budget(n)) => Report {
            code: 3,
            stdout: String::new(),
            stderr: format!("budget exceeded ({n} summaries)\n"),
        },
    }
}
