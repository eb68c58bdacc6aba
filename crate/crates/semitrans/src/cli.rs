//! `semitrans` subcommands. [`run`] returns the process exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use semitrans_core::bounds::{classify, Status};
use semitrans_core::kneser::{kneser_graph, lex_prefix_subgraph, s16_graph, KneserParams};
use semitrans_core::orient::{verify_semi_transitive, Directed, Verdict};
use semitrans_core::solver::{exhaustive_check, Budget, ExhaustiveOutcome, SolveStatus, DEFAULT_BUDGET_MS};
use semitrans_core::words::{represents, word_complement_matching, Representation};
use semitrans_core::Graph;

use crate::codec::{encode_graph, encode_orientation, graph_to_dot, orientation_to_dot, parse_graph, parse_orientation, parse_words};
use crate::parallel::solve_parallel;
use crate::repro::ReproCase;

/// Semi-transitive / word-representable, or the requested action succeeded.
pub const EXIT_AFFIRMATIVE: i32 = 0;
/// Definitely not semi-transitive / does not represent.
pub const EXIT_NEGATIVE: i32 = 1;
/// Unknown, or the search budget ran out.
pub const EXIT_UNDECIDED: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub const BUDGET_ENV: &str = "SEMITRANS_BUDGET_MS";

#[derive(Parser, Debug)]
#[command(name = "semitrans", version, about = "Semi-transitive orientations, Kneser graphs and word-representability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit K(n,k), its complement, a lex prefix of it, or the 16-vertex graph S.
    Gen(GenArgs),
    /// Decide whether a graph is semi-transitive.
    Solve(SolveArgs),
    /// Check an orientation file against a graph file.
    Verify { graph: PathBuf, orientation: PathBuf },
    /// Word-representation checks and constructions.
    #[command(subcommand)]
    Word(WordCommand),
    /// Classify K(n,k) or its complement from the known results.
    Classify {
        n: u64,
        k: u64,
        #[arg(long)]
        complement: bool,
    },
    /// Re-run a known result (or `all`) and print PASS/FAIL per case.
    Reproduce {
        case: String,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    n: Option<u32>,
    k: Option<u32>,
    #[arg(long)]
    complement: bool,
    /// Keep only the first M k-subsets in lex order.
    #[arg(long, value_name = "M")]
    lex_prefix: Option<usize>,
    /// The 16-vertex subgraph S of K(8,3) instead of a Kneser graph.
    #[arg(long, conflicts_with_all = ["n", "k", "complement", "lex_prefix"])]
    s16: bool,
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    graph: PathBuf,
    /// Wall-clock budget; 0 means unlimited. Defaults to $SEMITRANS_BUDGET_MS, then 60000.
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Enumerate every orientation instead of searching (at most 20 edges).
    #[arg(long, conflicts_with = "jobs")]
    oracle: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write the witness orientation here instead of stdout.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Print the witness as a DOT digraph.
    #[arg(long)]
    dot: bool,
    /// Print search statistics as key=value lines.
    #[arg(long)]
    stats: bool,
}

#[derive(Subcommand, Debug)]
enum WordCommand {
    /// Check that every word in WORDFILE represents the graph.
    Check {
        words: PathBuf,
        graph: PathBuf,
        /// Each character is a letter.
        #[arg(long)]
        compact: bool,
    },
    /// The word representing the complement of K(2k,k).
    Complement2k {
        k: u32,
        /// Also print the represented graph.
        #[arg(long)]
        graph: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure { code: EXIT_USAGE, message: message.to_string() }
}

type Outcome = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Flag wins over the environment; both fall back to the default. 0 = unlimited.
fn budget_ms(flag: Option<u64>, env: Option<String>) -> Result<Option<u64>, Failure> {
    let ms = match (flag, env) {
        (Some(ms), _) => ms,
        (None, Some(v)) => v.trim().parse().map_err(|_| usage(format!("{BUDGET_ENV}={v} is not a number of milliseconds")))?,
        (None, None) => DEFAULT_BUDGET_MS,
    };
    Ok((ms > 0).then_some(ms))
}

fn io(e: std::io::Error) -> Failure {
    let message = if e.kind() == std::io::ErrorKind::BrokenPipe { String::new() } else { e.to_string() };
    Failure { code: EXIT_USAGE, message }
}

fn gen(args: GenArgs, out: &mut dyn Write) -> Outcome {
    let g = if args.s16 {
        s16_graph()
    } else {
        let (Some(n), Some(k)) = (args.n, args.k) else { return Err(usage("gen needs N and K (or --s16)")) };
        let p = KneserParams::new(n, k).map_err(usage)?;
        match args.lex_prefix {
            Some(m) => lex_prefix_subgraph(p, m, args.complement),
            None => kneser_graph(p, args.complement),
        }
        .map_err(usage)?
    };
    let text = if args.dot { graph_to_dot(&g) } else { encode_graph(&g) };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_AFFIRMATIVE)
}

fn solve_cmd(args: SolveArgs, out: &mut dyn Write) -> Outcome {
    let g = read_graph(&args.graph)?;
    if args.oracle {
        let verdict = exhaustive_check(&g).map_err(usage)?;
        return match verdict {
            ExhaustiveOutcome::SemiTransitive(o) => {
                writeln!(out, "SemiTransitive").map_err(io)?;
                emit_witness(&args, &o, out)?;
                Ok(EXIT_AFFIRMATIVE)
            }
            ExhaustiveOutcome::NotSemiTransitive => {
                writeln!(out, "NotSemiTransitive").map_err(io)?;
                Ok(EXIT_NEGATIVE)
            }
        };
    }
    if args.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let budget = Budget { max_nodes: args.max_nodes, max_ms: budget_ms(args.budget_ms, std::env::var(BUDGET_ENV).ok())? };
    let outcome = solve_parallel(&g, &budget, args.jobs);
    let (line, code) = match &outcome.status {
        SolveStatus::Witness(_) => ("SemiTransitive", EXIT_AFFIRMATIVE),
        SolveStatus::Exhausted => ("NotSemiTransitive", EXIT_NEGATIVE),
        SolveStatus::Timeout => ("Timeout", EXIT_UNDECIDED),
    };
    writeln!(out, "{line}").map_err(io)?;
    if args.stats {
        writeln!(out, "{}", outcome.stats).map_err(io)?;
    }
    if let SolveStatus::Witness(o) = &outcome.status {
        emit_witness(&args, o, out)?;
    }
    Ok(code)
}

fn emit_witness(args: &SolveArgs, o: &semitrans_core::Orientation, out: &mut dyn Write) -> Result<(), Failure> {
    let text = if args.dot { orientation_to_dot(o) } else { encode_orientation(o) };
    match &args.witness {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn verify_cmd(graph: &Path, orientation: &Path, out: &mut dyn Write) -> Outcome {
    let g = read_graph(graph)?;
    let o = parse_orientation(&read(orientation)?).map_err(|e| usage(format!("{}: {e}", orientation.display())))?;
    if *o.graph() != g {
        return Err(usage("the orientation is over a different graph"));
    }
    let label = |v: usize| g.label(v).to_string();
    match verify_semi_transitive(&o) {
        Verdict::SemiTransitive => {
            writeln!(out, "SemiTransitive").map_err(io)?;
            Ok(EXIT_AFFIRMATIVE)
        }
        Verdict::Cycle(c) => {
            let path: Vec<String> = c.iter().chain(c.first()).map(|&v| label(v)).collect();
            writeln!(out, "Cycle {}", path.join(" -> ")).map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
        Verdict::Shortcut(w) => {
            let path: Vec<String> = w.path.iter().map(|&v| label(v)).collect();
            let (s, t) = w.shortcutting_edge();
            let (a, b) = w.missing_pair;
            writeln!(out, "Shortcut {} shortcutting {} -> {} missing {} {}", path.join(" -> "), label(s), label(t), label(a), label(b)).map_err(io)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn word_cmd(cmd: WordCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        WordCommand::Check { words, graph, compact } => {
            let g = read_graph(&graph)?;
            let words = parse_words(&read(&words)?, compact);
            if words.is_empty() {
                return Err(usage("no words in file"));
            }
            let mut all = true;
            for (line, w) in &words {
                let r = represents(w, &g);
                all &= r.holds();
                let text = match r {
                    Representation::Represents => "represents".to_string(),
                    Representation::AlphabetMismatch { missing, extra } => {
                        format!("alphabet mismatch: missing [{}] extra [{}]", missing.join(" "), extra.join(" "))
                    }
                    Representation::Differs { x, y, adjacent } => {
                        let (rel, alt) = if adjacent { ("adjacent", "do not alternate") } else { ("non-adjacent", "alternate") };
                        format!("differs: {x} {y} are {rel} but {alt}")
                    }
                };
                writeln!(out, "line {line}: {text}").map_err(io)?;
            }
            Ok(if all { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
        }
        WordCommand::Complement2k { k, graph } => {
            if k == 0 || k > 8 {
                return Err(usage("k must be in 1..=8"));
            }
            let (w, g) = word_complement_matching(k).map_err(usage)?;
            writeln!(out, "{w}").map_err(io)?;
            if graph {
                out.write_all(encode_graph(&g).as_bytes()).map_err(io)?;
            }
            Ok(if represents(&w, &g).holds() { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
        }
    }
}

fn classify_cmd(n: u64, k: u64, complement: bool, out: &mut dyn Write) -> Outcome {
    let c = classify(n, k, complement).map_err(usage)?;
    writeln!(out, "{c}").map_err(io)?;
    Ok(match c.status {
        Status::SemiTransitive => EXIT_AFFIRMATIVE,
        Status::NotSemiTransitive => EXIT_NEGATIVE,
        Status::Unknown => EXIT_UNDECIDED,
    })
}

fn reproduce(case: &str, flag: Option<u64>, out: &mut dyn Write) -> Outcome {
    let cases = if case == "all" { ReproCase::ALL.to_vec() } else { vec![case.parse::<ReproCase>().map_err(usage)?] };
    let budget = Budget { max_nodes: None, max_ms: budget_ms(flag, std::env::var(BUDGET_ENV).ok())? };
    let mut all = true;
    for c in cases {
        let r = c.run(&budget);
        all &= r.passed;
        writeln!(out, "{r}").map_err(io)?;
    }
    Ok(if all { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE })
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_AFFIRMATIVE
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Gen(args) => gen(args, out),
        Command::Solve(args) => solve_cmd(args, out),
        Command::Verify { graph, orientation } => verify_cmd(&graph, &orientation, out),
        Command::Word(cmd) => word_cmd(cmd, out),
        Command::Classify { n, k, complement } => classify_cmd(n, k, complement, out),
        Command::Reproduce { case, budget_ms } => reproduce(&case, budget_ms, out),
    };
    match result {
        Ok(code) => code,
        // A reader that closed the pipe early (`| head`) is not worth a message.
        Err(Failure { code, message }) if message.is_empty() => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "semitrans: {message}");
            code
        }
    }
}
