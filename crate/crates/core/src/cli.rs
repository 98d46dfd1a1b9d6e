//! The `aspback` command line.
//!
//! Exit codes: 0 success, 1 inconsistent (`solve --mode consistency`),
//! 2 parse or usage error, 3 no backdoor within the bound.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::atoms::AtomSet;
use crate::class::{in_target_class, TargetClass};
use crate::depgraph::{ddg_dot, incidence_dot, udg_dot, witness_cycle};
use crate::detect::{find_backdoor, verify_backdoor, BackdoorKind, BackdoorQuery};
use crate::error::Error;
use crate::eval::{answer_from_sets, answer_sets, Answer, Mode};
use crate::gen::{
    disjoint_copies, from_hitting_set, planted_program, random_program_instance, GenConfig, HittingSetInstance,
    HittingSetReduction, PlantedConfig,
};
use crate::oracle::{brute_answer_sets, brute_backdoor_up_to, brute_min_backdoor};
use crate::parse::{parse_program_with_stats, render_program};
use crate::program::Program;
use crate::stats::{stats_report, CorpusEntry};
use crate::Closure;

pub const SEED_ENV: &str = "ASPBACK_SEED";

#[derive(Parser, Debug)]
#[command(name = "aspback", version, about = "Backdoors for ground disjunctive logic programs")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a program and print it normalized.
    Parse { file: PathBuf },
    /// Membership in every target class, with a forbidden cycle if any.
    Classify { file: PathBuf },
    /// Graphviz export of a dependency graph.
    Graph {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = GraphKind::Ddg)]
        kind: GraphKind,
    },
    /// Find a backdoor.
    Backdoor(BackdoorArgs),
    /// Reason about the answer sets.
    Solve(SolveArgs),
    /// Generate programs.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Smallest-backdoor statistics over a corpus.
    Stats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "horn")]
        target: TargetClass,
        #[arg(long, default_value = "strong")]
        kind: BackdoorKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Ddg,
    Udg,
    Incidence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DetectEngine {
    Exact,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SolveEngine {
    Backdoor,
    Brute,
}

#[derive(Args, Debug)]
struct BackdoorArgs {
    file: PathBuf,
    #[arg(long, default_value = "horn")]
    target: TargetClass,
    #[arg(long, default_value = "strong")]
    kind: BackdoorKind,
    #[arg(long, conflicts_with = "minimize")]
    k: Option<usize>,
    /// The default without `--k`.
    #[arg(long)]
    minimize: bool,
    #[arg(long, value_enum, default_value_t = DetectEngine::Exact)]
    engine: DetectEngine,
}

#[derive(Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value = "horn")]
    target: TargetClass,
    /// Space-separated atom names; verified before use.
    #[arg(long)]
    backdoor: Option<String>,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long, default_value = "enumerate")]
    mode: Mode,
    #[arg(long)]
    atom: Option<String>,
    #[arg(long, value_enum, default_value_t = SolveEngine::Backdoor)]
    engine: SolveEngine,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Random normal programs.
    Random {
        #[arg(long, default_value_t = 50)]
        atoms: usize,
        #[arg(long, default_value_t = 3.0)]
        density: f64,
        #[arg(long, default_value_t = 2)]
        body_len: usize,
        #[arg(long, default_value_t = 0.5)]
        neg_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Write one file per program into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A program with a planted smallest strong Horn backdoor.
    Planted {
        #[arg(long, default_value_t = 500)]
        atoms: usize,
        #[arg(long, default_value_t = 14)]
        backdoor: usize,
        #[arg(long, default_value_t = 2.0)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The backdoor program of a hitting-set instance.
    HittingSet {
        file: PathBuf,
        #[arg(long, default_value = "taut")]
        reduction: HittingSetReduction,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Atom-disjoint copies of a program.
    Copies {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Input { path: String, source: Error },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Lib(#[from] Error),
}

type CliResult = Result<i32, CliError>;

struct Io<'a> {
    stdin: &'a mut (dyn Read + Send),
    stdout: &'a mut (dyn Write + Send),
    format: Format,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let mut text = String::new();
        let res = if path.as_os_str() == "-" {
            self.stdin.read_to_string(&mut text).map(|_| ())
        } else {
            fs::read_to_string(path).map(|t| text = t)
        };
        res.map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Ok(text)
    }

    fn program(&mut self, path: &Path) -> Result<(Program, usize), CliError> {
        let text = self.read(path)?;
        parse_program_with_stats(&text)
            .map(|(p, s)| (p, s.duplicate_literals))
            .map_err(|source| CliError::Input {
                path: path.display().to_string(),
                source,
            })
    }

    fn emit(&mut self, text: &str, value: Value) -> Result<(), CliError> {
        let out = match self.format {
            Format::Text => text.to_owned(),
            Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
        };
        self.stdout.write_all(out.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })
    }
}

fn names(p: &Program, x: &AtomSet) -> Vec<String> {
    x.names(p.table())
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut (dyn Read + Send), stdout: &mut (dyn Write + Send), stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(stderr, "aspback: {e}");
            return 2;
        }
    };
    let mut io = Io {
        stdin,
        stdout,
        format: cli.format,
    };
    match pool.install(|| dispatch(cli.command, &mut io)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "aspback: {e}");
            2
        }
    }
}

/// [`run`] on the process arguments and standard streams.
pub fn main() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdin(),
        &mut std::io::stdout(),
        &mut std::io::stderr().lock(),
    )
}

fn dispatch(command: Command, io: &mut Io) -> CliResult {
    match command {
        Command::Parse { file } => parse(&file, io),
        Command::Classify { file } => classify(&file, io),
        Command::Graph { file, kind } => graph(&file, kind, io),
        Command::Backdoor(args) => backdoor(args, io),
        Command::Solve(args) => solve(args, io),
        Command::Gen(cmd) => gen(cmd, io),
        Command::Stats { files, target, kind } => stats(&files, target, kind, io),
    }
}

fn parse(file: &Path, io: &mut Io) -> CliResult {
    let (p, duplicates) = io.program(file)?;
    let value = json!({
        "atoms": p.at().len(),
        "rules": p.len(),
        "size": p.size(),
        "constraints": p.rules().iter().filter(|r| r.is_constraint()).count(),
        "tautological": p.rules().iter().filter(|r| r.is_tautological()).count(),
        "normal": p.is_normal(),
        "horn": p.is_horn(),
        "disjunction_free": p.is_disjunction_free(),
        "duplicate_literals": duplicates,
        "program": render_program(&p),
    });
    io.emit(&render_program(&p), value)?;
    Ok(0)
}

fn classify(file: &Path, io: &mut Io) -> CliResult {
    let (p, _) = io.program(file)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in TargetClass::ALL {
        let member = in_target_class(&p, c);
        let witness = if c.is_acyclic() {
            witness_cycle(&p, c)?.map(|w| w.render(&p))
        } else {
            None
        };
        let note = match (&witness, member) {
            (Some(w), _) => w.clone(),
            (None, false) => "core is not normal".to_owned(),
            (None, true) => String::new(),
        };
        let answer = if member { "yes" } else { "no" };
        text += format!("{:<9} {:<4} {}", c.cli_name(), answer, note).trim_end();
        text += "\n";
        rows.push(json!({ "class": c.cli_name(), "member": member, "witness": witness }));
    }
    io.emit(&text, json!({ "classes": rows }))?;
    Ok(0)
}

fn graph(file: &Path, kind: GraphKind, io: &mut Io) -> CliResult {
    let (p, _) = io.program(file)?;
    let (name, dot) = match kind {
        GraphKind::Ddg => ("ddg", ddg_dot(&p)),
        GraphKind::Udg => ("udg", udg_dot(&p)),
        GraphKind::Incidence => ("incidence", incidence_dot(&p)),
    };
    io.emit(&dot, json!({ "kind": name, "dot": dot }))?;
    Ok(0)
}

fn backdoor(args: BackdoorArgs, io: &mut Io) -> CliResult {
    let (p, _) = io.program(&args.file)?;
    let start = Instant::now();
    let (witness, optimal, nodes) = match args.engine {
        DetectEngine::Exact => {
            let q = match args.k {
                Some(k) => BackdoorQuery::at_most(args.target, args.kind, k),
                None => BackdoorQuery::minimize(args.target, args.kind),
            };
            let r = find_backdoor(&p, &q)?;
            (r.witness, r.optimal, Some(r.nodes_explored))
        }
        DetectEngine::Brute => match args.k {
            Some(k) => (
                brute_backdoor_up_to(&p, args.target, args.kind, Closure::Star, k)?,
                false,
                None,
            ),
            None => (Some(brute_min_backdoor(&p, args.target, args.kind)?), true, None),
        },
    };
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let listed = witness.as_ref().map(|x| names(&p, x));
    let value = json!({
        "target": args.target.cli_name(),
        "kind": args.kind,
        "k": args.k,
        "engine": format!("{:?}", args.engine).to_lowercase(),
        "backdoor": listed,
        "size": witness.as_ref().map(AtomSet::len),
        "optimal": optimal,
        "nodes_explored": nodes,
        "wall_ms": wall_ms,
    });
    let text = match &listed {
        Some(names) => names.join(" ") + "\n",
        None => "no backdoor within bound\n".to_owned(),
    };
    io.emit(&text, value)?;
    Ok(if witness.is_some() { 0 } else { 3 })
}

fn solve(args: SolveArgs, io: &mut Io) -> CliResult {
    if args.target != TargetClass::HornStar {
        return Err(CliError::Usage(format!(
            "solve evaluates through horn backdoors only, not `{}`",
            args.target.cli_name()
        )));
    }
    if args.mode.needs_atom() && args.atom.is_none() {
        return Err(Error::MissingAtom(args.mode.to_string()).into());
    }
    let (p, _) = io.program(&args.file)?;
    let start = Instant::now();
    let (sets, backdoor, stats) = match args.engine {
        SolveEngine::Brute => (brute_answer_sets(&p)?, None, None),
        SolveEngine::Backdoor => {
            let x = match &args.backdoor {
                Some(list) => {
                    let x = p.table().resolve_names(list).map_err(CliError::Usage)?;
                    if !verify_backdoor(&p, &x, TargetClass::HornStar, BackdoorKind::Strong)? {
                        return Err(Error::InvalidBackdoor(TargetClass::HornStar).into());
                    }
                    x
                }
                None => {
                    let q = match args.max_k {
                        Some(k) => BackdoorQuery::at_most(TargetClass::HornStar, BackdoorKind::Strong, k),
                        None => BackdoorQuery::minimize(TargetClass::HornStar, BackdoorKind::Strong),
                    };
                    match find_backdoor(&p, &q)?.witness {
                        Some(x) => x,
                        None => {
                            let value = json!({ "backdoor": null, "mode": args.mode });
                            io.emit("no backdoor within bound\n", value)?;
                            return Ok(3);
                        }
                    }
                }
            };
            let report = answer_sets(&p, &x)?;
            let stats = (report.candidates_total, report.candidates_rejected);
            (report.answer_sets, Some(x), Some(stats))
        }
    };
    let answer = answer_from_sets(&p, &sets, args.mode, args.atom.as_deref())?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let (text, answer_value, code) = match &answer {
        Answer::Bool(b) if args.mode == Mode::Consistency => {
            let word = if *b { "consistent" } else { "inconsistent" };
            (format!("{word}\n"), json!(b), if *b { 0 } else { 1 })
        }
        Answer::Bool(b) => (format!("{b}\n"), json!(b), 0),
        Answer::Count(n) => (format!("{n}\n"), json!(n), 0),
        Answer::Sets(sets) => {
            let text: String = sets.iter().map(|s| s.render(p.table()) + "\n").collect();
            let listed: Vec<Vec<String>> = sets.iter().map(|s| names(&p, s)).collect();
            (text, json!(listed), 0)
        }
    };
    let value = json!({
        "mode": args.mode,
        "atom": args.atom,
        "engine": format!("{:?}", args.engine).to_lowercase(),
        "backdoor": backdoor.as_ref().map(|x| names(&p, x)),
        "answer": answer_value,
        "candidates_total": stats.map(|s| s.0),
        "candidates_rejected": stats.map(|s| s.1),
        "wall_ms": wall_ms,
    });
    io.emit(&text, value)?;
    Ok(code)
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{SEED_ENV} must be an unsigned integer, got `{s}`"))),
        Err(_) => Ok(flag),
    }
}

fn gen(cmd: GenCommand, io: &mut Io) -> CliResult {
    // (file name, header, program)
    let mut programs: Vec<(String, String, Program)> = Vec::new();
    let out = match cmd {
        GenCommand::Random {
            atoms,
            density,
            body_len,
            neg_prob,
            seed: s,
            count,
            out,
        } => {
            let cfg = GenConfig {
                n_atoms: atoms,
                density,
                body_len,
                neg_prob,
                seed: seed(s)?,
            };
            for i in 0..count {
                let p = random_program_instance(&cfg, i)?;
                programs.push((format!("random-{i:04}.lp"), cfg.header(i), p));
            }
            out
        }
        GenCommand::Planted {
            atoms,
            backdoor,
            density,
            seed: s,
            out,
        } => {
            let cfg = PlantedConfig {
                n_atoms: atoms,
                backdoor,
                density,
                seed: seed(s)?,
            };
            programs.push(("planted.lp".into(), cfg.header(), planted_program(&cfg)?));
            out
        }
        GenCommand::HittingSet { file, reduction, out } => {
            let h = HittingSetInstance::parse(&io.read(&file)?)?;
            let header = format!(
                "% gen: hitting-set reduction={} sets={} k={}",
                reduction,
                h.sets.len(),
                h.k
            );
            programs.push(("hitting-set.lp".into(), header, from_hitting_set(&h, reduction)));
            out
        }
        GenCommand::Copies { file, n, out } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let (p, _) = io.program(&file)?;
            programs.push((
                "copies.lp".into(),
                format!("% gen: copies n={n}"),
                disjoint_copies(&p, n),
            ));
            out
        }
    };

    let mut text = String::new();
    let mut rows = Vec::new();
    for (name, header, p) in &programs {
        let body = format!("{header}\n{}", render_program(p));
        let path = match &out {
            Some(dir) => {
                let path = dir.join(name);
                fs::create_dir_all(dir)
                    .and_then(|_| fs::write(&path, &body))
                    .map_err(|source| CliError::Io {
                        path: path.display().to_string(),
                        source,
                    })?;
                text += &format!("{}\n", path.display());
                Some(path.display().to_string())
            }
            None => {
                text += &body;
                None
            }
        };
        rows.push(json!({
            "name": name,
            "header": header,
            "atoms": p.at().len(),
            "rules": p.len(),
            "path": path,
            "program": if out.is_none() { Some(render_program(p)) } else { None },
        }));
    }
    io.emit(&text, json!({ "programs": rows }))?;
    Ok(0)
}

fn stats(files: &[PathBuf], target: TargetClass, kind: BackdoorKind, io: &mut Io) -> CliResult {
    let corpus: Vec<CorpusEntry> = files
        .iter()
        .map(|f| {
            let text = io.read(f).map_err(|e| match e {
                CliError::Io { source, .. } => source.to_string(),
                e => e.to_string(),
            });
            (f.display().to_string(), text)
        })
        .collect();
    let report = stats_report(&corpus, target, kind);
    let value = serde_json::to_value(&report).expect("reports serialize");
    io.emit(&report.render_text(), value)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_with(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("aspback").chain(args.iter().copied());
        let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_ex1_from_stdin() {
        let (code, out, _) = run_with(&["solve", "--target", "horn", "--mode", "enumerate", "-"], crate::EX1);
        assert_eq!((code, out.as_str()), (0, "{t}\n"));
    }

    #[test]
    fn minimal_backdoor_of_ex1() {
        let (code, out, _) = run_with(&["backdoor", "--target", "horn", "--minimize", "-"], crate::EX1);
        assert_eq!((code, out.as_str()), (0, "r s\n"));
    }

    #[test]
    fn inconsistent_program_exits_one() {
        let (code, out, _) = run_with(&["solve", "--mode", "consistency", "-"], "x :- not x.  y.");
        assert_eq!((code, out.as_str()), (1, "inconsistent\n"));
    }

    #[test]
    fn bound_too_small_exits_three() {
        let (code, _, _) = run_with(&["backdoor", "--k", "1", "-"], crate::EX1);
        assert_eq!(code, 3);
        let (code, _, _) = run_with(&["solve", "--max-k", "1", "-"], crate::EX1);
        assert_eq!(code, 3);
    }

    #[test]
    fn syntax_and_usage_errors_exit_two() {
        let (code, _, err) = run_with(&["parse", "-"], "a :- .");
        assert_eq!(code, 2);
        assert!(err.contains("1:6"), "{err}");
        assert_eq!(run_with(&["frobnicate"], "").0, 2);
        assert_eq!(run_with(&["solve", "--mode", "brave", "-"], crate::EX1).0, 2);
        assert_eq!(run_with(&["solve", "--backdoor", "r", "-"], crate::EX1).0, 2);
        assert_eq!(run_with(&["solve", "--target", "strat", "-"], crate::EX1).0, 2);
    }

    #[test]
    fn user_backdoor_and_brute_engine_agree() {
        let a = run_with(&["solve", "--backdoor", "s r", "--mode", "count", "-"], crate::EX1);
        let b = run_with(&["solve", "--engine", "brute", "--mode", "count", "-"], crate::EX1);
        assert_eq!(a, b);
        assert_eq!(a.1, "1\n");
    }

    #[test]
    fn classify_lists_every_class() {
        let (code, out, _) = run_with(&["classify", "-"], crate::EX1);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.starts_with("horn      no"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_with(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("backdoor"));
    }
}
