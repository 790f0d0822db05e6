//! Command-line front end: exact solvers, verification and instance generation.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use treecover::dp::{DpSolution, OneSource, TwoSources};
use treecover::format::{format_strategy, parse_instance, parse_strategy, to_dot, Instance, Problem};
use treecover::hardness::{
    gen_lcsr, gen_random_tree, gen_tcs, witness_lcsr, witness_tcs, TreeShape,
};
use treecover::oracle::{fleet, three_partition_solve, Objective, Oracle, DEFAULT_MAX_STATES};
use treecover::structure::{check_edge_directions, verify_structure};
use treecover::{Error, RendezvousViolation, Strategy, Vertex};

use output::{Fields, Format};

#[derive(Parser)]
#[command(name = "treecover", version, about = "Exact multi-robot coverage of trees")]
struct Cli {
    /// Report layout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Kv)]
    format: Format,
    /// Suppress the report; only the exit status and written files remain.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum-length covering with the dynamic programs (one or two start vertices).
    Solve(SolveArgs),
    /// Exhaustive optimum for any problem on small instances.
    Oracle(OracleArgs),
    /// Check a strategy file against an instance.
    Verify(VerifyArgs),
    /// Generate an instance file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Build the yes-certificate strategy of a 3-PARTITION reduction instance.
    Witness(WitnessArgs),
    /// Time the one-source program on random trees of growing size.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Instance file.
    instance: PathBuf,
    /// Write an optimal strategy here.
    #[arg(long, value_name = "PATH")]
    emit_strategy: Option<PathBuf>,
    /// Write the tree in DOT format, with the strategy's paths and detours highlighted.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    run: RunArgs,
    #[arg(long, value_enum, default_value_t = Solver::Dp)]
    solver: Solver,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Dp,
    Oracle,
}

#[derive(Args)]
struct VerifyArgs {
    instance: PathBuf,
    strategy: PathBuf,
    /// Also run the minimum-length structure and edge-direction checks.
    #[arg(long)]
    structure: bool,
}

#[derive(Args, Clone)]
struct PartitionInput {
    /// Items, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    a: Vec<u64>,
    /// Target triple sum.
    #[arg(long)]
    b: u64,
}

#[derive(Args)]
struct GenOutput {
    /// Instance file to write; stdout when absent.
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Cover-time reduction instance (mtcp).
    Tcs {
        #[command(flatten)]
        input: PartitionInput,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Rendezvous cover-length reduction instance (mlcpr).
    Lcsr {
        #[command(flatten)]
        input: PartitionInput,
        #[command(flatten)]
        output: GenOutput,
    },
    /// Random tree instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform")]
        shape: TreeShape,
        #[arg(long, default_value = "mlcp")]
        problem: Problem,
        /// Start vertices, one per robot.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        starts: Vec<Vertex>,
        #[arg(long)]
        rendezvous: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        #[command(flatten)]
        output: GenOutput,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    Tcs,
    Lcsr,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(value_enum)]
    kind: Reduction,
    #[command(flatten)]
    input: PartitionInput,
    /// Item indices, three per triple; searched for when absent.
    #[arg(long, value_delimiter = ',')]
    partition: Option<Vec<usize>>,
    /// Strategy file to write; stdout when absent.
    #[arg(long, short, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "caterpillar")]
    shape: TreeShape,
    #[arg(long, value_delimiter = ',', default_value = "2000,4000")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Runs per size; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    reps: usize,
}

enum Failure {
    Io(String),
    Core(Error),
    /// An error in the named input file.
    In(PathBuf, Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<(), Failure>;

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_PRECONDITION: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_VERIFY: u8 = 6;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output::Out { format: cli.format, quiet: cli.quiet };
    let result = match cli.command {
        Command::Solve(args) => solve(&out, args),
        Command::Oracle(args) => oracle(&out, args.run),
        Command::Verify(args) => verify(&out, args),
        Command::Gen { kind } => gen(&out, kind),
        Command::Witness(args) => witness(&out, args),
        Command::Bench(args) => bench(&out, args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
        Err(Failure::In(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> ExitCode {
    ExitCode::from(match e {
        Error::Parse { .. } | Error::Tree(_) => EXIT_PARSE,
        Error::InvalidInput(_) | Error::Precondition(_) => EXIT_PRECONDITION,
        Error::ResourceLimit(_) => EXIT_RESOURCE,
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| Failure::In(path.to_path_buf(), e))
}

/// SHA-256 of the canonical instance text.
fn digest(inst: &Instance) -> String {
    let hash = Sha256::digest(inst.to_string().as_bytes());
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn instance_fields(inst: &Instance) -> Fields {
    let mut f = Fields::default();
    f.push("problem", inst.problem.name());
    f.push("digest", digest(inst));
    f.push("vertices", inst.tree.len());
    f.push("robots", inst.robots());
    if let Some(p) = inst.rendezvous {
        f.push("rendezvous", p);
    }
    f
}

/// Reorders walks so that walk `i` starts at `starts[i]`.
fn align(s: Strategy, starts: &[Vertex]) -> Strategy {
    let mut pool: Vec<Option<treecover::Walk>> = s.walks().iter().cloned().map(Some).collect();
    let walks = starts
        .iter()
        .map(|&v| {
            let slot = pool
                .iter_mut()
                .find(|w| w.as_ref().is_some_and(|w| w.start() == v))
                .expect("one walk per start");
            slot.take().unwrap()
        })
        .collect();
    Strategy::new(walks)
}

fn dp_solve(inst: &Instance) -> Result<(&'static str, DpSolution), Error> {
    match inst.problem {
        Problem::Mlcp => {}
        Problem::Mtcp | Problem::Mtcpr => {
            return Err(Error::Precondition(format!(
                "use oracle: {} is NP-hard",
                inst.problem.name().to_uppercase()
            )))
        }
        Problem::Mlcpr => {
            return Err(Error::Precondition("use oracle: MLCPR is NP-hard".into()));
        }
    }
    let distinct = inst.distinct_starts();
    let count = |v: Vertex| inst.starts.iter().filter(|&&s| s == v).count();
    match distinct[..] {
        [u] => {
            let k = inst.robots();
            Ok(("dp-one-source", OneSource::solve(&inst.tree, u, k)?.solution(&inst.tree, k)))
        }
        [u, v] => {
            let (s, t) = (count(u), count(v));
            let solver = TwoSources::solve(&inst.tree, u, v, s.max(t))?;
            Ok(("dp-two-sources", solver.solution(&inst.tree, s, t)))
        }
        _ => Err(Error::Precondition(format!(
            "{} distinct start vertices: minimum-length covering from three or more \
             start vertices is an open problem with no known polynomial algorithm; use oracle",
            distinct.len()
        ))),
    }
}

fn solve(out: &output::Out, args: SolveArgs) -> CmdResult {
    if let Solver::Oracle = args.solver {
        return oracle(out, args.run);
    }
    let run = args.run;
    let inst = load_instance(&run.instance)?;
    let clock = Instant::now();
    let (solver, sol) = dp_solve(&inst)?;
    let elapsed = clock.elapsed();
    let strategy = align(sol.strategy, &inst.starts);
    finish(out, &inst, &run, solver, sol.cost, Some(&strategy), elapsed.as_secs_f64())
}

fn oracle(out: &output::Out, run: RunArgs) -> CmdResult {
    let inst = load_instance(&run.instance)?;
    let want_witness = run.emit_strategy.is_some() || run.dot.is_some();
    let oracle = Oracle::with_max_states(run.max_states);
    let clock = Instant::now();
    let robots = fleet(&inst.starts);
    let objective = inst.problem.objective();
    let (cost, strategy) = if want_witness {
        let sol = oracle.solve_with_witness(&inst.tree, &robots, objective, inst.rendezvous)?;
        (sol.cost, sol.strategy)
    } else {
        (oracle.solve(&inst.tree, &robots, objective, inst.rendezvous)?, None)
    };
    let elapsed = clock.elapsed();
    finish(out, &inst, &run, "oracle", cost, strategy.as_ref(), elapsed.as_secs_f64())
}

fn finish(
    out: &output::Out,
    inst: &Instance,
    run: &RunArgs,
    solver: &str,
    cost: usize,
    strategy: Option<&Strategy>,
    seconds: f64,
) -> CmdResult {
    let mut f = instance_fields(inst);
    f.push("solver", solver);
    f.push("cost", cost);
    if let Some(b) = inst.budget {
        f.push("budget", b);
        f.push("within_budget", cost <= b);
    }
    if let (Some(path), Some(s)) = (&run.emit_strategy, strategy) {
        write(path, &format_strategy(s))?;
        f.push("strategy", path.display().to_string());
    }
    if let Some(path) = &run.dot {
        write(path, &to_dot(inst, strategy)?)?;
        f.push("dot", path.display().to_string());
    }
    if run.timing {
        f.push("wall_ms", (seconds * 1e6).round() / 1e3);
    }
    out.emit(&f);
    Ok(())
}

fn describe_rendezvous(v: &RendezvousViolation) -> String {
    match *v {
        RendezvousViolation::Gap { since, step } => {
            format!("fail: no meeting from step {} to step {step}", since + 1)
        }
        RendezvousViolation::NoFinalMeeting { step } => {
            format!("fail: robots apart at the final step {step}")
        }
    }
}

fn verify(out: &output::Out, args: VerifyArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let text = read(&args.strategy)?;
    let s = parse_strategy(&text, Some(&inst)).map_err(|e| Failure::In(args.strategy.clone(), e))?;
    let tree = &inst.tree;

    let mut f = instance_fields(&inst);
    f.push("time", s.time());
    f.push("length", s.length());
    let mut failed = false;
    let mut check = |f: &mut Fields, name: &str, outcome: Result<(), String>| {
        let value = match outcome {
            Ok(()) => "pass".to_string(),
            Err(msg) => {
                failed = true;
                msg
            }
        };
        f.push(&format!("check.{name}"), value);
    };

    let valid = s.validate(tree);
    check(&mut f, "walks", valid.clone().map_err(|e| format!("fail: {e}")));
    check(
        &mut f,
        "robots",
        if s.robots() == inst.robots() {
            Ok(())
        } else {
            Err(format!("fail: {} walks for {} robots", s.robots(), inst.robots()))
        },
    );
    let bad_start = s
        .walks()
        .iter()
        .zip(&inst.starts)
        .position(|(w, &v)| w.start() != v);
    check(
        &mut f,
        "starts",
        match bad_start {
            None => Ok(()),
            Some(i) => Err(format!(
                "fail: walk {i} starts at {}, expected {}",
                inst.name_of(s.walks()[i].start()),
                inst.name_of(inst.starts[i])
            )),
        },
    );
    let missing = s.uncovered(tree)?;
    check(
        &mut f,
        "coverage",
        if missing.is_empty() {
            Ok(())
        } else {
            let names: Vec<_> = missing.iter().map(|&v| inst.name_of(v)).collect();
            Err(format!("fail: vertices not visited: {}", names.join(", ")))
        },
    );
    if let Some(p) = inst.rendezvous {
        check(
            &mut f,
            "rendezvous",
            s.rendezvous_violation(p).map_or(Ok(()), |v| Err(describe_rendezvous(&v))),
        );
    }
    if let Some(b) = inst.budget {
        let (what, measured) = match inst.problem.objective() {
            Objective::Time => ("time", s.time()),
            Objective::Length => ("length", s.length()),
        };
        check(
            &mut f,
            "budget",
            if measured <= b {
                Ok(())
            } else {
                Err(format!("fail: {what} {measured} exceeds budget {b}"))
            },
        );
    }
    if args.structure {
        if valid.is_ok() && missing.is_empty() {
            let report = verify_structure(tree, &s)?;
            for (name, violations) in report.checks() {
                check(
                    &mut f,
                    name,
                    match violations.first() {
                        None => Ok(()),
                        Some(v) => Err(format!("fail: {v}")),
                    },
                );
            }
            let dirs = check_edge_directions(&s);
            check(
                &mut f,
                "edge-directions",
                match dirs.conflicts.first() {
                    None => Ok(()),
                    Some(c) => Err(format!("fail: {c}")),
                },
            );
        } else {
            f.push("check.structure", "skipped: needs a valid covering strategy");
        }
    }
    f.push("result", if failed { "fail" } else { "pass" });
    out.emit(&f);
    if failed {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

fn gen(out: &output::Out, kind: GenKind) -> CmdResult {
    let (inst, output) = match kind {
        GenKind::Tcs { input, output } => {
            let g = gen_tcs(&input.a, input.b)?;
            let mut inst = Instance::new(Problem::Mtcp, g.tree.clone(), vec![g.start; g.robots]);
            inst.labels = g.labels().into_iter().enumerate().collect();
            inst.budget = Some(g.budget);
            (inst, output)
        }
        GenKind::Lcsr { input, output } => {
            let g = gen_lcsr(&input.a, input.b)?;
            let mut inst = Instance::new(Problem::Mlcpr, g.tree.clone(), vec![g.start; g.robots]);
            inst.labels = g.labels().into_iter().enumerate().collect();
            inst.rendezvous = Some(g.period);
            inst.budget = Some(g.budget);
            (inst, output)
        }
        GenKind::Random { n, seed, shape, problem, starts, rendezvous, budget, output } => {
            let tree = gen_random_tree(n, seed, shape)?;
            if let Some(&v) = starts.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!("start {v} out of range for {n} vertices")).into());
            }
            if problem.has_rendezvous() != rendezvous.is_some() {
                return Err(Error::InvalidInput(format!(
                    "{problem} {} --rendezvous",
                    if problem.has_rendezvous() { "needs" } else { "takes no" }
                ))
                .into());
            }
            let mut inst = Instance::new(problem, tree, starts);
            inst.rendezvous = rendezvous;
            inst.budget = budget;
            (inst, output)
        }
    };
    let text = inst.to_string();
    if let Some(path) = &output.dot {
        write(path, &to_dot(&inst, None)?)?;
    }
    match &output.out {
        Some(path) => {
            write(path, &text)?;
            let mut f = instance_fields(&inst);
            if let Some(b) = inst.budget {
                f.push("budget", b);
            }
            f.push("instance", path.display().to_string());
            out.emit(&f);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn witness(out: &output::Out, args: WitnessArgs) -> CmdResult {
    let PartitionInput { a, b } = &args.input;
    let partition: Vec<[usize; 3]> = match &args.partition {
        Some(flat) => {
            if flat.len() % 3 != 0 {
                return Err(Error::InvalidInput(format!(
                    "partition lists {} indices, not a multiple of three",
                    flat.len()
                ))
                .into());
            }
            flat.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
        }
        None => three_partition_solve(a, *b)?
            .ok_or_else(|| Error::Precondition("the items admit no 3-partition".into()))?,
    };
    let (strategy, budget, measured, p) = match args.kind {
        Reduction::Tcs => {
            let inst = gen_tcs(a, *b)?;
            let s = witness_tcs(&inst, &partition)?;
            let t = s.time();
            (s, inst.budget, ("time", t), None)
        }
        Reduction::Lcsr => {
            let inst = gen_lcsr(a, *b)?;
            let s = witness_lcsr(&inst, &partition)?;
            let l = s.length();
            (s, inst.budget, ("length", l), Some(inst.period))
        }
    };
    let text = format_strategy(&strategy);
    match &args.out {
        Some(path) => {
            write(path, &text)?;
            let mut f = Fields::default();
            f.push("robots", strategy.robots());
            f.push(measured.0, measured.1);
            f.push("budget", budget);
            if let Some(p) = p {
                f.push("rendezvous", p);
            }
            let triples: Vec<String> = partition
                .iter()
                .map(|t| format!("{}+{}+{}", t[0], t[1], t[2]))
                .collect();
            f.push("partition", triples.join(" "));
            f.push("strategy", path.display().to_string());
            out.emit(&f);
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn bench(out: &output::Out, args: BenchArgs) -> CmdResult {
    if args.reps == 0 || args.k == 0 {
        return Err(Error::InvalidInput("--reps and --k must be positive".into()).into());
    }
    let mut rows = Vec::new();
    for &n in &args.sizes {
        let tree = gen_random_tree(n, args.seed, args.shape)?;
        let mut best = f64::INFINITY;
        let mut cost = 0;
        for _ in 0..args.reps {
            let clock = Instant::now();
            let sol = OneSource::solve(&tree, 0, args.k)?;
            best = best.min(clock.elapsed().as_secs_f64());
            cost = sol.cost(args.k);
        }
        let mut f = Fields::default();
        f.push("n", n);
        f.push("k", args.k);
        f.push("cost", cost);
        f.push("best_ms", (best * 1e6).round() / 1e3);
        rows.push(f);
    }
    out.emit_rows(&rows);
    Ok(())
}
