//! Command-line front end for the solvability library.
//!
//! Subcommands decide single instances (`solve`, `feasible`), inspect the
//! configuration space (`classes`, `accumulate`), plan repairs (`augment`),
//! materialize named graph families (`gen`), and cross-check the fast
//! solvers against the brute-force oracle over every small connected graph
//! (`corpus`).
//!
//! Every subcommand accepts `--json` for a machine-readable report with a
//! stable field order; `--no-timing` drops the wall-clock section so that
//! identical inputs produce byte-identical reports.
//!
//! Exit codes: 0 when a decision was rendered (either way), 2 on parse or
//! usage errors, 3 when a search cap was exceeded, 4 on an internal
//! invariant breach.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;
use sha2::{Digest, Sha256};

use usolr::accumulation::accumulate;
use usolr::augment::{
    augment_constructive, generate, min_edge_augmentation_bf, min_vertex_edge_augmentation_bf,
    AugmentationMethod, AugmentationPlan, FamilySpec,
};
use usolr::biconnected::all_connected_graphs;
use usolr::config::Configuration;
use usolr::error::{Error, ParseError};
use usolr::frmp::{feasible, Method};
use usolr::graph::Graph;
use usolr::oracle::{equivalence_classes, SearchCaps};
use usolr::solver::{
    solve_deterministic, solve_optimized, solve_oracle, solve_randomized, Algorithm, SolveVerdict,
};

#[derive(Parser)]
#[command(name = "usolr", version, about = "Universal solvability of robot motion on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether every configuration of p robots reaches every other.
    Solve(SolveArgs),
    /// Decide whether one specific configuration reaches another.
    Feasible(FeasibleArgs),
    /// Gather the robots onto the canonical target set, logging the moves.
    Accumulate(AccumulateArgs),
    /// Enumerate the reachability classes of the configuration space.
    Classes(ClassesArgs),
    /// Plan vertex/edge additions that make the graph universally solvable.
    Augment(AugmentArgs),
    /// Print a named family graph in the text format.
    Gen(GenArgs),
    /// Cross-check the solvers against the oracle on all small graphs.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct ReportOpts {
    /// Emit a JSON report instead of plain text.
    #[arg(long)]
    json: bool,
    /// Omit wall-clock timings from the JSON report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Algo {
    Rand,
    Det,
    Opt,
    Oracle,
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file in the `n m` header / `u v` edge-line format.
    graph: PathBuf,
    /// Robot count; defaults to the number of vertices.
    #[arg(long)]
    p: Option<usize>,
    /// Decision algorithm.
    #[arg(long, value_enum, default_value_t = Algo::Opt)]
    algo: Algo,
    /// Base seed for the randomized algorithm.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized repetitions on seeds seed, seed+1, ...; a NO is certain
    /// and ends the run early.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// State cap for oracle fallbacks.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args)]
struct FeasibleArgs {
    /// Graph file.
    graph: PathBuf,
    /// Starting configuration file: one line of robot vertex ids.
    from: PathBuf,
    /// Target configuration file.
    to: PathBuf,
    /// State cap for oracle fallbacks.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args)]
struct AccumulateArgs {
    /// Graph file.
    graph: PathBuf,
    /// Configuration file.
    config: PathBuf,
    /// Also print the move log, one move per line.
    #[arg(long)]
    moves: bool,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args)]
struct ClassesArgs {
    /// Graph file.
    graph: PathBuf,
    /// Robot count; defaults to the number of vertices.
    #[arg(long)]
    p: Option<usize>,
    /// State cap for the enumeration.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AugmentMode {
    Constructive,
    Exhaustive,
}

#[derive(Args)]
struct AugmentArgs {
    /// Graph file.
    graph: PathBuf,
    /// Robot count; defaults to the number of vertices.
    #[arg(long)]
    p: Option<usize>,
    /// Constructive case analysis, or exhaustive minimum search.
    #[arg(long, value_enum, default_value_t = AugmentMode::Constructive)]
    mode: AugmentMode,
    /// Vertex budget for the exhaustive search.
    #[arg(long, default_value_t = 0)]
    alpha: usize,
    /// Edge budget for the exhaustive search.
    #[arg(long, default_value_t = 2)]
    beta: usize,
    /// State cap for verification and search.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args)]
struct GenArgs {
    /// Family spec: star:N, cycle:N, path:N, complete:N, oddcactus:L1,L2,...
    /// or z:ALPHA,BETA.
    family: String,
    #[command(flatten)]
    report: ReportOpts,
}

#[derive(Args)]
struct CorpusArgs {
    /// Largest vertex count to enumerate exhaustively.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Trials for the randomized-rate check on the 3-cycle.
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    /// Base seed for the randomized-rate check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// State cap per oracle enumeration.
    #[arg(long)]
    cap: Option<usize>,
    #[command(flatten)]
    report: ReportOpts,
}

/// Terminal outcome carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e.is_cap_exceeded() {
            3
        } else if matches!(e, Error::VerificationFailed { .. }) {
            4
        } else {
            2
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Failure {
        Failure { code: 2, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Feasible(a) => cmd_feasible(a),
        Cmd::Accumulate(a) => cmd_accumulate(a),
        Cmd::Classes(a) => cmd_classes(a),
        Cmd::Augment(a) => cmd_augment(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Corpus(a) => cmd_corpus(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn caps_from(cap: Option<usize>) -> SearchCaps {
    match cap {
        Some(max_states) => SearchCaps { max_states, ..SearchCaps::default() },
        None => SearchCaps::default(),
    }
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Phase {
    name: &'static str,
    ms: f64,
}

#[derive(Serialize)]
struct Report<'a, V: Serialize> {
    command: String,
    inputs: &'a [InputDigest],
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    verdict: V,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<&'a [Phase]>,
}

/// Per-run bookkeeping: input digests and phase timings feeding the report.
struct Session {
    inputs: Vec<InputDigest>,
    phases: Vec<Phase>,
    seed: Option<u64>,
}

impl Session {
    fn new() -> Session {
        Session { inputs: Vec::new(), phases: Vec::new(), seed: None }
    }

    /// Reads a file, recording its digest for the report.
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", path.display()),
        })?;
        let digest = Sha256::digest(&bytes);
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        });
        String::from_utf8(bytes).map_err(|_| Failure {
            code: 2,
            message: format!("{}: not valid UTF-8", path.display()),
        })
    }

    fn phase(&mut self, name: &'static str, since: Instant) {
        self.phases.push(Phase { name, ms: since.elapsed().as_secs_f64() * 1e3 });
    }

    /// Prints the JSON report or the plain rendering, per the options.
    fn emit<V: Serialize>(&self, opts: &ReportOpts, verdict: V, plain: &str) {
        if opts.json {
            let report = Report {
                command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                inputs: &self.inputs,
                seed: self.seed,
                verdict,
                timings: if opts.no_timing { None } else { Some(&self.phases) },
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            print!("{plain}");
        }
    }
}

fn yes_no(solvable: bool) -> &'static str {
    if solvable {
        "YES"
    } else {
        "NO"
    }
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Randomized => "randomized",
        Algorithm::Deterministic => "deterministic",
        Algorithm::Optimized => "optimized",
        Algorithm::Oracle => "oracle",
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::TrivialEqual => "trivial-equal",
        Method::ComponentDecomposition => "component-decomposition",
        Method::TwoConnRule => "two-connected-rule",
        Method::TwoEdgeConnRule => "two-edge-connected-rule",
        Method::CycleRule => "cycle-rule",
        Method::ParityRule => "parity-rule",
        Method::OracleFallback => "oracle-fallback",
    }
}

fn augmentation_method_name(m: AugmentationMethod) -> &'static str {
    match m {
        AugmentationMethod::CycleChord => "cycle-chord",
        AugmentationMethod::TriangleCactusBridge => "triangle-cactus-bridge",
        AugmentationMethod::OddCycleChord => "odd-cycle-chord",
        AugmentationMethod::PCycleConstruction => "p-cycle-construction",
        AugmentationMethod::ExhaustiveSearch => "exhaustive-search",
    }
}

#[derive(Serialize)]
struct SolveOut {
    answer: &'static str,
    algorithm: &'static str,
    p: usize,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials_run: Option<usize>,
}

fn cmd_solve(a: SolveArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let text = ses.read(&a.graph)?;
    let t0 = Instant::now();
    let g = Graph::parse(&text)?;
    ses.phase("parse", t0);
    let p = a.p.unwrap_or(g.n());
    let caps = caps_from(a.cap);
    let t0 = Instant::now();
    let (verdict, trials_run): (SolveVerdict, Option<usize>) = match a.algo {
        Algo::Rand => {
            ses.seed = Some(a.seed);
            let trials = a.trials.max(1);
            let mut last = None;
            let mut runs = 0;
            for k in 0..trials {
                runs = k + 1;
                let v = solve_randomized(&g, p, a.seed.wrapping_add(k as u64), caps)?;
                let done = !v.answer.is_solvable();
                last = Some(v);
                if done {
                    // A NO from the one-sided sampler is never wrong.
                    break;
                }
            }
            (last.expect("at least one trial"), Some(runs))
        }
        Algo::Det => (solve_deterministic(&g, p, caps)?, None),
        Algo::Opt => (solve_optimized(&g, p, caps)?, None),
        Algo::Oracle => (solve_oracle(&g, p, caps)?, None),
    };
    ses.phase("decide", t0);
    let mut plain = format!("{}\n", yes_no(verdict.answer.is_solvable()));
    let _ = writeln!(plain, "algorithm: {}", algorithm_name(verdict.algorithm));
    if let Some(runs) = trials_run {
        let _ = writeln!(plain, "trials: {} of {}", runs, a.trials.max(1));
    }
    if let Some(d) = &verdict.detail {
        let _ = writeln!(plain, "detail: {d}");
    }
    let out = SolveOut {
        answer: yes_no(verdict.answer.is_solvable()),
        algorithm: algorithm_name(verdict.algorithm),
        p,
        n: g.n(),
        m: g.m(),
        detail: verdict.detail.clone(),
        trials: trials_run.map(|_| a.trials.max(1)),
        trials_run,
    };
    ses.emit(&a.report, out, &plain);
    Ok(())
}

#[derive(Serialize)]
struct FeasibleOut {
    answer: &'static str,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<String>,
}

fn cmd_feasible(a: FeasibleArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let graph_text = ses.read(&a.graph)?;
    let from_text = ses.read(&a.from)?;
    let to_text = ses.read(&a.to)?;
    let t0 = Instant::now();
    let g = Graph::parse(&graph_text)?;
    let s = Configuration::parse(&from_text)?;
    let t = Configuration::parse(&to_text)?;
    ses.phase("parse", t0);
    let t0 = Instant::now();
    let d = feasible(&g, s.p(), &s, &t, caps_from(a.cap))?;
    ses.phase("decide", t0);
    let mut plain = format!(
        "{}\n",
        if d.answer.is_reachable() { "REACHABLE" } else { "UNREACHABLE" }
    );
    let _ = writeln!(plain, "method: {}", method_name(d.method));
    if let Some(c) = &d.certificate {
        let _ = writeln!(plain, "certificate: {c}");
    }
    let out = FeasibleOut {
        answer: if d.answer.is_reachable() { "REACHABLE" } else { "UNREACHABLE" },
        method: method_name(d.method),
        certificate: d.certificate.clone(),
    };
    ses.emit(&a.report, out, &plain);
    Ok(())
}

#[derive(Serialize)]
struct AccumulateOut {
    r#final: String,
    moves: Vec<String>,
    /// Induced bijection from occupied start vertices to the target set.
    map: Vec<(usize, usize)>,
}

fn cmd_accumulate(a: AccumulateArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let graph_text = ses.read(&a.graph)?;
    let config_text = ses.read(&a.config)?;
    let t0 = Instant::now();
    let g = Graph::parse(&graph_text)?;
    let s = Configuration::parse(&config_text)?;
    ses.phase("parse", t0);
    let t0 = Instant::now();
    let r = accumulate(&g, &s)?;
    ses.phase("accumulate", t0);
    let mut plain = format!("final: {}\n", r.final_config.to_line());
    if a.moves {
        for m in &r.moves {
            let _ = writeln!(plain, "{m}");
        }
    }
    let out = AccumulateOut {
        r#final: r.final_config.to_line(),
        moves: r.moves.iter().map(|m| m.to_string()).collect(),
        map: r.map.iter().map(|(&from, &to)| (from, to)).collect(),
    };
    ses.emit(&a.report, out, &plain);
    Ok(())
}

#[derive(Serialize)]
struct ClassesOut {
    total: u64,
    class_count: usize,
    sizes: Vec<usize>,
    /// Reduced fraction reachable from the least configuration, when the
    /// graph is connected.
    #[serde(skip_serializing_if = "Option::is_none")]
    fraction: Option<String>,
    representatives: Vec<String>,
}

fn cmd_classes(a: ClassesArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let text = ses.read(&a.graph)?;
    let t0 = Instant::now();
    let g = Graph::parse(&text)?;
    ses.phase("parse", t0);
    let p = a.p.unwrap_or(g.n());
    let t0 = Instant::now();
    let rep = equivalence_classes(&g, p, caps_from(a.cap))?;
    ses.phase("enumerate", t0);
    let sizes: Vec<usize> = rep.classes.iter().map(Vec::len).collect();
    let fraction = rep.reachable_fraction.map(|f| f.to_string());
    let representatives: Vec<String> =
        rep.classes.iter().map(|c| c[0].to_line()).collect();
    let mut plain = format!("total: {}\n", rep.total);
    let _ = writeln!(plain, "classes: {}", rep.class_count());
    let _ = writeln!(
        plain,
        "sizes: {}",
        sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
    );
    let _ = writeln!(plain, "fraction: {}", fraction.as_deref().unwrap_or("n/a"));
    for (i, r) in representatives.iter().enumerate() {
        let _ = writeln!(plain, "rep {i}: {r}");
    }
    let out = ClassesOut {
        total: rep.total,
        class_count: rep.class_count(),
        sizes,
        fraction,
        representatives,
    };
    ses.emit(&a.report, out, &plain);
    Ok(())
}

#[derive(Serialize)]
struct AugmentOut {
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    added_vertices: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    added_edges: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<&'static str>,
}

fn plan_outputs(plan: &AugmentationPlan) -> (AugmentOut, String) {
    let edges = plan
        .added_edges
        .iter()
        .map(|(u, v)| format!("({u},{v})"))
        .collect::<Vec<_>>()
        .join(" ");
    let verified = yes_no(plan.verified.is_solvable());
    let mut plain = format!("added vertices: {}\n", plan.added_vertices);
    let _ = writeln!(plain, "added edges: {}", if edges.is_empty() { "none" } else { &edges });
    let _ = writeln!(plain, "method: {}", augmentation_method_name(plan.method));
    let _ = writeln!(plain, "verified: {verified}");
    let out = AugmentOut {
        status: "plan",
        added_vertices: Some(plan.added_vertices),
        added_edges: Some(plan.added_edges.clone()),
        method: Some(augmentation_method_name(plan.method)),
        verified: Some(verified),
    };
    (out, plain)
}

fn cmd_augment(a: AugmentArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let text = ses.read(&a.graph)?;
    let t0 = Instant::now();
    let g = Graph::parse(&text)?;
    ses.phase("parse", t0);
    let p = a.p.unwrap_or(g.n());
    let caps = caps_from(a.cap);
    let t0 = Instant::now();
    let outcome = match a.mode {
        AugmentMode::Constructive => match augment_constructive(&g, p, caps) {
            Ok(plan) => Some(plan),
            Err(Error::AlreadySolvable { p }) => {
                ses.phase("plan", t0);
                let plain = format!("already universally solvable for p={p}\n");
                let out = AugmentOut {
                    status: "already-solvable",
                    added_vertices: None,
                    added_edges: None,
                    method: None,
                    verified: None,
                };
                ses.emit(&a.report, out, &plain);
                return Ok(());
            }
            Err(Error::NoAugmentationFound) => None,
            Err(e) => return Err(e.into()),
        },
        AugmentMode::Exhaustive => {
            if a.alpha > 0 {
                min_vertex_edge_augmentation_bf(&g, p, a.alpha, a.beta, caps)?
            } else {
                min_edge_augmentation_bf(&g, p, a.beta, caps)?
            }
        }
    };
    ses.phase("plan", t0);
    match outcome {
        Some(plan) => {
            let (out, plain) = plan_outputs(&plan);
            ses.emit(&a.report, out, &plain);
        }
        None => {
            let plain = format!(
                "no augmentation within budgets alpha={} beta={}\n",
                a.alpha, a.beta
            );
            let out = AugmentOut {
                status: "none-within-budget",
                added_vertices: None,
                added_edges: None,
                method: None,
                verified: None,
            };
            ses.emit(&a.report, out, &plain);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct GenOut {
    family: String,
    n: usize,
    m: usize,
    text: String,
}

fn parse_family(spec: &str) -> Result<FamilySpec, Failure> {
    let bad = |msg: String| Failure { code: 2, message: msg };
    let (name, params) = spec
        .split_once(':')
        .ok_or_else(|| bad(format!("family `{spec}` is missing `:params`")))?;
    let nums: Vec<usize> = params
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| bad(format!("`{t}` is not a number in family `{spec}`")))
        })
        .collect::<Result<_, _>>()?;
    let one = |nums: &[usize]| {
        if nums.len() == 1 {
            Ok(nums[0])
        } else {
            Err(bad(format!("family `{spec}` takes exactly one parameter")))
        }
    };
    match name.to_ascii_lowercase().as_str() {
        "star" => Ok(FamilySpec::Star(one(&nums)?)),
        "cycle" => Ok(FamilySpec::Cycle(one(&nums)?)),
        "path" => Ok(FamilySpec::Path(one(&nums)?)),
        "complete" => Ok(FamilySpec::Complete(one(&nums)?)),
        "oddcactus" => Ok(FamilySpec::OddCactus(nums)),
        "z" => {
            if nums.len() == 2 {
                Ok(FamilySpec::Z { alpha: nums[0], beta: nums[1] })
            } else {
                Err(bad(format!("family `{spec}` takes exactly two parameters")))
            }
        }
        other => Err(bad(format!("unknown family `{other}`"))),
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    let t0 = Instant::now();
    let g = generate(&parse_family(&a.family)?)?;
    ses.phase("generate", t0);
    let text = g.to_text();
    let out = GenOut { family: a.family.clone(), n: g.n(), m: g.m(), text: text.clone() };
    ses.emit(&a.report, out, &text);
    Ok(())
}

#[derive(Serialize)]
struct CorpusOut {
    max_n: usize,
    graphs: usize,
    instances: usize,
    solver_disagreements: usize,
    class_size_violations: usize,
    fraction_violations: usize,
    sparsity_violations: usize,
    randomized_trials: usize,
    randomized_rate: f64,
    randomized_expected: f64,
    randomized_tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    offender: Option<String>,
    passed: bool,
}

fn cmd_corpus(a: CorpusArgs) -> Result<(), Failure> {
    let mut ses = Session::new();
    ses.seed = Some(a.seed);
    let caps = caps_from(a.cap);
    let t0 = Instant::now();
    let mut graphs = 0usize;
    let mut instances = 0usize;
    let mut solver_disagreements = 0usize;
    let mut class_size_violations = 0usize;
    let mut fraction_violations = 0usize;
    let mut sparsity_violations = 0usize;
    let mut offender: Option<String> = None;
    let note = |slot: &mut usize, offender: &mut Option<String>, g: &Graph, p, what: &str| {
        *slot += 1;
        if offender.is_none() {
            *offender = Some(format!("{what} at p={p} on\n{}", g.to_text()));
        }
    };
    for n in 2..=a.max_n {
        for g in all_connected_graphs(n) {
            graphs += 1;
            for p in 2..=n {
                instances += 1;
                let rep = equivalence_classes(&g, p, caps)?;
                let solvable = rep.class_count() == 1;
                let det = solve_deterministic(&g, p, caps)?;
                let opt = solve_optimized(&g, p, caps)?;
                if det.answer.is_solvable() != solvable || opt.answer.is_solvable() != solvable {
                    note(&mut solver_disagreements, &mut offender, &g, p, "solver disagreement");
                }
                let sizes_equal =
                    rep.classes.windows(2).all(|w| w[0].len() == w[1].len());
                if !sizes_equal {
                    note(&mut class_size_violations, &mut offender, &g, p, "unequal class sizes");
                }
                if !solvable {
                    let f = rep.reachable_fraction.expect("corpus graphs are connected");
                    let want = Ratio::new(1u64, rep.class_count() as u64);
                    if f > Ratio::new(1u64, 2u64) || f != want {
                        note(&mut fraction_violations, &mut offender, &g, p, "fraction law broken");
                    }
                    if g.m() >= p * g.n() {
                        note(&mut sparsity_violations, &mut offender, &g, p, "dense NO instance");
                    }
                }
            }
        }
    }
    ses.phase("enumerate", t0);

    // One-sided error rate on the fully occupied 3-cycle: half of all
    // samples land in the reachable class.
    let t0 = Instant::now();
    let c3 = generate(&FamilySpec::Cycle(3))?;
    let trials = a.trials.max(1);
    let mut yes = 0usize;
    for k in 0..trials {
        let v = solve_randomized(&c3, 3, a.seed.wrapping_add(k as u64), caps)?;
        if v.answer.is_solvable() {
            yes += 1;
        }
    }
    ses.phase("randomized-rate", t0);
    let rate = yes as f64 / trials as f64;
    let expected = 0.5;
    let tolerance = 3.0 * (expected * (1.0 - expected) / trials as f64).sqrt();
    let rate_ok = (rate - expected).abs() <= tolerance;
    if !rate_ok && offender.is_none() {
        offender = Some(format!(
            "randomized YES-rate {rate:.4} outside {expected} +/- {tolerance:.4} on the 3-cycle"
        ));
    }

    let passed = solver_disagreements == 0
        && class_size_violations == 0
        && fraction_violations == 0
        && sparsity_violations == 0
        && rate_ok;
    let mut plain = format!("graphs checked: {graphs}\n");
    let _ = writeln!(plain, "instances checked: {instances}");
    let _ = writeln!(plain, "solver disagreements: {solver_disagreements}");
    let _ = writeln!(plain, "class-size violations: {class_size_violations}");
    let _ = writeln!(plain, "fraction violations: {fraction_violations}");
    let _ = writeln!(plain, "sparsity violations: {sparsity_violations}");
    let _ = writeln!(
        plain,
        "randomized YES-rate on the 3-cycle: {rate:.4} (want {expected} +/- {tolerance:.4})"
    );
    if let Some(o) = &offender {
        let _ = writeln!(plain, "first offender: {o}");
    }
    let _ = writeln!(plain, "{}", if passed { "all checks passed" } else { "CHECKS FAILED" });
    let out = CorpusOut {
        max_n: a.max_n,
        graphs,
        instances,
        solver_disagreements,
        class_size_violations,
        fraction_violations,
        sparsity_violations,
        randomized_trials: trials,
        randomized_rate: rate,
        randomized_expected: expected,
        randomized_tolerance: tolerance,
        offender: offender.clone(),
        passed,
    };
    ses.emit(&a.report, out, &plain);
    if passed {
        Ok(())
    } else {
        Err(Failure { code: 4, message: "corpus cross-check failed".to_owned() })
    }
}
