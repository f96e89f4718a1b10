//! Command-line front end: estimate, bound, and tabulate majority-vote error
//! probabilities for Ising-correlated voters.
//!
//! Exit status 2 marks a rejected invocation (bad flags, bad config file,
//! models outside a command's range); status 1 marks a failure while
//! computing. `SPINVOTE_THREADS` caps the rayon worker count; results are
//! identical for every setting.

// Validation deliberately writes `!(x > y)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use spinvote::asymptotics::{
    error_exponent_lower_bound, hoeffding_bound, hoeffding_coefficient, pe_limit_chain,
    pe_limit_complete_subcritical, pe_limit_iid, q_functional, rate_function_max, BoundMethod,
    QInput,
};
use spinvote::exact::{exact_error_prob, MAX_CLASS_SUM_N};
use spinvote::ising::partition::MAX_BRUTEFORCE_N;
use spinvote::montecarlo::{
    estimate_pe, exact_estimate, matching_bound, matching_limit, sweep, Estimate, ExperimentConfig,
    SweepAxis,
};
use spinvote::rng::derive_seed;
use spinvote::{Coupling, Error, Graph, GraphFamily, IsingModel};

const DEFAULT_TRIALS: u64 = 100_000;
const DEFAULT_SEED: u64 = 12345;
const DEFAULT_CONFIDENCE: f64 = 0.99;

const CSV_HEADER: &str = "graph,n,theta,p,trials,seed,pe_hat,ci_low,ci_high,limit,bound";

/// Noise levels and sizes behind the reference figures.
const FIGURE_P: [f64; 4] = [0.1, 0.2, 0.3, 0.4];
const FIGURE_N: [usize; 6] = [11, 51, 101, 501, 1001, 5001];

#[derive(Parser)]
#[command(
    name = "spinvote",
    version,
    about = "Majority-vote error probabilities for Ising-correlated voters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo estimate of the error probability; prints one CSV row.
    Simulate(SimulateArgs),
    /// Exact error probability, exponential-moment bound, and Gaussianized value.
    Exact(ExactArgs),
    /// Closed-form limiting error probability (supercritical: exponent bound).
    Limit(LimitArgs),
    /// Estimates along a grid of n, theta, or p; writes CSV.
    Sweep(SweepArgs),
    /// Supercritical error-exponent decomposition.
    Exponent(ExponentArgs),
    /// Data files behind the reference figures.
    Figure(FigureArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Graph family: empty | chain | chain-pbc | complete | custom:PATH.
    #[arg(long)]
    graph: Option<String>,
    /// Number of voters (odd, so the majority is defined).
    #[arg(long)]
    n: Option<usize>,
    /// Coupling strength (may be omitted on the empty graph).
    #[arg(long)]
    theta: Option<f64>,
    /// Per-spin flip probability, in (0, 1/2).
    #[arg(long)]
    p: Option<f64>,
    /// Monte Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Base RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Confidence level of the reported interval.
    #[arg(long)]
    confidence: Option<f64>,
    /// JSON file supplying any omitted flags (explicit flags win).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    /// Graph family: empty | chain | chain-pbc | complete | custom:PATH.
    #[arg(long)]
    graph: Option<String>,
    /// Number of voters; enumeration holds general graphs to n <= 20.
    #[arg(long)]
    n: Option<usize>,
    /// Coupling strength (may be omitted on the empty graph).
    #[arg(long)]
    theta: Option<f64>,
    /// Per-spin flip probability, in (0, 1/2).
    #[arg(long)]
    p: Option<f64>,
    /// JSON file supplying any omitted flags (explicit flags win).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct LimitArgs {
    /// Graph family: empty | chain | chain-pbc | complete.
    #[arg(long)]
    graph: Option<String>,
    /// Per-spin flip probability, in (0, 1/2).
    #[arg(long)]
    p: Option<f64>,
    /// Coupling strength (unused on the empty graph).
    #[arg(long)]
    theta: Option<f64>,
    /// JSON file supplying any omitted flags (explicit flags win).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Graph family: empty | chain | chain-pbc | complete | custom:PATH.
    #[arg(long)]
    graph: Option<String>,
    /// Base number of voters (held fixed unless the axis is n).
    #[arg(long)]
    n: Option<usize>,
    /// Base coupling strength (held fixed unless the axis is theta).
    #[arg(long)]
    theta: Option<f64>,
    /// Base flip probability (held fixed unless the axis is p).
    #[arg(long)]
    p: Option<f64>,
    /// Monte Carlo trials per row.
    #[arg(long)]
    trials: Option<u64>,
    /// Base RNG seed; row i derives its own seed from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Confidence level of the reported intervals.
    #[arg(long)]
    confidence: Option<f64>,
    /// Which parameter the values vary: n | theta | p.
    #[arg(long)]
    axis: Option<String>,
    /// Comma-separated grid of axis values.
    #[arg(long, value_delimiter = ',')]
    values: Option<Vec<f64>>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON file supplying any omitted flags (explicit flags win).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ExponentArgs {
    /// Coupling strength; must exceed the critical value 1/2.
    #[arg(long)]
    theta: Option<f64>,
    /// Per-spin flip probability, in (0, 1/2).
    #[arg(long)]
    p: Option<f64>,
    /// JSON file supplying any omitted flags (explicit flags win).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    /// Which figure: empty | complete-sub | complete-super | ftheta.
    #[arg(value_name = "FIGURE")]
    which: String,
    /// Monte Carlo trials per cell (simulated figures only).
    #[arg(long)]
    trials: Option<u64>,
    /// Base RNG seed; each cell derives its own seed from it.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of the default figure_<name>.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render a self-contained SVG line plot to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

/// A failed invocation: `Usage` exits with status 2, `Runtime` with 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

type CliResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    init_workers()?;
    match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Exponent(args) => cmd_exponent(args),
        Command::Figure(args) => cmd_figure(args),
    }
}

/// Honors `SPINVOTE_THREADS` by sizing the global rayon pool. Estimates are
/// bit-identical for every worker count; the variable only trades latency.
fn init_workers() -> CliResult<()> {
    let Ok(raw) = std::env::var("SPINVOTE_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().ok().filter(|&k| k >= 1).ok_or_else(|| {
        usage(format!(
            "SPINVOTE_THREADS must be a positive integer, got '{raw}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Runtime(e.to_string()))
}

/// Flag values that may also come from a `--config` JSON file. Explicit
/// flags always take precedence over file entries.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    graph: Option<String>,
    n: Option<usize>,
    theta: Option<f64>,
    p: Option<f64>,
    trials: Option<u64>,
    seed: Option<u64>,
    confidence: Option<f64>,
    axis: Option<String>,
    values: Option<Vec<f64>>,
    out: Option<PathBuf>,
}

fn load_config(path: Option<&Path>) -> CliResult<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("bad config file {}: {e}", path.display())))
}

struct ResolvedModel {
    model: IsingModel,
    /// The graph exactly as the user named it, echoed into CSV rows.
    label: String,
}

/// Builds the model from `--graph`/`--n`/`--theta` (with config-file
/// fallbacks). Complete graphs get the mean-field coupling; everything else
/// is edgewise. `theta` may be omitted only where it is inert (empty graph).
fn resolve_model(
    graph: Option<String>,
    n: Option<usize>,
    theta: Option<f64>,
    file: &FileConfig,
) -> CliResult<ResolvedModel> {
    let spec = graph
        .or_else(|| file.graph.clone())
        .ok_or_else(|| usage("missing --graph"))?;
    let n = n.or(file.n);
    let theta = theta.or(file.theta);

    if let Some(path) = spec.strip_prefix("custom:") {
        let graph = Graph::from_path(path).map_err(|e| usage(e.to_string()))?;
        if let Some(n) = n {
            if n != graph.n() {
                return Err(usage(format!(
                    "--n {n} disagrees with the {} vertices in {path}",
                    graph.n()
                )));
            }
        }
        let theta = theta.ok_or_else(|| usage("missing --theta"))?;
        let model =
            IsingModel::new(graph, theta, Coupling::Edgewise).map_err(|e| usage(e.to_string()))?;
        return Ok(ResolvedModel { model, label: spec });
    }

    let family: GraphFamily = spec.parse().map_err(usage)?;
    if family == GraphFamily::Custom {
        return Err(usage("custom graphs are named as custom:PATH"));
    }
    let n = n.ok_or_else(|| usage("missing --n"))?;
    let theta = match theta {
        Some(t) => t,
        None if family == GraphFamily::Empty => 1.0,
        None => return Err(usage("missing --theta")),
    };
    let coupling = match family {
        GraphFamily::Complete => Coupling::CurieWeiss,
        _ => Coupling::Edgewise,
    };
    let graph = Graph::build(family, n).map_err(|e| usage(e.to_string()))?;
    let model = IsingModel::new(graph, theta, coupling).map_err(|e| usage(e.to_string()))?;
    Ok(ResolvedModel { model, label: spec })
}

fn require_p(flag: Option<f64>, file: &FileConfig) -> CliResult<f64> {
    flag.or(file.p).ok_or_else(|| usage("missing --p"))
}

fn optional_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(
    label: &str,
    n: usize,
    theta: f64,
    p: f64,
    est: &Estimate,
    limit: Option<f64>,
    bound: Option<f64>,
) -> String {
    format!(
        "{label},{n},{theta},{p},{trials},{seed},{point},{lo},{hi},{limit},{bound}",
        trials = est.trials,
        seed = est.seed,
        point = est.point,
        lo = est.ci_low,
        hi = est.ci_high,
        limit = optional_cell(limit),
        bound = optional_cell(bound),
    )
}

fn cmd_simulate(args: SimulateArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let resolved = resolve_model(args.graph, args.n, args.theta, &file)?;
    let model = &resolved.model;
    let p = require_p(args.p, &file)?;
    let trials = args.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let confidence = args
        .confidence
        .or(file.confidence)
        .unwrap_or(DEFAULT_CONFIDENCE);
    if model.n().is_multiple_of(2) {
        return Err(usage(format!(
            "majority vote needs odd n, got {}",
            model.n()
        )));
    }
    let config = ExperimentConfig::new(model, p, trials, seed)
        .and_then(|c| c.with_confidence(confidence))
        .map_err(|e| usage(e.to_string()))?;
    let est = estimate_pe(&config)?;
    println!("{CSV_HEADER}");
    println!(
        "{}",
        csv_row(
            &resolved.label,
            model.n(),
            model.theta(),
            p,
            &est,
            matching_limit(model, p),
            matching_bound(model, p),
        )
    );
    Ok(())
}

fn cmd_exact(args: ExactArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let resolved = resolve_model(args.graph, args.n, args.theta, &file)?;
    let model = &resolved.model;
    let p = require_p(args.p, &file)?;
    if model.n().is_multiple_of(2) {
        return Err(usage(format!(
            "majority vote needs odd n, got {}",
            model.n()
        )));
    }
    // Surface the range of the exact machinery as flag validation: general
    // graphs are enumerated, complete graphs go through the class pmf.
    let max_n = match model.graph().family() {
        GraphFamily::Complete => MAX_CLASS_SUM_N,
        _ => MAX_BRUTEFORCE_N,
    };
    if model.n() > max_n {
        return Err(usage(format!(
            "exact evaluation reaches n <= {max_n} for this graph, got {}",
            model.n()
        )));
    }
    let pe = exact_error_prob(model, p)?;
    let bound = hoeffding_bound(model, p, BoundMethod::Exact)?;
    let q = q_functional(QInput::Model(model), p)?;
    println!("pe_exact,{pe}");
    println!("hoeffding_bound,{bound}");
    println!("q_functional,{q}");
    Ok(())
}

fn cmd_limit(args: LimitArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let spec = args
        .graph
        .or_else(|| file.graph.clone())
        .ok_or_else(|| usage("missing --graph"))?;
    let p = require_p(args.p, &file)?;
    let theta = args.theta.or(file.theta);
    if spec == "custom" || spec.starts_with("custom:") {
        return Err(usage("custom graphs have no closed-form limit"));
    }
    let family: GraphFamily = spec.parse().map_err(usage)?;
    let require_theta = || theta.ok_or_else(|| usage("missing --theta"));
    match family {
        GraphFamily::Empty => {
            let v = pe_limit_iid(p).map_err(|e| usage(e.to_string()))?;
            println!("pe_limit,{v}");
        }
        GraphFamily::Chain | GraphFamily::ChainPbc => {
            let v = pe_limit_chain(p, require_theta()?).map_err(|e| usage(e.to_string()))?;
            println!("pe_limit,{v}");
        }
        GraphFamily::Complete => {
            let theta = require_theta()?;
            if theta == 0.5 {
                return Err(usage(
                    "the critical coupling theta = 0.5 has neither a limit nor an exponent bound",
                ));
            }
            if theta < 0.5 {
                let v =
                    pe_limit_complete_subcritical(p, theta).map_err(|e| usage(e.to_string()))?;
                println!("pe_limit,{v}");
            } else {
                let v = error_exponent_lower_bound(theta, p).map_err(|e| usage(e.to_string()))?;
                println!("exponent_lower_bound,{v}");
            }
        }
        GraphFamily::Custom => unreachable!("handled above"),
    }
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let axis: SweepAxis = args
        .axis
        .or_else(|| file.axis.clone())
        .ok_or_else(|| usage("missing --axis"))?
        .parse()
        .map_err(usage)?;
    // Off-axis parameters are required; the swept one is inert in the base
    // model, so give it a placeholder when omitted.
    let n = args.n.or(file.n).or(match axis {
        SweepAxis::N => Some(3),
        _ => None,
    });
    let theta = args.theta.or(file.theta).or(match axis {
        SweepAxis::Theta => Some(1.0),
        _ => None,
    });
    let p = match axis {
        SweepAxis::P => args.p.or(file.p).unwrap_or(0.25),
        _ => require_p(args.p, &file)?,
    };
    let resolved = resolve_model(args.graph, n, theta, &file)?;
    let trials = args.trials.or(file.trials).unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    let confidence = args
        .confidence
        .or(file.confidence)
        .unwrap_or(DEFAULT_CONFIDENCE);
    let values = args
        .values
        .or_else(|| file.values.clone())
        .unwrap_or_default();

    let config = ExperimentConfig::new(&resolved.model, p, trials, seed)
        .and_then(|c| c.with_confidence(confidence))
        .map_err(|e| usage(e.to_string()))?;
    let rows = sweep(&config, axis, &values).map_err(|e| match e {
        bad @ Error::BadSweepValue { .. } => usage(bad.to_string()),
        other => other.into(),
    })?;

    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for row in &rows {
        let label = match row.family {
            GraphFamily::Custom => resolved.label.clone(),
            family => family.to_string(),
        };
        text.push_str(&csv_row(
            &label,
            row.n,
            row.theta,
            row.p,
            &row.estimate,
            row.limit,
            row.bound,
        ));
        text.push('\n');
    }
    write_text(args.out.or(file.out).as_deref(), &text)
}

fn cmd_exponent(args: ExponentArgs) -> CliResult<()> {
    let file = load_config(args.config.as_deref())?;
    let theta = args
        .theta
        .or(file.theta)
        .ok_or_else(|| usage("missing --theta"))?;
    let p = require_p(args.p, &file)?;
    if !(theta > 0.5) {
        return Err(usage(format!(
            "the error exponent needs a supercritical coupling (theta > 0.5), got {theta}"
        )));
    }
    let coeff = hoeffding_coefficient(p).map_err(|e| usage(e.to_string()))?;
    let (rate_max, _) = rate_function_max(theta)?;
    let (rate_max_shifted, _) = rate_function_max(theta - coeff)?;
    println!("hoeffding_coefficient,{coeff}");
    println!("rate_max,{rate_max}");
    println!("rate_max_shifted,{rate_max_shifted}");
    println!("exponent_lower_bound,{}", rate_max - rate_max_shifted);
    Ok(())
}

fn cmd_figure(args: FigureArgs) -> CliResult<()> {
    let trials = args.trials.unwrap_or(DEFAULT_TRIALS);
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    if trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    match args.which.as_str() {
        "empty" => figure_grid(
            GraphFamily::Empty,
            1.0,
            trials,
            seed,
            false,
            args.out
                .unwrap_or_else(|| PathBuf::from("figure_empty.csv")),
            args.svg,
        ),
        "complete-sub" => figure_grid(
            GraphFamily::Complete,
            0.3,
            trials,
            seed,
            false,
            args.out
                .unwrap_or_else(|| PathBuf::from("figure_complete_sub.csv")),
            args.svg,
        ),
        "complete-super" => figure_grid(
            GraphFamily::Complete,
            0.7,
            trials,
            seed,
            true,
            args.out
                .unwrap_or_else(|| PathBuf::from("figure_complete_super.csv")),
            args.svg,
        ),
        "ftheta" => figure_ftheta(
            args.out
                .unwrap_or_else(|| PathBuf::from("figure_ftheta.csv")),
            args.svg,
        ),
        other => Err(usage(format!(
            "unknown figure '{other}' (expected empty, complete-sub, complete-super, or ftheta)"
        ))),
    }
}

/// Error probability against n, one curve per noise level. Sub/critical
/// figures are simulated; the supercritical one is evaluated exactly (Monte
/// Carlo cannot resolve probabilities that small) and carries the extra
/// per-voter decay column `-log(pe)/n`.
fn figure_grid(
    family: GraphFamily,
    theta: f64,
    trials: u64,
    seed: u64,
    exact_path: bool,
    out: PathBuf,
    svg: Option<PathBuf>,
) -> CliResult<()> {
    let coupling = match family {
        GraphFamily::Complete => Coupling::CurieWeiss,
        _ => Coupling::Edgewise,
    };
    let mut text = String::from(CSV_HEADER);
    if exact_path {
        text.push_str(",neg_log_pe_over_n");
    }
    text.push('\n');
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    let mut cell = 0u64;
    for p in FIGURE_P {
        let mut curve = Vec::new();
        for n in FIGURE_N {
            let graph = Graph::build(family, n).map_err(|e| usage(e.to_string()))?;
            let model =
                IsingModel::new(graph, theta, coupling).map_err(|e| usage(e.to_string()))?;
            let config = ExperimentConfig::new(&model, p, trials, derive_seed(seed, cell))
                .map_err(|e| usage(e.to_string()))?;
            let est = if exact_path {
                exact_estimate(&config)?
            } else {
                estimate_pe(&config)?
            };
            let row = csv_row(
                &family.to_string(),
                n,
                theta,
                p,
                &est,
                matching_limit(&model, p),
                matching_bound(&model, p),
            );
            text.push_str(&row);
            let decay = -est.point.ln() / n as f64;
            if exact_path {
                text.push_str(&format!(",{decay}"));
                curve.push(((n as f64).log10(), decay));
            } else {
                curve.push(((n as f64).log10(), est.point));
            }
            text.push('\n');
            cell += 1;
        }
        series.push((format!("p = {p}"), curve));
    }
    write_text(Some(&out), &text)?;
    if let Some(svg_path) = svg {
        let y_label = if exact_path { "-log(pe)/n" } else { "pe" };
        write_svg(&svg_path, "log10 n", y_label, &series)?;
    }
    Ok(())
}

/// The rate-function maximum and its maximizer over a coupling grid.
fn figure_ftheta(out: PathBuf, svg: Option<PathBuf>) -> CliResult<()> {
    let mut text = String::from("theta,rate_max,argmax\n");
    let mut curve = Vec::new();
    for i in 1..=30 {
        // Exact twentieths keep theta = 0.5 exactly on the critical point.
        let theta = i as f64 / 20.0;
        let (max, argmax) = rate_function_max(theta)?;
        text.push_str(&format!("{theta},{max},{argmax}\n"));
        curve.push((theta, max));
    }
    write_text(Some(&out), &text)?;
    if let Some(svg_path) = svg {
        write_svg(
            &svg_path,
            "theta",
            "rate_max",
            &[("rate_max".to_string(), curve)],
        )?;
    }
    Ok(())
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

/// Minimal self-contained line plot: axes, min/max tick labels, one colored
/// polyline per series with a legend. No external assets.
fn write_svg(
    path: &Path,
    x_label: &str,
    y_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> CliResult<()> {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 56.0;
    const COLORS: [&str; 6] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
    ];

    let points = series.iter().flat_map(|(_, pts)| pts.iter());
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_min = y_min.min(y);
        y_max = y_max.max(y);
    }
    if !(x_min < x_max) {
        x_max = x_min + 1.0;
    }
    if !(y_min < y_max) {
        y_max = y_min + 1.0;
    }
    let sx = |x: f64| M + (x - x_min) / (x_max - x_min) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y_min) / (y_max - y_min) * (H - 2.0 * M);

    let mut svg = format!(
        concat!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" ",
            "viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\" font-size=\"12\">\n",
            "<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
        ),
        w = W,
        h = H
    );
    svg.push_str(&format!(
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n<line x1=\"{m}\" y1=\"{t}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>\n",
        m = M,
        t = M,
        r = W - M,
        b = H - M
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>\n",
        W / 2.0,
        H - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {})\">{y_label}</text>\n",
        H / 2.0,
        H / 2.0
    ));
    for (value, x, y, anchor) in [
        (x_min, M, H - M + 16.0, "middle"),
        (x_max, W - M, H - M + 16.0, "middle"),
        (y_min, M - 6.0, H - M, "end"),
        (y_max, M - 6.0, M + 4.0, "end"),
    ] {
        svg.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\">{value:.3}</text>\n"
        ));
    }
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path_points: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
            path_points.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" fill=\"{color}\">{name}</text>\n",
            W - M + 4.0,
            M + 16.0 * i as f64
        ));
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)
        .map_err(|e| Failure::Runtime(format!("cannot write {}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}
