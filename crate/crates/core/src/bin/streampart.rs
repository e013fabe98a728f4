//! Command-line front end. Exit codes: 0 success, 2 spec or argument error,
//! 3 runtime fault.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use streampart::analysis::{self, ConvergenceParams, Direction, LogBase, ThresholdInputs};
use streampart::graph::{generate_cycle, generate_gnp, generate_planted, random_order, Graph, PlantedParams, StreamOrder};
use streampart::harness::{lower_bound_demo, preset, run_experiment, ExperimentSpec};
use streampart::metrics::RunMetrics;
use streampart::partition::{run_partitioner, Algorithm, PartitionerConfig};
use streampart::urn::{dominance, run_coupled, run_urn, CoupledProcessConfig, CoupledVariant};
use streampart::{rng, Error};

#[derive(Parser)]
#[command(name = "streampart", version, about = "Streaming balanced graph partitioning simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen(GenArgs),
    /// Stream an edge-list graph through a partitioner.
    Partition(PartitionArgs),
    /// Run a finite Polya urn or a coupled partitioning process.
    Urn(UrnArgs),
    /// Evaluate closed-form quantities; prints JSON.
    Calc {
        #[command(subcommand)]
        calc: Calc,
    },
    /// Run a preset or a spec file and write CSV.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphModel {
    Planted,
    Gnp,
    Cycle,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "planted")]
    model: GraphModel,
    #[arg(long)]
    n: usize,
    /// Number of equal clusters (planted).
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 0.1)]
    p: f64,
    #[arg(long, default_value_t = 0.0)]
    q: f64,
    /// Tag a G(n,p) graph as multi-edge.
    #[arg(long)]
    multi_edge: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    Random,
    Identity,
}

#[derive(Args)]
struct PartitionArgs {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value = "argmax")]
    algorithm: Algorithm,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, value_enum, default_value = "random")]
    order: OrderKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Assignment file; only the metrics JSON is printed when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoupledKind {
    Argmax,
    Proportional,
}

#[derive(Args)]
struct UrnArgs {
    /// Number of bins.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long, default_value_t = 10_000)]
    steps: u64,
    /// Comma-separated starting loads; one ball per bin when absent.
    #[arg(long, value_delimiter = ',')]
    initial: Option<Vec<u64>>,
    /// Run the coupled partitioning process instead of the plain urn.
    #[arg(long, value_enum)]
    coupled: Option<CoupledKind>,
    /// Edge probability of the coupled process.
    #[arg(long, default_value_t = 0.01)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Load trajectory CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    DeltaToGamma,
    GammaToDelta,
}

#[derive(Subcommand)]
enum Calc {
    /// Expected silent arrivals on a random-order n-cycle.
    NoEdge {
        #[arg(long)]
        n: usize,
    },
    /// Binomial majority probability and its bound.
    Lemma2 {
        #[arg(long)]
        j: u64,
        #[arg(long)]
        delta: f64,
    },
    /// Recovery-regime conditions.
    Regime {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, default_value = "e")]
        log_base: LogBase,
    },
    /// Balls until one of two feedback bins dominates.
    Convergence {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        epsilon0: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        n0: f64,
    },
    /// Closed-form ball estimate for k bins.
    Balls {
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, default_value = "e")]
        log_base: LogBase,
    },
    /// Convert between pairwise gap and k-bin dominance.
    GammaDelta {
        #[arg(long)]
        value: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        direction: DirectionArg,
    },
    /// Upper bound on q.
    QBound {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1.0)]
        n0: f64,
        #[arg(long, default_value = "e")]
        log_base: LogBase,
    },
    /// Good- and bad-edge arrival thresholds.
    Thresholds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1.0 / std::f64::consts::E)]
        delta: f64,
        #[arg(long, default_value = "e")]
        log_base: LogBase,
    },
    /// Separation the leading partition needs.
    Separation {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        l: usize,
    },
    /// Predicted maximum load of balls in bins.
    MaxLoad {
        #[arg(long)]
        balls: usize,
        #[arg(long)]
        bins: usize,
    },
    /// Cycle lower-bound demonstration.
    LowerBound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Named preset (fig1..fig6, lower_bound, urn_suite).
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    preset: Option<String>,
    /// Spec file in key = value format.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// CSV output; overrides the spec, stdout when neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; all cores when absent.
    #[arg(long)]
    jobs: Option<usize>,
    /// Override the number of runs per cell.
    #[arg(long)]
    runs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Spec(_) | Error::InvalidParameter(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}

fn dispatch(command: Command) -> streampart::Result<()> {
    match command {
        Command::Gen(args) => gen(args),
        Command::Partition(args) => partition(args),
        Command::Urn(args) => urn(args),
        Command::Calc { calc: c } => print_json(&calc(c)?),
        Command::Experiment(args) => experiment(args),
    }
}

fn output(path: Option<&Path>) -> streampart::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn print_json(value: &Value) -> streampart::Result<()> {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
    Ok(())
}

fn gen(args: GenArgs) -> streampart::Result<()> {
    let graph = match args.model {
        GraphModel::Planted => generate_planted(&PlantedParams::equal(args.n, args.l, args.p, args.q)?, args.seed)?,
        GraphModel::Gnp => generate_gnp(args.n, args.p, args.multi_edge, args.seed)?,
        GraphModel::Cycle => generate_cycle(args.n)?,
    };
    let mut out = output(args.out.as_deref())?;
    graph.write_edge_list(&mut out)?;
    out.flush()?;
    Ok(())
}

fn partition(args: PartitionArgs) -> streampart::Result<()> {
    let graph = Graph::read_edge_list(BufReader::new(File::open(&args.graph)?))?;
    let order = match args.order {
        OrderKind::Random => random_order(graph.n(), rng::mix(args.seed, &[2]))?,
        OrderKind::Identity => StreamOrder::identity(graph.n()),
    };
    let config = PartitionerConfig::new(args.algorithm, args.k, args.epsilon, rng::mix(args.seed, &[3]))
        .with_gamma(args.gamma);
    let state = run_partitioner(&graph, &order, &config)?;
    let metrics = RunMetrics::compute(&graph, &state)?;
    if let Some(path) = &args.out {
        let mut out = BufWriter::new(File::create(path)?);
        state.write_assignment(&mut out)?;
        out.flush()?;
    }
    print_json(&json!({
        "input": {
            "graph": args.graph,
            "algorithm": args.algorithm.name(),
            "k": args.k,
            "epsilon": args.epsilon,
            "gamma": args.gamma,
            "seed": args.seed,
            "rng": rng::RNG_ALGORITHM,
        },
        "capacity": state.capacity(),
        "metrics": metrics,
    }))
}

fn urn(args: UrnArgs) -> streampart::Result<()> {
    let (loads, trajectory, input) = match args.coupled {
        None => {
            let initial = args.initial.clone().unwrap_or_else(|| vec![1; args.k]);
            let run = run_urn(initial.clone(), args.gamma, args.steps, args.seed)?;
            let input = json!({"k": initial.len(), "gamma": args.gamma, "steps": args.steps, "initial": initial, "seed": args.seed});
            (run.state.loads().to_vec(), run.trajectory, input)
        }
        Some(kind) => {
            let variant = match kind {
                CoupledKind::Argmax => CoupledVariant::Argmax,
                CoupledKind::Proportional => CoupledVariant::Proportional,
            };
            let config = CoupledProcessConfig { n: args.steps as usize, p: args.p, k: args.k, variant, seed: args.seed };
            let run = run_coupled(&config)?;
            let input = json!({"coupled": format!("{variant:?}").to_lowercase(), "n": args.steps, "p": args.p, "k": args.k, "seed": args.seed});
            (run.state.loads().to_vec(), run.trajectory, input)
        }
    };
    if let Some(path) = &args.out {
        let mut out = BufWriter::new(File::create(path)?);
        trajectory.write_csv(&mut out)?;
        out.flush()?;
    }
    let report = dominance(&loads);
    print_json(&json!({
        "input": input,
        "rng": rng::RNG_ALGORITHM,
        "loads": loads,
        "dominant_bin": report.dominant_bin,
        "max_fraction": report.fraction,
        "delta": report.delta,
    }))
}

fn calc(c: Calc) -> streampart::Result<Value> {
    Ok(match c {
        Calc::NoEdge { n } => {
            let value = analysis::expected_no_edge_arrivals(n)?;
            json!({"input": {"n": n}, "expected": value, "per_n": value / n as f64})
        }
        Calc::Lemma2 { j, delta } => json!({
            "input": {"j": j, "delta": delta},
            "exact": analysis::lemma2_exact_prob(j, delta)?,
            "mirrored": analysis::lemma2_mirrored_prob(j, delta)?,
            "tie_excluded_odds": analysis::lemma2_tie_excluded_odds(j, delta)?,
            "lower_bound": analysis::lemma2_lower_bound(j, delta)?,
        }),
        Calc::Regime { n, k, l, p, q, n0, log_base } => {
            let check = analysis::regime_check(n, k, l, p, q, n0, log_base)?;
            json!({"input": {"n": n, "k": k, "l": l, "p": p, "q": q, "n0": n0, "log_base": log_base},
                   "core_ok": check.core_ok(), "all_ok": check.all_ok(), "check": check})
        }
        Calc::Convergence { lambda, epsilon0, delta, n0 } => {
            let params = ConvergenceParams { lambda, epsilon0, delta, n0 };
            json!({"input": params, "result": analysis::convergence_balls(&params)?})
        }
        Calc::Balls { lambda, k, l, n0, log_base } => json!({
            "input": {"lambda": lambda, "k": k, "l": l, "n0": n0, "log_base": log_base},
            "result": analysis::appendix_ball_estimate(lambda, k, l, n0, log_base)?,
        }),
        Calc::GammaDelta { value, k, direction } => {
            let direction = match direction {
                DirectionArg::DeltaToGamma => Direction::DeltaToGamma,
                DirectionArg::GammaToDelta => Direction::GammaToDelta,
            };
            json!({"input": {"value": value, "k": k, "direction": direction},
                   "result": analysis::gamma_delta_convert(value, k, direction)?})
        }
        Calc::QBound { k, l, n0, log_base } => json!({
            "input": {"k": k, "l": l, "n0": n0, "log_base": log_base},
            "q_bound": analysis::appendix_q_bound(k, l, n0, log_base)?,
        }),
        Calc::Thresholds { n, k, l, p, q, delta, log_base } => {
            if l == 0 || n % l != 0 {
                return Err(Error::InvalidParameter(format!("n={n} does not split into {l} equal clusters")));
            }
            let inputs = ThresholdInputs { n, k, p, q, l, cluster_size: n / l };
            json!({"input": {"thresholds": inputs, "delta": delta, "log_base": log_base},
                   "appendix": analysis::appendix_t_thresholds(&inputs, delta, log_base)?,
                   "constant_probability": analysis::concentration_thresholds(&inputs)})
        }
        Calc::Separation { p, q, l } => json!({
            "input": {"p": p, "q": q, "l": l},
            "result": analysis::appendix_x_separation(p, q, l)?,
        }),
        Calc::MaxLoad { balls, bins } => json!({
            "input": {"balls": balls, "bins": bins},
            "result": analysis::max_load_prediction(balls, bins)?,
        }),
        Calc::LowerBound { n, runs, seed } => json!({
            "input": {"n": n, "runs": runs, "seed": seed},
            "report": lower_bound_demo(n, runs, seed)?,
        }),
    })
}

fn experiment(args: ExperimentArgs) -> streampart::Result<()> {
    let mut spec = match (&args.preset, &args.spec) {
        (Some(name), _) => preset(name)?,
        (None, Some(path)) => ExperimentSpec::parse(&std::fs::read_to_string(path)?)?,
        (None, None) => return Err(Error::Spec("either --preset or --spec is required".into())),
    };
    if let Some(seed) = args.seed {
        spec.master_seed = seed;
    }
    if let Some(runs) = args.runs {
        spec.runs_per_cell = runs;
    }
    if let Some(out) = args.out {
        spec.out = Some(out);
    }
    spec.validate()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| Error::Spec(format!("thread pool: {e}")))?;
    let result = pool.install(|| run_experiment(&spec))?;
    for warning in &result.warnings {
        eprintln!("warning: {warning}");
    }
    let mut out = output(spec.out.as_deref())?;
    result.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}
