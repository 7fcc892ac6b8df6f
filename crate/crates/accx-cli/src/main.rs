use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use accx_cli::exec::{StdClock, ThreadExecutor};
use accx_cli::io;
use accx_cli::report::RunReport;
use accx_cli::verify;

use accx_core::acc::{Algorithm, Direction};
use accx_core::algorithms::{BeliefPropagation, Bfs, KCore, PageRank, Priors, Sssp};
use accx_core::engine::{Engine, EngineConfig, FilterPath, RunStats};
use accx_core::fusion::{
    annotate_plan, plan_fusion, BarrierOutcome, CostTable, DeviceProfile, FusionStrategy,
};
use accx_core::graph::{rmat_edge_list, uniform_edge_list, CsrGraph, RmatParams};
use accx_core::task::Separators;

#[derive(Parser)]
#[command(
    name = "accx",
    version,
    about = "Graph analytics with just-in-time frontier filtering, push/pull supersteps, and occupancy-aware fusion planning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert an edge list to the binary graph format
    Convert(ConvertArgs),
    /// Run an algorithm and report per-iteration statistics
    Run(Box<RunArgs>),
    /// Compute occupancy, barrier verdicts, and fusion launch plans
    Plan(PlanArgs),
    /// Generate a synthetic graph file
    Gen(GenArgs),
}

#[derive(Args)]
struct ConvertArgs {
    /// Text edge list (or an existing binary graph to re-encode)
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Treat text input as directed edges
    #[arg(long)]
    directed: bool,
    /// Store the reverse (in-neighbor) structure
    #[arg(long)]
    reverse: bool,
    /// Attach deterministic random weights drawn from [LO, HI)
    #[arg(long, value_name = "LO,HI")]
    gen_weights: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirArg {
    Auto,
    Push,
    Pull,
}

#[derive(Args)]
struct RunArgs {
    /// bfs | sssp | kcore | pagerank | bp
    algorithm: String,
    /// Graph file: ACCX binary or text edge list
    graph: PathBuf,
    /// Source vertex (bfs, sssp)
    #[arg(long, default_value_t = 0)]
    source: u32,
    /// Bucket width for sssp; defaults to max(1, average weight)
    #[arg(long)]
    delta: Option<f64>,
    /// Core threshold (kcore)
    #[arg(long, default_value_t = 16)]
    k: u32,
    /// Damping factor (pagerank)
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    /// Per-vertex convergence scale (pagerank)
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Iteration budget (bp)
    #[arg(long, default_value_t = 30)]
    iterations: u32,
    /// Uniform prior probability (bp)
    #[arg(long, default_value_t = 0.5)]
    prior: f64,
    /// Treat a text edge list as directed
    #[arg(long)]
    directed: bool,
    /// Logical worker count (bins, scan ranges, task queues)
    #[arg(long, default_value_t = 4)]
    workers: usize,
    /// Online-filter overflow threshold
    #[arg(long, default_value_t = 64)]
    threshold: usize,
    /// Degree separators SMALL,LARGE
    #[arg(long, default_value = "32,128")]
    separators: String,
    /// Direction-switch ratio: pull when frontier degree > |E| / alpha
    #[arg(long, default_value_t = 20.0)]
    alpha: f64,
    /// Bit-identical results across runs and worker counts
    #[arg(long)]
    deterministic: bool,
    /// Use the batch (materialized edge buffer) baseline path
    #[arg(long)]
    batch: bool,
    /// Force a single direction instead of the per-iteration heuristic
    #[arg(long, value_enum, default_value_t = DirArg::Auto)]
    direction: DirArg,
    #[arg(long, default_value_t = 100_000)]
    max_iterations: u32,
    /// Check the result against the sequential reference
    #[arg(long)]
    verify: bool,
    /// Write the per-iteration trace CSV here
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Repeat the run and report mean/min wall time
    #[arg(long, default_value_t = 1)]
    repeat: u32,
    /// Emit the full report as JSON
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit the per-iteration rows as CSV on stdout
    #[arg(long)]
    csv: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    K40,
    K20,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    None,
    Selective,
    All,
}

#[derive(Args)]
struct PlanArgs {
    /// Device preset used unless --profile is given
    #[arg(long, value_enum, default_value_t = Preset::K40)]
    preset: Preset,
    /// key=value device profile file
    #[arg(long)]
    profile: Option<PathBuf>,
    /// key=value kernel register-cost file (overrides defaults)
    #[arg(long)]
    costs: Option<PathBuf>,
    /// Inline phase list, e.g. push,pull,pull,push
    #[arg(long)]
    phases: Option<String>,
    /// Phase trace CSV from `accx run --trace`
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Synthesize a canonical phase sequence for an algorithm name
    #[arg(long)]
    algo: Option<String>,
    /// Iteration count for --algo synthesis
    #[arg(long, default_value_t = 10)]
    iterations: u32,
    #[arg(long, value_enum, default_value_t = StrategyArg::Selective)]
    strategy: StrategyArg,
    /// Force the launched-CTA count of fused kernels (deadlock demo)
    #[arg(long)]
    override_launch: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Rmat,
    Uniform,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(short, long)]
    output: PathBuf,
    /// log2 of the vertex count (rmat)
    #[arg(long, default_value_t = 10)]
    scale: u32,
    /// Average out-degree (rmat)
    #[arg(long, default_value_t = 16)]
    avg_degree: u32,
    /// Vertex count (uniform)
    #[arg(long, default_value_t = 1024)]
    vertices: u32,
    /// Edge count (uniform)
    #[arg(long, default_value_t = 16384)]
    edges: u64,
    /// Produce an undirected graph
    #[arg(long)]
    undirected: bool,
    /// Attach deterministic random weights drawn from [LO, HI)
    #[arg(long, value_name = "LO,HI")]
    weights: Option<String>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Store the reverse structure (directed output only)
    #[arg(long)]
    reverse: bool,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Convert(args) => cmd_convert(args),
        Command::Run(args) => cmd_run(*args),
        Command::Plan(args) => cmd_plan(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn parse_pair(text: &str, what: &str) -> Result<(f32, f32)> {
    let (lo, hi) = text
        .split_once(',')
        .with_context(|| format!("{what} expects LO,HI"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

fn cmd_convert(args: ConvertArgs) -> Result<()> {
    let loaded = io::load_graph(&args.input, args.directed, args.reverse)?;
    let mut graph = loaded.graph;
    if let Some(spec) = &args.gen_weights {
        let (lo, hi) = parse_pair(spec, "--gen-weights")?;
        graph.generate_weights(args.seed, lo, hi)?;
    }
    io::save_graph(&graph, &args.output)?;
    println!("V={} E={}", graph.vertex_count(), graph.edge_count());
    Ok(())
}

fn build_config(args: &RunArgs) -> Result<EngineConfig> {
    let (small, large) = args
        .separators
        .split_once(',')
        .context("--separators expects SMALL,LARGE")?;
    let separators = Separators::new(small.trim().parse()?, large.trim().parse()?);
    Ok(EngineConfig {
        worker_count: args.workers,
        overflow_threshold: args.threshold,
        separators,
        direction_alpha: args.alpha,
        deterministic: args.deterministic,
        max_iterations: args.max_iterations,
        filter_path: if args.batch { FilterPath::Batch } else { FilterPath::Jit },
        batch_budget_entries: None,
        force_direction: match args.direction {
            DirArg::Auto => None,
            DirArg::Push => Some(Direction::Push),
            DirArg::Pull => Some(Direction::Pull),
        },
    })
}

/// Runs the engine `repeat` times (timing starts after graph load) and
/// returns the last run's results with mean and min wall time.
fn execute<A: Algorithm>(
    graph: &CsrGraph,
    cfg: &EngineConfig,
    repeat: u32,
    make_spec: impl Fn() -> A,
) -> Result<(Vec<A::Vertex>, RunStats, u64, u64)> {
    let mut walls = Vec::with_capacity(repeat as usize);
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let clock = StdClock::new();
        let started = Instant::now();
        let mut engine = Engine::new(graph, make_spec(), cfg.clone())?;
        engine.run_with(&ThreadExecutor, &clock)?;
        walls.push(started.elapsed().as_nanos() as u64);
        last = Some(engine.finish());
    }
    let (metadata, stats) = last.expect("at least one run");
    let mean = walls.iter().sum::<u64>() / walls.len() as u64;
    let min = *walls.iter().min().unwrap();
    Ok((metadata, stats, mean, min))
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let loaded = io::load_graph(&args.graph, args.directed, true)?;
    let graph = loaded.graph;
    let cfg = build_config(&args)?;

    let (stats, mean, min, verification) = match args.algorithm.as_str() {
        "bfs" => {
            let (levels, stats, mean, min) =
                execute(&graph, &cfg, args.repeat, || Bfs::new(args.source))?;
            let v = args
                .verify
                .then(|| verify::verify_bfs(&graph, args.source, &levels));
            (stats, mean, min, v)
        }
        "sssp" => {
            let delta = args.delta;
            let source = args.source;
            let (dist, stats, mean, min) = execute(&graph, &cfg, args.repeat, || match delta {
                Some(d) => Sssp::new(source, d),
                None => Sssp::for_graph(&graph, source),
            })?;
            let v = args
                .verify
                .then(|| verify::verify_sssp(&graph, args.source, &dist));
            (stats, mean, min, v)
        }
        "kcore" => {
            let (meta, stats, mean, min) =
                execute(&graph, &cfg, args.repeat, || KCore::new(args.k))?;
            let v = args.verify.then(|| verify::verify_kcore(&graph, args.k, &meta));
            (stats, mean, min, v)
        }
        "pagerank" => {
            let damping = args.damping;
            let epsilon = args.epsilon;
            let (meta, stats, mean, min) = execute(&graph, &cfg, args.repeat, || PageRank {
                damping,
                epsilon,
                stable_fraction: 0.9,
            })?;
            let v = args
                .verify
                .then(|| verify::verify_pagerank(&graph, damping, epsilon, &meta));
            (stats, mean, min, v)
        }
        "bp" => {
            let iterations = args.iterations;
            let prior = args.prior;
            let (meta, stats, mean, min) = execute(&graph, &cfg, args.repeat, || {
                BeliefPropagation::new(iterations, Priors::Uniform(prior))
            })?;
            let v = args.verify.then(|| {
                let priors = vec![prior; graph.vertex_count() as usize];
                verify::verify_bp(&graph, &priors, iterations, cfg.deterministic, &meta)
            });
            (stats, mean, min, v)
        }
        other => bail!("unknown algorithm '{other}' (expected bfs, sssp, kcore, pagerank, bp)"),
    };

    let mut report = RunReport::new(&args.algorithm, &graph, cfg, loaded.load_ns, stats);
    report.repeats = args.repeat.max(1);
    report.wall_ns_mean = mean;
    report.wall_ns_min = min;
    report.verification = verification;

    if let Some(path) = &args.trace {
        std::fs::write(path, report.trace_csv())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json())?);
    } else if args.csv {
        print!("{}", report.trace_csv());
    } else {
        print!("{}", report.render_text());
    }
    if let Some(v) = &report.verification {
        if !v.pass {
            bail!("verification failed: {}", v.detail);
        }
    }
    Ok(())
}

fn canonical_phases(algo: &str, iterations: u32) -> Result<Vec<Direction>> {
    let n = iterations.max(1) as usize;
    let seq = match algo {
        // Scatter at the sparse start and end, gather through the heavy
        // middle.
        "bfs" | "sssp" => {
            if n <= 2 {
                vec![Direction::Push; n]
            } else {
                let mut s = vec![Direction::Push];
                s.extend(std::iter::repeat_n(Direction::Pull, n - 2));
                s.push(Direction::Push);
                s
            }
        }
        // Heavy deletions first (gather), stragglers last (scatter).
        "kcore" => {
            let pulls = n.div_ceil(2);
            let mut s = vec![Direction::Pull; pulls];
            s.extend(std::iter::repeat_n(Direction::Push, n - pulls));
            s
        }
        "pagerank" => {
            let mut s = vec![Direction::Pull; n.saturating_sub(1).max(1)];
            if n > 1 {
                s.push(Direction::Push);
            }
            s
        }
        "bp" => vec![Direction::Pull; n],
        other => bail!("unknown algorithm '{other}' for phase synthesis"),
    };
    Ok(seq)
}

fn cmd_plan(args: PlanArgs) -> Result<()> {
    let profile = match &args.profile {
        Some(path) => io::load_profile(path)?,
        None => match args.preset {
            Preset::K40 => DeviceProfile::k40(),
            Preset::K20 => DeviceProfile::k20(),
        },
    };
    let costs = match &args.costs {
        Some(path) => io::load_cost_table(path)?,
        None => CostTable::default(),
    };
    let phases = if let Some(list) = &args.phases {
        io::parse_phase_list(list)?
    } else if let Some(path) = &args.trace {
        io::load_phase_trace(path)?
    } else if let Some(algo) = &args.algo {
        canonical_phases(algo, args.iterations)?
    } else {
        bail!("need one of --phases, --trace, or --algo");
    };

    let strategy = match args.strategy {
        StrategyArg::None => FusionStrategy::None,
        StrategyArg::Selective => FusionStrategy::Selective,
        StrategyArg::All => FusionStrategy::All,
    };
    let plan = plan_fusion(&phases, strategy);
    let annotated = annotate_plan(&plan, &profile, &costs, args.override_launch)?;

    // Launch-count comparison across all three strategies.
    let none_count = plan_fusion(&phases, FusionStrategy::None).launch_count;
    let selective_count = plan_fusion(&phases, FusionStrategy::Selective).launch_count;

    if args.json {
        let launches: Vec<_> = annotated
            .launches
            .iter()
            .map(|launch| {
                json!({
                    "direction": launch.direction.map(|d| d.to_string()),
                    "iterations": launch.iterations,
                    "kernels": launch.kernels.iter().map(|k| json!({
                        "kernel": k.kernel,
                        "registers_per_thread": k.registers_per_thread,
                        "cta_count": k.cta_count,
                        "barrier": k.barrier.map(|b| match b {
                            BarrierOutcome::Completed { rounds } =>
                                json!({"verdict": "completed", "rounds": rounds}),
                            BarrierOutcome::Deadlocked { at_round } =>
                                json!({"verdict": "deadlocked", "at_round": at_round}),
                        }),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let out = json!({
            "profile": {
                "registers_per_smx": profile.registers_per_smx,
                "smx_count": profile.smx_count,
                "threads_per_cta": profile.threads_per_cta,
            },
            "strategy": annotated.strategy.to_string(),
            "iterations": phases.len(),
            "launch_count": annotated.launch_count,
            "launches": launches,
            "comparison": {
                "none": none_count,
                "selective": selective_count,
                "all": 1,
            },
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!(
            "strategy {}: {} launch(es) over {} iteration(s)",
            annotated.strategy,
            annotated.launch_count,
            phases.len()
        );
        for (i, launch) in annotated.launches.iter().enumerate() {
            let dir = launch
                .direction
                .map(|d| d.to_string())
                .unwrap_or_else(|| "mixed".into());
            for k in &launch.kernels {
                let barrier = match k.barrier {
                    None => String::from("per-iteration relaunch"),
                    Some(BarrierOutcome::Completed { rounds }) => {
                        format!("barrier completed over {rounds} round(s)")
                    }
                    Some(BarrierOutcome::Deadlocked { at_round }) => {
                        format!("barrier DEADLOCKED at round {at_round}")
                    }
                };
                println!(
                    "  launch {:>3} [{dir}] {}: {} regs/thread -> {} CTAs, {}",
                    i + 1,
                    k.kernel,
                    k.registers_per_thread,
                    k.cta_count,
                    barrier
                );
            }
        }
        println!("comparison: none={none_count} selective={selective_count} all=1");
    }

    let deadlocked = annotated
        .launches
        .iter()
        .flat_map(|l| l.kernels.iter())
        .any(|k| matches!(k.barrier, Some(BarrierOutcome::Deadlocked { .. })));
    if deadlocked {
        bail!("plan contains a deadlocked launch configuration");
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let directed = !args.undirected;
    let el = match args.kind {
        GenKind::Rmat => {
            rmat_edge_list(args.scale, args.avg_degree, RmatParams::default(), args.seed, directed)
        }
        GenKind::Uniform => uniform_edge_list(args.vertices, args.edges, args.seed, directed),
    };
    let mut graph = CsrGraph::from_edge_list(&el, args.reverse)?;
    if let Some(spec) = &args.weights {
        let (lo, hi) = parse_pair(spec, "--weights")?;
        graph.generate_weights(args.seed, lo, hi)?;
    }
    io::save_graph(&graph, &args.output)?;
    println!(
        "V={} E={} -> {}",
        graph.vertex_count(),
        graph.edge_count(),
        args.output.display()
    );
    Ok(())
}
