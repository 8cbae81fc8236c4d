use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use serde_json::json;

use corrclust::app::{
    build_metric, default_radii, evaluate, parse_circles, parse_edge_list, radius_sweep,
    run_cluster, write_circles, write_edge_list, write_sweep_csv, ClusterConfig, EdgeList,
    MetricChoice, SweepGrid, SCHEMA_VERSION,
};
use corrclust::baselines::{brute_force_opt, pivot, pivot_mean_objective, BRUTE_FORCE_MAX_N};
use corrclust::synth::{flip_noise, noise_level_flips, planted_cliques};
use corrclust::{appendix_b_constants, disagreement_vector, Clustering, RoundingParams};

/// Min-max correlation clustering with the correlation metric.
#[derive(Parser)]
#[command(name = "corrclust", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a metric, round it and report the objective.
    Cluster(ClusterArgs),
    /// Run the Pivot baseline.
    Pivot(PivotArgs),
    /// Exhaustive optimum for tiny graphs.
    Oracle(OracleArgs),
    /// Write a planted-clique instance with flip noise.
    Gen(GenArgs),
    /// Metric vs Pivot comparison, optionally against ground-truth circles.
    Eval(EvalArgs),
    /// Objective over a grid of radii, as CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Exact,
    Sparse,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// r1 = 1/5, r2 = 2/5.
    Theory,
    /// Radii derived from the metric's approximation constants.
    Approx,
    /// User radii (--r1, --r2).
    Swept,
}

#[derive(Args)]
struct MetricOpts {
    /// Edge list: one `u v` pair of integer ids per line.
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "sparse")]
    metric: MetricArg,
    /// Sampling accuracy, for --metric sampled.
    #[arg(long, default_value_t = 0.02)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct RadiusOpts {
    #[arg(long, value_enum, default_value = "swept")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.7)]
    r1: f64,
    /// Defaults to --r1.
    #[arg(long)]
    r2: Option<f64>,
}

#[derive(Args)]
struct ClusterArgs {
    #[command(flatten)]
    metric: MetricOpts,
    #[command(flatten)]
    radius: RadiusOpts,
    /// Write the clusters here, one line of external ids per cluster.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Include per-vertex disagreements and fractional costs in the report.
    #[arg(long)]
    per_vertex: bool,
    /// Dump the distances as CSV.
    #[arg(long)]
    dump_metric: Option<PathBuf>,
}

#[derive(Args)]
struct PivotArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the clustering of the first trial here.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 10)]
    clusters: usize,
    #[arg(long, default_value_t = 10)]
    size: usize,
    /// Noise level i: flips 45·i pairs.
    #[arg(long, conflicts_with = "flips")]
    level: Option<usize>,
    /// Number of pairs to flip.
    #[arg(long)]
    flips: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge list destination.
    #[arg(long, short)]
    output: PathBuf,
    /// Ground-truth circles destination.
    #[arg(long)]
    circles: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    metric: MetricOpts,
    #[command(flatten)]
    radius: RadiusOpts,
    /// Circles file: `label id id ...` per line.
    #[arg(long)]
    circles: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pivot_trials: usize,
    /// Smallest cluster included in the containment table.
    #[arg(long, default_value_t = 10)]
    min_size: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    /// r1 = r2.
    Common,
    /// Every (r1, r2) pair.
    Full,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    metric: MetricOpts,
    #[arg(long, value_enum, default_value = "common")]
    grid: GridArg,
    /// Comma-separated radii; defaults to 0.05, 0.10, ..., 0.95.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// CSV destination; stdout if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Cluster(a) => cluster(a),
        Command::Pivot(a) => run_pivot(a),
        Command::Oracle(a) => oracle(a),
        Command::Gen(a) => generate(a),
        Command::Eval(a) => eval(a),
        Command::Sweep(a) => sweep(a),
    }
}

fn read_graph(path: &Path) -> Result<EdgeList> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    parse_edge_list(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn metric_choice(o: &MetricOpts) -> MetricChoice {
    match o.metric {
        MetricArg::Exact => MetricChoice::Exact,
        MetricArg::Sparse => MetricChoice::Sparse,
        MetricArg::Sampled => MetricChoice::Sampled { epsilon: o.epsilon },
    }
}

fn rounding_params(o: &RadiusOpts) -> Result<RoundingParams> {
    Ok(match o.mode {
        ModeArg::Theory => RoundingParams::exact_theory(),
        // Placeholder radii; the real ones follow from the metric.
        ModeArg::Approx => RoundingParams::approx_theory(&appendix_b_constants(1.0, 0.0)?)?,
        ModeArg::Swept => RoundingParams::swept(o.r1, o.r2.unwrap_or(o.r1))?,
    })
}

fn write_clusters(path: &Path, c: &Clustering, e: &EdgeList) -> Result<()> {
    let mut out = create(path)?;
    for members in c.clusters() {
        let line: Vec<String> = members.iter().map(|&u| e.ids[u].to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn cluster(a: ClusterArgs) -> Result<()> {
    let e = read_graph(&a.metric.input)?;
    let g = e.graph()?;
    let cfg = ClusterConfig {
        metric: metric_choice(&a.metric),
        params: rounding_params(&a.radius)?,
        seed: a.metric.seed,
    };
    let (c, mut report, fractional) = run_cluster(&g, &cfg)?;
    if a.per_vertex {
        report = report.with_vectors(&g, &c, Some(fractional))?;
    }
    if let Some(path) = &a.dump_metric {
        let metric = build_metric(&g, cfg.metric, cfg.seed)?;
        let mut out = create(path)?;
        metric.oracle.write_csv(&mut out, Some(&e.labels()))?;
        out.flush()?;
    }
    if let Some(path) = &a.output {
        write_clusters(path, &c, &e)?;
    }
    if a.json {
        print_json(&report)?;
    } else {
        println!(
            "{}: n={} clusters={} linf={} l1={} fractional_max={:.4} r=({}, {}) {:.1} ms",
            report.algorithm,
            g.n(),
            report.num_clusters,
            report.objective_linf,
            report.objective_l1,
            report.fractional_cost_max.unwrap_or(f64::NAN),
            report.r1.unwrap_or(f64::NAN),
            report.r2.unwrap_or(f64::NAN),
            report.runtime_ms
        );
    }
    Ok(())
}

fn run_pivot(a: PivotArgs) -> Result<()> {
    if a.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let e = read_graph(&a.input)?;
    let g = e.graph()?;
    let mean = pivot_mean_objective(&g, a.trials, a.seed)?;
    let first = pivot(&g, a.seed);
    let first_obj = disagreement_vector(&g, &first)?.max();
    if let Some(path) = &a.output {
        write_clusters(path, &first, &e)?;
    }
    if a.json {
        print_json(&json!({
            "schema": SCHEMA_VERSION,
            "algorithm": "pivot",
            "trials": a.trials,
            "seed": a.seed,
            "mean_objective_linf": mean,
            "first_objective_linf": first_obj,
            "first_num_clusters": first.num_clusters(),
        }))?;
    } else {
        println!(
            "pivot: n={} trials={} mean linf={:.3} first run linf={}",
            g.n(),
            a.trials,
            mean,
            first_obj
        );
    }
    Ok(())
}

fn oracle(a: OracleArgs) -> Result<()> {
    let e = read_graph(&a.input)?;
    let g = e.graph()?;
    if g.n() > BRUTE_FORCE_MAX_N {
        bail!(
            "exhaustive search supports at most {BRUTE_FORCE_MAX_N} vertices, got {}",
            g.n()
        );
    }
    let r = brute_force_opt(&g)?;
    if let Some(path) = &a.output {
        write_clusters(path, &r.witness, &e)?;
    }
    let witness: Vec<Vec<u64>> = r
        .witness
        .clusters()
        .iter()
        .map(|c| c.iter().map(|&u| e.ids[u]).collect())
        .collect();
    if a.json {
        print_json(&json!({
            "schema": SCHEMA_VERSION,
            "opt": r.opt_value,
            "partitions_scanned": r.partitions_scanned,
            "witness": witness,
        }))?;
    } else {
        println!(
            "opt={} witness={:?} ({} partitions scanned)",
            r.opt_value, witness, r.partitions_scanned
        );
    }
    Ok(())
}

fn generate(a: GenArgs) -> Result<()> {
    let (clean, truth) = planted_cliques(a.clusters, a.size)?;
    let flips = a
        .flips
        .unwrap_or_else(|| noise_level_flips(a.level.unwrap_or(0)));
    let g = flip_noise(&clean, flips, a.seed)?;
    let isolated = (0..g.n()).filter(|&u| g.deg_plus(u) == 1).count();
    if isolated > 0 {
        warn!("{isolated} vertices have no positive edge and will not appear in the edge list");
    }
    let mut out = create(&a.output)?;
    out.write_all(write_edge_list(&g, None).as_bytes())?;
    out.flush()?;
    if let Some(path) = &a.circles {
        let circles: Vec<(String, Vec<usize>)> = truth
            .clusters()
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("circle{i}"), m.clone()))
            .collect();
        let mut out = create(path)?;
        out.write_all(write_circles(&circles, None).as_bytes())?;
        out.flush()?;
    }
    eprintln!(
        "wrote n={} with {} positive edges ({flips} flips)",
        g.n(),
        g.num_pos_edges()
    );
    Ok(())
}

fn eval(a: EvalArgs) -> Result<()> {
    let e = read_graph(&a.metric.input)?;
    let g = e.graph()?;
    let circles = match &a.circles {
        Some(p) => {
            let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
            Some(parse_circles(BufReader::new(f), &e.id_map())?)
        }
        None => None,
    };
    let cfg = ClusterConfig {
        metric: metric_choice(&a.metric),
        params: rounding_params(&a.radius)?,
        seed: a.metric.seed,
    };
    let r = evaluate(&g, &cfg, a.pivot_trials, circles.as_ref(), a.min_size)?;
    if a.json {
        return print_json(&r);
    }
    println!("vertices  edges  max_deg  objective  fractional_max  pivot_mean  runtime_ms");
    println!(
        "{:>8}  {:>5}  {:>7}  {:>9}  {:>14.3}  {:>10.3}  {:>10.1}",
        r.vertices,
        r.edges,
        r.max_positive_degree,
        r.run.objective_linf,
        r.run.fractional_cost_max.unwrap_or(f64::NAN),
        r.pivot_mean_objective,
        r.run.runtime_ms
    );
    if let Some(rows) = &r.containment {
        println!("cluster  size  best_circle  overlap  fraction");
        for row in rows {
            println!(
                "{:>7}  {:>4}  {:>11}  {:>7}  {:>8.3}",
                row.cluster,
                row.size,
                row.best_circle.as_deref().unwrap_or("-"),
                row.overlap,
                row.fraction
            );
        }
    }
    Ok(())
}

fn sweep(a: SweepArgs) -> Result<()> {
    let e = read_graph(&a.metric.input)?;
    let g = e.graph()?;
    let radii = a.radii.unwrap_or_else(default_radii);
    let grid = match a.grid {
        GridArg::Common => SweepGrid::Common(radii),
        GridArg::Full => SweepGrid::Full(radii),
    };
    let rows = radius_sweep(&g, metric_choice(&a.metric), &grid, a.metric.seed)?;
    match &a.output {
        Some(path) => {
            let mut out = create(path)?;
            write_sweep_csv(&mut out, &rows)?;
            out.flush()?;
        }
        None => write_sweep_csv(io::stdout().lock(), &rows)?,
    }
    Ok(())
}
