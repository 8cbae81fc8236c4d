use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SignedGraph;
use crate::objective::fractional_cost;
use crate::rounding::RoundingParams;

use super::report::{build_metric, effective_params, round_with, MetricChoice, RunReport};

/// Radius grid: `Common` pairs every value with itself, `Full` takes the
/// cartesian product.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    Common(Vec<f64>),
    Full(Vec<f64>),
    Points(Vec<(f64, f64)>),
}

impl SweepGrid {
    /// `(r1, r2)` points sorted by `r1`, then `r2`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut pts = match self {
            SweepGrid::Common(v) => v.iter().map(|&r| (r, r)).collect(),
            SweepGrid::Full(v) => v
                .iter()
                .flat_map(|&a| v.iter().map(move |&b| (a, b)))
                .collect(),
            SweepGrid::Points(p) => p.clone(),
        };
        pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        pts.dedup();
        pts
    }
}

/// `0.05, 0.10, ..., 0.95`.
pub fn default_radii() -> Vec<f64> {
    (1..=19).map(|i| i as f64 / 20.0).collect()
}

/// One report per grid point. The metric and its fractional cost are
/// computed once; `runtime_ms` of each row is the rounding time alone.
pub fn radius_sweep(
    g: &SignedGraph,
    metric: MetricChoice,
    grid: &SweepGrid,
    seed: u64,
) -> Result<Vec<RunReport>> {
    radius_sweep_with(g, metric, grid, seed, Exec::default())
}

pub fn radius_sweep_with(
    g: &SignedGraph,
    metric: MetricChoice,
    grid: &SweepGrid,
    seed: u64,
    exec: Exec,
) -> Result<Vec<RunReport>> {
    let points = grid.points();
    if points.is_empty() {
        return Err(Error::Parameter("radius grid is empty".into()));
    }
    let params = points
        .iter()
        .map(|&(a, b)| RoundingParams::swept(a, b))
        .collect::<Result<Vec<_>>>()?;
    let built = build_metric(g, metric, seed)?;
    let fc = fractional_cost(g, &built.oracle)?;
    let epsilon = match metric {
        MetricChoice::Sampled { epsilon } => Some(epsilon),
        _ => None,
    };
    exec.map_slice(&params, |p| {
        let started = Instant::now();
        let p = effective_params(p, built.ladder.as_ref())?;
        let c = round_with(g, &built, metric, &p)?;
        let runtime_ms = started.elapsed().as_secs_f64() * 1e3;
        let mut r = RunReport::new(g, metric.tag(), &c, seed)?.with_params(&p);
        r.epsilon = epsilon;
        r.fractional_cost_max = Some(fc.max_value);
        r.runtime_ms = runtime_ms;
        Ok(r)
    })
    .into_iter()
    .collect()
}

#[derive(Serialize)]
struct SweepRow<'a> {
    algorithm: &'a str,
    r1: f64,
    r2: f64,
    epsilon: Option<f64>,
    objective_linf: f64,
    objective_l1: f64,
    fractional_cost_max: Option<f64>,
    num_clusters: usize,
    runtime_ms: f64,
    seed: u64,
}

/// CSV with a header row.
pub fn write_sweep_csv<W: Write>(out: W, rows: &[RunReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(SweepRow {
            algorithm: &r.algorithm,
            r1: r.r1.unwrap_or(f64::NAN),
            r2: r.r2.unwrap_or(f64::NAN),
            epsilon: r.epsilon,
            objective_linf: r.objective_linf,
            objective_l1: r.objective_l1,
            fractional_cost_max: r.fractional_cost_max,
            num_clusters: r.num_clusters,
            runtime_ms: r.runtime_ms,
            seed: r.seed,
        })?;
    }
    w.flush()?;
    Ok(())
}
