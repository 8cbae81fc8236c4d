use std::time::Instant;

use serde::Serialize;

use crate::baselines::pivot_mean_objective;
use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::metric::sampled::{build_sampled_oracle, ConstantLadder, SampleConfig};
use crate::metric::{build_dense_oracle, build_sparse_oracle, DistanceOracle};
use crate::objective::{disagreement_vector, fractional_cost};
use crate::rounding::{
    appendix_b_constants, round_dense, round_sparse, Clustering, RoundingMode, RoundingParams,
};

use super::CircleSet;

pub const SCHEMA_VERSION: u32 = 1;

/// How the distances fed to the rounding are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MetricChoice {
    /// Full count matrix.
    Exact,
    /// 2-hop support only, heap-based rounding.
    Sparse,
    /// Neighborhood samples, post-processed.
    Sampled { epsilon: f64 },
}

impl MetricChoice {
    pub fn tag(&self) -> &'static str {
        match self {
            MetricChoice::Exact => "exact",
            MetricChoice::Sparse => "sparse",
            MetricChoice::Sampled { .. } => "sampled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterConfig {
    pub metric: MetricChoice,
    /// Radii; ignored in favour of the derived ones when `mode` is
    /// `ApproxTheory`.
    pub params: RoundingParams,
    pub seed: u64,
}

pub struct BuiltMetric {
    pub oracle: DistanceOracle,
    pub ladder: Option<ConstantLadder>,
}

pub fn build_metric(g: &SignedGraph, metric: MetricChoice, seed: u64) -> Result<BuiltMetric> {
    Ok(match metric {
        MetricChoice::Exact => BuiltMetric {
            oracle: build_dense_oracle(g)?,
            ladder: None,
        },
        MetricChoice::Sparse => BuiltMetric {
            oracle: build_sparse_oracle(g),
            ladder: None,
        },
        MetricChoice::Sampled { epsilon } => {
            let s = build_sampled_oracle(g, &SampleConfig::new(epsilon, seed)?)?;
            BuiltMetric {
                oracle: s.oracle,
                ladder: Some(s.ladder),
            }
        }
    })
}

/// Radii actually used: in approx mode they come from the ladder's
/// `(δ1, δ2)`, or from `(1, 0)` for an exact metric.
pub(crate) fn effective_params(
    params: &RoundingParams,
    ladder: Option<&ConstantLadder>,
) -> Result<RoundingParams> {
    if params.mode != RoundingMode::ApproxTheory {
        return Ok(*params);
    }
    let consts = match ladder {
        Some(l) => appendix_b_constants(l.delta1, l.delta2)?,
        None => appendix_b_constants(1.0, 0.0)?,
    };
    RoundingParams::approx_theory(&consts)
}

/// `params` must already be resolved by [`effective_params`].
pub(crate) fn round_with(
    g: &SignedGraph,
    metric: &BuiltMetric,
    choice: MetricChoice,
    params: &RoundingParams,
) -> Result<Clustering> {
    match choice {
        MetricChoice::Sparse => round_sparse(&metric.oracle, g, params),
        _ => Ok(round_dense(&metric.oracle, params)),
    }
}

/// One clustering run, serialized with a stable key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub algorithm: String,
    pub mode: Option<RoundingMode>,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub epsilon: Option<f64>,
    pub objective_linf: f64,
    pub objective_l1: f64,
    pub fractional_cost_max: Option<f64>,
    pub num_clusters: usize,
    pub runtime_ms: f64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disagreements: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fractional_cost: Option<Vec<f64>>,
}

impl RunReport {
    /// Objective columns for `c`; parameter and timing columns are left
    /// empty for the caller to fill.
    pub(crate) fn new(g: &SignedGraph, algorithm: &str, c: &Clustering, seed: u64) -> Result<Self> {
        let y = disagreement_vector(g, c)?;
        Ok(Self {
            schema: SCHEMA_VERSION,
            algorithm: algorithm.to_string(),
            mode: None,
            r1: None,
            r2: None,
            epsilon: None,
            objective_linf: y.max() as f64,
            objective_l1: y.total() as f64,
            fractional_cost_max: None,
            num_clusters: c.num_clusters(),
            runtime_ms: 0.0,
            seed,
            disagreements: None,
            fractional_cost: None,
        })
    }

    pub(crate) fn with_params(mut self, params: &RoundingParams) -> Self {
        self.mode = Some(params.mode);
        self.r1 = Some(params.r1.value());
        self.r2 = Some(params.r2.value());
        self
    }

    /// Attaches the per-vertex arrays.
    pub fn with_vectors(
        mut self,
        g: &SignedGraph,
        c: &Clustering,
        fractional: Option<Vec<f64>>,
    ) -> Result<Self> {
        self.disagreements = Some(disagreement_vector(g, c)?.y);
        self.fractional_cost = fractional;
        Ok(self)
    }
}

/// Builds the metric, rounds it and reports. The second value holds the
/// per-vertex fractional costs.
pub fn run_cluster(
    g: &SignedGraph,
    cfg: &ClusterConfig,
) -> Result<(Clustering, RunReport, Vec<f64>)> {
    let started = Instant::now();
    let metric = build_metric(g, cfg.metric, cfg.seed)?;
    let params = effective_params(&cfg.params, metric.ladder.as_ref())?;
    let c = round_with(g, &metric, cfg.metric, &params)?;
    // Timing covers the metric and the rounding only.
    let runtime_ms = started.elapsed().as_secs_f64() * 1e3;
    let fc = fractional_cost(g, &metric.oracle)?;
    let mut report = RunReport::new(g, cfg.metric.tag(), &c, cfg.seed)?.with_params(&params);
    if let MetricChoice::Sampled { epsilon } = cfg.metric {
        report.epsilon = Some(epsilon);
    }
    report.fractional_cost_max = Some(fc.max_value);
    report.runtime_ms = runtime_ms;
    Ok((c, report, fc.values))
}

/// Containment of one large output cluster in its best circle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentRow {
    pub cluster: usize,
    pub size: usize,
    pub best_circle: Option<String>,
    pub overlap: usize,
    pub fraction: f64,
}

/// For each cluster with at least `min_size` members: the circle sharing
/// the most members (ties to the smallest label) and the shared fraction.
pub fn circle_containment_report(
    c: &Clustering,
    circles: &CircleSet,
    min_size: usize,
) -> Vec<ContainmentRow> {
    let mut rows = Vec::new();
    for (id, members) in c.clusters().iter().enumerate() {
        if members.len() < min_size {
            continue;
        }
        let mut best: Option<(&str, usize)> = None;
        for (label, circle) in &circles.circles {
            let overlap = members
                .iter()
                .filter(|u| circle.binary_search(u).is_ok())
                .count();
            let better = match best {
                None => true,
                Some((l, o)) => overlap > o || (overlap == o && label.as_str() < l),
            };
            if better {
                best = Some((label, overlap));
            }
        }
        let (best_circle, overlap) = match best {
            Some((l, o)) => (Some(l.to_string()), o),
            None => (None, 0),
        };
        rows.push(ContainmentRow {
            cluster: id,
            size: members.len(),
            best_circle,
            overlap,
            fraction: overlap as f64 / members.len() as f64,
        });
    }
    rows
}

/// The columns of a per-dataset comparison: graph statistics, our
/// objective and fractional cost, Pivot's mean objective and (when
/// circles are given) cluster containment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub schema: u32,
    pub vertices: usize,
    pub edges: usize,
    pub max_positive_degree: usize,
    pub run: RunReport,
    pub pivot_trials: usize,
    pub pivot_mean_objective: f64,
    pub containment: Option<Vec<ContainmentRow>>,
}

pub fn evaluate(
    g: &SignedGraph,
    cfg: &ClusterConfig,
    pivot_trials: usize,
    circles: Option<&CircleSet>,
    min_size: usize,
) -> Result<EvalReport> {
    if g.n() == 0 {
        return Err(Error::Parameter("graph has no vertices".into()));
    }
    let (c, run, _) = run_cluster(g, cfg)?;
    Ok(EvalReport {
        schema: SCHEMA_VERSION,
        vertices: g.n(),
        edges: g.num_pos_edges(),
        // Degree without the self-loop, as usually tabulated.
        max_positive_degree: g.degree_profile().delta_max - 1,
        run,
        pivot_trials,
        pivot_mean_objective: pivot_mean_objective(g, pivot_trials, cfg.seed)?,
        containment: circles.map(|cs| circle_containment_report(&c, cs, min_size)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::planted_cliques;

    fn circles(list: &[(&str, &[usize])]) -> CircleSet {
        CircleSet {
            circles: list
                .iter()
                .map(|(l, m)| (l.to_string(), m.to_vec()))
                .collect(),
            dropped: 0,
        }
    }

    #[test]
    fn containment_examples() {
        let c = Clustering::from_labels(&[0, 0, 0, 0, 1]);
        let cs = circles(&[("b", &[0, 1, 2, 3, 9]), ("a", &[0])]);
        let rows = circle_containment_report(&c, &cs, 2);
        assert_eq!(rows.len(), 1);
        assert_eq!(
            (rows[0].best_circle.as_deref(), rows[0].fraction),
            (Some("b"), 1.0)
        );

        let cs = circles(&[("z", &[7]), ("y", &[8])]);
        let rows = circle_containment_report(&c, &cs, 1);
        assert_eq!(rows.len(), 2);
        assert_eq!(
            (rows[0].best_circle.as_deref(), rows[0].fraction),
            (Some("y"), 0.0)
        );

        let cs = circles(&[("c", &[0, 1, 2]), ("d", &[3, 4])]);
        let rows = circle_containment_report(&c, &cs, 4);
        assert_eq!((rows[0].overlap, rows[0].fraction), (3, 0.75));

        let rows = circle_containment_report(&c, &CircleSet::default(), 1);
        assert_eq!((rows[0].best_circle.clone(), rows[0].fraction), (None, 0.0));
    }

    #[test]
    fn report_json_shape() {
        let (g, _) = planted_cliques(3, 4).unwrap();
        let cfg = ClusterConfig {
            metric: MetricChoice::Sparse,
            params: RoundingParams::swept(0.7, 0.7).unwrap(),
            seed: 5,
        };
        let (c, report, fc) = run_cluster(&g, &cfg).unwrap();
        assert_eq!(c.num_clusters(), 3);
        assert_eq!((report.objective_linf, report.objective_l1), (0.0, 0.0));
        assert_eq!(fc, vec![0.0; 12]);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with(r#"{"schema":1,"algorithm":"sparse","mode":"swept","r1":0.7,"r2":0.7,"epsilon":null,"objective_linf":0.0"#), "{json}");
        assert!(!json.contains("disagreements"));
        let full = report.with_vectors(&g, &c, Some(fc)).unwrap();
        assert!(serde_json::to_string(&full)
            .unwrap()
            .contains(r#""disagreements":[0,0"#));
    }

    #[test]
    fn approx_mode_resolves_radii() {
        let (g, _) = planted_cliques(2, 3).unwrap();
        let mut cfg = ClusterConfig {
            metric: MetricChoice::Exact,
            params: RoundingParams::exact_theory(),
            seed: 0,
        };
        cfg.params.mode = RoundingMode::ApproxTheory;
        let (_, report, _) = run_cluster(&g, &cfg).unwrap();
        assert_eq!((report.r1, report.r2), (Some(0.2), Some(0.4)));

        cfg.metric = MetricChoice::Sampled { epsilon: 0.02 };
        assert!(run_cluster(&g, &cfg).is_err());
    }

    #[test]
    fn eval_columns() {
        let (g, truth) = planted_cliques(2, 5).unwrap();
        let cfg = ClusterConfig {
            metric: MetricChoice::Exact,
            params: RoundingParams::swept(0.7, 0.7).unwrap(),
            seed: 1,
        };
        let cs = CircleSet {
            circles: truth
                .clusters()
                .iter()
                .enumerate()
                .map(|(i, m)| (format!("circle{i}"), m.clone()))
                .collect(),
            dropped: 0,
        };
        let r = evaluate(&g, &cfg, 20, Some(&cs), 5).unwrap();
        assert_eq!((r.vertices, r.edges, r.max_positive_degree), (10, 20, 4));
        assert_eq!(r.pivot_mean_objective, 0.0);
        let rows = r.containment.unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|row| row.fraction == 1.0));
    }
}
