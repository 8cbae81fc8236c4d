//! Sampled estimates of the correlation metric.
//!
//! Each vertex draws one sample `S_u` of its closed positive neighborhood,
//! without replacement, of size `m(n) = ⌈(32/ε²) ln n⌉` (or the whole
//! neighborhood when it is smaller). From the samples we estimate, for an
//! ordered pair `(u, v)`,
//!
//! * `W(u,v) ≈ |N⁺_u ∩ N⁺_v|`, scaled from the hits of `S_u` in `N⁺_v`;
//! * `Y(u,v) = |N⁺_u| - W(u,v) ≈ |N⁺_u ∩ N⁻_v|`.
//!
//! With the pair labelled so that `|N⁺_u| <= |N⁺_v|` the initial estimate is
//! `d̄ = (Y(u,v) + Y(v,u)) / (|N⁺_u| + Y(v,u))`, and the post-processed `d̃`
//! snaps near-zero positive pairs to 0 and far negative pairs to 1.

use log::warn;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SignedGraph;

use super::{DistanceOracle, Store};

/// Sampling parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleConfig {
    pub epsilon: f64,
    pub seed: u64,
}

impl SampleConfig {
    /// Accepts `0 < ε < 1`; values from 0.03 up are outside the range the
    /// guarantees are stated for and only produce a warning.
    pub fn new(epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::Parameter(format!(
                "epsilon must lie in (0, 1), got {epsilon}"
            )));
        }
        if epsilon >= 0.03 {
            warn!("epsilon = {epsilon} is outside (0, 0.03); estimates carry no guarantee");
        }
        Ok(Self { epsilon, seed })
    }

    /// `32 / ε²`.
    pub fn c_factor(&self) -> f64 {
        32.0 / (self.epsilon * self.epsilon)
    }

    /// `m(n) = ⌈C(ε) ln n⌉`, at least 1.
    pub fn sample_size(&self, n: usize) -> usize {
        if n <= 1 {
            return 1;
        }
        let m = (self.c_factor() * (n as f64).ln()).ceil();
        if m >= usize::MAX as f64 {
            usize::MAX
        } else {
            (m as usize).max(1)
        }
    }
}

/// Constants derived from ε that parameterize post-processing and the
/// approximate triangle inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantLadder {
    pub epsilon: f64,
    pub c1: f64,
    pub h1: f64,
    pub c2: f64,
    pub h2: f64,
    pub c3: f64,
    pub h3: f64,
    pub c4: f64,
    pub h4: f64,
    pub delta1: f64,
    pub delta2: f64,
    /// Factor between the fractional costs of `d̃` and the exact metric.
    pub d_factor: f64,
    /// Positive pairs with `d̄ <= t_low` are snapped to 0.
    pub t_low: f64,
    /// Negative pairs with `d̄ >= t_high` are snapped to 1.
    pub t_high: f64,
}

pub fn constant_ladder(epsilon: f64) -> Result<ConstantLadder> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    let c1 = (1.0 + epsilon) / (1.0 - epsilon);
    let h1 = 2.0 * epsilon / (1.0 - epsilon);
    let c3 = c1 * c1;
    let h3 = h1 * (1.0 + 2.0 * c1);
    let c4 = (2.0 * c3 + 1.0) * c3;
    let h4 = (4.0 * c3 + 1.0) * (2.0 * c3 + 1.0) * h3;
    Ok(ConstantLadder {
        epsilon,
        c1,
        h1,
        c2: c1,
        h2: h1,
        c3,
        h3,
        c4,
        h4,
        delta1: 3.0 + h4,
        delta2: h4,
        d_factor: 2.0 * c3,
        t_low: 2.0 * h3,
        t_high: 1.0 / (2.0 * c3 + 1.0),
    })
}

/// One sample per vertex, reused for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSamples {
    m: usize,
    samples: Vec<Vec<u32>>,
    exact: Vec<bool>,
}

impl NeighborhoodSamples {
    /// Nominal sample size `m(n)`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `S_u`, sorted.
    pub fn sample(&self, u: usize) -> &[u32] {
        &self.samples[u]
    }

    /// True when `|N⁺_u| < m(n)`, in which case `S_u = N⁺_u`.
    pub fn is_exact(&self, u: usize) -> bool {
        self.exact[u]
    }
}

pub fn draw_samples(g: &SignedGraph, cfg: &SampleConfig) -> NeighborhoodSamples {
    draw_samples_with(g, cfg, Exec::default())
}

/// Vertex `u` draws from its own ChaCha8 stream `u` under `cfg.seed`, so the
/// result does not depend on the execution policy.
pub fn draw_samples_with(g: &SignedGraph, cfg: &SampleConfig, exec: Exec) -> NeighborhoodSamples {
    let m = cfg.sample_size(g.n());
    let rows = exec.map_range(g.n(), |u| {
        let closed = g.closed_neighborhood(u);
        if closed.len() <= m {
            let exact = closed.len() < m;
            return (closed, exact);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(u as u64);
        let mut s: Vec<u32> = index::sample(&mut rng, closed.len(), m)
            .into_iter()
            .map(|i| closed[i])
            .collect();
        s.sort_unstable();
        (s, false)
    });
    let (samples, exact) = rows.into_iter().unzip();
    NeighborhoodSamples { m, samples, exact }
}

fn scaled_hits(g: &SignedGraph, samples: &NeighborhoodSamples, u: usize, hits: usize) -> f64 {
    let deg = g.deg_plus(u);
    let s = samples.sample(u).len();
    if samples.is_exact(u) || s == deg {
        hits as f64
    } else {
        deg as f64 * hits as f64 / s as f64
    }
}

/// `(W(u,v), Y(u,v))` from `u`'s sample. Requires `u ≠ v`.
pub fn estimate_w_y(
    g: &SignedGraph,
    samples: &NeighborhoodSamples,
    u: usize,
    v: usize,
) -> Result<(f64, f64)> {
    check_pair(g, u, v)?;
    let hits = samples
        .sample(u)
        .iter()
        .filter(|&&w| g.is_positive(v, w as usize))
        .count();
    let w = scaled_hits(g, samples, u, hits);
    Ok((w, g.deg_plus(u) as f64 - w))
}

/// `d̄(u, v)`, symmetric in its arguments.
pub fn initial_estimate(
    g: &SignedGraph,
    samples: &NeighborhoodSamples,
    u: usize,
    v: usize,
) -> Result<f64> {
    check_pair(g, u, v)?;
    let (a, b) = orient(g, u, v);
    let (_, y_ab) = estimate_w_y(g, samples, a, b)?;
    let (_, y_ba) = estimate_w_y(g, samples, b, a)?;
    Ok(combine(g.deg_plus(a) as f64, y_ab, y_ba))
}

/// Labels the pair so that the first vertex has the smaller positive
/// degree, the smaller id winning ties.
fn orient(g: &SignedGraph, u: usize, v: usize) -> (usize, usize) {
    if (g.deg_plus(u), u) <= (g.deg_plus(v), v) {
        (u, v)
    } else {
        (v, u)
    }
}

fn combine(deg_a: f64, y_ab: f64, y_ba: f64) -> f64 {
    ((y_ab + y_ba) / (deg_a + y_ba)).clamp(0.0, 1.0)
}

fn check_pair(g: &SignedGraph, u: usize, v: usize) -> Result<()> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::VertexOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    if u == v {
        return Err(Error::Parameter(format!(
            "estimate requested for the pair ({u}, {u})"
        )));
    }
    Ok(())
}

/// Row-major `n × n` table of `d̄`; the diagonal is 0.
pub fn initial_estimate_table(
    g: &SignedGraph,
    samples: &NeighborhoodSamples,
    exec: Exec,
) -> Vec<f64> {
    let n = g.n();
    // W(u, x) for every ordered pair: x is hit once for each w ∈ S_u ∩ N⁺_x.
    let mut w_table = vec![0f64; n * n];
    exec.for_each_chunk_mut(&mut w_table, n.max(1), |u, row| {
        let mut hits = vec![0usize; n];
        for &w in samples.sample(u) {
            for x in g.closed_neighborhood(w as usize) {
                hits[x as usize] += 1;
            }
        }
        for (slot, &h) in row.iter_mut().zip(&hits) {
            *slot = scaled_hits(g, samples, u, h);
        }
    });
    let mut table = vec![0f64; n * n];
    exec.for_each_chunk_mut(&mut table, n.max(1), |u, row| {
        for (v, slot) in row.iter_mut().enumerate() {
            if u == v {
                continue;
            }
            let (a, b) = orient(g, u, v);
            let y_ab = g.deg_plus(a) as f64 - w_table[a * n + b];
            let y_ba = g.deg_plus(b) as f64 - w_table[b * n + a];
            *slot = combine(g.deg_plus(a) as f64, y_ab, y_ba);
        }
    });
    table
}

/// Builds `d̃` from a `d̄` table. Thresholds are inclusive.
pub fn post_process(
    g: &SignedGraph,
    initial: &[f64],
    ladder: &ConstantLadder,
) -> Result<DistanceOracle> {
    let n = g.n();
    if initial.len() != n * n {
        return Err(Error::SizeMismatch {
            oracle: (initial.len() as f64).sqrt() as usize,
            graph: n,
        });
    }
    let mut table = initial.to_vec();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let d = &mut table[u * n + v];
            if g.is_positive(u, v) {
                if *d <= ladder.t_low {
                    *d = 0.0;
                }
            } else if *d >= ladder.t_high {
                *d = 1.0;
            }
        }
    }
    Ok(DistanceOracle::from_store(n, Store::Sampled { table }))
}

/// The sampled pipeline end to end: samples, `d̄`, then `d̃`.
#[derive(Debug, Clone)]
pub struct SampledMetric {
    pub ladder: ConstantLadder,
    pub samples: NeighborhoodSamples,
    /// Row-major `d̄`.
    pub initial: Vec<f64>,
    pub oracle: DistanceOracle,
}

pub fn build_sampled_oracle(g: &SignedGraph, cfg: &SampleConfig) -> Result<SampledMetric> {
    build_sampled_oracle_with(g, cfg, Exec::default())
}

pub fn build_sampled_oracle_with(
    g: &SignedGraph,
    cfg: &SampleConfig,
    exec: Exec,
) -> Result<SampledMetric> {
    let ladder = constant_ladder(cfg.epsilon)?;
    let samples = draw_samples_with(g, cfg, exec);
    let initial = initial_estimate_table(g, &samples, exec);
    let oracle = post_process(g, &initial, &ladder)?;
    Ok(SampledMetric {
        ladder,
        samples,
        initial,
        oracle,
    })
}
