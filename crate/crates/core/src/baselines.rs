//! Pivot baseline and the exhaustive Min-Max optimum for tiny graphs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SignedGraph;
use crate::objective::disagreement_vector;
use crate::rounding::Clustering;

/// Vertex order used by [`pivot`]: a Fisher–Yates shuffle of `0..n` driven
/// by ChaCha8 seeded with `seed`.
pub fn pivot_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

pub fn pivot(g: &SignedGraph, seed: u64) -> Clustering {
    pivot_with_order(g, &pivot_order(g.n(), seed)).expect("shuffled order is a permutation")
}

/// Pivot over an explicit visiting order, which must be a permutation.
pub fn pivot_with_order(g: &SignedGraph, order: &[usize]) -> Result<Clustering> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n
        || !order
            .iter()
            .all(|&u| u < n && !std::mem::replace(&mut seen[u], true))
    {
        return Err(Error::Parameter("pivot order is not a permutation".into()));
    }
    let mut done = vec![false; n];
    let mut clusters = Vec::new();
    let mut pivots = Vec::new();
    for &p in order {
        if done[p] {
            continue;
        }
        done[p] = true;
        let mut cluster = vec![p];
        for &v in g.pos_adj(p) {
            let v = v as usize;
            if !done[v] {
                done[v] = true;
                cluster.push(v);
            }
        }
        pivots.push(p);
        clusters.push(cluster);
    }
    Clustering::from_clusters(n, clusters, Some(pivots))
}

/// Mean ℓ∞ objective of Pivot over `trials` runs; trial `t` uses seed
/// `seed + t` (wrapping).
pub fn pivot_mean_objective(g: &SignedGraph, trials: usize, seed: u64) -> Result<f64> {
    pivot_mean_objective_with(g, trials, seed, Exec::default())
}

pub fn pivot_mean_objective_with(
    g: &SignedGraph,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Parameter("trials must be >= 1".into()));
    }
    let values = exec.map_range(trials, |t| {
        let c = pivot(g, seed.wrapping_add(t as u64));
        disagreement_vector(g, &c).map(|y| y.max())
    });
    let mut total = 0usize;
    for v in values {
        total += v?;
    }
    Ok(total as f64 / trials as f64)
}

/// Largest graph accepted by the exhaustive search (Bell(12) ≈ 4.2M).
pub const BRUTE_FORCE_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub opt_value: usize,
    /// The optimum with the lexicographically smallest restricted-growth string.
    pub witness: Clustering,
    /// Complete partitions evaluated.
    pub partitions_scanned: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    /// Abandon a prefix once some vertex already has as many disagreements
    /// as the best complete partition.
    On,
    /// Evaluate every set partition.
    Off,
}

pub fn brute_force_opt(g: &SignedGraph) -> Result<OracleResult> {
    brute_force_opt_with(g, Pruning::On, Exec::default())
}

pub fn brute_force_opt_with(g: &SignedGraph, pruning: Pruning, exec: Exec) -> Result<OracleResult> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Capacity {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    if n == 0 {
        return Ok(OracleResult {
            opt_value: 0,
            witness: Clustering::from_labels::<usize>(&[]),
            partitions_scanned: 1,
        });
    }
    // Shard on restricted-growth prefixes, which come out in lexicographic
    // order; the reduction keeps the first shard reaching the minimum.
    let depth = n.min(5);
    let prefixes = rgs_prefixes(depth);
    let shards = exec.map_slice(&prefixes, |prefix| {
        let mut search = Search::new(g, pruning);
        search.run(prefix);
        search
    });
    let mut best: Option<(usize, Vec<usize>)> = None;
    let mut scanned = 0;
    for s in shards {
        scanned += s.scanned;
        if let Some((v, labels)) = s.best {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, labels));
            }
        }
    }
    let (opt_value, labels) = best.expect("at least one partition exists");
    Ok(OracleResult {
        opt_value,
        witness: Clustering::from_labels(&labels),
        partitions_scanned: scanned,
    })
}

/// All restricted-growth strings of length `len`, lexicographically.
fn rgs_prefixes(len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &out {
            let top = p.iter().copied().max().map_or(0, |m| m + 1);
            for c in 0..=top {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

struct Search<'a> {
    g: &'a SignedGraph,
    pruning: Pruning,
    labels: Vec<usize>,
    y: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
    scanned: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a SignedGraph, pruning: Pruning) -> Self {
        Self {
            g,
            pruning,
            labels: Vec::with_capacity(g.n()),
            y: vec![0; g.n()],
            best: None,
            scanned: 0,
        }
    }

    fn bound(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.0)
    }

    /// Assigns the next vertex to `c` and updates the pair counts among the
    /// assigned prefix; returns the largest count touched.
    fn push(&mut self, c: usize) -> usize {
        let k = self.labels.len();
        let mut worst = 0;
        for j in 0..k {
            if self.g.is_positive(k, j) != (self.labels[j] == c) {
                self.y[k] += 1;
                self.y[j] += 1;
                worst = worst.max(self.y[j]);
            }
        }
        self.labels.push(c);
        worst.max(self.y[k])
    }

    fn pop(&mut self) {
        let c = self.labels.pop().expect("non-empty prefix");
        let k = self.labels.len();
        for j in 0..k {
            if self.g.is_positive(k, j) != (self.labels[j] == c) {
                self.y[j] -= 1;
            }
        }
        self.y[k] = 0;
    }

    fn run(&mut self, prefix: &[usize]) {
        let mut worst = 0;
        for &c in prefix {
            worst = worst.max(self.push(c));
        }
        if self.pruning == Pruning::Off || worst < self.bound() {
            let top = prefix.iter().copied().max().map_or(0, |m| m + 1);
            self.descend(top);
        }
    }

    /// `top` is one past the largest label used so far.
    fn descend(&mut self, top: usize) {
        let n = self.g.n();
        if self.labels.len() == n {
            self.scanned += 1;
            let value = self.y.iter().copied().max().unwrap_or(0);
            if value < self.bound() {
                self.best = Some((value, self.labels.clone()));
            }
            return;
        }
        for c in 0..=top {
            let worst = self.push(c);
            // Counts never decrease along a branch.
            if self.pruning == Pruning::Off || worst < self.bound() {
                self.descend(top.max(c + 1));
            }
            self.pop();
        }
    }
}

/// Evaluates `y` for a clustering given by labels; used to double-check
/// witnesses.
pub fn linf_of_labels(g: &SignedGraph, labels: &[usize]) -> Result<usize> {
    Ok(disagreement_vector(g, &Clustering::from_labels(labels))?.max())
}
