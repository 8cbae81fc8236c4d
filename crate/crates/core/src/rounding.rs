//! Ball-growing rounding of a (semi-)metric into a clustering.
//!
//! While vertices remain, the center is the remaining vertex `w` maximizing
//! `L(w) = Σ (r1 - d(w, v))` over remaining `v` with `d(w, v) <= r1` (the
//! center itself contributes `r1`); the smaller id wins ties. The cluster is
//! every remaining vertex within `r2` of the center. Balls are closed.
//!
//! Exact oracles are rounded with exact rational arithmetic, sampled ones
//! with doubles.

use std::cmp::{Ordering, Reverse};

use log::debug;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::heap::IndexedHeap;
use crate::metric::sampled::ConstantLadder;
use crate::metric::{Distance, DistanceOracle, OracleKind, RationalDistance};

/// A ball radius in `(0, 1)`, kept both as a double and as a ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius {
    value: f64,
    exact: Ratio<i64>,
}

impl Radius {
    /// The radius `num / den`.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den <= 0 || num <= 0 || num >= den {
            return Err(Error::Parameter(format!(
                "radius {num}/{den} is not in (0, 1)"
            )));
        }
        let exact = Ratio::new(num, den);
        Ok(Self {
            value: *exact.numer() as f64 / *exact.denom() as f64,
            exact,
        })
    }

    /// The simplest ratio that rounds to `value` (so `0.7` is `7/10`).
    pub fn new(value: f64) -> Result<Self> {
        if !(value > 0.0 && value < 1.0) {
            return Err(Error::Parameter(format!("radius {value} is not in (0, 1)")));
        }
        let exact = Ratio::<i64>::approximate_float(value)
            .ok_or_else(|| Error::Parameter(format!("radius {value} has no i64 ratio")))?;
        Ok(Self { value, exact })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Ratio<i64> {
        self.exact
    }

    fn contains(&self, d: Distance) -> bool {
        match d {
            Distance::Exact(d) => self.covers(d),
            Distance::Approx(x) => x <= self.value,
        }
    }

    /// Exact `d <= self`.
    pub fn covers(&self, d: RationalDistance) -> bool {
        let (p, q) = (*self.exact.numer() as u128, *self.exact.denom() as u128);
        d.num() as u128 * q <= p * d.den() as u128
    }

    fn center_gain(&self, exact: bool) -> Score {
        if exact {
            let (p, q) = (*self.exact.numer(), *self.exact.denom());
            Score::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
        } else {
            Score::Approx(self.value)
        }
    }

    /// `self - d` when `d` lies in the ball.
    fn gain(&self, d: Distance) -> Option<Score> {
        if !self.contains(d) {
            return None;
        }
        Some(match d {
            Distance::Exact(d) => {
                let (p, q) = (*self.exact.numer() as i128, *self.exact.denom() as i128);
                let num = p * d.den() as i128 - d.num() as i128 * q;
                Score::Exact(BigRational::new(
                    BigInt::from(num),
                    BigInt::from(q * d.den() as i128),
                ))
            }
            Distance::Approx(x) => Score::Approx(self.value - x),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RoundingMode {
    /// `r1 = 1/5`, `r2 = 2/5`.
    ExactTheory,
    /// `r1 = r`, `r2 = b·r` from [`appendix_b_constants`].
    ApproxTheory,
    /// User-chosen radii.
    Swept,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundingParams {
    /// Radius of the balls scored by `L`.
    pub r1: Radius,
    /// Radius of the ball cut out around the center.
    pub r2: Radius,
    pub mode: RoundingMode,
}

impl RoundingParams {
    pub fn exact_theory() -> Self {
        Self {
            r1: Radius::ratio(1, 5).expect("valid radius"),
            r2: Radius::ratio(2, 5).expect("valid radius"),
            mode: RoundingMode::ExactTheory,
        }
    }

    pub fn approx_theory(consts: &AppendixBConstants) -> Result<Self> {
        let r1 = Radius::new(consts.r)?;
        let r2 = Radius::new(consts.b * consts.r)?;
        if r1.value > r2.value {
            return Err(Error::Parameter(format!(
                "approx radii out of order: r1 = {} > r2 = {}",
                r1.value, r2.value
            )));
        }
        Ok(Self {
            r1,
            r2,
            mode: RoundingMode::ApproxTheory,
        })
    }

    pub fn swept(r1: f64, r2: f64) -> Result<Self> {
        let params = Self {
            r1: Radius::new(r1)?,
            r2: Radius::new(r2)?,
            mode: RoundingMode::Swept,
        };
        if r2 < 2.0 * r1 {
            debug!(
                "r2 = {r2} < 2·r1 = {}: outside the analysed regime",
                2.0 * r1
            );
        }
        Ok(params)
    }
}

/// A partition of `0..n` into labelled clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clustering {
    assignment: Vec<usize>,
    clusters: Vec<Vec<usize>>,
    /// Center (or pivot) of each cluster, when the algorithm has one.
    centers: Option<Vec<usize>>,
}

impl Clustering {
    /// Builds from per-vertex labels; clusters are renumbered in order of
    /// first appearance.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let assignment = labels
            .iter()
            .enumerate()
            .map(|(u, l)| {
                let id = *ids.entry(*l).or_insert_with(|| {
                    clusters.push(Vec::new());
                    clusters.len() - 1
                });
                clusters[id].push(u);
                id
            })
            .collect();
        Self {
            assignment,
            clusters,
            centers: None,
        }
    }

    /// Builds from clusters in creation order. Each list must be non-empty
    /// and together they must partition `0..n`.
    pub fn from_clusters(
        n: usize,
        clusters: Vec<Vec<usize>>,
        centers: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        for (id, c) in clusters.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Invariant(format!("cluster {id} is empty")));
            }
            for &u in c {
                if u >= n {
                    return Err(Error::VertexOutOfRange { vertex: u, n });
                }
                if assignment[u] != usize::MAX {
                    return Err(Error::Invariant(format!("vertex {u} is in two clusters")));
                }
                assignment[u] = id;
            }
        }
        if let Some(u) = assignment.iter().position(|&a| a == usize::MAX) {
            return Err(Error::Invariant(format!("vertex {u} is unclustered")));
        }
        if let Some(cs) = &centers {
            if cs.len() != clusters.len()
                || cs
                    .iter()
                    .enumerate()
                    .any(|(id, &w)| assignment.get(w) != Some(&id))
            {
                return Err(Error::Invariant("a center lies outside its cluster".into()));
            }
        }
        let mut clusters = clusters;
        clusters.iter_mut().for_each(|c| c.sort_unstable());
        Ok(Self {
            assignment,
            clusters,
            centers,
        })
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn cluster_of(&self, u: usize) -> usize {
        self.assignment[u]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Members of each cluster, sorted.
    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn centers(&self) -> Option<&[usize]> {
        self.centers.as_deref()
    }

    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.assignment[u] == self.assignment[v]
    }
}

/// `L` values: exact for exact oracles, doubles for sampled ones.
#[derive(Debug, Clone, PartialEq)]
enum Score {
    Exact(BigRational),
    Approx(f64),
}

impl Eq for Score {}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a.cmp(b),
            (Score::Approx(a), Score::Approx(b)) => a.total_cmp(b),
            _ => unreachable!("exact and approximate scores are never mixed"),
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Score {
    fn add(&mut self, g: &Score) {
        match (self, g) {
            (Score::Exact(a), Score::Exact(b)) => *a += b,
            (Score::Approx(a), Score::Approx(b)) => *a += b,
            _ => unreachable!("exact and approximate scores are never mixed"),
        }
    }

    fn sub(&mut self, g: &Score) {
        match (self, g) {
            (Score::Exact(a), Score::Exact(b)) => *a -= b,
            (Score::Approx(a), Score::Approx(b)) => *a -= b,
            _ => unreachable!("exact and approximate scores are never mixed"),
        }
    }
}

/// Rounds any oracle in `O(n²)` oracle queries.
pub fn round_dense(oracle: &DistanceOracle, params: &RoundingParams) -> Clustering {
    let n = oracle.n();
    let exact = oracle.is_exact();
    let (r1, r2) = (&params.r1, &params.r2);

    let mut score: Vec<Score> = (0..n)
        .map(|u| {
            let mut l = r1.center_gain(exact);
            for v in (0..n).filter(|&v| v != u) {
                if let Some(g) = r1.gain(oracle.get(u, v)) {
                    l.add(&g);
                }
            }
            l
        })
        .collect();

    let mut alive = vec![true; n];
    let mut left = n;
    let mut clusters = Vec::new();
    let mut centers = Vec::new();
    while left > 0 {
        let mut w = usize::MAX;
        for u in (0..n).filter(|&u| alive[u]) {
            if w == usize::MAX || score[u] > score[w] {
                w = u;
            }
        }
        let mut cluster = vec![w];
        cluster.extend((0..n).filter(|&v| v != w && alive[v] && r2.contains(oracle.get(w, v))));
        for &x in &cluster {
            alive[x] = false;
        }
        left -= cluster.len();
        for &x in &cluster {
            for u in (0..n).filter(|&u| alive[u]) {
                if let Some(g) = r1.gain(oracle.get(u, x)) {
                    score[u].sub(&g);
                }
            }
        }
        centers.push(w);
        clusters.push(cluster);
    }
    Clustering::from_clusters(n, clusters, Some(centers)).expect("rounding yields a partition")
}

/// Heap-based rounding over a sparse exact oracle: only stored pairs can
/// fall inside a ball, so every update stays within 2-hop neighborhoods.
/// Produces the same clustering as [`round_dense`].
pub fn round_sparse(
    oracle: &DistanceOracle,
    g: &SignedGraph,
    params: &RoundingParams,
) -> Result<Clustering> {
    if oracle.kind() != OracleKind::SparseExact {
        return Err(Error::Parameter(
            "round_sparse needs a sparse exact oracle".into(),
        ));
    }
    if oracle.n() != g.n() {
        return Err(Error::SizeMismatch {
            oracle: oracle.n(),
            graph: g.n(),
        });
    }
    let n = oracle.n();
    let (r1, r2) = (&params.r1, &params.r2);

    // near[u]: vertices in u's r1-ball with their gains; symmetric.
    let near: Vec<Vec<(usize, Score)>> = (0..n)
        .map(|u| {
            oracle
                .candidates(u)
                .into_iter()
                .filter_map(|(v, d)| r1.gain(d).map(|g| (v, g)))
                .collect()
        })
        .collect();
    let keys = near
        .iter()
        .enumerate()
        .map(|(u, row)| {
            let mut l = r1.center_gain(true);
            row.iter().for_each(|(_, g)| l.add(g));
            (l, Reverse(u))
        })
        .collect();
    let mut heap = IndexedHeap::from_keys(keys);

    let mut clusters = Vec::new();
    let mut centers = Vec::new();
    while let Some(w) = heap.peek() {
        let mut cluster = vec![w];
        cluster.extend(
            oracle
                .candidates(w)
                .into_iter()
                .filter(|&(v, d)| heap.contains(v) && r2.contains(d))
                .map(|(v, _)| v),
        );
        for &x in &cluster {
            heap.remove(x);
        }
        for &x in &cluster {
            for (u, g) in &near[x] {
                if let Some((l, id)) = heap.key(*u) {
                    let mut l = l.clone();
                    l.sub(g);
                    let id = *id;
                    heap.update(*u, (l, id));
                }
            }
        }
        centers.push(w);
        clusters.push(cluster);
    }
    Clustering::from_clusters(n, clusters, Some(centers))
}

/// Rounding of a sampled metric with the radii derived from the ladder's
/// `(δ1, δ2)`.
pub fn round_approx(oracle: &DistanceOracle, ladder: &ConstantLadder) -> Result<Clustering> {
    let consts = appendix_b_constants(ladder.delta1, ladder.delta2)?;
    let params = RoundingParams::approx_theory(&consts)?;
    Ok(round_dense(oracle, &params))
}

/// Radii and case thresholds for rounding a `(δ1, δ2)`-approximate metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppendixBConstants {
    pub delta1: f64,
    pub delta2: f64,
    pub r: f64,
    pub c1: f64,
    pub b: f64,
    pub c2: f64,
}

/// Slack for the non-strict checks; several of them are tight at `(1, 0)`.
const INEQUALITY_SLACK: f64 = 1e-12;

impl AppendixBConstants {
    /// The ten required inequalities as `(name, holds)`.
    pub fn inequalities(&self) -> [(&'static str, bool); 10] {
        let Self {
            delta1: d1,
            delta2: d2,
            r,
            c1,
            b,
            c2,
        } = *self;
        let ge = |lhs: f64, rhs: f64| lhs >= rhs - INEQUALITY_SLACK;
        [
            ("b >= 1", ge(b, 1.0)),
            ("c2·r < 1", c2 * r < 1.0),
            ("c1 <= b < c2", ge(b, c1) && b < c2),
            (
                "1 - 2·δ1·b·r - δ2 - r >= 0",
                ge(1.0 - 2.0 * d1 * b * r - d2 - r, 0.0),
            ),
            (
                "b·r/δ1 - c1·r - r - δ2/δ1 >= 0",
                ge(b * r / d1 - c1 * r - r - d2 / d1, 0.0),
            ),
            (
                "c2·r/δ1 - b·r - r - δ2/δ1 >= 0",
                ge(c2 * r / d1 - b * r - r - d2 / d1, 0.0),
            ),
            ("c1·r/δ1 - δ2/δ1 >= r", ge(c1 * r / d1 - d2 / d1, r)),
            (
                "1 - (δ1·b + δ1)·r - δ2 >= r",
                ge(1.0 - (d1 * b + d1) * r - d2, r),
            ),
            (
                "(b/δ1 - 1)·r - δ2/δ1 >= r",
                ge((b / d1 - 1.0) * r - d2 / d1, r),
            ),
            (
                "1 - (δ1·c2 + δ1)·r - δ2 >= r",
                ge(1.0 - (d1 * c2 + d1) * r - d2, r),
            ),
        ]
    }
}

/// Computes `r`, `c1`, `b`, `c2` for `δ1 >= 1`, `δ2 >= 0` and checks the
/// ten inequalities the rounding analysis needs.
pub fn appendix_b_constants(delta1: f64, delta2: f64) -> Result<AppendixBConstants> {
    if !(delta1 >= 1.0 && delta2 >= 0.0 && delta1.is_finite() && delta2.is_finite()) {
        return Err(Error::Parameter(format!(
            "need δ1 >= 1 and δ2 >= 0, got ({delta1}, {delta2})"
        )));
    }
    let (d1, d2) = (delta1, delta2);
    let num = 1.0 - d2 - d1 * d2 - d1.powi(3) * d2 - d1 * d1 * d2;
    let den = d1 * d1 + d1.powi(3) * (d1 + 1.0) + d1 + 1.0;
    let r = num / den;
    if r <= 0.0 {
        return Err(Error::Parameter(format!(
            "r(δ1 = {d1}, δ2 = {d2}) = {r} is not positive; δ2 is too large"
        )));
    }
    let c1 = d1 + d2 / r;
    let b = (c1 + 1.0) * d1 + d2 / r;
    let c2 = d1 * (b + 1.0) + d2 / r;
    let consts = AppendixBConstants {
        delta1,
        delta2,
        r,
        c1,
        b,
        c2,
    };
    if let Some((name, _)) = consts.inequalities().iter().find(|(_, ok)| !ok) {
        return Err(Error::Parameter(format!(
            "inequality `{name}` fails for (δ1, δ2) = ({d1}, {d2})"
        )));
    }
    Ok(consts)
}

/// `L` value of a vertex as a double; handy in reports and tests.
pub fn ball_score(oracle: &DistanceOracle, r1: &Radius, alive: &[bool], w: usize) -> f64 {
    let mut l = r1.center_gain(oracle.is_exact());
    for v in (0..oracle.n()).filter(|&v| v != w && alive[v]) {
        if let Some(g) = r1.gain(oracle.get(w, v)) {
            l.add(&g);
        }
    }
    match l {
        Score::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
        Score::Approx(x) => x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{build_dense_oracle, build_sparse_oracle};
    use proptest::prelude::*;

    fn path() -> SignedGraph {
        SignedGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn cliques(sizes: &[usize]) -> (SignedGraph, Vec<usize>) {
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut base = 0;
        for (k, &s) in sizes.iter().enumerate() {
            for u in base..base + s {
                labels.push(k);
                for v in u + 1..base + s {
                    edges.push((u, v));
                }
            }
            base += s;
        }
        (SignedGraph::from_edges(base, edges).unwrap(), labels)
    }

    #[test]
    fn radius_parsing() {
        assert_eq!(Radius::new(0.7).unwrap().exact(), Ratio::new(7, 10));
        assert_eq!(Radius::new(0.05).unwrap().exact(), Ratio::new(1, 20));
        assert_eq!(
            Radius::new(1.0 / 121.0).unwrap().exact(),
            Ratio::new(1, 121)
        );
        assert!(Radius::new(1.0).is_err() && Radius::new(0.0).is_err());
        assert!(Radius::ratio(2, 2).is_err());
        let r = Radius::ratio(1, 3).unwrap();
        assert!(r.covers(RationalDistance::new(1, 3).unwrap()));
        assert!(!r.covers(RationalDistance::new(34, 100).unwrap()));
    }

    #[test]
    fn constants_at_exact_points() {
        let c = appendix_b_constants(1.0, 0.0).unwrap();
        assert_eq!((c.r, c.c1, c.b, c.c2), (1.0 / 5.0, 1.0, 2.0, 3.0));
        let c = appendix_b_constants(3.0, 0.0).unwrap();
        assert_eq!((c.r, c.c1, c.b, c.c2), (1.0 / 121.0, 3.0, 12.0, 39.0));
        assert!(c.inequalities().iter().all(|(_, ok)| *ok));

        let err = appendix_b_constants(3.0, 0.5).unwrap_err().to_string();
        assert!(err.contains("not positive"), "{err}");
        assert!(appendix_b_constants(0.5, 0.0).is_err());
    }

    #[test]
    fn approx_params_from_limit_ladder() {
        let c = appendix_b_constants(3.0, 0.0).unwrap();
        let p = RoundingParams::approx_theory(&c).unwrap();
        assert_eq!(p.r1.exact(), Ratio::new(1, 121));
        assert_eq!(p.r2.exact(), Ratio::new(12, 121));
    }

    #[test]
    fn perfect_instance_is_recovered() {
        let (g, labels) = cliques(&[3, 1, 4, 2]);
        let o = build_dense_oracle(&g).unwrap();
        for p in [
            RoundingParams::exact_theory(),
            RoundingParams::swept(0.7, 0.7).unwrap(),
            RoundingParams::swept(0.05, 0.9).unwrap(),
        ] {
            let c = round_dense(&o, &p);
            assert_eq!(c, round_sparse(&build_sparse_oracle(&g), &g, &p).unwrap());
            assert_eq!(c.num_clusters(), 4);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert_eq!(c.same_cluster(u, v), labels[u] == labels[v]);
                }
            }
        }
    }

    #[test]
    fn trivial_instances() {
        let g = SignedGraph::empty(1);
        let c = round_dense(
            &build_dense_oracle(&g).unwrap(),
            &RoundingParams::exact_theory(),
        );
        assert_eq!(c.clusters(), &[vec![0]]);

        let g = SignedGraph::empty(5);
        let p = RoundingParams::exact_theory();
        let c = round_dense(&build_dense_oracle(&g).unwrap(), &p);
        assert_eq!(c.centers().unwrap(), &[0, 1, 2, 3, 4]);
        assert_eq!(c, round_sparse(&build_sparse_oracle(&g), &g, &p).unwrap());
    }

    #[test]
    fn path_with_wide_radii() {
        let g = path();
        let p = RoundingParams::swept(0.7, 0.7).unwrap();
        let o = build_dense_oracle(&g).unwrap();
        let alive = [true; 3];
        // 0.7 + 2·(0.7 - 1/3)
        assert!((ball_score(&o, &p.r1, &alive, 1) - 1.433_333_333_333_333_3).abs() < 1e-12);
        assert!(ball_score(&o, &p.r1, &alive, 0) < ball_score(&o, &p.r1, &alive, 1));
        let c = round_dense(&o, &p);
        assert_eq!(c.clusters(), &[vec![0, 1, 2]]);
        assert_eq!(c.centers().unwrap(), &[1]);
        assert_eq!(c, round_sparse(&build_sparse_oracle(&g), &g, &p).unwrap());
    }

    #[test]
    fn sparse_rejects_other_oracles() {
        let g = path();
        let p = RoundingParams::exact_theory();
        assert!(round_sparse(&build_dense_oracle(&g).unwrap(), &g, &p).is_err());
        assert!(round_sparse(&build_sparse_oracle(&g), &SignedGraph::empty(4), &p).is_err());
    }

    #[test]
    fn approx_rounding_on_indicator_table() {
        let (g, labels) = cliques(&[2, 3]);
        let n = g.n();
        let table: Vec<f64> = (0..n * n)
            .map(|i| {
                let (u, v) = (i / n, i % n);
                if u == v || labels[u] == labels[v] {
                    0.0
                } else {
                    1.0
                }
            })
            .collect();
        let o = DistanceOracle::from_sampled_table(n, table).unwrap();
        let c = appendix_b_constants(3.0, 0.0).unwrap();
        let out = round_dense(&o, &RoundingParams::approx_theory(&c).unwrap());
        // The larger block scores higher and is cut first.
        assert_eq!(out.clusters(), &[vec![2, 3, 4], vec![0, 1]]);

        let single = DistanceOracle::from_sampled_table(1, vec![0.0]).unwrap();
        assert_eq!(
            round_dense(&single, &RoundingParams::approx_theory(&c).unwrap()).num_clusters(),
            1
        );
    }

    #[test]
    fn clustering_construction() {
        let c = Clustering::from_labels(&[5, 5, 2, 5]);
        assert_eq!(c.assignment(), &[0, 0, 1, 0]);
        assert_eq!(c.clusters(), &[vec![0, 1, 3], vec![2]]);
        assert!(Clustering::from_clusters(3, vec![vec![0], vec![1]], None).is_err());
        assert!(Clustering::from_clusters(2, vec![vec![0, 1], vec![1]], None).is_err());
        assert!(Clustering::from_clusters(2, vec![vec![0, 1], vec![]], None).is_err());
        assert!(Clustering::from_clusters(2, vec![vec![0], vec![1]], Some(vec![1, 0])).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = SignedGraph> {
        (1usize..16, 0.05f64..0.9, any::<u64>())
            .prop_map(|(n, p, seed)| crate::synth::random_signed_gnp(n, p, seed).unwrap())
    }

    proptest! {
        #[test]
        fn dense_and_sparse_agree(g in arb_graph(), r1 in 0.05f64..0.95, extra in 0.0f64..0.5) {
            let r2 = (r1 + extra).min(0.95);
            let dense = build_dense_oracle(&g).unwrap();
            let sparse = build_sparse_oracle(&g);
            for p in [RoundingParams::exact_theory(), RoundingParams::swept(r1, r2).unwrap(), RoundingParams::swept(r2, r1).unwrap()] {
                let a = round_dense(&dense, &p);
                prop_assert_eq!(&a, &round_dense(&sparse, &p));
                prop_assert_eq!(&a, &round_sparse(&sparse, &g, &p).unwrap());
                // Members share a center within r2, so pairwise distance <= 2·r2.
                let two_r2 = Radius { value: 2.0 * p.r2.value, exact: p.r2.exact * 2 };
                for u in 0..g.n() {
                    for v in u + 1..g.n() {
                        if a.same_cluster(u, v) {
                            prop_assert!(two_r2.covers(dense.get_exact(u, v)));
                        }
                    }
                }
            }
        }
    }
}
