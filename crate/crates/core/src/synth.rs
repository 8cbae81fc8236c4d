//! Seeded instance generators.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;
use crate::rounding::Clustering;

/// `k` disjoint positive cliques of `size` vertices each; every other pair
/// is negative. Clique `i` holds vertices `i·size .. (i+1)·size`.
pub fn planted_cliques(k: usize, size: usize) -> Result<(SignedGraph, Clustering)> {
    if k == 0 || size == 0 {
        return Err(Error::Parameter(format!(
            "need k, size >= 1, got ({k}, {size})"
        )));
    }
    let n = k * size;
    let mut edges = Vec::with_capacity(k * size * (size - 1) / 2);
    for c in 0..k {
        let base = c * size;
        for u in base..base + size {
            for v in u + 1..base + size {
                edges.push((u, v));
            }
        }
    }
    let g = SignedGraph::from_edges(n, edges)?;
    let labels: Vec<usize> = (0..n).map(|u| u / size).collect();
    Ok((g, Clustering::from_labels(&labels)))
}

/// Number of flips at noise level `i` of the planted-clique protocol.
pub fn noise_level_flips(level: usize) -> usize {
    45 * level
}

/// `flips` distinct unordered pairs `(u, v)`, `u < v`, chosen uniformly
/// without replacement; sorted.
pub fn flip_pairs(n: usize, flips: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    let total = n * n.saturating_sub(1) / 2;
    if flips > total {
        return Err(Error::Parameter(format!(
            "cannot flip {flips} of {total} pairs"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, total, flips).into_vec();
    picked.sort_unstable();
    // Unrank in lexicographic order: row u holds n - 1 - u pairs.
    let mut out = Vec::with_capacity(flips);
    let (mut u, mut row_start) = (0usize, 0usize);
    for idx in picked {
        while idx >= row_start + (n - 1 - u) {
            row_start += n - 1 - u;
            u += 1;
        }
        out.push((u, u + 1 + (idx - row_start)));
    }
    Ok(out)
}

/// Toggles the sign of `flips` uniformly chosen distinct pairs.
pub fn flip_noise(g: &SignedGraph, flips: usize, seed: u64) -> Result<SignedGraph> {
    let pairs = flip_pairs(g.n(), flips, seed)?;
    g.with_toggled(&pairs)
}

/// Each pair positive independently with probability `p`.
pub fn random_signed_gnp(n: usize, p: f64, seed: u64) -> Result<SignedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability {p} is not in [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SignedGraph::from_edges(n, edges)
}

/// Random graph with every positive degree (self-loop included) at most
/// `max_deg`: pairs are proposed uniformly and kept while both endpoints
/// have room, until `target_edges` edges exist or proposals run out.
pub fn random_bounded_degree(
    n: usize,
    max_deg: usize,
    target_edges: usize,
    seed: u64,
) -> Result<SignedGraph> {
    if max_deg == 0 {
        return Err(Error::Parameter(
            "max_deg counts the self-loop and must be >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![1usize; n];
    let mut edges = std::collections::BTreeSet::new();
    let attempts = target_edges.saturating_mul(20);
    for _ in 0..attempts {
        if edges.len() >= target_edges || n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || deg[u] >= max_deg || deg[v] >= max_deg {
            continue;
        }
        if edges.insert((u.min(v), u.max(v))) {
            deg[u] += 1;
            deg[v] += 1;
        }
    }
    SignedGraph::from_edges(n, edges)
}
