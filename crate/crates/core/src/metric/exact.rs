use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SignedGraph;

use super::{DistanceOracle, RationalDistance, Store};

/// Largest `n` accepted by the dense route (an `n × n` table of `u32`).
pub const DENSE_MAX_N: usize = 8192;

/// Symmetric matrix of common positive neighbor counts, self-loops included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    data: Vec<u32>,
}

impl CountMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// `C = P²` where `P` is the positive adjacency matrix with unit diagonal.
pub fn common_pos_counts_dense(g: &SignedGraph) -> Result<CountMatrix> {
    common_pos_counts_dense_with(g, Exec::default())
}

pub fn common_pos_counts_dense_with(g: &SignedGraph, exec: Exec) -> Result<CountMatrix> {
    let n = g.n();
    if n > DENSE_MAX_N {
        return Err(Error::Capacity {
            n,
            limit: DENSE_MAX_N,
        });
    }
    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    for u in 0..n {
        let row = &mut bits[u * words..(u + 1) * words];
        for x in g.closed_neighborhood(u) {
            let x = x as usize;
            row[x / 64] |= 1 << (x % 64);
        }
    }
    let mut data = vec![0u32; n * n];
    if n > 0 {
        exec.for_each_chunk_mut(&mut data, n, |u, out| {
            let a = &bits[u * words..(u + 1) * words];
            for (v, slot) in out.iter_mut().enumerate() {
                let b = &bits[v * words..(v + 1) * words];
                *slot = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
            }
        });
    }
    Ok(CountMatrix { n, data })
}

/// `1 - c / (deg_u + deg_v - c)`, which equals the metric by
/// inclusion–exclusion: `n - |N⁻_u ∩ N⁻_v| = deg_u + deg_v - c`.
pub fn distance_from_count(
    n: usize,
    deg_u: usize,
    deg_v: usize,
    c: usize,
) -> Result<RationalDistance> {
    if deg_u < 1 || deg_v < 1 || deg_u > n || deg_v > n || c > deg_u.min(deg_v) {
        return Err(Error::Invariant(format!(
            "inconsistent counts n={n} deg_u={deg_u} deg_v={deg_v} common={c}"
        )));
    }
    Ok(distance_unchecked(deg_u as u64, deg_v as u64, c as u64))
}

pub(crate) fn distance_unchecked(deg_u: u64, deg_v: u64, c: u64) -> RationalDistance {
    let union = deg_u + deg_v - c;
    let num = union - c;
    let g = num_integer::gcd(num, union);
    RationalDistance {
        num: num / g,
        den: union / g,
    }
}

/// Exact oracle backed by the full count matrix.
pub fn build_dense_oracle(g: &SignedGraph) -> Result<DistanceOracle> {
    build_dense_oracle_with(g, Exec::default())
}

pub fn build_dense_oracle_with(g: &SignedGraph, exec: Exec) -> Result<DistanceOracle> {
    let counts = common_pos_counts_dense_with(g, exec)?;
    let deg_plus = (0..g.n()).map(|u| g.deg_plus(u) as u32).collect();
    Ok(DistanceOracle::from_store(
        g.n(),
        Store::Dense { counts, deg_plus },
    ))
}

/// Exact oracle holding only pairs inside each other's 2-hop positive
/// neighborhood; every other pair is at distance 1.
pub fn build_sparse_oracle(g: &SignedGraph) -> DistanceOracle {
    build_sparse_oracle_with(g, Exec::default())
}

pub fn build_sparse_oracle_with(g: &SignedGraph, exec: Exec) -> DistanceOracle {
    let rows = exec.map_range(g.n(), |u| sparse_row(g, u));
    DistanceOracle::from_store(g.n(), Store::Sparse { rows })
}

fn sparse_row(g: &SignedGraph, u: usize) -> Vec<(u32, RationalDistance)> {
    // x is reached once through every w in N⁺_u ∩ N⁺_x.
    let mut hits: Vec<u32> = Vec::new();
    for w in g.closed_neighborhood(u) {
        hits.extend(g.closed_neighborhood(w as usize));
    }
    hits.sort_unstable();
    let deg_u = g.deg_plus(u) as u64;
    let mut row = Vec::new();
    for run in hits.chunk_by(|a, b| a == b) {
        let v = run[0];
        if v as usize == u {
            continue;
        }
        let c = run.len() as u64;
        row.push((
            v,
            distance_unchecked(deg_u, g.deg_plus(v as usize) as u64, c),
        ));
    }
    row
}
