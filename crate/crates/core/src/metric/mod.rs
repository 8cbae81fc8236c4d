//! The correlation metric `d_uv = 1 - |N⁺_u ∩ N⁺_v| / (n - |N⁻_u ∩ N⁻_v|)`
//! and the oracles that serve it.

mod exact;
pub mod sampled;

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

pub use exact::{
    build_dense_oracle, build_dense_oracle_with, build_sparse_oracle, build_sparse_oracle_with,
    common_pos_counts_dense, common_pos_counts_dense_with, distance_from_count, CountMatrix,
    DENSE_MAX_N,
};

/// An exact distance in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalDistance {
    num: u64,
    den: u64,
}

impl RationalDistance {
    pub const ZERO: Self = Self { num: 0, den: 1 };
    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Invariant(format!(
                "distance {num}/{den} is not in [0, 1]"
            )));
        }
        let g = num_integer::gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_big(self) -> BigRational {
        BigRational::new_raw(BigInt::from(self.num), BigInt::from(self.den))
    }

    /// `1 - self`.
    pub fn complement(self) -> Self {
        Self {
            num: self.den - self.num,
            den: self.den,
        }
    }

    /// Exact test of `self <= a + b`.
    pub fn le_sum(self, a: Self, b: Self) -> bool {
        // self.num / self.den <= (a.num * b.den + b.num * a.den) / (a.den * b.den)
        let lhs = self.num as u128 * a.den as u128 * b.den as u128;
        let rhs =
            (a.num as u128 * b.den as u128 + b.num as u128 * a.den as u128) * self.den as u128;
        lhs <= rhs
    }
}

impl Ord for RationalDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for RationalDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A value returned by an oracle: exact for the exact oracles, a double for
/// the sampled one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Distance {
    Exact(RationalDistance),
    Approx(f64),
}

impl Distance {
    pub fn to_f64(self) -> f64 {
        match self {
            Distance::Exact(d) => d.to_f64(),
            Distance::Approx(x) => x,
        }
    }

    pub fn exact(self) -> Option<RationalDistance> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::Approx(_) => None,
        }
    }

    pub fn complement(self) -> Self {
        match self {
            Distance::Exact(d) => Distance::Exact(d.complement()),
            Distance::Approx(x) => Distance::Approx(1.0 - x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    DenseExact,
    SparseExact,
    Sampled,
}

#[derive(Debug, Clone)]
pub(crate) enum Store {
    Dense {
        counts: CountMatrix,
        deg_plus: Vec<u32>,
    },
    /// Row `u` lists every `v ≠ u` with `d_uv < 1`, sorted by `v`.
    Sparse {
        rows: Vec<Vec<(u32, RationalDistance)>>,
    },
    /// Row-major `n × n` table; the diagonal is unused.
    Sampled { table: Vec<f64> },
}

/// Uniform read-only access to `d(u, v)` for `u ≠ v`.
#[derive(Debug, Clone)]
pub struct DistanceOracle {
    n: usize,
    pub(crate) store: Store,
}

impl DistanceOracle {
    pub(crate) fn from_store(n: usize, store: Store) -> Self {
        Self { n, store }
    }

    /// Wraps a full row-major `n × n` table of estimates. Entries are
    /// clamped to `[0, 1]`; the table must be symmetric.
    pub fn from_sampled_table(n: usize, table: Vec<f64>) -> Result<Self> {
        if table.len() != n * n {
            return Err(Error::Parameter(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        for u in 0..n {
            for v in 0..u {
                let (a, b) = (table[u * n + v], table[v * n + u]);
                if a != b || !(0.0..=1.0).contains(&a) {
                    return Err(Error::Invariant(format!(
                        "sampled table entry ({u},{v}) is {a} / {b}"
                    )));
                }
            }
        }
        Ok(Self::from_store(n, Store::Sampled { table }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> OracleKind {
        match self.store {
            Store::Dense { .. } => OracleKind::DenseExact,
            Store::Sparse { .. } => OracleKind::SparseExact,
            Store::Sampled { .. } => OracleKind::Sampled,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind() != OracleKind::Sampled
    }

    /// `d(u, v)`. Rejects `u == v` and out-of-range ids.
    pub fn query(&self, u: usize, v: usize) -> Result<Distance> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::Parameter(format!(
                "distance of vertex {u} to itself is not defined"
            )));
        }
        Ok(self.get(u, v))
    }

    /// Unchecked query for `u ≠ v`.
    pub(crate) fn get(&self, u: usize, v: usize) -> Distance {
        debug_assert!(u != v);
        match &self.store {
            Store::Dense { .. } => Distance::Exact(self.get_exact(u, v)),
            Store::Sparse { .. } => Distance::Exact(self.get_exact(u, v)),
            Store::Sampled { table } => Distance::Approx(table[u * self.n + v]),
        }
    }

    pub(crate) fn get_exact(&self, u: usize, v: usize) -> RationalDistance {
        match &self.store {
            Store::Dense { counts, deg_plus } => exact::distance_unchecked(
                deg_plus[u] as u64,
                deg_plus[v] as u64,
                counts.get(u, v) as u64,
            ),
            Store::Sparse { rows } => {
                let row = &rows[u];
                match row.binary_search_by_key(&(v as u32), |&(x, _)| x) {
                    Ok(i) => row[i].1,
                    Err(_) => RationalDistance::ONE,
                }
            }
            Store::Sampled { .. } => unreachable!("sampled oracle has no exact values"),
        }
    }

    /// `d̂(u, v)`: `d` on positive edges and `1 - d` on negative ones.
    pub fn edge_adjusted(&self, g: &SignedGraph, u: usize, v: usize) -> Result<Distance> {
        let d = self.query(u, v)?;
        Ok(if g.is_positive(u, v) {
            d
        } else {
            d.complement()
        })
    }

    /// Pairs with `u < v` the oracle holds explicitly, with their values.
    /// Dense and sampled oracles hold every pair; the sparse one holds
    /// only pairs below distance 1.
    pub fn stored_pairs(&self) -> Vec<(usize, usize, Distance)> {
        let mut out = Vec::new();
        match &self.store {
            Store::Sparse { rows } => {
                for (u, row) in rows.iter().enumerate() {
                    for &(v, d) in row.iter().filter(|(v, _)| *v as usize > u) {
                        out.push((u, v as usize, Distance::Exact(d)));
                    }
                }
            }
            _ => {
                for u in 0..self.n {
                    for v in u + 1..self.n {
                        out.push((u, v, self.get(u, v)));
                    }
                }
            }
        }
        out
    }

    /// Vertices `v ≠ u` that can be at distance below 1 from `u`, each with
    /// its distance. Every vertex for dense and sampled oracles.
    pub(crate) fn candidates(&self, u: usize) -> Vec<(usize, Distance)> {
        match &self.store {
            Store::Sparse { rows } => rows[u]
                .iter()
                .map(|&(v, d)| (v as usize, Distance::Exact(d)))
                .collect(),
            _ => (0..self.n)
                .filter(|&v| v != u)
                .map(|v| (v, self.get(u, v)))
                .collect(),
        }
    }

    /// Writes the stored pairs as CSV: `u,v,num,den` for exact oracles,
    /// `u,v,value` for the sampled one. `labels` maps dense ids to the ids
    /// printed in the file.
    pub fn write_csv<W: Write>(&self, out: W, labels: Option<&[String]>) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let name = |x: usize| match labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        };
        if self.is_exact() {
            w.write_record(["u", "v", "num", "den"])?;
        } else {
            w.write_record(["u", "v", "value"])?;
        }
        for (u, v, d) in self.stored_pairs() {
            match d {
                Distance::Exact(d) => {
                    w.write_record([name(u), name(v), d.num.to_string(), d.den.to_string()])?
                }
                Distance::Approx(x) => w.write_record([name(u), name(v), x.to_string()])?,
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let d = RationalDistance::new(4, 6).unwrap();
        assert_eq!((d.num(), d.den()), (2, 3));
        assert_eq!(d.complement(), RationalDistance::new(1, 3).unwrap());
        assert!(RationalDistance::new(3, 2).is_err());
        assert!(RationalDistance::new(0, 0).is_err());
        assert!(RationalDistance::new(1, 3).unwrap() < RationalDistance::new(1, 2).unwrap());

        let third = RationalDistance::new(1, 3).unwrap();
        let two_thirds = RationalDistance::new(2, 3).unwrap();
        assert!(two_thirds.le_sum(third, third));
        assert!(!RationalDistance::ONE.le_sum(third, third));
    }

    #[test]
    fn sampled_table_validation() {
        assert!(DistanceOracle::from_sampled_table(2, vec![0.0, 0.5, 0.5, 0.0]).is_ok());
        assert!(DistanceOracle::from_sampled_table(2, vec![0.0, 0.5, 0.4, 0.0]).is_err());
        assert!(DistanceOracle::from_sampled_table(2, vec![0.0, 1.5, 1.5, 0.0]).is_err());
        assert!(DistanceOracle::from_sampled_table(2, vec![0.0]).is_err());
    }
}
