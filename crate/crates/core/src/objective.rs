//! Disagreement counts and the fractional cost of a distance function.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SignedGraph;
use crate::metric::{Distance, DistanceOracle, OracleKind};
use crate::rounding::Clustering;

/// `y(u)`: disagreeing edges incident to `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisagreementVector {
    pub y: Vec<usize>,
}

impl DisagreementVector {
    pub fn max(&self) -> usize {
        self.y.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.y.iter().sum()
    }
}

pub fn disagreement_vector(g: &SignedGraph, c: &Clustering) -> Result<DisagreementVector> {
    if c.n() != g.n() {
        return Err(Error::SizeMismatch {
            oracle: c.n(),
            graph: g.n(),
        });
    }
    let sizes: Vec<usize> = c.clusters().iter().map(Vec::len).collect();
    let y = (0..g.n())
        .map(|u| {
            let inside = g
                .pos_adj(u)
                .iter()
                .filter(|&&v| c.same_cluster(u, v as usize))
                .count();
            let cut = g.pos_adj(u).len() - inside;
            let negative_inside = sizes[c.cluster_of(u)] - 1 - inside;
            cut + negative_inside
        })
        .collect();
    Ok(DisagreementVector { y })
}

/// Which norm of the disagreement vector to take.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Norm {
    P(f64),
    Infinity,
}

pub fn lp_norm_objective(y: &DisagreementVector, norm: Norm) -> Result<f64> {
    match norm {
        Norm::Infinity => Ok(y.max() as f64),
        Norm::P(p) if p > 0.0 && p.is_finite() => {
            if p == 1.0 {
                return Ok(y.total() as f64);
            }
            let s: f64 = y.y.iter().map(|&v| (v as f64).powf(p)).sum();
            Ok(s.powf(1.0 / p))
        }
        Norm::P(p) => Err(Error::Parameter(format!(
            "norm exponent must be positive, got {p}"
        ))),
    }
}

/// `ŷ(u) = Σ_{v ∈ N⁺_u, v≠u} d(u,v) + Σ_{v ∈ N⁻_u} (1 - d(u,v))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionalCostVector {
    pub values: Vec<f64>,
    pub max_value: f64,
}

pub fn fractional_cost(g: &SignedGraph, oracle: &DistanceOracle) -> Result<FractionalCostVector> {
    check_sizes(g, oracle)?;
    let values = Exec::default().map_range(g.n(), |u| {
        vertex_terms(g, oracle, u)
            .map(Distance::to_f64)
            .sum::<f64>()
    });
    let max_value = values.iter().copied().fold(0.0, f64::max);
    Ok(FractionalCostVector { values, max_value })
}

/// Exact per-vertex fractional cost; only for exact oracles.
pub fn fractional_cost_exact(g: &SignedGraph, oracle: &DistanceOracle) -> Result<Vec<BigRational>> {
    check_sizes(g, oracle)?;
    if !oracle.is_exact() {
        return Err(Error::Parameter(
            "exact fractional cost needs an exact oracle".into(),
        ));
    }
    Ok(Exec::default().map_range(g.n(), |u| {
        let mut sum = BigRational::zero();
        for d in vertex_terms(g, oracle, u) {
            let d = d.exact().expect("exact oracle");
            sum += BigRational::new(BigInt::from(d.num()), BigInt::from(d.den()));
        }
        sum
    }))
}

/// Decimal rendering of an exact value.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The nonzero-capable terms `d̂(u, v)` of `ŷ(u)`. For a sparse oracle the
/// implicit pairs are negative edges at distance 1 and contribute 0.
fn vertex_terms<'a>(
    g: &'a SignedGraph,
    oracle: &'a DistanceOracle,
    u: usize,
) -> Box<dyn Iterator<Item = Distance> + 'a> {
    let adjusted = move |v: usize, d: Distance| {
        if g.is_positive(u, v) {
            d
        } else {
            d.complement()
        }
    };
    match oracle.kind() {
        OracleKind::SparseExact => {
            // Positive neighbors always share u and v, so they are stored.
            Box::new(
                oracle
                    .candidates(u)
                    .into_iter()
                    .map(move |(v, d)| adjusted(v, d)),
            )
        }
        _ => Box::new(
            (0..g.n())
                .filter(move |&v| v != u)
                .map(move |v| adjusted(v, oracle.get(u, v))),
        ),
    }
}

fn check_sizes(g: &SignedGraph, oracle: &DistanceOracle) -> Result<()> {
    if g.n() != oracle.n() {
        return Err(Error::SizeMismatch {
            oracle: oracle.n(),
            graph: g.n(),
        });
    }
    Ok(())
}
