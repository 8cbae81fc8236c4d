//! Correlation metric and Min-Max correlation clustering.
//!
//! A complete signed graph is given by its positive edges; every other pair
//! is negative and every vertex carries an implicit positive self-loop. The
//! crate computes the correlation metric between vertices (exactly, over the
//! 2-hop support only, or from per-vertex neighborhood samples), rounds it
//! into a clustering with the ball-growing procedure, and evaluates the
//! per-vertex disagreement objective. Baselines (Pivot, exhaustive optimum),
//! instance generators and the file formats used by the `corrclust` binary
//! live here as well.
//!
//! Data-parallel loops run on rayon when the `parallel` feature is enabled
//! (the default). Every such loop also has a sequential path selected with
//! [`Exec::Sequential`], and both produce identical results.

pub mod app;
pub mod baselines;
mod error;
mod exec;
pub mod graph;
mod heap;
pub mod metric;
pub mod objective;
pub mod rounding;
pub mod synth;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{PosDegreeProfile, SignedGraph};
pub use metric::{
    build_dense_oracle, build_sparse_oracle, common_pos_counts_dense, distance_from_count,
    CountMatrix, Distance, DistanceOracle, OracleKind, RationalDistance,
};
pub use objective::{
    disagreement_vector, fractional_cost, fractional_cost_exact, lp_norm_objective,
    DisagreementVector, FractionalCostVector, Norm,
};
pub use rounding::{
    appendix_b_constants, round_approx, round_dense, round_sparse, AppendixBConstants, Clustering,
    Radius, RoundingMode, RoundingParams,
};
