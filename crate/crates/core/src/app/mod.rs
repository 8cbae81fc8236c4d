//! File formats, run reports and parameter sweeps behind the `corrclust`
//! command-line tool.

mod ingest;
mod report;
mod sweep;

pub use ingest::{
    parse_circles, parse_edge_list, write_circles, write_edge_list, CircleSet, EdgeList,
};
pub use report::{
    build_metric, circle_containment_report, evaluate, run_cluster, BuiltMetric, ClusterConfig,
    ContainmentRow, EvalReport, MetricChoice, RunReport, SCHEMA_VERSION,
};
pub use sweep::{default_radii, radius_sweep, radius_sweep_with, write_sweep_csv, SweepGrid};
