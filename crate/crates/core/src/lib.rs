//! Constant-round LOCAL-model approximation of minimum dominating sets on
//! sparse graph classes, with exact desk-scale reference solvers.

pub mod error;
pub mod gen;
pub mod general;
mod flow;
pub mod graph;
pub mod greedy;
pub mod k3t;
pub mod local;
pub mod lp;
pub mod oracle;
pub mod orientation;
pub mod params;
pub mod pipeline;
pub mod preset;
pub mod scalar;
pub mod simplex;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexId};
pub use num_rational::BigRational;

/// Exact rational scalar used for parameters and the LP oracle.
pub type Rational = BigRational;

pub use gen::{
    g_gamma_m, gen_bipartite_planar, gen_girth5_planar, gen_outerplanar, gen_planar, gen_sparse_er,
    gen_triangle_free_planar,
};
pub use lp::FractionalAssignment;
pub use oracle::{exact_lp_opt, exact_min_dominating_set, exact_nabla0};
pub use pipeline::{run_pipeline, PipelineConfig, PipelineRun, RunReport};
pub use preset::{ClassPreset, Phase3Variant};

/// Fractional solution as produced by the distributed solver.
pub type Assignment = FractionalAssignment<f64>;
/// Fractional solution in exact arithmetic.
pub type ExactAssignment = FractionalAssignment<Rational>;
