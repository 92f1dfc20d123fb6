//! Balanced separators coverable by few small balls, or fat minor models.
//!
//! Given a vertex-weighted graph `G`, a pattern `H` and a fatness `d`, the
//! [`pipeline`] either returns a balanced separator of `G` together with ball
//! centers and a radius that cover it, or a `d`-fat minor model of `H` in
//! `G`. Both outputs come with deterministic verifiers.

pub mod bench;
pub mod clustering;
pub mod error;
pub mod fatminor;
pub mod flowcut;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pipeline;

pub use error::{
    ClusteringError, FlowError, GenerateError, GraphError, ModelError, OracleError, ParseError, PipelineError,
};
pub use fatminor::{FatModel, PatternGraph};
pub use graph::{SeparatorCertificate, WeightedGraph};
pub use pipeline::{coarse_separator_or_model, Outcome, PipelineConfig};
