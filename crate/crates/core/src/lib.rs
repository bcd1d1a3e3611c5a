//! Author name disambiguation for scholarly knowledge graphs.
//!
//! The pipeline learns DistMult embeddings (optionally fused with title
//! vectors and publication years), groups author records by last name and
//! first initial, clusters each group with single-linkage agglomerative
//! clustering over cosine distance and scores the result with pairwise
//! precision, recall and F1 against ORCID labels.
//!
//! Modules, in pipeline order:
//!
//! * [`kg`]: triple parsing, structural split, author record extraction
//! * [`literals`]: title vectors and normalized years
//! * [`model`]: DistMult scoring with `g_lin` / `g_gru` literal fusion
//! * [`train`]: negative sampling, smoothed BCE, Adam, early stopping
//! * [`disambig`]: author features, blocking, clustering, deduplication
//! * [`baselines`]: rule-based pair scoring and title similarity
//! * [`eval`]: pairwise metrics and reports
//! * [`pipeline`]: configuration and the `land` command implementations

pub mod baselines;
pub mod disambig;
mod error;
pub mod eval;
pub mod kg;
pub mod linalg;
pub mod literals;
pub mod model;
pub mod pipeline;
pub mod synthetic;
pub mod train;

pub use error::{Error, Result};
