//! Toolkit for Arabic subjectivity classification experiments.
//!
//! The crate covers the full pipeline:
//!
//! - [`ingest`]: parse the four source corpora (ASTD, LABR, HARD, SANAD)
//!   into one record schema with binary subjectivity labels.
//! - [`preprocess`]: Arabic-specific cleaning and normalization.
//! - [`dataset`]: oversampling, augmentation, stratified splitting, and
//!   CSV export of the combined AraDhati+ corpus.
//! - [`harness`]: model-agnostic fine-tuning and inference over pluggable
//!   sequence-classifier backends, with a hyperparameter grid search.
//! - [`ensemble`]: majority-vote combination of component classifiers.
//! - [`evaluation`]: confusion matrices and slice-wise metrics.
//! - [`error_analysis`]: partition and categorize ensemble errors.
//! - [`pipeline`]: the `build | train | eval | errors | report` commands
//!   behind the `aradhati` binary.
//!
//! Numeric code (metrics, the miniature training backend, the optimizer)
//! is generic over the scalar type through the [`Scalar`] trait; the
//! aliases below pin the two floating-point instantiations.

pub mod chart;
pub mod config;
pub mod dataset;
pub mod ensemble;
pub mod error_analysis;
pub mod evaluation;
pub mod harness;
pub mod ingest;
pub mod pipeline;
pub mod preprocess;
pub mod record;
pub mod scalar;
pub mod synth;

pub use record::{Class4, InstanceRecord, Label, SourceDataset};
pub use scalar::Scalar;

/// Metrics computed in `f32`.
pub type Metrics32 = evaluation::Metrics<f32>;
/// Metrics computed in `f64`.
pub type Metrics64 = evaluation::Metrics<f64>;
/// Miniature backend trained in `f32`, the default for pipeline runs.
pub type MiniModel32 = harness::model::MiniModel<f32>;
/// Miniature backend trained in `f64`, used where tests want tight
/// agreement with finite-difference oracles.
pub type MiniModel64 = harness::model::MiniModel<f64>;
