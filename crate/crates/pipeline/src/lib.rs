//! Batch extraction, projection outputs and the command-line front end for
//! the `leafmorph` feature library.

pub mod config;
pub mod dataset;
pub mod error;
pub mod extract;
pub mod project;
pub mod svg;
pub mod synth;
pub mod table;

pub use config::RunConfig;
pub use dataset::{ingest_dataset, DatasetManifest, Labels, ManifestEntry};
pub use error::{PipelineError, Result};
pub use extract::{extract_features, load_image, Extraction, FailureRecord, FeatureRow};
pub use project::{project_and_plot, LabelColumn, ProjectOutputs, ProjectRequest};
