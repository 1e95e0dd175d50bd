//! Prediction pipeline for FAA reroute advisories.
//!
//! The crate covers the full path from raw inputs to served predictions:
//! parsing ATCSCC advisory text and gridded weather forecasts, turning them
//! into normalized per-bucket feature rows, correcting class imbalance with
//! SMOTE + Tomek-link removal, training competing classifiers (tree
//! ensembles, k-NN, MLP), scoring them with the reroute detection score
//! under stratified cross-validation, and persisting the winner behind a
//! model registry for the CLI and HTTP service in `reroute-cli`.
//!
//! Data-parallel inner loops (tree training, neighbor scans, per-timestamp
//! feature extraction) run on rayon when the default `parallel` feature is
//! enabled and fall back to sequential iteration without it. Both paths
//! produce byte-identical results for a given seed.

pub mod advisory;
pub mod config;
pub mod evaluation;
pub mod features;
pub mod learners;
mod par;
pub mod pipeline;
pub mod registry;
pub mod resample;
pub mod synth;
pub mod types;
pub mod weather;

pub use types::{Parameter, PredictionTarget, Statistic, TargetKind};

/// Umbrella error for pipeline drivers and the CLI.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Advisory(#[from] advisory::AdvisoryError),
    #[error(transparent)]
    Weather(#[from] weather::WeatherError),
    #[error(transparent)]
    Feature(#[from] features::FeatureError),
    #[error(transparent)]
    Resample(#[from] resample::ResampleError),
    #[error(transparent)]
    Learner(#[from] learners::LearnerError),
    #[error(transparent)]
    Evaluation(#[from] evaluation::EvaluationError),
    #[error(transparent)]
    Synth(#[from] synth::SynthError),
    #[error("config: {0}")]
    Config(String),
    #[error("registry: {0}")]
    Registry(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
