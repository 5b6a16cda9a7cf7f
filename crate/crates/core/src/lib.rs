//! Desk-scale toolkit for two pieces of multimodal brain-encoding work:
//! cross-modal contrastive training with momentum encoders and memory
//! queues, and voxelwise encoding models fitted with banded ridge regression
//! whose accuracy is partitioned across feature spaces with split R².
//!
//! Retrieval metrics, seeded synthetic data, file formats and the
//! `neuroalign` command-line front end tie the pieces together.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod contrastive;
pub mod encoding;
pub mod error;
pub mod io;
pub mod queue;
pub mod retrieval;
pub mod ridge;
pub mod rng;
pub mod synth;

pub use error::{Error, Result};

/// Version stamped into every report and checkpoint.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
