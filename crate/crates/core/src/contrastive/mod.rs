//! Momentum-queue contrastive training for paired image/text vectors.
//!
//! Two small MLP towers embed each modality into a shared unit sphere. Each
//! tower has an online copy (trained by Adam) and a momentum copy (an
//! exponential moving average of the online weights). Image anchors are
//! contrasted against momentum text positives plus a queue of past text
//! keys, and vice versa.

mod adam;
mod config;
mod encoder;
mod grad;
mod loss;
mod trainer;

pub use adam::AdamState;
pub use config::ContrastiveConfig;
pub use encoder::{momentum_update, Embedding, EncoderPair, ForwardTrace, Layer, MlpEncoder};
pub use grad::{loss_gradients, Gradients};
pub use loss::{bidirectional_loss, infonce_direction, DualEncoder, LossReport, Negatives};
pub use trainer::{batch_indices, PairedSample, StepReport, TrainerState};
