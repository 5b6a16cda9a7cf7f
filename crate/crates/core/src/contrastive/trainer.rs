use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::adam::AdamState;
use super::config::ContrastiveConfig;
use super::encoder::{Embedding, EncoderPair, MlpEncoder};
use super::grad::loss_gradients;
use super::loss::{embed_all, DualEncoder, LossReport, Negatives};
use crate::error::{Error, Result};
use crate::queue::MemoryQueue;
use crate::rng;

const IMAGE_INIT_STREAM: u64 = 1;
const TEXT_INIT_STREAM: u64 = 2;
const BATCH_STREAM: u64 = 3;

/// One paired training example.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedSample {
    pub image: Vec<f64>,
    pub text: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub step: u64,
    pub loss: LossReport,
}

/// Everything a training run carries between steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainerState {
    pub config: ContrastiveConfig,
    pub model: DualEncoder,
    pub image_queue: MemoryQueue,
    pub text_queue: MemoryQueue,
    pub image_opt: AdamState,
    pub text_opt: AdamState,
    pub step: u64,
}

impl TrainerState {
    /// Seeded initialization; momentum towers start as exact copies.
    pub fn new(config: ContrastiveConfig, image_dim: usize, text_dim: usize) -> Result<Self> {
        config.validate()?;
        let image = MlpEncoder::random(
            &config.layer_dims(image_dim),
            &mut rng::stream(config.seed, IMAGE_INIT_STREAM),
        )?;
        let text = MlpEncoder::random(
            &config.layer_dims(text_dim),
            &mut rng::stream(config.seed, TEXT_INIT_STREAM),
        )?;
        let image_opt = AdamState::new(image.num_params());
        let text_opt = AdamState::new(text.num_params());
        Ok(Self {
            image_queue: MemoryQueue::new(config.queue_capacity, config.embed_dim),
            text_queue: MemoryQueue::new(config.queue_capacity, config.embed_dim),
            model: DualEncoder {
                image: EncoderPair::new(image),
                text: EncoderPair::new(text),
            },
            image_opt,
            text_opt,
            step: 0,
            config,
        })
    }

    pub fn image_dim(&self) -> usize {
        self.model.image.online.input_dim()
    }

    pub fn text_dim(&self) -> usize {
        self.model.text.online.input_dim()
    }

    /// Forward and backward pass, Adam on the online towers, momentum update,
    /// then the batch's momentum embeddings go into their modality's queue.
    pub fn train_step(&mut self, images: &[Vec<f64>], texts: &[Vec<f64>]) -> Result<StepReport> {
        let image_neg = self.image_queue.snapshot();
        let text_neg = self.text_queue.snapshot();
        let grads = loss_gradients(
            images,
            texts,
            &self.model,
            Negatives {
                image: &image_neg,
                text: &text_neg,
            },
            self.config.tau,
        )?;

        let lr = self.config.learning_rate;
        let wd = self.config.weight_decay;
        self.image_opt
            .step(&mut self.model.image.online, &grads.image, lr, wd)?;
        self.text_opt.step(&mut self.model.text.online, &grads.text, lr, wd)?;
        self.model.image.momentum_update(self.config.m)?;
        self.model.text.momentum_update(self.config.m)?;
        self.image_queue.enqueue_batch(&grads.image_keys)?;
        self.text_queue.enqueue_batch(&grads.text_keys)?;

        self.step += 1;
        Ok(StepReport {
            step: self.step,
            loss: grads.loss,
        })
    }

    /// Draws the batch for the current step from `data` and trains on it.
    pub fn train_on(&mut self, data: &[PairedSample]) -> Result<StepReport> {
        let idx = batch_indices(self.config.seed, self.step, data.len(), self.config.batch_size)?;
        let images: Vec<Vec<f64>> = idx.iter().map(|&i| data[i].image.clone()).collect();
        let texts: Vec<Vec<f64>> = idx.iter().map(|&i| data[i].text.clone()).collect();
        self.train_step(&images, &texts)
    }

    pub fn embed_images(&self, images: &[Vec<f64>]) -> Result<Vec<Embedding>> {
        embed_all(&self.model.image.online, images)
    }

    pub fn embed_texts(&self, texts: &[Vec<f64>]) -> Result<Vec<Embedding>> {
        embed_all(&self.model.text.online, texts)
    }
}

/// Indices for step `step`: a uniform draw without replacement that depends
/// only on `(seed, step)`, so a resumed run sees the same batches.
pub fn batch_indices(seed: u64, step: u64, n: usize, batch_size: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::arg("cannot draw a batch from an empty dataset"));
    }
    let take = batch_size.min(n);
    let mut r = rng::stream(seed ^ BATCH_STREAM.rotate_left(48), step);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..take {
        let j = r.gen_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(take);
    Ok(pool)
}
