use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hyperparameters for momentum-queue contrastive training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContrastiveConfig {
    /// Momentum coefficient for the shadow encoders.
    pub m: f64,
    /// Softmax temperature.
    pub tau: f64,
    pub batch_size: usize,
    pub queue_capacity: usize,
    pub embed_dim: usize,
    /// Hidden layer widths shared by both towers.
    #[serde(default = "default_hidden")]
    pub hidden_dims: Vec<usize>,
    pub learning_rate: f64,
    /// L2 term added to the Adam gradient.
    #[serde(default)]
    pub weight_decay: f64,
    pub seed: u64,
}

fn default_hidden() -> Vec<usize> {
    vec![64]
}

impl ContrastiveConfig {
    /// Full-scale settings: batch 512, queue 9600, D = 256, lr 1e-5 with
    /// weight decay 0.02.
    pub fn full_scale() -> Self {
        Self {
            m: 0.99,
            tau: 0.07,
            batch_size: 512,
            queue_capacity: 9600,
            embed_dim: 256,
            hidden_dims: vec![1024],
            learning_rate: 1e-5,
            weight_decay: 0.02,
            seed: 0,
        }
    }

    /// Laptop-sized defaults used by tests and the CLI.
    pub fn desk() -> Self {
        Self {
            m: 0.99,
            tau: 0.07,
            batch_size: 32,
            queue_capacity: 256,
            embed_dim: 16,
            hidden_dims: default_hidden(),
            learning_rate: 1e-3,
            weight_decay: 0.0,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.m) {
            return Err(Error::arg(format!("m = {} outside [0, 1]", self.m)));
        }
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(Error::arg(format!("tau = {} must be positive", self.tau)));
        }
        if self.batch_size == 0 {
            return Err(Error::arg("batch_size must be at least 1"));
        }
        if self.embed_dim == 0 || self.hidden_dims.contains(&0) {
            return Err(Error::arg("layer widths must be positive"));
        }
        if !(self.learning_rate >= 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::arg("learning_rate must be finite and nonnegative"));
        }
        if !(self.weight_decay >= 0.0 && self.weight_decay.is_finite()) {
            return Err(Error::arg("weight_decay must be finite and nonnegative"));
        }
        Ok(())
    }

    /// Layer sizes for a tower with the given input width.
    pub fn layer_dims(&self, input_dim: usize) -> Vec<usize> {
        let mut dims = Vec::with_capacity(self.hidden_dims.len() + 2);
        dims.push(input_dim);
        dims.extend_from_slice(&self.hidden_dims);
        dims.push(self.embed_dim);
        dims
    }
}

impl Default for ContrastiveConfig {
    fn default() -> Self {
        Self::desk()
    }
}
