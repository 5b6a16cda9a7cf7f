//! InfoNCE with queue negatives, in both retrieval directions.

use serde::{Deserialize, Serialize};

use super::encoder::{Embedding, EncoderPair, ForwardTrace, MlpEncoder};
use crate::error::{Error, Result};

/// Losses for one batch. `total` is always `i2t + t2i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LossReport {
    pub total: f64,
    pub i2t: f64,
    pub t2i: f64,
}

impl LossReport {
    fn new(i2t: f64, t2i: f64) -> Self {
        Self {
            total: i2t + t2i,
            i2t,
            t2i,
        }
    }
}

/// Mean over the batch of `-log(pos / (pos + neg))`, where `pos` is the
/// tempered exponential of the anchor/positive cosine and `neg` sums the
/// same quantity over every queue entry.
pub fn infonce_direction(
    anchors: &[Embedding],
    positives: &[Embedding],
    negatives: &[Embedding],
    tau: f64,
) -> Result<f64> {
    direction(anchors, positives, negatives, tau, false).map(|(loss, _)| loss)
}

/// Loss plus its gradient with respect to each (unit-norm) anchor.
pub(crate) fn direction(
    anchors: &[Embedding],
    positives: &[Embedding],
    negatives: &[Embedding],
    tau: f64,
    want_grad: bool,
) -> Result<(f64, Vec<Vec<f64>>)> {
    if anchors.is_empty() {
        return Err(Error::arg("empty batch"));
    }
    if anchors.len() != positives.len() {
        return Err(Error::arg(format!(
            "{} anchors but {} positives",
            anchors.len(),
            positives.len()
        )));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::arg(format!("temperature must be positive, got {tau}")));
    }
    let dim = anchors[0].dim();
    if anchors.iter().chain(positives).chain(negatives).any(|e| e.dim() != dim) {
        return Err(Error::shape("embeddings differ in dimension"));
    }

    let n = anchors.len() as f64;
    let mut total = 0.0;
    let mut grads = Vec::with_capacity(if want_grad { anchors.len() } else { 0 });
    let mut logits = Vec::with_capacity(negatives.len() + 1);
    for (a, p) in anchors.iter().zip(positives) {
        logits.clear();
        logits.push(a.dot(p) / tau);
        logits.extend(negatives.iter().map(|q| a.dot(q) / tau));
        let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = logits.iter().map(|s| (s - max).exp()).sum();
        let lse = max + sum.ln();
        total += lse - logits[0];

        if want_grad {
            // d/da [lse - s0] = (sum_k softmax_k * c_k - p) / tau
            let scale = 1.0 / (n * tau);
            let mut g: Vec<f64> = p.as_slice().iter().map(|v| -v * scale).collect();
            let candidates = std::iter::once(p).chain(negatives.iter());
            for (s, c) in logits.iter().zip(candidates) {
                let w = (s - max).exp() / sum * scale;
                for (gi, ci) in g.iter_mut().zip(c.as_slice()) {
                    *gi += w * ci;
                }
            }
            grads.push(g);
        }
    }
    let loss = total / n;
    if !loss.is_finite() {
        return Err(Error::numeric("contrastive loss is not finite"));
    }
    Ok((loss, grads))
}

/// Image and text towers, each with its momentum shadow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualEncoder {
    pub image: EncoderPair,
    pub text: EncoderPair,
}

/// Queue snapshots consumed by the loss: text negatives for image anchors,
/// image negatives for text anchors.
#[derive(Debug, Clone, Copy)]
pub struct Negatives<'a> {
    pub image: &'a [Embedding],
    pub text: &'a [Embedding],
}

pub(crate) struct TowerPass {
    pub traces: Vec<ForwardTrace>,
    pub embeddings: Vec<Embedding>,
}

pub(crate) fn run_tower(enc: &MlpEncoder, inputs: &[Vec<f64>]) -> Result<TowerPass> {
    let mut traces = Vec::with_capacity(inputs.len());
    let mut embeddings = Vec::with_capacity(inputs.len());
    for x in inputs {
        let trace = enc.forward(x)?;
        embeddings.push(Embedding::normalize(trace.output())?);
        traces.push(trace);
    }
    Ok(TowerPass { traces, embeddings })
}

pub(crate) fn embed_all(enc: &MlpEncoder, inputs: &[Vec<f64>]) -> Result<Vec<Embedding>> {
    inputs.iter().map(|x| enc.embed(x)).collect()
}

pub(crate) fn check_batch(images: &[Vec<f64>], texts: &[Vec<f64>]) -> Result<()> {
    if images.len() != texts.len() {
        return Err(Error::arg(format!(
            "unpaired batch: {} images, {} texts",
            images.len(),
            texts.len()
        )));
    }
    if images.is_empty() {
        return Err(Error::arg("empty batch"));
    }
    Ok(())
}

/// Sum of the image-to-text and text-to-image losses. Anchors come from the
/// online towers, positives from the momentum towers.
pub fn bidirectional_loss(
    images: &[Vec<f64>],
    texts: &[Vec<f64>],
    model: &DualEncoder,
    negatives: Negatives<'_>,
    tau: f64,
) -> Result<LossReport> {
    check_batch(images, texts)?;
    model.image.online.check_finite()?;
    model.text.online.check_finite()?;
    let image_anchor = embed_all(&model.image.online, images)?;
    let text_anchor = embed_all(&model.text.online, texts)?;
    let image_pos = embed_all(&model.image.momentum, images)?;
    let text_pos = embed_all(&model.text.momentum, texts)?;
    let i2t = infonce_direction(&image_anchor, &text_pos, negatives.text, tau)?;
    let t2i = infonce_direction(&text_anchor, &image_pos, negatives.image, tau)?;
    Ok(LossReport::new(i2t, t2i))
}

pub(crate) fn report(i2t: f64, t2i: f64) -> LossReport {
    LossReport::new(i2t, t2i)
}
