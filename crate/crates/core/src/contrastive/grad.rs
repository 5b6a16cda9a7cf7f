//! Reverse-mode gradients of the bidirectional loss with respect to the
//! online towers. Momentum outputs and queue entries are constants.

use super::encoder::{Embedding, ForwardTrace, MlpEncoder};
use super::loss::{check_batch, direction, embed_all, report, run_tower, DualEncoder, LossReport, Negatives};
use crate::error::Result;

/// Loss plus gradients shaped like the two online encoders.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub loss: LossReport,
    pub image: MlpEncoder,
    pub text: MlpEncoder,
    /// Momentum-tower embeddings of the batch, reused as queue entries.
    pub image_keys: Vec<Embedding>,
    pub text_keys: Vec<Embedding>,
}

pub fn loss_gradients(
    images: &[Vec<f64>],
    texts: &[Vec<f64>],
    model: &DualEncoder,
    negatives: Negatives<'_>,
    tau: f64,
) -> Result<Gradients> {
    check_batch(images, texts)?;
    model.image.online.check_finite()?;
    model.text.online.check_finite()?;

    let image_pass = run_tower(&model.image.online, images)?;
    let text_pass = run_tower(&model.text.online, texts)?;
    let image_pos = embed_all(&model.image.momentum, images)?;
    let text_pos = embed_all(&model.text.momentum, texts)?;

    let (i2t, d_image) = direction(&image_pass.embeddings, &text_pos, negatives.text, tau, true)?;
    let (t2i, d_text) = direction(&text_pass.embeddings, &image_pos, negatives.image, tau, true)?;

    let mut g_image = MlpEncoder::zeros(&model.image.online.layer_dims)?;
    for ((trace, emb), g) in image_pass.traces.iter().zip(&image_pass.embeddings).zip(&d_image) {
        accumulate(&model.image.online, trace, emb, g, &mut g_image);
    }
    let mut g_text = MlpEncoder::zeros(&model.text.online.layer_dims)?;
    for ((trace, emb), g) in text_pass.traces.iter().zip(&text_pass.embeddings).zip(&d_text) {
        accumulate(&model.text.online, trace, emb, g, &mut g_text);
    }

    Ok(Gradients {
        loss: report(i2t, t2i),
        image: g_image,
        text: g_text,
        image_keys: image_pos,
        text_keys: text_pos,
    })
}

/// Backpropagates `d_unit` (gradient w.r.t. the normalized output) through
/// the normalization and every layer, adding into `grads`.
fn accumulate(enc: &MlpEncoder, trace: &ForwardTrace, unit: &Embedding, d_unit: &[f64], grads: &mut MlpEncoder) {
    let raw = trace.output();
    let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
    let u = unit.as_slice();
    let proj: f64 = u.iter().zip(d_unit).map(|(a, b)| a * b).sum();
    // d(z/|z|)/dz = (I - u u^T) / |z|
    let mut delta: Vec<f64> = d_unit.iter().zip(u).map(|(g, ui)| (g - ui * proj) / norm).collect();

    for k in (0..enc.layers.len()).rev() {
        let layer = &enc.layers[k];
        let input = &trace.activations[k];
        let g = &mut grads.layers[k];
        for (r, d) in delta.iter().enumerate() {
            g.bias[r] += d;
            let row = &mut g.weight[r * layer.inputs..(r + 1) * layer.inputs];
            for (w, x) in row.iter_mut().zip(input) {
                *w += d * x;
            }
        }
        if k == 0 {
            break;
        }
        // input to layer k is tanh output of layer k-1
        let mut prev = vec![0.0; layer.inputs];
        for (r, d) in delta.iter().enumerate() {
            for (c, p) in prev.iter_mut().enumerate() {
                *p += layer.w(r, c) * d;
            }
        }
        for (p, h) in prev.iter_mut().zip(input) {
            *p *= 1.0 - h * h;
        }
        delta = prev;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contrastive::EncoderPair;
    use crate::error::Error;
    use crate::rng;

    #[test]
    fn zero_input_zero_bias_is_numeric_error() {
        let mut r = rng::seeded(1);
        let model = DualEncoder {
            image: EncoderPair::new(MlpEncoder::random(&[3, 5, 4], &mut r).unwrap()),
            text: EncoderPair::new(MlpEncoder::random(&[2, 5, 4], &mut r).unwrap()),
        };
        let images = vec![vec![0.0; 3]];
        let texts = vec![vec![0.0; 2]];
        let neg = Negatives { image: &[], text: &[] };
        let err = loss_gradients(&images, &texts, &model, neg, 0.07).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)), "{err}");
    }

    #[test]
    fn unequal_batches_rejected() {
        let mut r = rng::seeded(1);
        let model = DualEncoder {
            image: EncoderPair::new(MlpEncoder::random(&[3, 4], &mut r).unwrap()),
            text: EncoderPair::new(MlpEncoder::random(&[2, 4], &mut r).unwrap()),
        };
        let neg = Negatives { image: &[], text: &[] };
        let err = loss_gradients(&[vec![1.0; 3]], &[], &model, neg, 0.07).unwrap_err();
        assert!(matches!(err, Error::Argument(_)));
    }
}
