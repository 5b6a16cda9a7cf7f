//! Small tanh MLP encoders standing in for the image and text towers.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::rng::{self, Rng};

/// One affine layer. `weight` is row-major with shape `outputs x inputs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub inputs: usize,
    pub outputs: usize,
    pub weight: Vec<f64>,
    pub bias: Vec<f64>,
}

impl Layer {
    pub fn zeros(inputs: usize, outputs: usize) -> Self {
        Self {
            inputs,
            outputs,
            weight: vec![0.0; inputs * outputs],
            bias: vec![0.0; outputs],
        }
    }

    #[inline]
    pub fn w(&self, row: usize, col: usize) -> f64 {
        self.weight[row * self.inputs + col]
    }

    fn apply(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(
            self.weight
                .chunks_exact(self.inputs)
                .zip(&self.bias)
                .map(|(row, b)| row.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + b),
        );
    }

    fn same_shape(&self, other: &Layer) -> bool {
        self.inputs == other.inputs && self.outputs == other.outputs
    }
}

/// A unit-norm embedding vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Embedding(Vec<f64>);

impl Embedding {
    /// L2-normalizes `raw`. A zero (or non-finite) vector is an error; there
    /// is no epsilon fallback.
    pub fn normalize(raw: &[f64]) -> Result<Self> {
        let norm = l2_norm(raw);
        if !norm.is_finite() {
            return Err(Error::numeric("cannot normalize a non-finite vector"));
        }
        if norm == 0.0 {
            return Err(Error::numeric("cannot normalize a zero-norm vector"));
        }
        Ok(Self(raw.iter().map(|v| v / norm).collect()))
    }

    /// Wraps a vector that is already unit-norm, checking the norm to `tol`.
    pub fn from_unit(values: Vec<f64>, tol: f64) -> Result<Self> {
        ensure_finite(&values, "embedding")?;
        let norm = l2_norm(&values);
        if (norm - 1.0).abs() > tol {
            return Err(Error::arg(format!("embedding norm {norm} is not 1 (tol {tol})")));
        }
        Ok(Self(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Embedding) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for Embedding {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn l2_norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Activations recorded by a forward pass. `activations[0]` is the input and
/// `activations[k + 1]` the output of layer `k` (tanh for hidden layers, the
/// raw affine output for the last one).
#[derive(Debug, Clone)]
pub struct ForwardTrace {
    pub activations: Vec<Vec<f64>>,
}

impl ForwardTrace {
    pub fn output(&self) -> &[f64] {
        self.activations.last().expect("trace always holds the input")
    }
}

/// Multilayer perceptron with tanh hidden layers and a linear output layer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpEncoder {
    pub layer_dims: Vec<usize>,
    pub layers: Vec<Layer>,
}

impl MlpEncoder {
    pub fn zeros(layer_dims: &[usize]) -> Result<Self> {
        validate_dims(layer_dims)?;
        let layers = layer_dims.windows(2).map(|w| Layer::zeros(w[0], w[1])).collect();
        Ok(Self {
            layer_dims: layer_dims.to_vec(),
            layers,
        })
    }

    /// Gaussian weights with variance `1 / fan_in`, zero biases.
    pub fn random(layer_dims: &[usize], rng: &mut Rng) -> Result<Self> {
        let mut enc = Self::zeros(layer_dims)?;
        for layer in &mut enc.layers {
            let scale = (layer.inputs as f64).sqrt().recip();
            for w in &mut layer.weight {
                *w = rng::normal(rng) * scale;
            }
        }
        Ok(enc)
    }

    /// Builds an encoder from explicit layers, checking that they chain.
    pub fn from_layers(layers: Vec<Layer>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::shape("encoder needs at least one layer"));
        }
        let mut dims = vec![layers[0].inputs];
        for (k, layer) in layers.iter().enumerate() {
            if layer.inputs != *dims.last().unwrap() {
                return Err(Error::shape(format!(
                    "layer {k} expects {} inputs, previous layer emits {}",
                    layer.inputs,
                    dims.last().unwrap()
                )));
            }
            if layer.weight.len() != layer.inputs * layer.outputs || layer.bias.len() != layer.outputs {
                return Err(Error::shape(format!(
                    "layer {k} parameter lengths do not match its shape"
                )));
            }
            dims.push(layer.outputs);
        }
        validate_dims(&dims)?;
        Ok(Self {
            layer_dims: dims,
            layers,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    pub fn num_params(&self) -> usize {
        self.layers.iter().map(|l| l.weight.len() + l.bias.len()).sum()
    }

    /// Parameters in canonical order: per layer, weights row-major then bias.
    pub fn params(&self) -> impl Iterator<Item = &f64> {
        self.layers.iter().flat_map(|l| l.weight.iter().chain(l.bias.iter()))
    }

    pub fn params_mut(&mut self) -> impl Iterator<Item = &mut f64> {
        self.layers
            .iter_mut()
            .flat_map(|l| l.weight.iter_mut().chain(l.bias.iter_mut()))
    }

    pub fn same_shape(&self, other: &MlpEncoder) -> bool {
        self.layers.len() == other.layers.len() && self.layers.iter().zip(&other.layers).all(|(a, b)| a.same_shape(b))
    }

    pub fn check_finite(&self) -> Result<()> {
        for (k, layer) in self.layers.iter().enumerate() {
            ensure_finite(&layer.weight, &format!("layer {k} weight"))?;
            ensure_finite(&layer.bias, &format!("layer {k} bias"))?;
        }
        Ok(())
    }

    pub fn forward(&self, input: &[f64]) -> Result<ForwardTrace> {
        if input.len() != self.input_dim() {
            return Err(Error::shape(format!(
                "encoder expects input of length {}, got {}",
                self.input_dim(),
                input.len()
            )));
        }
        ensure_finite(input, "encoder input")?;
        let last = self.layers.len() - 1;
        let mut activations = Vec::with_capacity(self.layers.len() + 1);
        activations.push(input.to_vec());
        for (k, layer) in self.layers.iter().enumerate() {
            let mut out = Vec::with_capacity(layer.outputs);
            layer.apply(&activations[k], &mut out);
            if k != last {
                out.iter_mut().for_each(|v| *v = v.tanh());
            }
            activations.push(out);
        }
        Ok(ForwardTrace { activations })
    }

    /// Forward pass returning the normalized embedding and the per-layer
    /// feature taps (hidden activations, then the raw final output).
    pub fn encode(&self, input: &[f64]) -> Result<(Embedding, Vec<Vec<f64>>)> {
        self.check_finite()?;
        let trace = self.forward(input)?;
        let embedding = Embedding::normalize(trace.output())?;
        let mut features = trace.activations;
        features.remove(0);
        Ok((embedding, features))
    }

    /// Embedding only, skipping the parameter scan.
    pub fn embed(&self, input: &[f64]) -> Result<Embedding> {
        let trace = self.forward(input)?;
        Embedding::normalize(trace.output())
    }
}

fn validate_dims(dims: &[usize]) -> Result<()> {
    if dims.len() < 2 {
        return Err(Error::shape("layer_dims needs at least an input and an output size"));
    }
    if dims.contains(&0) {
        return Err(Error::shape("layer sizes must be positive"));
    }
    Ok(())
}

/// Online encoder and its exponential-moving-average shadow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncoderPair {
    pub online: MlpEncoder,
    pub momentum: MlpEncoder,
}

impl EncoderPair {
    /// The momentum copy starts identical to the online encoder.
    pub fn new(online: MlpEncoder) -> Self {
        let momentum = online.clone();
        Self { online, momentum }
    }

    pub fn from_parts(online: MlpEncoder, momentum: MlpEncoder) -> Result<Self> {
        if !online.same_shape(&momentum) {
            return Err(Error::shape("online and momentum encoders differ in shape"));
        }
        Ok(Self { online, momentum })
    }

    /// `momentum <- m * momentum + (1 - m) * online`, elementwise.
    pub fn momentum_update(&mut self, m: f64) -> Result<()> {
        momentum_update(&mut self.momentum, &self.online, m)
    }
}

pub fn momentum_update(momentum: &mut MlpEncoder, online: &MlpEncoder, m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::arg(format!("momentum coefficient {m} outside [0, 1]")));
    }
    if !momentum.same_shape(online) {
        return Err(Error::shape("online and momentum encoders differ in shape"));
    }
    let keep = 1.0 - m;
    for (shadow, p) in momentum.params_mut().zip(online.params()) {
        *shadow = m * *shadow + keep * p;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity_encoder() -> MlpEncoder {
        MlpEncoder::from_layers(vec![Layer {
            inputs: 2,
            outputs: 2,
            weight: vec![1.0, 0.0, 0.0, 1.0],
            bias: vec![0.0, 0.0],
        }])
        .unwrap()
    }

    #[test]
    fn identity_encoder_normalizes_input() {
        let (emb, feats) = identity_encoder().encode(&[3.0, 4.0]).unwrap();
        assert_eq!(emb.as_slice(), &[0.6, 0.8]);
        assert_eq!(feats, vec![vec![3.0, 4.0]]);
    }

    #[test]
    fn zero_weights_give_zero_norm_error() {
        let enc = MlpEncoder::zeros(&[3, 4, 2]).unwrap();
        let err = enc.encode(&[1.0, -2.0, 0.5]).unwrap_err();
        assert!(matches!(err, Error::Numeric(_)), "{err}");
    }

    #[test]
    fn rejects_bad_input() {
        let enc = identity_encoder();
        assert!(matches!(enc.encode(&[1.0]), Err(Error::Shape(_))));
        assert!(matches!(enc.encode(&[1.0, f64::NAN]), Err(Error::Numeric(_))));
        let mut bad = enc.clone();
        bad.layers[0].bias[1] = f64::INFINITY;
        assert!(matches!(bad.encode(&[1.0, 1.0]), Err(Error::Numeric(_))));
    }

    #[test]
    fn layer_dims_validation() {
        assert!(MlpEncoder::zeros(&[3]).is_err());
        assert!(MlpEncoder::zeros(&[3, 0, 2]).is_err());
        let enc = MlpEncoder::zeros(&[5, 7, 3]).unwrap();
        assert_eq!(enc.layers[0].weight.len(), 35);
        assert_eq!(enc.layers[1].bias.len(), 3);
        assert_eq!(enc.num_params(), 5 * 7 + 7 + 7 * 3 + 3);
    }

    #[test]
    fn momentum_fixed_point_copy_and_scalar() {
        let mut r = rng::seeded(3);
        let online = MlpEncoder::random(&[3, 4, 2], &mut r).unwrap();
        let shadow = MlpEncoder::random(&[3, 4, 2], &mut r).unwrap();

        let mut pair = EncoderPair::from_parts(online.clone(), shadow.clone()).unwrap();
        pair.momentum_update(1.0).unwrap();
        assert_eq!(pair.momentum, shadow);
        assert_eq!(pair.online, online);

        pair.momentum_update(0.0).unwrap();
        assert_eq!(pair.momentum, online);

        let mut one = MlpEncoder::from_layers(vec![Layer {
            inputs: 1,
            outputs: 1,
            weight: vec![1.0],
            bias: vec![1.0],
        }])
        .unwrap();
        let zero = MlpEncoder::zeros(&[1, 1]).unwrap();
        momentum_update(&mut one, &zero, 0.99).unwrap();
        assert_eq!(one.layers[0].weight[0], 0.99);

        assert!(pair.momentum_update(1.5).is_err());
        let other = MlpEncoder::zeros(&[3, 5, 2]).unwrap();
        assert!(matches!(
            momentum_update(&mut pair.momentum, &other, 0.5),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn final_layer_scaling_preserves_embedding() {
        let mut r = rng::seeded(11);
        let enc = MlpEncoder::random(&[4, 6, 3], &mut r).unwrap();
        let x = [0.3, -1.2, 0.7, 2.0];
        let base = enc.embed(&x).unwrap();
        for k in [0.5, 3.0, 1e3] {
            let mut scaled = enc.clone();
            let last = scaled.layers.last_mut().unwrap();
            last.weight.iter_mut().chain(last.bias.iter_mut()).for_each(|v| *v *= k);
            let e = scaled.embed(&x).unwrap();
            for (a, b) in base.as_slice().iter().zip(e.as_slice()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
