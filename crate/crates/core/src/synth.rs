//! Seeded synthetic stand-ins for paired image/text corpora and for voxel
//! responses with known per-band contributions.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::contrastive::PairedSample;
use crate::encoding::RepeatedResponses;
use crate::error::{Error, Result};
use crate::ridge::FeatureBands;
use crate::rng::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mixing {
    /// Gaussian draw, then orthonormalized.
    #[default]
    Random,
    /// Identity map; needs modality dim equal to the latent dim.
    Identity,
}

/// Shared-latent paired data: `v = A_v z + e_v`, `l = A_l z + e_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairedDataSpec {
    pub n_pairs: usize,
    pub latent_dim: usize,
    pub image_dim: usize,
    pub text_dim: usize,
    #[serde(default)]
    pub mixing: Mixing,
    pub image_noise: f64,
    pub text_noise: f64,
    pub seed: u64,
}

impl PairedDataSpec {
    pub fn desk(n_pairs: usize, seed: u64) -> Self {
        Self {
            n_pairs,
            latent_dim: 8,
            image_dim: 24,
            text_dim: 20,
            mixing: Mixing::Random,
            image_noise: 0.1,
            text_noise: 0.1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.latent_dim == 0 || self.image_dim == 0 || self.text_dim == 0 {
            return Err(Error::arg("dimensions must be at least 1"));
        }
        if !(self.image_noise >= 0.0 && self.text_noise >= 0.0) {
            return Err(Error::arg("noise levels must be nonnegative"));
        }
        if self.mixing == Mixing::Identity && (self.image_dim != self.latent_dim || self.text_dim != self.latent_dim) {
            return Err(Error::arg("identity mixing needs image_dim = text_dim = latent_dim"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairedData {
    pub samples: Vec<PairedSample>,
    /// `image_dim x latent_dim`.
    pub image_mixing: DMatrix<f64>,
    /// `text_dim x latent_dim`.
    pub text_mixing: DMatrix<f64>,
}

const MIX_STREAM: u64 = 11;
const SAMPLE_STREAM: u64 = 12;

pub fn gen_paired(spec: &PairedDataSpec) -> Result<PairedData> {
    spec.validate()?;
    let mut mix_rng = rng::stream(spec.seed, MIX_STREAM);
    let (image_mixing, text_mixing) = match spec.mixing {
        Mixing::Identity => (
            DMatrix::identity(spec.latent_dim, spec.latent_dim),
            DMatrix::identity(spec.latent_dim, spec.latent_dim),
        ),
        Mixing::Random => (
            orthonormal(spec.image_dim, spec.latent_dim, &mut mix_rng),
            orthonormal(spec.text_dim, spec.latent_dim, &mut mix_rng),
        ),
    };

    let mut r = rng::stream(spec.seed, SAMPLE_STREAM);
    let mut samples = Vec::with_capacity(spec.n_pairs);
    for _ in 0..spec.n_pairs {
        let z = nalgebra::DVector::from_vec(rng::normal_vec(&mut r, spec.latent_dim));
        let mut image: Vec<f64> = (&image_mixing * &z).iter().copied().collect();
        let mut text: Vec<f64> = (&text_mixing * &z).iter().copied().collect();
        if spec.image_noise > 0.0 {
            image
                .iter_mut()
                .for_each(|v| *v += spec.image_noise * rng::normal(&mut r));
        }
        if spec.text_noise > 0.0 {
            text.iter_mut()
                .for_each(|v| *v += spec.text_noise * rng::normal(&mut r));
        }
        samples.push(PairedSample { image, text });
    }
    Ok(PairedData {
        samples,
        image_mixing,
        text_mixing,
    })
}

/// Gaussian `rows x cols` matrix with orthonormal columns (or rows, when
/// `rows < cols`), by modified Gram-Schmidt.
fn orthonormal(rows: usize, cols: usize, r: &mut Rng) -> DMatrix<f64> {
    let tall = rows >= cols;
    let (n, k) = if tall { (rows, cols) } else { (cols, rows) };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(k);
    while basis.len() < k {
        let mut v = rng::normal_vec(r, n);
        for b in &basis {
            let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            basis.push(v);
        }
    }
    if tall {
        DMatrix::from_fn(rows, cols, |i, j| basis[j][i])
    } else {
        DMatrix::from_fn(rows, cols, |i, j| basis[i][j])
    }
}

/// Voxel responses built from known band weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoxelSynthSpec {
    pub n_samples: usize,
    pub band_dims: Vec<usize>,
    pub n_voxels: usize,
    /// Signal variance of band 1 relative to each other band.
    pub contribution_ratio: f64,
    pub noise_sigma: f64,
    pub n_repeats: usize,
    pub seed: u64,
}

impl VoxelSynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.band_dims.is_empty() || self.band_dims.contains(&0) {
            return Err(Error::arg("need at least one band, each with dimension >= 1"));
        }
        if self.n_samples < 2 {
            return Err(Error::arg("need at least two samples"));
        }
        if !(self.contribution_ratio > 0.0 && self.contribution_ratio.is_finite()) {
            return Err(Error::arg("contribution ratio must be positive"));
        }
        if !(self.noise_sigma >= 0.0) {
            return Err(Error::arg("noise_sigma must be nonnegative"));
        }
        if self.n_repeats == 0 {
            return Err(Error::arg("need at least one repeat"));
        }
        Ok(())
    }
}

/// Weights actually used (after variance matching) and the realized SNR.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelTruth {
    pub weights: Vec<DMatrix<f64>>,
    pub contribution_ratio: f64,
    /// Per voxel, signal variance over noise variance.
    pub snr: Vec<f64>,
    /// Noise-free responses, `n_samples x n_voxels`.
    pub signal: DMatrix<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VoxelData {
    pub bands: FeatureBands,
    pub responses: RepeatedResponses,
    pub truth: VoxelTruth,
}

const FEATURE_STREAM: u64 = 21;
const WEIGHT_STREAM: u64 = 22;
const NOISE_STREAM: u64 = 23;

fn sample_var(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
}

/// `Y_r = X_1 W_1 + .. + X_J W_J + sigma * E_r`, with every voxel's band
/// signals rescaled so band 1 carries `c` times the variance of each other
/// band and the total signal variance is 1. Noise is redrawn per repeat.
pub fn gen_voxels(spec: &VoxelSynthSpec) -> Result<VoxelData> {
    spec.validate()?;
    let n = spec.n_samples;
    let mut fr = rng::stream(spec.seed, FEATURE_STREAM);
    let bands: Vec<DMatrix<f64>> = spec
        .band_dims
        .iter()
        .map(|&d| DMatrix::from_fn(n, d, |_, _| rng::normal(&mut fr)))
        .collect();

    let mut wr = rng::stream(spec.seed, WEIGHT_STREAM);
    let mut weights: Vec<DMatrix<f64>> = spec
        .band_dims
        .iter()
        .map(|&d| DMatrix::from_fn(d, spec.n_voxels, |_, _| rng::normal(&mut wr)))
        .collect();

    let shares: Vec<f64> = {
        let raw: Vec<f64> = (0..bands.len())
            .map(|j| if j == 0 { spec.contribution_ratio } else { 1.0 })
            .collect();
        let total: f64 = raw.iter().sum();
        raw.iter().map(|v| v / total).collect()
    };

    let mut signal = DMatrix::zeros(n, spec.n_voxels);
    for (j, (x, w)) in bands.iter().zip(weights.iter_mut()).enumerate() {
        let part = x * &*w;
        for v in 0..spec.n_voxels {
            let var = sample_var(part.column(v).as_slice());
            let scale = if var > 0.0 { (shares[j] / var).sqrt() } else { 0.0 };
            w.column_mut(v).scale_mut(scale);
            for t in 0..n {
                signal[(t, v)] += part[(t, v)] * scale;
            }
        }
    }

    let mut nr = rng::stream(spec.seed, NOISE_STREAM);
    let repeats: Vec<DMatrix<f64>> = (0..spec.n_repeats)
        .map(|_| signal.map(|s| s + spec.noise_sigma * rng::normal(&mut nr)))
        .collect();

    let noise_var = spec.noise_sigma * spec.noise_sigma;
    let snr = (0..spec.n_voxels)
        .map(|v| sample_var(signal.column(v).as_slice()) / noise_var)
        .collect();

    Ok(VoxelData {
        bands: FeatureBands::new(bands)?,
        responses: RepeatedResponses::new(repeats)?,
        truth: VoxelTruth {
            weights,
            contribution_ratio: spec.contribution_ratio,
            snr,
            signal,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_mixing_without_noise_pairs_exactly() {
        let spec = PairedDataSpec {
            n_pairs: 25,
            latent_dim: 5,
            image_dim: 5,
            text_dim: 5,
            mixing: Mixing::Identity,
            image_noise: 0.0,
            text_noise: 0.0,
            seed: 4,
        };
        let data = gen_paired(&spec).unwrap();
        assert!(data.samples.iter().all(|s| s.image == s.text));
    }

    #[test]
    fn paired_is_deterministic() {
        let spec = PairedDataSpec::desk(50, 9);
        assert_eq!(gen_paired(&spec).unwrap(), gen_paired(&spec).unwrap());
        let other = PairedDataSpec::desk(50, 10);
        assert_ne!(gen_paired(&spec).unwrap().samples, gen_paired(&other).unwrap().samples);
    }

    #[test]
    fn mixing_is_orthonormal() {
        let data = gen_paired(&PairedDataSpec::desk(1, 2)).unwrap();
        let gram = data.image_mixing.transpose() * &data.image_mixing;
        assert!((gram - DMatrix::identity(8, 8)).amax() < 1e-12);
        let mut r = rng::seeded(1);
        let wide = orthonormal(3, 7, &mut r);
        assert!((&wide * wide.transpose() - DMatrix::identity(3, 3)).amax() < 1e-12);
    }

    #[test]
    fn invalid_specs() {
        let mut s = PairedDataSpec::desk(5, 1);
        s.mixing = Mixing::Identity;
        assert!(gen_paired(&s).is_err());
        let v = VoxelSynthSpec {
            n_samples: 10,
            band_dims: vec![2, 2],
            n_voxels: 3,
            contribution_ratio: 0.0,
            noise_sigma: 1.0,
            n_repeats: 2,
            seed: 0,
        };
        assert!(gen_voxels(&v).is_err());
    }

    #[test]
    fn voxel_variance_shares() {
        let spec = VoxelSynthSpec {
            n_samples: 200,
            band_dims: vec![4, 3],
            n_voxels: 5,
            contribution_ratio: 4.0,
            noise_sigma: 0.0,
            n_repeats: 3,
            seed: 8,
        };
        let d = gen_voxels(&spec).unwrap();
        for v in 0..5 {
            let p1 = d.bands.band(0) * d.truth.weights[0].column(v);
            let p2 = d.bands.band(1) * d.truth.weights[1].column(v);
            let (v1, v2) = (sample_var(p1.as_slice()), sample_var(p2.as_slice()));
            assert!((v1 / v2 - 4.0).abs() < 1e-10);
            assert!((v1 + v2 - 1.0).abs() < 0.15);
        }
        let reps = d.responses.repeats();
        assert!(reps.iter().all(|m| m == &reps[0]));
    }
}
