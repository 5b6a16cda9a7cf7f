use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::delay::{delay_embed, DelaySpec};
use crate::error::{Error, Result};
use crate::ridge::{grid_search, score_voxels, zscore_columns, ColumnScaling, CvPlan, FeatureBands, Preprocessing};

/// Layer-wise features for one network.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFeatures {
    pub name: String,
    pub layers: BTreeMap<usize, DMatrix<f64>>,
}

/// Features from every compared network over the same stimuli. Each model
/// becomes one band of the joint encoding model.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerFeatureSet {
    models: Vec<ModelFeatures>,
    n_rows: usize,
}

impl LayerFeatureSet {
    pub fn new(models: Vec<ModelFeatures>) -> Result<Self> {
        let first = models
            .first()
            .and_then(|m| m.layers.values().next())
            .ok_or_else(|| Error::shape("feature set has no models or no layers"))?;
        let n_rows = first.nrows();
        for m in &models {
            for (layer, x) in &m.layers {
                if x.nrows() != n_rows {
                    return Err(Error::shape(format!(
                        "model {} layer {layer} has {} rows, expected {n_rows}",
                        m.name,
                        x.nrows()
                    )));
                }
            }
        }
        Ok(Self { models, n_rows })
    }

    pub fn models(&self) -> &[ModelFeatures] {
        &self.models
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    /// Layers every model provides, ascending.
    pub fn common_layers(&self) -> Vec<usize> {
        let mut layers: Vec<usize> = self.models[0].layers.keys().copied().collect();
        layers.retain(|l| self.models.iter().all(|m| m.layers.contains_key(l)));
        layers
    }

    fn layer(&self, model: usize, layer: usize) -> Result<&DMatrix<f64>> {
        let m = &self.models[model];
        m.layers
            .get(&layer)
            .ok_or_else(|| Error::arg(format!("model {} has no layer {layer}", m.name)))
    }
}

/// Features and (repeat-averaged) responses for one data split.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingSplit {
    pub features: LayerFeatureSet,
    pub responses: DMatrix<f64>,
}

impl EncodingSplit {
    pub fn new(features: LayerFeatureSet, responses: DMatrix<f64>) -> Result<Self> {
        if features.n_rows() != responses.nrows() {
            return Err(Error::shape(format!(
                "features have {} rows, responses have {}",
                features.n_rows(),
                responses.nrows()
            )));
        }
        Ok(Self { features, responses })
    }
}

/// Results for one layer. `split[m][v]` is model `m`'s share of voxel `v`'s
/// held-out R².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayerRecord {
    pub layer: usize,
    pub joint: Vec<f64>,
    pub split: Vec<Vec<f64>>,
    pub lambdas: Vec<Vec<f64>>,
    pub cv_r2: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub models: Vec<String>,
    pub layers: Vec<LayerRecord>,
}

/// Delay-embeds one layer of every model and z-scores the result, giving
/// the bands of the joint model for that split.
pub fn layer_bands(
    features: &LayerFeatureSet,
    layer: usize,
    delays: &DelaySpec,
) -> Result<(FeatureBands, Vec<ColumnScaling>)> {
    let mut bands = Vec::with_capacity(features.models.len());
    let mut scalings = Vec::with_capacity(features.models.len());
    for m in 0..features.models.len() {
        let lagged = delay_embed(features.layer(m, layer)?, delays)?;
        let (z, s) = zscore_columns(&lagged);
        bands.push(z);
        scalings.push(s);
    }
    Ok((FeatureBands::new(bands)?, scalings))
}

/// Fits a joint banded-ridge model per layer on `train` (penalties chosen
/// by `plan`) and scores it on `test`. Features and responses are z-scored
/// within each split.
pub fn layer_sweep(
    train: &EncodingSplit,
    test: &EncodingSplit,
    layers: &[usize],
    delays: &DelaySpec,
    plan: &CvPlan,
) -> Result<SweepReport> {
    if train.features.models.len() != test.features.models.len() {
        return Err(Error::shape("train and test splits hold different model counts"));
    }
    if train.responses.ncols() != test.responses.ncols() {
        return Err(Error::shape("train and test splits hold different voxel counts"));
    }
    let (y_train, train_scaling) = zscore_columns(&train.responses);
    let (y_test, _) = zscore_columns(&test.responses);

    let mut records = Vec::with_capacity(layers.len());
    for &layer in layers {
        let (train_bands, feature_scaling) = layer_bands(&train.features, layer, delays)?;
        let (test_bands, _) = layer_bands(&test.features, layer, delays)?;
        let mut search = grid_search(&train_bands, &y_train, plan)?;
        search.model.preprocessing = Preprocessing::ZScored {
            features: feature_scaling,
            responses: train_scaling.clone(),
        };
        let pred = search.model.predict(&test_bands)?;
        let scores = score_voxels(&y_test, &pred)?;
        let n_models = train_bands.n_bands();
        records.push(LayerRecord {
            layer,
            joint: scores.iter().map(|s| s.joint).collect(),
            split: (0..n_models)
                .map(|m| scores.iter().map(|s| s.split[m]).collect())
                .collect(),
            lambdas: search.model.voxel_lambdas.clone(),
            cv_r2: search.best_cv_r2.clone(),
        });
    }
    Ok(SweepReport {
        models: train.features.models.iter().map(|m| m.name.clone()).collect(),
        layers: records,
    })
}
