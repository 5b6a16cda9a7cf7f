use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::fit::Prediction;
use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn energy(y: &[f64], voxel: usize) -> Result<f64> {
    let yy = dot(y, y);
    if yy > 0.0 {
        Ok(yy)
    } else {
        Err(Error::DegenerateVoxel { voxel })
    }
}

fn same_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::shape(format!("vectors of length {} and {}", a.len(), b.len())));
    }
    Ok(())
}

/// Uncentered coefficient of determination `1 - |y - ŷ|² / |y|²`.
pub fn r2_joint(y: &[f64], y_hat: &[f64]) -> Result<f64> {
    same_len(y, y_hat)?;
    let yy = energy(y, 0)?;
    let sse: f64 = y.iter().zip(y_hat).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(1.0 - sse / yy)
}

/// Share of the joint R² attributed to one band: `ŷ_jᵀ(2y - ŷ) / yᵀy`.
/// Summed over bands this reproduces [`r2_joint`].
pub fn r2_split(y: &[f64], y_hat: &[f64], y_hat_band: &[f64]) -> Result<f64> {
    same_len(y, y_hat)?;
    same_len(y, y_hat_band)?;
    let yy = energy(y, 0)?;
    let num: f64 = y_hat_band
        .iter()
        .zip(y.iter().zip(y_hat))
        .map(|(b, (yi, hi))| b * (2.0 * yi - hi))
        .sum();
    Ok(num / yy)
}

/// Joint and per-band R² for one voxel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VoxelScore {
    pub joint: f64,
    pub split: Vec<f64>,
}

/// Scores every voxel column of `y` against a prediction.
pub fn score_voxels(y: &DMatrix<f64>, pred: &Prediction) -> Result<Vec<VoxelScore>> {
    if y.shape() != pred.joint.shape() {
        return Err(Error::shape(format!(
            "responses {:?} vs prediction {:?}",
            y.shape(),
            pred.joint.shape()
        )));
    }
    (0..y.ncols())
        .map(|v| {
            let yv = y.column(v);
            let yv = yv.as_slice();
            energy(yv, v)?;
            let hv = pred.joint.column(v);
            let joint = r2_joint(yv, hv.as_slice())?;
            let split = pred
                .per_band
                .iter()
                .map(|p| r2_split(yv, hv.as_slice(), p.column(v).as_slice()))
                .collect::<Result<Vec<_>>>()?;
            Ok(VoxelScore { joint, split })
        })
        .collect()
}
