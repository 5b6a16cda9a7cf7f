use nalgebra::DMatrix;

use crate::error::{ensure_finite, Error, Result};

/// Responses to repeated presentations of the same stimulus sequence:
/// one `T x N_v` matrix per repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeatedResponses {
    repeats: Vec<DMatrix<f64>>,
}

impl RepeatedResponses {
    pub fn new(repeats: Vec<DMatrix<f64>>) -> Result<Self> {
        if repeats.is_empty() {
            return Err(Error::shape("need at least one repeat"));
        }
        let shape = repeats[0].shape();
        for (r, m) in repeats.iter().enumerate() {
            if m.shape() != shape {
                return Err(Error::shape(format!(
                    "repeat {r} has shape {:?}, repeat 0 has {shape:?}",
                    m.shape()
                )));
            }
            ensure_finite(m.as_slice(), &format!("repeat {r}"))?;
        }
        Ok(Self { repeats })
    }

    pub fn n_repeats(&self) -> usize {
        self.repeats.len()
    }

    pub fn n_time(&self) -> usize {
        self.repeats[0].nrows()
    }

    pub fn n_voxels(&self) -> usize {
        self.repeats[0].ncols()
    }

    pub fn repeats(&self) -> &[DMatrix<f64>] {
        &self.repeats
    }

    /// Average over repeats, `T x N_v`.
    pub fn mean(&self) -> DMatrix<f64> {
        let mut acc = self.repeats[0].clone();
        for m in &self.repeats[1..] {
            acc += m;
        }
        acc / self.repeats.len() as f64
    }

    /// Keeps only the voxels where `mask` is true.
    pub fn select_voxels(&self, mask: &[bool]) -> Result<Self> {
        let cols = mask_columns(mask, self.n_voxels())?;
        Ok(Self {
            repeats: self.repeats.iter().map(|m| m.select_columns(&cols)).collect(),
        })
    }
}

pub(crate) fn mask_columns(mask: &[bool], n: usize) -> Result<Vec<usize>> {
    if mask.len() != n {
        return Err(Error::shape(format!("mask of length {} for {n} voxels", mask.len())));
    }
    Ok(mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect())
}

/// Per-voxel explainable variance
/// `1 - mean_t Var_r(y[r, t]) / Var_{r,t}(y)` with unbiased estimators.
///
/// Voxels with zero total variance are degenerate and come back as `None`.
pub fn explainable_variance(resp: &RepeatedResponses) -> Result<Vec<Option<f64>>> {
    let r = resp.n_repeats();
    if r < 2 {
        return Err(Error::arg("explainable variance needs at least two repeats"));
    }
    let t_len = resp.n_time();
    if t_len == 0 {
        return Err(Error::arg("no timepoints"));
    }
    let reps = resp.repeats();
    let rf = r as f64;
    let n_total = (r * t_len) as f64;
    let mut out = Vec::with_capacity(resp.n_voxels());
    for v in 0..resp.n_voxels() {
        // Within-timepoint variance, shifted by the first repeat so identical
        // repeats give exactly zero.
        let mut within = 0.0;
        for t in 0..t_len {
            let anchor = reps[0][(t, v)];
            let mut s = 0.0;
            let mut ss = 0.0;
            for m in reps {
                let d = m[(t, v)] - anchor;
                s += d;
                ss += d * d;
            }
            within += (ss - s * s / rf) / (rf - 1.0);
        }
        within /= t_len as f64;

        let mean = reps.iter().map(|m| m.column(v).sum()).sum::<f64>() / n_total;
        let total = reps
            .iter()
            .flat_map(|m| m.column(v).iter().map(|y| (y - mean) * (y - mean)).collect::<Vec<_>>())
            .sum::<f64>()
            / (n_total - 1.0);

        out.push(if total > 0.0 { Some(1.0 - within / total) } else { None });
    }
    Ok(out)
}
