use std::collections::BTreeMap;

use nalgebra::{Cholesky, DMatrix, Dyn};

use super::bands::{check_rows, FeatureBands};
use super::scaling::Preprocessing;
use crate::error::{ensure_finite, Error, Result};

/// Fitted banded ridge weights.
///
/// `weights[j]` is `D_j x N_v`. Every voxel carries its own penalty tuple;
/// a plain [`fit_banded`] call gives all voxels the same one.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedRidgeModel {
    pub weights: Vec<DMatrix<f64>>,
    pub voxel_lambdas: Vec<Vec<f64>>,
    pub preprocessing: Preprocessing,
}

/// Joint prediction and its per-band parts; `joint` is the sum of `per_band`.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub joint: DMatrix<f64>,
    pub per_band: Vec<DMatrix<f64>>,
}

/// Cached `XᵀX` and `XᵀY` for one design, reusable across penalty tuples.
#[derive(Debug, Clone)]
pub struct RidgeSystem {
    gram: DMatrix<f64>,
    cross: DMatrix<f64>,
    dims: Vec<usize>,
}

impl RidgeSystem {
    pub fn new(bands: &FeatureBands, y: &DMatrix<f64>) -> Result<Self> {
        check_rows(bands, y)?;
        ensure_finite(y.as_slice(), "responses")?;
        let x = bands.stacked();
        let xt = x.transpose();
        Ok(Self {
            gram: &xt * &x,
            cross: &xt * y,
            dims: bands.dims(),
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `XᵀX + Λ` with `λ_j²` on band `j`'s diagonal block.
    pub fn penalized_gram(&self, lambdas: &[f64]) -> Result<DMatrix<f64>> {
        check_lambdas(lambdas, self.dims.len())?;
        let mut g = self.gram.clone();
        let mut d = 0;
        for (&width, &lam) in self.dims.iter().zip(lambdas) {
            for _ in 0..width {
                g[(d, d)] += lam * lam;
                d += 1;
            }
        }
        Ok(g)
    }

    fn factor(&self, lambdas: &[f64]) -> Result<Cholesky<f64, Dyn>> {
        let g = self.penalized_gram(lambdas)?;
        if let Some(c) = Cholesky::new(g.clone()) {
            return Ok(c);
        }
        let n = g.nrows();
        let jitter = 1e-10 * g.trace() / n as f64;
        let mut g = g;
        for i in 0..n {
            g[(i, i)] += jitter;
        }
        Cholesky::new(g).ok_or_else(|| Error::Singular(format!("penalized Gram matrix with lambdas {lambdas:?}")))
    }

    /// Stacked weights (`D_total x N_v`) for all voxels.
    pub fn solve(&self, lambdas: &[f64]) -> Result<DMatrix<f64>> {
        Ok(self.factor(lambdas)?.solve(&self.cross))
    }

    /// Stacked weights for a subset of voxel columns.
    pub fn solve_columns(&self, lambdas: &[f64], cols: &[usize]) -> Result<DMatrix<f64>> {
        let rhs = self.cross.select_columns(cols);
        Ok(self.factor(lambdas)?.solve(&rhs))
    }
}

pub(crate) fn check_lambdas(lambdas: &[f64], n_bands: usize) -> Result<()> {
    if lambdas.len() != n_bands {
        return Err(Error::shape(format!("{} penalties for {n_bands} bands", lambdas.len())));
    }
    if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return Err(Error::arg(format!("penalties must be finite and positive, got {l}")));
    }
    Ok(())
}

fn split_bands(stacked: &DMatrix<f64>, dims: &[usize]) -> Vec<DMatrix<f64>> {
    let mut out = Vec::with_capacity(dims.len());
    let mut row = 0;
    for &d in dims {
        out.push(stacked.rows(row, d).into_owned());
        row += d;
    }
    out
}

/// Closed-form banded ridge with one penalty tuple for every voxel.
pub fn fit_banded(bands: &FeatureBands, y: &DMatrix<f64>, lambdas: &[f64]) -> Result<BandedRidgeModel> {
    check_lambdas(lambdas, bands.n_bands())?;
    let system = RidgeSystem::new(bands, y)?;
    let w = system.solve(lambdas)?;
    Ok(BandedRidgeModel {
        weights: split_bands(&w, system.dims()),
        voxel_lambdas: vec![lambdas.to_vec(); y.ncols()],
        preprocessing: Preprocessing::None,
    })
}

/// Banded ridge where voxel `v` uses `tuples[v]`. Voxels sharing a tuple
/// share one factorization.
pub fn fit_banded_per_voxel(bands: &FeatureBands, y: &DMatrix<f64>, tuples: &[Vec<f64>]) -> Result<BandedRidgeModel> {
    if tuples.len() != y.ncols() {
        return Err(Error::shape(format!(
            "{} penalty tuples for {} voxels",
            tuples.len(),
            y.ncols()
        )));
    }
    for t in tuples {
        check_lambdas(t, bands.n_bands())?;
    }
    let system = RidgeSystem::new(bands, y)?;
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (v, t) in tuples.iter().enumerate() {
        groups
            .entry(t.iter().map(|l| l.to_bits()).collect())
            .or_default()
            .push(v);
    }
    let mut w = DMatrix::zeros(bands.total_dim(), y.ncols());
    for cols in groups.values() {
        let part = system.solve_columns(&tuples[cols[0]], cols)?;
        for (k, &v) in cols.iter().enumerate() {
            w.set_column(v, &part.column(k));
        }
    }
    Ok(BandedRidgeModel {
        weights: split_bands(&w, system.dims()),
        voxel_lambdas: tuples.to_vec(),
        preprocessing: Preprocessing::None,
    })
}

impl BandedRidgeModel {
    pub fn n_bands(&self) -> usize {
        self.weights.len()
    }

    pub fn n_voxels(&self) -> usize {
        self.weights[0].ncols()
    }

    /// Weights of all bands stacked vertically.
    pub fn stacked_weights(&self) -> DMatrix<f64> {
        let rows: usize = self.weights.iter().map(|w| w.nrows()).sum();
        let mut out = DMatrix::zeros(rows, self.n_voxels());
        let mut r = 0;
        for w in &self.weights {
            out.rows_mut(r, w.nrows()).copy_from(w);
            r += w.nrows();
        }
        out
    }

    pub fn predict(&self, bands: &FeatureBands) -> Result<Prediction> {
        if bands.n_bands() != self.n_bands() {
            return Err(Error::shape(format!(
                "model has {} bands, input has {}",
                self.n_bands(),
                bands.n_bands()
            )));
        }
        let mut per_band = Vec::with_capacity(self.n_bands());
        for (j, (x, w)) in bands.bands().iter().zip(&self.weights).enumerate() {
            if x.ncols() != w.nrows() {
                return Err(Error::shape(format!(
                    "band {j}: model expects {} columns, input has {}",
                    w.nrows(),
                    x.ncols()
                )));
            }
            per_band.push(x * w);
        }
        let mut joint = per_band[0].clone();
        for p in &per_band[1..] {
            joint += p;
        }
        Ok(Prediction { joint, per_band })
    }
}

/// Banded ridge objective at the given weights.
pub fn objective(bands: &FeatureBands, y: &DMatrix<f64>, weights: &[DMatrix<f64>], lambdas: &[f64]) -> f64 {
    let mut resid = y.clone();
    for (x, w) in bands.bands().iter().zip(weights) {
        resid -= x * w;
    }
    let penalty: f64 = weights.iter().zip(lambdas).map(|(w, l)| l * l * w.norm_squared()).sum();
    resid.norm_squared() + penalty
}
