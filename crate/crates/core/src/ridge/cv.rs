use std::cmp::Ordering;
use std::ops::Range;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::bands::{check_rows, FeatureBands};
use super::fit::{check_lambdas, fit_banded_per_voxel, BandedRidgeModel, RidgeSystem};
use crate::error::{Error, Result};

/// Candidate penalty tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaGrid {
    /// One list reused for every band; the Cartesian product is searched.
    Shared(Vec<f64>),
    /// A list per band; the Cartesian product is searched.
    PerBand(Vec<Vec<f64>>),
    /// Explicit tuples.
    Tuples(Vec<Vec<f64>>),
}

impl Default for LambdaGrid {
    /// Ten log-spaced values from 1e-2 to 1e4.
    fn default() -> Self {
        LambdaGrid::Shared(logspace(-2.0, 4.0, 10))
    }
}

pub fn logspace(lo_exp: f64, hi_exp: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![10f64.powf(lo_exp)],
        _ => (0..n)
            .map(|i| 10f64.powf(lo_exp + (hi_exp - lo_exp) * i as f64 / (n - 1) as f64))
            .collect(),
    }
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

impl LambdaGrid {
    /// All tuples for `n_bands` bands, sorted lexicographically and unique.
    pub fn tuples(&self, n_bands: usize) -> Result<Vec<Vec<f64>>> {
        let mut out = match self {
            LambdaGrid::Shared(values) => cartesian(&vec![values.clone(); n_bands]),
            LambdaGrid::PerBand(lists) => {
                if lists.len() != n_bands {
                    return Err(Error::shape(format!(
                        "grid has {} band lists for {n_bands} bands",
                        lists.len()
                    )));
                }
                cartesian(lists)
            }
            LambdaGrid::Tuples(t) => t.clone(),
        };
        if out.is_empty() {
            return Err(Error::arg("penalty grid is empty"));
        }
        for t in &out {
            check_lambdas(t, n_bands)?;
        }
        out.sort_by(|a, b| lex(a, b));
        out.dedup();
        Ok(out)
    }
}

fn cartesian(lists: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for list in lists {
        out = out
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |&v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Contiguous held-out folds plus the penalty grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvPlan {
    pub folds: Vec<Range<usize>>,
    pub grid: LambdaGrid,
}

impl CvPlan {
    /// `n_folds` contiguous blocks whose sizes differ by at most one. Rows
    /// are never shuffled.
    pub fn contiguous(n_rows: usize, n_folds: usize, grid: LambdaGrid) -> Result<Self> {
        if n_folds == 0 {
            return Err(Error::arg("need at least one fold"));
        }
        if n_rows < n_folds {
            return Err(Error::arg(format!("{n_rows} rows cannot fill {n_folds} folds")));
        }
        let base = n_rows / n_folds;
        let extra = n_rows % n_folds;
        let mut folds = Vec::with_capacity(n_folds);
        let mut start = 0;
        for k in 0..n_folds {
            let len = base + usize::from(k < extra);
            folds.push(start..start + len);
            start += len;
        }
        Ok(Self { folds, grid })
    }

    /// Folds must be nonempty, in order, and tile `0..n_rows` exactly.
    pub fn validate(&self, n_rows: usize) -> Result<()> {
        let mut next = 0;
        for (k, f) in self.folds.iter().enumerate() {
            if f.start != next || f.end <= f.start {
                return Err(Error::arg(format!("fold {k} ({f:?}) breaks the contiguous tiling")));
            }
            next = f.end;
        }
        if next != n_rows {
            return Err(Error::arg(format!("folds cover {next} rows, data has {n_rows}")));
        }
        Ok(())
    }
}

/// Held-out joint R² for every fold, tuple and voxel.
#[derive(Debug, Clone, PartialEq)]
pub struct CvScores {
    pub tuples: Vec<Vec<f64>>,
    /// One `n_tuples x n_voxels` matrix per fold.
    pub fold_r2: Vec<DMatrix<f64>>,
}

impl CvScores {
    /// Mean over folds, `n_tuples x n_voxels`.
    pub fn mean(&self) -> DMatrix<f64> {
        let mut acc = self.fold_r2[0].clone();
        for f in &self.fold_r2[1..] {
            acc += f;
        }
        acc / self.fold_r2.len() as f64
    }
}

pub fn cv_scores(bands: &FeatureBands, y: &DMatrix<f64>, plan: &CvPlan) -> Result<CvScores> {
    check_rows(bands, y)?;
    if plan.folds.len() < 2 {
        return Err(Error::arg("cross-validation needs at least two folds"));
    }
    if bands.n_rows() < plan.folds.len() {
        return Err(Error::arg(format!(
            "{} rows cannot fill {} folds",
            bands.n_rows(),
            plan.folds.len()
        )));
    }
    plan.validate(bands.n_rows())?;
    let tuples = plan.grid.tuples(bands.n_bands())?;

    let mut fold_r2 = Vec::with_capacity(plan.folds.len());
    for fold in &plan.folds {
        let train: Vec<usize> = (0..bands.n_rows()).filter(|r| !fold.contains(r)).collect();
        let test: Vec<usize> = fold.clone().collect();
        let train_bands = bands.select_rows(&train);
        let test_x = bands.select_rows(&test).stacked();
        let y_train = y.select_rows(&train);
        let y_test = y.select_rows(&test);
        let energy: Vec<f64> = y_test.column_iter().map(|c| c.norm_squared()).collect();
        if let Some(v) = energy.iter().position(|&e| e <= 0.0) {
            return Err(Error::DegenerateVoxel { voxel: v });
        }

        let system = RidgeSystem::new(&train_bands, &y_train)?;
        let mut scores = DMatrix::zeros(tuples.len(), y.ncols());
        for (t, lambdas) in tuples.iter().enumerate() {
            let w = system.solve(lambdas)?;
            let resid = &y_test - &test_x * w;
            for v in 0..y.ncols() {
                scores[(t, v)] = 1.0 - resid.column(v).norm_squared() / energy[v];
            }
        }
        fold_r2.push(scores);
    }
    Ok(CvScores { tuples, fold_r2 })
}

#[derive(Debug, Clone)]
pub struct GridSearchResult {
    pub scores: CvScores,
    /// Index into `scores.tuples` chosen for each voxel.
    pub best: Vec<usize>,
    /// Mean held-out R² of the chosen tuple.
    pub best_cv_r2: Vec<f64>,
    /// Refit on all rows with each voxel's chosen tuple.
    pub model: BandedRidgeModel,
}

impl GridSearchResult {
    pub fn best_tuple(&self, voxel: usize) -> &[f64] {
        &self.scores.tuples[self.best[voxel]]
    }
}

/// Per-voxel penalty selection by mean held-out R², then a full refit.
/// Ties go to the lexicographically smallest tuple.
pub fn grid_search(bands: &FeatureBands, y: &DMatrix<f64>, plan: &CvPlan) -> Result<GridSearchResult> {
    let scores = cv_scores(bands, y, plan)?;
    let mean = scores.mean();
    let mut best = Vec::with_capacity(y.ncols());
    let mut best_cv_r2 = Vec::with_capacity(y.ncols());
    for v in 0..y.ncols() {
        let col = mean.column(v);
        let mut arg = 0;
        for t in 1..col.len() {
            if col[t] > col[arg] {
                arg = t;
            }
        }
        best.push(arg);
        best_cv_r2.push(col[arg]);
    }
    let chosen: Vec<Vec<f64>> = best.iter().map(|&t| scores.tuples[t].clone()).collect();
    let model = fit_banded_per_voxel(bands, y, &chosen)?;
    Ok(GridSearchResult {
        scores,
        best,
        best_cv_r2,
        model,
    })
}
