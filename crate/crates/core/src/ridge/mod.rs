//! Banded ridge regression and split-R² variance partitioning.
//!
//! Features arrive as one or more *bands* (column groups) that share rows.
//! Each band gets its own penalty, so the objective is
//! `||Y - [X_1 .. X_J] [W_1; ..; W_J]||² + sum_j ||λ_j W_j||²`, solved in
//! closed form through the normal equations with a Cholesky factorization.

mod bands;
mod cv;
mod fit;
mod r2;
mod scaling;

pub use bands::{FeatureBands, ResponseMatrix};
pub use cv::{cv_scores, grid_search, logspace, CvPlan, CvScores, GridSearchResult, LambdaGrid};
pub use fit::{fit_banded, fit_banded_per_voxel, objective, BandedRidgeModel, Prediction, RidgeSystem};
pub use r2::{r2_joint, r2_split, score_voxels, VoxelScore};
pub use scaling::{zscore_columns, ColumnScaling, Preprocessing};
