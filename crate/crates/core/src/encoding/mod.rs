//! Voxelwise encoding evaluation: hemodynamic delays, voxel selection,
//! layer-by-layer joint models, ROI summaries and paired significance tests.

mod delay;
mod ev;
mod roi;
mod select;
mod sweep;
mod ttest;

pub use delay::{delay_embed, DelaySpec};
pub use ev::{explainable_variance, RepeatedResponses};
pub use roi::{roi_aggregate, GroupStat, RoiAtlas, RoiLevel};
pub use select::{select_voxels_ev, select_voxels_positive_r2, EV_THRESHOLD};
pub use sweep::{layer_bands, layer_sweep, EncodingSplit, LayerFeatureSet, LayerRecord, ModelFeatures, SweepReport};
pub use ttest::{ln_gamma, paired_ttest, regularized_incomplete_beta, student_t_two_tailed, TTest};
