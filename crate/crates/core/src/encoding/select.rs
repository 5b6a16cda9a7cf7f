/// Default explainable-variance cutoff.
pub const EV_THRESHOLD: f64 = 0.1;

/// Voxels whose EV is strictly above `threshold`. Degenerate voxels
/// (`None`) are never selected.
pub fn select_voxels_ev(ev: &[Option<f64>], threshold: f64) -> Vec<bool> {
    ev.iter().map(|e| e.is_some_and(|v| v > threshold)).collect()
}

/// Voxels with strictly positive R².
pub fn select_voxels_positive_r2(r2: &[f64]) -> Vec<bool> {
    r2.iter().map(|&v| v > 0.0).collect()
}
