use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Per-column mean and scale removed before fitting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnScaling {
    pub means: Vec<f64>,
    pub scales: Vec<f64>,
}

impl ColumnScaling {
    pub fn apply(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = m.clone();
        for (c, mut col) in out.column_iter_mut().enumerate() {
            let (mu, s) = (self.means[c], self.scales[c]);
            col.iter_mut().for_each(|v| *v = (*v - mu) / s);
        }
        out
    }
}

/// What was done to the data a model was fitted on. Models never carry an
/// intercept; z-scoring is what removes the means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preprocessing {
    None,
    ZScored {
        features: Vec<ColumnScaling>,
        responses: ColumnScaling,
    },
}

/// Z-scores each column (population standard deviation). Constant columns
/// keep scale 1 and become all zero.
pub fn zscore_columns(m: &DMatrix<f64>) -> (DMatrix<f64>, ColumnScaling) {
    let n = m.nrows().max(1) as f64;
    let mut means = Vec::with_capacity(m.ncols());
    let mut scales = Vec::with_capacity(m.ncols());
    for col in m.column_iter() {
        let mu = col.iter().sum::<f64>() / n;
        let var = col.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / n;
        let sd = var.sqrt();
        means.push(mu);
        scales.push(if sd > 0.0 { sd } else { 1.0 });
    }
    let scaling = ColumnScaling { means, scales };
    (scaling.apply(m), scaling)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zscore_gives_zero_mean_unit_variance() {
        let m = DMatrix::from_row_slice(4, 2, &[1.0, 5.0, 2.0, 5.0, 3.0, 5.0, 6.0, 5.0]);
        let (z, s) = zscore_columns(&m);
        let c0 = z.column(0);
        assert!(c0.sum().abs() < 1e-12);
        assert!((c0.norm_squared() / 4.0 - 1.0).abs() < 1e-12);
        assert_eq!(s.means, vec![3.0, 5.0]);
        assert_eq!(s.scales[1], 1.0);
        assert!(z.column(1).iter().all(|&v| v == 0.0));
    }
}
