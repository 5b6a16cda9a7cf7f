use nalgebra::DMatrix;

use crate::error::{ensure_finite, Error, Result};

/// Ordered feature groups sharing the same rows (stimuli).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureBands {
    bands: Vec<DMatrix<f64>>,
}

impl FeatureBands {
    pub fn new(bands: Vec<DMatrix<f64>>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::shape("need at least one feature band"));
        }
        let rows = bands[0].nrows();
        for (j, b) in bands.iter().enumerate() {
            if b.nrows() != rows {
                return Err(Error::shape(format!(
                    "band {j} has {} rows, band 0 has {rows}",
                    b.nrows()
                )));
            }
            if b.ncols() == 0 {
                return Err(Error::shape(format!("band {j} has no columns")));
            }
            ensure_finite(b.as_slice(), &format!("band {j}"))?;
        }
        Ok(Self { bands })
    }

    pub fn n_rows(&self) -> usize {
        self.bands[0].nrows()
    }

    pub fn n_bands(&self) -> usize {
        self.bands.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bands.iter().map(|b| b.ncols()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.bands.iter().map(|b| b.ncols()).sum()
    }

    pub fn band(&self, j: usize) -> &DMatrix<f64> {
        &self.bands[j]
    }

    pub fn bands(&self) -> &[DMatrix<f64>] {
        &self.bands
    }

    pub fn into_bands(self) -> Vec<DMatrix<f64>> {
        self.bands
    }

    /// `[X_1 .. X_J]` as one matrix.
    pub fn stacked(&self) -> DMatrix<f64> {
        let mut x = DMatrix::zeros(self.n_rows(), self.total_dim());
        let mut col = 0;
        for b in &self.bands {
            x.columns_mut(col, b.ncols()).copy_from(b);
            col += b.ncols();
        }
        x
    }

    /// Column offset of each band inside [`Self::stacked`].
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.bands.len());
        let mut acc = 0;
        for b in &self.bands {
            out.push(acc);
            acc += b.ncols();
        }
        out
    }

    /// Rows selected by index, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            bands: self.bands.iter().map(|b| b.select_rows(rows)).collect(),
        }
    }
}

/// Voxel responses, `N_s x N_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResponseMatrix(DMatrix<f64>);

impl ResponseMatrix {
    pub fn new(y: DMatrix<f64>) -> Result<Self> {
        ensure_finite(y.as_slice(), "responses")?;
        Ok(Self(y))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn n_voxels(&self) -> usize {
        self.0.ncols()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

impl std::ops::Deref for ResponseMatrix {
    type Target = DMatrix<f64>;

    fn deref(&self) -> &DMatrix<f64> {
        &self.0
    }
}

pub(crate) fn check_rows(bands: &FeatureBands, y: &DMatrix<f64>) -> Result<()> {
    if bands.n_rows() != y.nrows() {
        return Err(Error::shape(format!(
            "features have {} rows, responses have {}",
            bands.n_rows(),
            y.nrows()
        )));
    }
    Ok(())
}
