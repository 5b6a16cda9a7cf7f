use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hemodynamic lags, in seconds, applied to stimulus features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelaySpec {
    pub delays_seconds: Vec<f64>,
    pub tr_seconds: f64,
}

impl Default for DelaySpec {
    /// Lags of 0, 4, 6 and 8 s at a 2 s TR.
    fn default() -> Self {
        Self {
            delays_seconds: vec![0.0, 4.0, 6.0, 8.0],
            tr_seconds: 2.0,
        }
    }
}

impl DelaySpec {
    pub fn new(delays_seconds: Vec<f64>, tr_seconds: f64) -> Result<Self> {
        let spec = Self {
            delays_seconds,
            tr_seconds,
        };
        spec.lags()?;
        Ok(spec)
    }

    /// Delays in whole TRs. Each delay must be a nonnegative multiple of the
    /// TR and the list strictly ascending.
    pub fn lags(&self) -> Result<Vec<usize>> {
        if !(self.tr_seconds > 0.0 && self.tr_seconds.is_finite()) {
            return Err(Error::arg(format!("TR must be positive, got {}", self.tr_seconds)));
        }
        if self.delays_seconds.is_empty() {
            return Err(Error::arg("delay list is empty"));
        }
        let mut lags = Vec::with_capacity(self.delays_seconds.len());
        for &d in &self.delays_seconds {
            let k = d / self.tr_seconds;
            let rounded = k.round();
            if !(d >= 0.0) || !d.is_finite() || (k - rounded).abs() > 1e-9 {
                return Err(Error::arg(format!(
                    "delay {d} s is not a nonnegative multiple of TR {} s",
                    self.tr_seconds
                )));
            }
            lags.push(rounded as usize);
        }
        if lags.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::arg("delays must be strictly ascending"));
        }
        Ok(lags)
    }
}

/// Concatenates lagged copies of `x`: row `t`, block `k` holds
/// `x[t - lag_k]`, or zeros when that row does not exist.
pub fn delay_embed(x: &DMatrix<f64>, spec: &DelaySpec) -> Result<DMatrix<f64>> {
    let lags = spec.lags()?;
    let (n, d) = x.shape();
    if let Some(&max) = lags.last() {
        if n <= max {
            return Err(Error::arg(format!("{n} samples cannot cover a lag of {max} TRs")));
        }
    }
    let mut out = DMatrix::zeros(n, d * lags.len());
    for (k, &lag) in lags.iter().enumerate() {
        out.view_mut((lag, k * d), (n - lag, d))
            .copy_from(&x.view((0, 0), (n - lag, d)));
    }
    Ok(out)
}
