use std::path::Path;

use serde::Serialize;

use super::config::{PathBase, TrainConfig};
use super::{write_json, Provenance};
use crate::contrastive::TrainerState;
use crate::error::{Error, Result};
use crate::io::{fmt_f64, read_checkpoint, read_paired, write_bytes, write_checkpoint};

#[derive(Debug, Serialize)]
struct TrainReport {
    #[serde(flatten)]
    provenance: Provenance,
    resumed_from_step: u64,
    steps_run: u64,
    final_step: u64,
    final_loss: Option<f64>,
}

/// Writes `checkpoint.json`, `loss.csv` (one row per step run) and
/// `train_report.json`. With `resume`, training continues from the
/// checkpoint's step counter and batch schedule.
pub fn cmd_train(cfg: &TrainConfig, seed: Option<u64>, base: &PathBase, out: &Path) -> Result<()> {
    let mut cfg = cfg.clone();
    let (samples, (image_dim, text_dim)) = read_paired(&base.resolve(&cfg.data))?;

    let mut state = match &cfg.resume {
        Some(path) => {
            let state = read_checkpoint(&base.resolve(path))?;
            if seed.is_some_and(|s| s != state.config.seed) {
                return Err(Error::Config(
                    "--seed differs from the resumed checkpoint's seed".into(),
                ));
            }
            if cfg.contrastive.as_ref().is_some_and(|c| *c != state.config) {
                return Err(Error::Config(
                    "`contrastive` differs from the resumed checkpoint's config".into(),
                ));
            }
            if (state.image_dim(), state.text_dim()) != (image_dim, text_dim) {
                return Err(Error::shape(format!(
                    "{}: data dims ({image_dim}, {text_dim}) differ from checkpoint dims ({}, {})",
                    cfg.data,
                    state.image_dim(),
                    state.text_dim()
                )));
            }
            state
        }
        None => {
            let c = cfg
                .contrastive
                .as_mut()
                .ok_or_else(|| Error::Config("a fresh run needs a `contrastive` block".into()))?;
            if let Some(s) = seed {
                c.seed = s;
            }
            c.validate().map_err(|e| Error::Config(e.to_string()))?;
            TrainerState::new(c.clone(), image_dim, text_dim)?
        }
    };

    let start = state.step;
    let mut csv = String::from("step,loss_total,loss_i2t,loss_t2i\n");
    let mut last = None;
    for _ in 0..cfg.steps {
        let r = state.train_on(&samples)?;
        csv.push_str(&format!(
            "{},{},{},{}\n",
            r.step,
            fmt_f64(r.loss.total),
            fmt_f64(r.loss.i2t),
            fmt_f64(r.loss.t2i)
        ));
        last = Some(r.loss.total);
    }

    write_checkpoint(&out.join("checkpoint.json"), &state)?;
    write_bytes(&out.join("loss.csv"), csv.as_bytes())?;
    write_json(
        &out.join("train_report.json"),
        &TrainReport {
            provenance: Provenance::of(&cfg),
            resumed_from_step: start,
            steps_run: cfg.steps,
            final_step: state.step,
            final_loss: last,
        },
    )
}
