use std::path::Path;

use nalgebra::DMatrix;
use serde::Serialize;

use super::config::{GenConfig, MatrixFormat, VoxelGen};
use super::{create_dir, write_json, Provenance};
use crate::error::{Error, Result};
use crate::io::{write_binary, write_matrix_binary, write_matrix_csv, write_paired_csv, Tensor};
use crate::synth::{gen_paired, gen_voxels, VoxelSynthSpec};

/// Layout under `out`:
/// - `pairs.csv`, `mixing_image.*`, `mixing_text.*` for paired data;
/// - `train/` and `test/` with `band_<j>.*` and responses, plus
///   `truth/weights_band_<j>.*` and `truth/truth.json` for voxel data;
/// - `spec.json`, the effective config.
pub fn cmd_gen(cfg: &GenConfig, seed: Option<u64>, out: &Path) -> Result<()> {
    let mut cfg = cfg.clone();
    if let Some(s) = seed {
        if let Some(p) = cfg.paired.as_mut() {
            p.seed = s;
        }
        if let Some(v) = cfg.voxels.as_mut() {
            v.spec.seed = s;
        }
    }
    if cfg.paired.is_none() && cfg.voxels.is_none() {
        return Err(Error::Config("gen config names neither `paired` nor `voxels`".into()));
    }
    create_dir(out)?;

    if let Some(spec) = &cfg.paired {
        let data = gen_paired(spec)?;
        write_paired_csv(&out.join("pairs.csv"), &data.samples, spec.image_dim, spec.text_dim)?;
        write_matrix(out, "mixing_image", &data.image_mixing, cfg.format)?;
        write_matrix(out, "mixing_text", &data.text_mixing, cfg.format)?;
    }
    if let Some(v) = &cfg.voxels {
        write_voxels(v, cfg.format, out)?;
    }

    #[derive(Serialize)]
    struct Sidecar<'a> {
        #[serde(flatten)]
        provenance: Provenance,
        config: &'a GenConfig,
    }
    write_json(
        &out.join("spec.json"),
        &Sidecar {
            provenance: Provenance::of(&cfg),
            config: &cfg,
        },
    )
}

fn write_matrix(dir: &Path, stem: &str, m: &DMatrix<f64>, format: MatrixFormat) -> Result<()> {
    let path = dir.join(format!("{stem}.{}", format.extension()));
    match format {
        MatrixFormat::Csv => write_matrix_csv(&path, m, None),
        MatrixFormat::Binary => write_matrix_binary(&path, m),
    }
}

fn write_repeats(dir: &Path, repeats: &[DMatrix<f64>], format: MatrixFormat) -> Result<()> {
    match format {
        MatrixFormat::Csv => {
            for (r, m) in repeats.iter().enumerate() {
                write_matrix(dir, &format!("responses_r{r}"), m, format)?;
            }
            Ok(())
        }
        MatrixFormat::Binary => {
            let (t, n) = repeats.first().map_or((0, 0), |m| (m.nrows(), m.ncols()));
            let data = repeats.iter().flat_map(|m| Tensor::from_matrix(m).data).collect();
            write_binary(
                &dir.join("responses.bin"),
                &Tensor::new(vec![repeats.len(), t, n], data)?,
            )
        }
    }
}

fn write_voxels(v: &VoxelGen, format: MatrixFormat, out: &Path) -> Result<()> {
    let n_train = v.spec.n_samples;
    let spec = VoxelSynthSpec {
        n_samples: n_train + v.test_samples,
        ..v.spec.clone()
    };
    let data = gen_voxels(&spec)?;
    let n_total = spec.n_samples;

    for (name, rows) in [("train", 0..n_train), ("test", n_train..n_total)] {
        let dir = out.join(name);
        create_dir(&dir)?;
        let idx: Vec<usize> = rows.collect();
        for (j, band) in data.bands.bands().iter().enumerate() {
            write_matrix(&dir, &format!("band_{j}"), &band.select_rows(&idx), format)?;
        }
        let reps: Vec<DMatrix<f64>> = data.responses.repeats().iter().map(|m| m.select_rows(&idx)).collect();
        write_repeats(&dir, &reps, format)?;
    }

    let dir = out.join("truth");
    create_dir(&dir)?;
    for (j, w) in data.truth.weights.iter().enumerate() {
        write_matrix(&dir, &format!("weights_band_{j}"), w, format)?;
    }
    write_json(
        &dir.join("truth.json"),
        &serde_json::json!({
            "contribution_ratio": data.truth.contribution_ratio,
            "snr": data.truth.snr,
        }),
    )
}
