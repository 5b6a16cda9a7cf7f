use std::path::Path;

use nalgebra::DMatrix;
use serde::Serialize;

use super::config::{Direction, PathBase, RetrieveConfig, RetrieveInput};
use super::{write_json, Provenance};
use crate::contrastive::Embedding;
use crate::error::{Error, Result};
use crate::io::{read_checkpoint, read_matrix, read_paired, read_truth};
use crate::retrieval::{RetrievalReport, SimilarityMatrix};

const CONVENTIONS: [&str; 3] = [
    "equal scores are ordered by candidate index",
    "queries with several true candidates use the best rank",
    "for an even number of queries medr is the mean of the two middle ranks",
];

#[derive(Debug, Serialize)]
struct MetricsReport {
    #[serde(flatten)]
    provenance: Provenance,
    conventions: [&'static str; 3],
    #[serde(flatten)]
    metrics: RetrievalReport,
}

fn rows_to_embeddings(m: &DMatrix<f64>, what: &str) -> Result<Vec<Embedding>> {
    (0..m.nrows())
        .map(|i| {
            let row: Vec<f64> = m.row(i).iter().copied().collect();
            Embedding::normalize(&row).map_err(|e| Error::numeric(format!("{what} row {i}: {e}")))
        })
        .collect()
}

/// Writes `metrics.json` with Recall@{1,5,10} and the median rank. Draws
/// no random numbers, so `--seed` has no effect.
pub fn cmd_retrieve(cfg: &RetrieveConfig, _seed: Option<u64>, base: &PathBase, out: &Path) -> Result<()> {
    let truth_for = |n_queries: usize| -> Result<Vec<Vec<usize>>> {
        match &cfg.truth {
            Some(p) => read_truth(&base.resolve(p), n_queries),
            None => Err(Error::Config("`truth` is required unless input is a checkpoint".into())),
        }
    };
    let sim = match &cfg.input {
        RetrieveInput::Scores { path } => {
            let s = read_matrix(&base.resolve(path))?;
            let truth = truth_for(s.nrows())?;
            SimilarityMatrix::new(s, truth)?
        }
        RetrieveInput::Embeddings { queries, candidates } => {
            let q = rows_to_embeddings(&read_matrix(&base.resolve(queries))?, queries)?;
            let c = rows_to_embeddings(&read_matrix(&base.resolve(candidates))?, candidates)?;
            let truth = truth_for(q.len())?;
            SimilarityMatrix::from_embeddings(&q, &c, truth)?
        }
        RetrieveInput::Checkpoint {
            checkpoint,
            data,
            direction,
        } => {
            let state = read_checkpoint(&base.resolve(checkpoint))?;
            let (samples, _) = read_paired(&base.resolve(data))?;
            let images: Vec<Vec<f64>> = samples.iter().map(|s| s.image.clone()).collect();
            let texts: Vec<Vec<f64>> = samples.iter().map(|s| s.text.clone()).collect();
            let (vi, vt) = (state.embed_images(&images)?, state.embed_texts(&texts)?);
            let (q, c) = match direction {
                Direction::ImageToText => (vi, vt),
                Direction::TextToImage => (vt, vi),
            };
            let truth = match &cfg.truth {
                Some(_) => truth_for(q.len())?,
                None => (0..q.len()).map(|i| vec![i]).collect(),
            };
            SimilarityMatrix::from_embeddings(&q, &c, truth)?
        }
    };
    write_json(
        &out.join("metrics.json"),
        &MetricsReport {
            provenance: Provenance::of(cfg),
            conventions: CONVENTIONS,
            metrics: sim.report()?,
        },
    )
}
