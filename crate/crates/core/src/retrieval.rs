//! Cross-modal retrieval evaluation: rank of the ground truth, Recall@k and
//! median rank over a query x candidate similarity matrix.
//!
//! Ties are broken by candidate index: a candidate scoring exactly the same
//! as the truth outranks it only if it comes first. Queries with several
//! ground-truth candidates (several captions per image) use their best rank.
//! For an even number of queries the median rank is the mean of the two
//! middle ranks.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::contrastive::Embedding;
use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    scores: DMatrix<f64>,
    truth: Vec<Vec<usize>>,
}

impl SimilarityMatrix {
    pub fn new(scores: DMatrix<f64>, truth: Vec<Vec<usize>>) -> Result<Self> {
        ensure_finite(scores.as_slice(), "similarity scores")?;
        if truth.len() != scores.nrows() {
            return Err(Error::shape(format!(
                "{} truth entries for {} queries",
                truth.len(),
                scores.nrows()
            )));
        }
        for (q, t) in truth.iter().enumerate() {
            if t.is_empty() {
                return Err(Error::arg(format!("query {q} has no ground truth")));
            }
            if let Some(&c) = t.iter().find(|&&c| c >= scores.ncols()) {
                return Err(Error::arg(format!(
                    "query {q}: truth index {c} out of range for {} candidates",
                    scores.ncols()
                )));
            }
        }
        Ok(Self { scores, truth })
    }

    /// One ground-truth candidate per query.
    pub fn with_single_truth(scores: DMatrix<f64>, truth: &[usize]) -> Result<Self> {
        Self::new(scores, truth.iter().map(|&t| vec![t]).collect())
    }

    /// Cosine (dot product of unit vectors) between every query and candidate.
    pub fn from_embeddings(queries: &[Embedding], candidates: &[Embedding], truth: Vec<Vec<usize>>) -> Result<Self> {
        if let (Some(q), Some(c)) = (queries.first(), candidates.first()) {
            if queries.iter().chain(candidates).any(|e| e.dim() != q.dim()) || c.dim() != q.dim() {
                return Err(Error::shape("embeddings differ in dimension"));
            }
        }
        let scores = DMatrix::from_fn(queries.len(), candidates.len(), |i, j| queries[i].dot(&candidates[j]));
        Self::new(scores, truth)
    }

    pub fn scores(&self) -> &DMatrix<f64> {
        &self.scores
    }

    pub fn truth(&self) -> &[Vec<usize>] {
        &self.truth
    }

    pub fn n_queries(&self) -> usize {
        self.scores.nrows()
    }

    pub fn n_candidates(&self) -> usize {
        self.scores.ncols()
    }

    /// Best (smallest) ground-truth rank of every query.
    pub fn ranks(&self) -> Vec<usize> {
        (0..self.n_queries())
            .map(|q| {
                let row: Vec<f64> = self.scores.row(q).iter().copied().collect();
                self.truth[q]
                    .iter()
                    .map(|&t| rank_of_truth(&row, t))
                    .min()
                    .expect("truth sets are nonempty")
            })
            .collect()
    }

    pub fn recall_at_k(&self, k: usize) -> Result<f64> {
        check_k(k, self.n_candidates())?;
        Ok(recall_from_ranks(&self.ranks(), k))
    }

    pub fn median_rank(&self) -> Result<f64> {
        median_rank_from(&self.ranks())
    }

    /// Recall@{1,5,10} and median rank.
    pub fn report(&self) -> Result<RetrievalReport> {
        check_k(10, self.n_candidates())?;
        let ranks = self.ranks();
        Ok(RetrievalReport {
            n_queries: self.n_queries(),
            n_candidates: self.n_candidates(),
            recall_at_1: recall_from_ranks(&ranks, 1),
            recall_at_5: recall_from_ranks(&ranks, 5),
            recall_at_10: recall_from_ranks(&ranks, 10),
            medr: median_rank_from(&ranks)?,
        })
    }
}

fn check_k(k: usize, n_candidates: usize) -> Result<()> {
    if k == 0 || k > n_candidates {
        return Err(Error::arg(format!("k = {k} outside 1..={n_candidates}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetrievalReport {
    pub n_queries: usize,
    pub n_candidates: usize,
    #[serde(rename = "recall@1")]
    pub recall_at_1: f64,
    #[serde(rename = "recall@5")]
    pub recall_at_5: f64,
    #[serde(rename = "recall@10")]
    pub recall_at_10: f64,
    pub medr: f64,
}

/// 1-based position of `row[truth]` when candidates are sorted by
/// descending score, ties broken by index.
pub fn rank_of_truth(row: &[f64], truth: usize) -> usize {
    let s = row[truth];
    1 + row
        .iter()
        .enumerate()
        .filter(|&(j, &v)| v > s || (v == s && j < truth))
        .count()
}

pub fn recall_from_ranks(ranks: &[usize], k: usize) -> f64 {
    if ranks.is_empty() {
        return 0.0;
    }
    ranks.iter().filter(|&&r| r <= k).count() as f64 / ranks.len() as f64
}

pub fn median_rank_from(ranks: &[usize]) -> Result<f64> {
    if ranks.is_empty() {
        return Err(Error::arg("median rank of zero queries"));
    }
    let mut sorted = ranks.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    Ok(if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    })
}

/// Mean of frame embeddings, renormalized.
pub fn video_embedding(frames: &[Embedding]) -> Result<Embedding> {
    let first = frames.first().ok_or_else(|| Error::arg("video has no frames"))?;
    let dim = first.dim();
    if frames.iter().any(|f| f.dim() != dim) {
        return Err(Error::shape("frame embeddings differ in dimension"));
    }
    let mut mean = vec![0.0; dim];
    for f in frames {
        for (m, v) in mean.iter_mut().zip(f.as_slice()) {
            *m += v;
        }
    }
    let n = frames.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    Embedding::normalize(&mean).map_err(|_| Error::numeric("frame embeddings average to zero"))
}
