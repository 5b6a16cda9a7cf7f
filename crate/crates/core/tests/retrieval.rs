mod common;

use common::*;
use nalgebra::DMatrix;
use neuroalign::contrastive::Embedding;
use neuroalign::retrieval::{rank_of_truth, video_embedding, SimilarityMatrix};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_unit(r: &mut rand_xoshiro::Xoshiro256PlusPlus, d: usize) -> Embedding {
    let v: Vec<f64> = (0..d).map(|_| gaussian(r)).collect();
    Embedding::normalize(&v).unwrap()
}

/// Scores drawn from a handful of levels so ties are common.
fn coarse_scores(r: &mut rand_xoshiro::Xoshiro256PlusPlus, q: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(q, c, |_, _| r.gen_range(0..6) as f64 * 0.25)
}

#[test]
fn random_row_rank_matches_sort() {
    let mut r = rng(1);
    for _ in 0..50 {
        let row: Vec<f64> = (0..50).map(|_| gaussian(&mut r)).collect();
        let truth = r.gen_range(0..50);
        assert_eq!(rank_of_truth(&row, truth), sorted_rank(&row, truth));
    }
    let flat = [0.5; 5];
    assert_eq!(rank_of_truth(&flat, 0), 1);
    assert_eq!(rank_of_truth(&flat, 4), 5);
}

#[test]
fn recall_counts_and_median_match_oracles() {
    let mut r = rng(2);
    let scores = coarse_scores(&mut r, 50, 50);
    let truth: Vec<usize> = (0..50).map(|_| r.gen_range(0..50)).collect();
    let sim = SimilarityMatrix::with_single_truth(scores.clone(), &truth).unwrap();
    let ranks: Vec<usize> = (0..50)
        .map(|q| sorted_rank(&scores.row(q).iter().copied().collect::<Vec<_>>(), truth[q]))
        .collect();
    for k in [1, 5, 10, 50] {
        let hits = ranks.iter().filter(|&&x| x <= k).count();
        assert_eq!(sim.recall_at_k(k).unwrap(), hits as f64 / 50.0);
    }
    assert_eq!(sim.median_rank().unwrap(), median_by_sort(&ranks));
    assert!(matches!(sim.recall_at_k(51), Err(neuroalign::Error::Argument(_))));
}

#[test]
fn single_query_median() {
    let sim = SimilarityMatrix::with_single_truth(DMatrix::from_row_slice(1, 4, &[0.9, 0.8, 0.1, 0.5]), &[3]).unwrap();
    assert_eq!(sim.median_rank().unwrap(), 3.0);
}

#[test]
fn video_embedding_is_loop_mean_then_normalize() {
    let mut r = rng(3);
    let frames: Vec<Embedding> = (0..16).map(|_| random_unit(&mut r, 12)).collect();
    let mut mean = vec![0.0; 12];
    for f in &frames {
        for (m, v) in mean.iter_mut().zip(f.as_slice()) {
            *m += v / 16.0;
        }
    }
    let norm = mean.iter().map(|v| v * v).sum::<f64>().sqrt();
    let got = video_embedding(&frames).unwrap();
    for (g, m) in got.as_slice().iter().zip(&mean) {
        assert!((g - m / norm).abs() < 1e-12);
    }

    let mut shuffled = frames.clone();
    shuffled.shuffle(&mut r);
    let again = video_embedding(&shuffled).unwrap();
    for (a, b) in got.as_slice().iter().zip(again.as_slice()) {
        assert!((a - b).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_invariants(seed in any::<u64>(), q in 1usize..25, c in 10usize..30) {
        let mut r = rng(seed);
        let scores = coarse_scores(&mut r, q, c);
        let truth: Vec<Vec<usize>> = (0..q)
            .map(|_| (0..r.gen_range(1..4)).map(|_| r.gen_range(0..c)).collect())
            .collect();
        let sim = SimilarityMatrix::new(scores.clone(), truth.clone()).unwrap();

        let mut prev = 0.0;
        for k in 1..=c {
            let rk = sim.recall_at_k(k).unwrap();
            prop_assert!(rk >= prev);
            prev = rk;
        }
        prop_assert_eq!(sim.recall_at_k(c).unwrap(), 1.0);

        // Strictly increasing transform.
        let warped = SimilarityMatrix::new(scores.map(|s| (3.0 * s).exp() - 7.0), truth.clone()).unwrap();
        prop_assert_eq!(warped.ranks(), sim.ranks());

        // Candidate permutation with truth relabelled. Ties are broken by
        // index, so only tie-free rows keep their ranks exactly.
        let fine = DMatrix::from_fn(q, c, |_, _| gaussian(&mut r));
        let base = SimilarityMatrix::new(fine.clone(), truth.clone()).unwrap();
        let mut perm: Vec<usize> = (0..c).collect();
        perm.shuffle(&mut r);
        let mut moved = DMatrix::zeros(q, c);
        for i in 0..q {
            for j in 0..c {
                moved[(i, perm[j])] = fine[(i, j)];
            }
        }
        let moved_truth: Vec<Vec<usize>> = truth.iter().map(|t| t.iter().map(|&j| perm[j]).collect()).collect();
        let permuted = SimilarityMatrix::new(moved, moved_truth).unwrap();
        prop_assert_eq!(permuted.ranks(), base.ranks());
        prop_assert_eq!(permuted.median_rank().unwrap(), base.median_rank().unwrap());
    }
}
