//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's solvers or metrics.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub mod ttest_cases;

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

pub fn gaussian(r: &mut Xoshiro256PlusPlus) -> f64 {
    // Box-Muller, kept separate from the library's sampler.
    let u1: f64 = r.gen_range(f64::EPSILON..1.0);
    let u2: f64 = r.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn random_matrix(r: &mut Xoshiro256PlusPlus, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(r))
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let m = b.ncols();
    let mut aug: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)]).chain((0..m).map(|j| b[(i, j)])).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| aug[x][col].abs().partial_cmp(&aug[y][col].abs()).unwrap())
            .unwrap();
        aug.swap(col, pivot);
        for row in col + 1..n {
            let f = aug[row][col] / aug[col][col];
            if f != 0.0 {
                for k in col..n + m {
                    aug[row][k] -= f * aug[col][k];
                }
            }
        }
    }
    let mut x = DMatrix::zeros(n, m);
    for j in 0..m {
        for i in (0..n).rev() {
            let mut s = aug[i][n + j];
            for k in i + 1..n {
                s -= aug[i][k] * x[(k, j)];
            }
            x[(i, j)] = s / aug[i][i];
        }
    }
    x
}

/// Banded ridge by explicit normal equations: penalty `lambda_j²` on the
/// diagonal entries of band `j`.
pub fn banded_ridge_oracle(x: &DMatrix<f64>, dims: &[usize], y: &DMatrix<f64>, lambdas: &[f64]) -> DMatrix<f64> {
    let p = x.ncols();
    let mut a = DMatrix::zeros(p, p);
    for i in 0..p {
        for j in 0..p {
            a[(i, j)] = (0..x.nrows()).map(|t| x[(t, i)] * x[(t, j)]).sum();
        }
    }
    let mut start = 0;
    for (d, l) in dims.iter().zip(lambdas) {
        for k in start..start + d {
            a[(k, k)] += l * l;
        }
        start += d;
    }
    let mut b = DMatrix::zeros(p, y.ncols());
    for i in 0..p {
        for v in 0..y.ncols() {
            b[(i, v)] = (0..x.nrows()).map(|t| x[(t, i)] * y[(t, v)]).sum();
        }
    }
    gauss_solve(&a, &b)
}

/// Ordinary ridge through the SVD: `V diag(s / (s² + alpha)) Uᵀ Y`.
pub fn ridge_svd(x: &DMatrix<f64>, y: &DMatrix<f64>, alpha: f64) -> DMatrix<f64> {
    let svd = x.clone().svd(true, true);
    let u = svd.u.unwrap();
    let vt = svd.v_t.unwrap();
    let shrink = DMatrix::from_diagonal(&svd.singular_values.map(|s| s / (s * s + alpha)));
    vt.transpose() * shrink * u.transpose() * y
}

/// Rank by explicit sort: descending score, then ascending index.
pub fn sorted_rank(row: &[f64], truth: usize) -> usize {
    let mut order: Vec<usize> = (0..row.len()).collect();
    order.sort_by(|&a, &b| row[b].partial_cmp(&row[a]).unwrap().then(a.cmp(&b)));
    order.iter().position(|&j| j == truth).unwrap() + 1
}

pub fn median_by_sort(values: &[usize]) -> f64 {
    let mut v = values.to_vec();
    v.sort();
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2] as f64
    } else {
        (v[n / 2 - 1] as f64 + v[n / 2] as f64) / 2.0
    }
}

pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
