//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random symmetric zero-diagonal matrix. With `ties` the entries are small
/// integers, so many simplices share a value.
pub fn random_distances(rng: &mut ChaCha8Rng, p: usize, ties: bool) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; p]; p];
    for i in 0..p {
        for j in i + 1..p {
            let v = if ties {
                rng.random_range(1..=4) as f64
            } else {
                rng.random_range(0.01..1.0)
            };
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

/// Rank over GF(2) of bit-vector rows.
fn gf2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] & mask != 0 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers `β_0 … β_{max_dim-1}` of the clique complex of the graph
/// `{d_ij <= eps}`, by enumerating vertex subsets as bitmasks and ranking
/// boundary matrices. Needs `p <= 8`.
pub fn betti_at(d: &[Vec<f64>], eps: f64, max_dim: usize) -> Vec<usize> {
    let p = d.len();
    assert!(p <= 8);
    let is_clique = |mask: u32| (0..p).all(|i| (0..p).all(|j| mask & (1 << i) == 0 || mask & (1 << j) == 0 || i == j || d[i][j] <= eps));
    // simplices per dimension, as vertex bitmasks
    let mut by_dim: Vec<Vec<u32>> = vec![Vec::new(); max_dim + 1];
    for mask in 1u32..(1 << p) {
        let k = mask.count_ones() as usize - 1;
        if k <= max_dim && is_clique(mask) {
            by_dim[k].push(mask);
        }
    }
    // rank of the boundary map from dimension k to k-1
    let boundary_rank = |k: usize| -> usize {
        if k == 0 || k > max_dim {
            return 0;
        }
        let faces = &by_dim[k - 1];
        let rows = by_dim[k]
            .iter()
            .map(|&s| {
                let mut row = 0u128;
                for (fi, &f) in faces.iter().enumerate() {
                    if f & s == f && (s ^ f).count_ones() == 1 {
                        row |= 1 << fi;
                    }
                }
                row
            })
            .collect();
        gf2_rank(rows)
    };
    (0..max_dim)
        .map(|k| by_dim[k].len() - boundary_rank(k) - boundary_rank(k + 1))
        .collect()
}

/// Optimal matching cost by enumerating every partial matching of `a` into `b`.
/// `None` gives the bottleneck value, `Some(p)` gives `W_p`.
pub fn exhaustive_matching(a: &[(f64, f64)], b: &[(f64, f64)], p: Option<f64>) -> f64 {
    fn diag(x: (f64, f64)) -> f64 {
        (x.1 - x.0) / 2.0
    }
    fn linf(x: (f64, f64), y: (f64, f64)) -> f64 {
        (x.0 - y.0).abs().max((x.1 - y.1).abs())
    }
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, costs: &mut Vec<f64>, best: &mut f64, p: Option<f64>) {
        if i == a.len() {
            let mut all = costs.clone();
            for (j, &y) in b.iter().enumerate() {
                if !used[j] {
                    all.push(diag(y));
                }
            }
            let value = match p {
                None => all.iter().fold(0.0f64, |m, &c| m.max(c)),
                Some(p) => all.iter().map(|c| c.powf(p)).sum::<f64>().powf(1.0 / p),
            };
            *best = best.min(value);
            return;
        }
        costs.push(diag(a[i]));
        go(i + 1, a, b, used, costs, best, p);
        costs.pop();
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                costs.push(linf(a[i], b[j]));
                go(i + 1, a, b, used, costs, best, p);
                costs.pop();
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], &mut Vec::new(), &mut best, p);
    best
}

pub fn random_pairs(rng: &mut ChaCha8Rng, max_points: usize) -> Vec<(f64, f64)> {
    let n = rng.random_range(0..=max_points);
    (0..n)
        .map(|_| {
            let b: f64 = rng.random_range(0.0..1.0);
            (b, b + rng.random_range(0.01..1.0))
        })
        .collect()
}

/// The k-th largest tent value at `t` (k zero-based), straight from the definition.
pub fn kth_tent(pairs: &[(f64, f64)], k: usize, t: f64) -> f64 {
    let mut values: Vec<f64> = pairs.iter().map(|&(b, d)| (t - b).min(d - t).max(0.0)).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values.get(k).copied().unwrap_or(0.0)
}

/// Number of connected runs of `{i : y_i <= a}`.
pub fn sublevel_components(y: &[f64], a: f64) -> usize {
    let mut count = 0;
    let mut inside = false;
    for &v in y {
        let now = v <= a;
        if now && !inside {
            count += 1;
        }
        inside = now;
    }
    count
}

/// Strict local minima, endpoints included.
pub fn local_minima(y: &[f64]) -> usize {
    let n = y.len();
    (0..n)
        .filter(|&i| (i == 0 || y[i] < y[i - 1]) && (i + 1 == n || y[i] < y[i + 1]))
        .count()
}

/// Random series with all values distinct.
pub fn random_series(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}
