//! Bottleneck and Wasserstein distances between diagrams.
//!
//! Both distances solve a matching on the diagonal-augmented bipartite graph:
//! the left side is `A` plus one diagonal slot per point of `B`, the right
//! side is `B` plus one diagonal slot per point of `A`. A point matched to a
//! diagonal slot pays its L∞ distance to the diagonal, `(death - birth)/2`,
//! and two diagonal slots match for free. Essential classes are matched
//! among themselves by sorted birth, or the distance is infinite.

use super::PersistenceDiagram;
use crate::{Error, Result};

/// Largest number of finite points per diagram accepted by the exact solvers.
pub const MAX_EXACT_POINTS: usize = 64;

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: (f64, f64)) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Square cost matrix of the augmented matching problem.
fn augmented_costs(a: &[(f64, f64)], b: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let (n, m) = (a.len(), b.len());
    let size = n + m;
    let mut cost = vec![vec![0.0; size]; size];
    for (i, row) in cost.iter_mut().enumerate() {
        for (j, c) in row.iter_mut().enumerate() {
            *c = match (i < n, j < m) {
                (true, true) => linf(a[i], b[j]),
                (true, false) => to_diagonal(a[i]),
                (false, true) => to_diagonal(b[j]),
                (false, false) => 0.0,
            };
        }
    }
    cost
}

fn check_sizes(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> Result<()> {
    for (name, d) in [("first", a), ("second", b)] {
        let n = d.finite(dim).len();
        if n > MAX_EXACT_POINTS {
            return Err(Error::Guard(format!(
                "{name} diagram has {n} points in dimension {dim}; exact matching is limited to {MAX_EXACT_POINTS}"
            )));
        }
    }
    Ok(())
}

/// Pairwise gaps between sorted essential births, or `None` when the counts differ.
fn essential_gaps(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> Option<Vec<f64>> {
    let (x, y) = (a.infinite(dim), b.infinite(dim));
    (x.len() == y.len()).then(|| x.iter().zip(y).map(|(u, v)| (u - v).abs()).collect())
}

pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> Result<f64> {
    check_sizes(a, b, dim)?;
    let Some(gaps) = essential_gaps(a, b, dim) else {
        return Ok(f64::INFINITY);
    };
    let essential = gaps.into_iter().fold(0.0, f64::max);
    let cost = augmented_costs(a.finite(dim), b.finite(dim));
    if cost.is_empty() {
        return Ok(essential);
    }

    let mut candidates: Vec<f64> = cost.iter().flatten().copied().collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // the largest candidate always admits a perfect matching
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(&cost, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo].max(essential))
}

/// Kuhn's augmenting-path search on edges with cost at most `bound`.
fn has_perfect_matching(cost: &[Vec<f64>], bound: f64) -> bool {
    let n = cost.len();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    fn augment(u: usize, cost: &[Vec<f64>], bound: f64, seen: &mut [bool], match_right: &mut [Option<usize>]) -> bool {
        for v in 0..cost.len() {
            if cost[u][v] <= bound && !seen[v] {
                seen[v] = true;
                if match_right[v].is_none_or(|w| augment(w, cost, bound, seen, match_right)) {
                    match_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    (0..n).all(|u| {
        let mut seen = vec![false; n];
        augment(u, cost, bound, &mut seen, &mut match_right)
    })
}

/// `W_p` with the L∞ ground metric.
pub fn wasserstein(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize, p: f64) -> Result<f64> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::Domain(format!("Wasserstein order must be a finite p >= 1, got {p}")));
    }
    check_sizes(a, b, dim)?;
    let Some(gaps) = essential_gaps(a, b, dim) else {
        return Ok(f64::INFINITY);
    };
    let essential: f64 = gaps.iter().map(|g| g.powf(p)).sum();
    let cost: Vec<Vec<f64>> = augmented_costs(a.finite(dim), b.finite(dim))
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.powf(p)).collect())
        .collect();
    let total = if cost.is_empty() { 0.0 } else { min_cost_assignment(&cost) };
    Ok((total + essential).powf(1.0 / p))
}

/// Minimum-cost perfect assignment of a square matrix (Hungarian method with
/// row/column potentials, O(n³)).
pub(crate) fn min_cost_assignment(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    // 1-based arrays; column 0 is a virtual start
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| cost[row_of[j] - 1][j - 1]).sum()
}
