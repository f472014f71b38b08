//! Two-sample permutation test on persistence landscapes.
//!
//! The statistic is the L2 distance between the two group-mean landscapes,
//! summed over the first `levels` levels. Pooled landscapes are reduced once
//! to their Gram matrix of inner products, so each shuffle costs a quadratic
//! form rather than new landscape arithmetic.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::landscape::{inner_product, linear_combination, lp_norm, mean_landscape_exact, Norm, PersistenceLandscape, DEFAULT_MAX_LEVELS};
use crate::rng::{rng, sub_seed};
use crate::{Error, Result};

pub const MIN_PERMUTATIONS: usize = 99;

/// Landscapes of one group of subjects for one homology dimension and band.
#[derive(Clone, Debug)]
pub struct GroupSample {
    landscapes: Vec<PersistenceLandscape>,
    homology_dim: usize,
    band: String,
}

impl GroupSample {
    pub fn new(landscapes: Vec<PersistenceLandscape>, band: impl Into<String>) -> Result<Self> {
        let first = landscapes
            .first()
            .ok_or_else(|| Error::Data("a group needs at least one landscape".into()))?;
        let homology_dim = first.homology_dim();
        let grid = first.grid().copied();
        for (i, l) in landscapes.iter().enumerate() {
            if l.homology_dim() != homology_dim {
                return Err(Error::Dimension(format!(
                    "landscape {i} has homology dimension {}, expected {homology_dim}",
                    l.homology_dim()
                )));
            }
            if l.grid().copied() != grid {
                return Err(Error::Dimension(format!("landscape {i} is on a different grid")));
            }
        }
        Ok(Self {
            landscapes,
            homology_dim,
            band: band.into(),
        })
    }

    pub fn landscapes(&self) -> &[PersistenceLandscape] {
        &self.landscapes
    }

    pub fn len(&self) -> usize {
        self.landscapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.landscapes.is_empty()
    }

    pub fn homology_dim(&self) -> usize {
        self.homology_dim
    }

    pub fn band(&self) -> &str {
        &self.band
    }
}

fn check_compatible(a: &GroupSample, b: &GroupSample) -> Result<()> {
    if a.homology_dim != b.homology_dim {
        return Err(Error::Dimension(format!(
            "groups have homology dimensions {} and {}",
            a.homology_dim, b.homology_dim
        )));
    }
    if a.landscapes[0].grid() != b.landscapes[0].grid() {
        return Err(Error::Dimension("groups are on different grids".into()));
    }
    Ok(())
}

/// `‖mean(g1) − mean(g2)‖₂`, from the landscapes directly.
pub fn test_statistic(g1: &GroupSample, g2: &GroupSample, levels: usize) -> Result<f64> {
    check_compatible(g1, g2)?;
    let m1 = mean_landscape_exact(&g1.landscapes)?;
    let m2 = mean_landscape_exact(&g2.landscapes)?;
    Ok(lp_norm(&linear_combination(&[(1.0, &m1), (-1.0, &m2)])?, Norm::L2, levels))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PermutationOptions {
    pub permutations: usize,
    pub alpha: f64,
    pub seed: u64,
    pub levels: usize,
    /// Number of simultaneous tests to correct for; `alpha` is divided by it.
    pub bonferroni: Option<usize>,
}

impl Default for PermutationOptions {
    fn default() -> Self {
        Self {
            permutations: 999,
            alpha: 0.05,
            seed: 0,
            levels: DEFAULT_MAX_LEVELS,
            bonferroni: None,
        }
    }
}

impl PermutationOptions {
    pub fn validate(&self) -> Result<()> {
        if self.permutations < MIN_PERMUTATIONS {
            return Err(Error::Config(format!(
                "at least {MIN_PERMUTATIONS} permutations are required, got {}",
                self.permutations
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        if self.bonferroni == Some(0) {
            return Err(Error::Config("Bonferroni test count must be positive".into()));
        }
        Ok(())
    }

    pub fn effective_alpha(&self) -> f64 {
        self.alpha / self.bonferroni.unwrap_or(1) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutationTestReport {
    pub band: String,
    pub homology_dim: usize,
    pub group_sizes: [usize; 2],
    pub levels: usize,
    pub observed: f64,
    pub p_value: f64,
    /// Empirical `(1 − α)`-quantile of the null sample, at the corrected α.
    pub threshold: f64,
    pub alpha: f64,
    pub effective_alpha: f64,
    pub reject: bool,
    pub permutations: usize,
    pub seed: u64,
    pub null_sample: Vec<f64>,
}

/// `(1 + #{null ≥ observed}) / (B + 1)`.
pub fn p_value(observed: f64, null_sample: &[f64]) -> f64 {
    let exceed = null_sample.iter().filter(|&&t| t >= observed).count();
    (1 + exceed) as f64 / (null_sample.len() + 1) as f64
}

/// The `⌈(1 − α)B⌉`-th smallest null value.
pub fn empirical_quantile(null_sample: &[f64], alpha: f64) -> f64 {
    let mut sorted = null_sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let b = sorted.len();
    let rank = (((1.0 - alpha) * b as f64).ceil() as usize).clamp(1, b);
    sorted[rank - 1]
}

fn landscape_cmp(a: &PersistenceLandscape, b: &PersistenceLandscape) -> Ordering {
    let flat = |l: &PersistenceLandscape| -> Vec<f64> {
        l.levels()
            .iter()
            .flat_map(|lv| lv.breakpoints().flat_map(|(t, v)| [t, v]))
            .collect()
    };
    a.n_levels().cmp(&b.n_levels()).then_with(|| {
        let (x, y) = (flat(a), flat(b));
        x.len().cmp(&y.len()).then_with(|| {
            x.iter()
                .zip(&y)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    })
}

fn quadratic_form(gram: &[Vec<f64>], weights: &[f64]) -> f64 {
    let mut total = 0.0;
    for (row, wi) in gram.iter().zip(weights) {
        let inner: f64 = row.iter().zip(weights).map(|(g, wj)| g * wj).sum();
        total += wi * inner;
    }
    total.max(0.0).sqrt()
}

/// Permutation test of equal mean landscapes. Replicate `r` shuffles with
/// sub-seed `r` of `options.seed`, so results do not depend on scheduling,
/// and swapping the two groups leaves the report unchanged.
pub fn permutation_test(g1: &GroupSample, g2: &GroupSample, options: &PermutationOptions) -> Result<PermutationTestReport> {
    options.validate()?;
    check_compatible(g1, g2)?;
    let (n1, n2) = (g1.len(), g2.len());
    if n1 + n2 < 4 {
        return Err(Error::Data(format!(
            "permutation test needs at least 4 subjects in total, got {}",
            n1 + n2
        )));
    }

    // pooled landscapes in a canonical order, tagged with their group
    let mut pooled: Vec<(&PersistenceLandscape, bool)> = g1
        .landscapes
        .iter()
        .map(|l| (l, true))
        .chain(g2.landscapes.iter().map(|l| (l, false)))
        .collect();
    pooled.sort_by(|a, b| landscape_cmp(a.0, b.0));
    let n = pooled.len();

    let levels = options.levels;
    let gram: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| inner_product(pooled[i].0, pooled[j].0, levels)).collect())
        .collect();
    // symmetrise so the quadratic form is exactly sign-invariant
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i <= j { gram[i][j] } else { gram[j][i] }).collect())
        .collect();

    let observed_weights: Vec<f64> = pooled
        .iter()
        .map(|&(_, first)| if first { 1.0 / n1 as f64 } else { -1.0 / n2 as f64 })
        .collect();
    let observed = quadratic_form(&gram, &observed_weights);

    let n_small = n1.min(n2);
    let (w_small, w_large) = (1.0 / n_small as f64, -1.0 / (n - n_small) as f64);
    let null_sample: Vec<f64> = (0..options.permutations)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng(sub_seed(options.seed, r as u64));
            let mut idx: Vec<usize> = (0..n).collect();
            idx.partial_shuffle(&mut rng, n_small);
            let mut weights = vec![w_large; n];
            for &i in &idx[..n_small] {
                weights[i] = w_small;
            }
            quadratic_form(&gram, &weights)
        })
        .collect();

    let p = p_value(observed, &null_sample);
    let effective_alpha = options.effective_alpha();
    Ok(PermutationTestReport {
        band: g1.band.clone(),
        homology_dim: g1.homology_dim,
        group_sizes: [n1, n2],
        levels,
        observed,
        p_value: p,
        threshold: empirical_quantile(&null_sample, effective_alpha),
        alpha: options.alpha,
        effective_alpha,
        reject: p <= effective_alpha,
        permutations: options.permutations,
        seed: options.seed,
        null_sample,
    })
}
