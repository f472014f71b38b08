mod common;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use spectral_tda::embed::{cloud_distances, delay_embed, smooth, sublevel_persistence, SmoothedSeries};
use spectral_tda::homology::{betti_curve, bottleneck, persistence, rips_filtration};

#[test]
fn bar_count_equals_local_minima() {
    let mut rng = common::rng(31);
    for _ in 0..100 {
        let y = common::random_series(&mut rng, 200);
        let pd = sublevel_persistence(&SmoothedSeries::raw(y.clone())).unwrap();
        assert_eq!(pd.finite(0).len() + 1, common::local_minima(&y));
        assert!(pd.finite(0).iter().all(|(b, d)| d > b));
    }
}

#[test]
fn component_counts_match_at_every_level() {
    let mut rng = common::rng(32);
    for _ in 0..30 {
        let y = common::random_series(&mut rng, 60);
        let curve = betti_curve(&sublevel_persistence(&SmoothedSeries::raw(y.clone())).unwrap());
        let mut levels = y.clone();
        levels.sort_by(f64::total_cmp);
        for a in levels {
            assert_eq!(curve.at(0, a), common::sublevel_components(&y, a));
        }
    }
}

#[test]
fn sup_norm_perturbation_bounds_the_bottleneck_shift() {
    let mut rng = common::rng(33);
    let delta = 0.01;
    for _ in 0..50 {
        let y = common::random_series(&mut rng, 100);
        let z: Vec<f64> = y.iter().map(|v| v + rng.random_range(-delta..=delta)).collect();
        let a = sublevel_persistence(&SmoothedSeries::raw(y)).unwrap();
        let b = sublevel_persistence(&SmoothedSeries::raw(z)).unwrap();
        assert!(bottleneck(&a, &b, 0).unwrap() <= delta + 1e-12);
    }
}

#[test]
fn periodic_signal_embeds_on_a_circle() {
    let y: Vec<f64> = (1..=512).map(|t| (2.0 * std::f64::consts::PI * t as f64 / 64.0).sin()).collect();
    let cloud = delay_embed(&y, 2, 16).unwrap();
    assert_eq!(cloud.len(), 512 - 16);
    let sub = cloud.subsample(5);
    let pd = persistence(&rips_filtration(&cloud_distances(&sub), 2).unwrap());
    let bars = pd.persistences(1);
    let second = bars.get(1).copied().unwrap_or(0.0);
    assert!(!bars.is_empty() && bars[0] >= 5.0 * second, "{bars:?}");
}

#[test]
fn constant_series_has_no_loops() {
    let cloud = delay_embed(&[2.5; 40], 2, 1).unwrap();
    let pd = persistence(&rips_filtration(&cloud_distances(&cloud), 2).unwrap());
    assert!(pd.finite(1).is_empty());
    assert!(pd.finite(0).is_empty());
}

#[test]
fn distances_satisfy_the_triangle_inequality() {
    let mut rng = common::rng(34);
    let cloud = delay_embed(&common::random_series(&mut rng, 30), 3, 2).unwrap();
    let d = cloud_distances(&cloud);
    for i in 0..d.len() {
        for j in 0..d.len() {
            for k in 0..d.len() {
                assert!(d.get(i, k) <= d.get(i, j) + d.get(j, k) + 1e-12);
            }
        }
    }
}

#[test]
fn smoothing_removes_high_frequency_noise() {
    for seed in 0..20 {
        let mut rng = common::rng(100 + seed);
        let n = 1000;
        let mean: Vec<f64> = (0..n).map(|t| (2.0 * std::f64::consts::PI * t as f64 / 200.0).sin()).collect();
        let mut noise = vec![0.0; n];
        let mut prev = 0.0;
        for e in noise.iter_mut() {
            let innovation: f64 = StandardNormal.sample(&mut rng);
            prev = -0.95 * prev + 0.3 * innovation;
            *e = prev;
        }
        let y: Vec<f64> = mean.iter().zip(&noise).map(|(m, e)| m + e).collect();
        let mse = |x: &[f64]| x.iter().zip(&mean).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / n as f64;
        let smoothed = smooth(&y, 21).unwrap();
        assert!(mse(&y) >= 5.0 * mse(smoothed.values()), "seed {seed}");
    }
}
