mod common;

use rand_distr::{Distribution, StandardNormal};
use spectral_tda::sim::{preset_example, MixingModel, Preset, TimeSeriesPanel};
use spectral_tda::spectral::{band_coherence, smoothed_cross_spectrum, Band, CoherenceMatrix, SpectralOptions};

const SR: f64 = 100.0;

fn alpha_coherence(panel: &TimeSeriesPanel, options: &SpectralOptions) -> CoherenceMatrix {
    let spectrum = smoothed_cross_spectrum(panel, options).unwrap();
    band_coherence(&spectrum, Band::new(8.0, 12.0), SR).unwrap()
}

/// Band-averaged coherence predicted from the model: population spectra
/// smoothed by the same rectangular window, then the coherence ratio.
fn model_coherence(model: &MixingModel, len: usize, i: usize, j: usize) -> f64 {
    let m = (spectral_tda::spectral::default_bandwidth(len) * len as f64).floor() as isize;
    let latent = &model.latent_specs[0];
    let smoothed = |k: isize| -> f64 {
        (-m..=m)
            .map(|o| latent.spectral_density((k + o).rem_euclid(len as isize) as f64 / len as f64))
            .sum::<f64>()
            / (2 * m + 1) as f64
    };
    let noise = model.noise_sd * model.noise_sd;
    let (a, b) = (&model.mixing[i], &model.mixing[j]);
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let band: Vec<isize> = (0..=len as isize / 2)
        .filter(|&k| Band::new(8.0, 12.0).contains(k as f64 * SR / len as f64))
        .collect();
    band.iter()
        .map(|&k| {
            let s = smoothed(k);
            let cross = dot(a, b) * s;
            (cross * cross) / ((dot(a, a) * s + noise) * (dot(b, b) * s + noise))
        })
        .sum::<f64>()
        / band.len() as f64
}

#[test]
fn independent_white_noise_has_small_coherence() {
    let len = 1 << 14;
    let options = SpectralOptions {
        bandwidth: Some(32.0 / len as f64),
        ..Default::default()
    };
    for seed in 0..20 {
        let mut rng = common::rng(200 + seed);
        let rows = (0..4)
            .map(|_| (0..len).map(|_| StandardNormal.sample(&mut rng)).collect())
            .collect();
        let c = alpha_coherence(&TimeSeriesPanel::unlabeled(rows, SR).unwrap(), &options);
        let off: Vec<f64> = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| c.values[i][j])
            .collect();
        let mean = off.iter().sum::<f64>() / off.len() as f64;
        assert!(mean < 0.1, "seed {seed}: {mean}");
    }
}

#[test]
fn two_cycle_coherence_follows_the_mixing_pattern() {
    let len = 1 << 13;
    let (mut estimates, mut predicted) = (Vec::new(), Vec::new());
    for seed in 0..20 {
        let (panel, model) = preset_example(Preset::TwoCycles, 1.0, seed, len, SR).unwrap();
        let c = alpha_coherence(&panel, &Default::default());
        for i in 0..9 {
            for j in i + 1..9 {
                let v = c.values[i][j];
                if model.ground_truth_edges.contains(&(i, j)) {
                    assert!(v > 0.15, "seed {seed} ({i},{j}): {v}");
                    estimates.push(v);
                    predicted.push(model_coherence(&model, len, i, j));
                } else {
                    assert_eq!(model_coherence(&model, len, i, j), 0.0);
                    assert!(v < 0.05, "seed {seed} ({i},{j}): {v}");
                }
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (got, want) = (mean(&estimates), mean(&predicted));
    assert!((got - want).abs() < 0.01, "{got} vs {want}");
}

#[test]
fn noiseless_ring_has_quarter_coherence_between_neighbours() {
    // neighbours share one of two equal-power independent latents
    let len = 1 << 13;
    let mut neighbours = Vec::new();
    for seed in 0..20 {
        let (panel, model) = preset_example(Preset::Cyclic, 0.0, seed, len, SR).unwrap();
        let c = alpha_coherence(&panel, &Default::default());
        for i in 0..6 {
            let j = (i + 1) % 6;
            assert!((model_coherence(&model, len, i, j) - 0.25).abs() < 1e-12);
            assert!(
                c.values[i][j] > 0.15 && c.values[i][j] < 0.35,
                "seed {seed} ({i},{j}): {}",
                c.values[i][j]
            );
            assert!(c.values[i][(i + 3) % 6] < 0.05);
            neighbours.push(c.values[i][j]);
        }
    }
    let mean = neighbours.iter().sum::<f64>() / neighbours.len() as f64;
    assert!((mean - 0.25).abs() < 0.01, "{mean}");
}
