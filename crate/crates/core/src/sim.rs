//! Synthetic multichannel signals with a planted dependence topology.
//!
//! Latent sources are causal AR(2) oscillators whose characteristic roots sit
//! at `M·exp(±i2πψ)`, so their spectrum peaks near `ψ` cycles per sample.
//! Observed channels are linear mixtures of the latents plus white noise,
//! `Y(t) = A Z(t) + c ε(t)`, and two channels are dependent exactly when
//! their rows of `A` share a latent.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{rng, sub_seed};
use crate::{Error, Result};

/// Samples discarded before the returned AR(2) sequence starts.
pub const DEFAULT_BURN_IN: usize = 1024;

/// Peak frequency of the preset latents, in Hz.
pub const PRESET_PEAK_HZ: f64 = 10.0;

/// Root magnitude of the preset latents.
pub const PRESET_ROOT_MAGNITUDE: f64 = 1.05;

/// `(phi1, phi2)` for an AR(2) with characteristic roots `M·exp(±i2πψ)`.
pub fn ar2_coefficients(root_magnitude: f64, phase: f64) -> Result<(f64, f64)> {
    if !(root_magnitude > 1.0) || !root_magnitude.is_finite() {
        return Err(Error::Domain(format!(
            "AR(2) root magnitude must exceed 1 for causality, got {root_magnitude}"
        )));
    }
    if !(phase > 0.0 && phase < 0.5) {
        return Err(Error::Domain(format!(
            "AR(2) phase must lie in (0, 0.5) cycles/sample, got {phase}"
        )));
    }
    let phi1 = 2.0 * (2.0 * PI * phase).cos() / root_magnitude;
    let phi2 = -1.0 / (root_magnitude * root_magnitude);
    Ok((phi1, phi2))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ar2Spec {
    pub root_magnitude: f64,
    /// Peak location in cycles per sample.
    pub phase: f64,
    pub innovation_sd: f64,
}

impl Ar2Spec {
    pub fn new(root_magnitude: f64, phase: f64, innovation_sd: f64) -> Result<Self> {
        ar2_coefficients(root_magnitude, phase)?;
        if !(innovation_sd >= 0.0) || !innovation_sd.is_finite() {
            return Err(Error::Domain(format!(
                "innovation sd must be finite and nonnegative, got {innovation_sd}"
            )));
        }
        Ok(Self {
            root_magnitude,
            phase,
            innovation_sd,
        })
    }

    /// Spec whose spectral peak sits at `peak_hz` for sampling rate `sr`.
    pub fn with_peak_hz(root_magnitude: f64, peak_hz: f64, sr: f64, innovation_sd: f64) -> Result<Self> {
        Self::new(root_magnitude, peak_hz / sr, innovation_sd)
    }

    pub fn coefficients(&self) -> (f64, f64) {
        ar2_coefficients(self.root_magnitude, self.phase).expect("Ar2Spec holds a validated magnitude and phase")
    }

    /// The two characteristic roots `M·exp(±i2πψ)`.
    pub fn roots(&self) -> (Complex64, Complex64) {
        let r = Complex64::from_polar(self.root_magnitude, 2.0 * PI * self.phase);
        (r, r.conj())
    }

    /// Stationary variance from the Yule-Walker equations.
    pub fn stationary_variance(&self) -> f64 {
        let (phi1, phi2) = self.coefficients();
        let s2 = self.innovation_sd * self.innovation_sd;
        s2 * (1.0 - phi2) / ((1.0 + phi2) * ((1.0 - phi2).powi(2) - phi1 * phi1))
    }

    /// Spectral density at `freq` cycles/sample, normalised so that it is the
    /// expectation of `|d(ω)|²` for the `1/√T` Fourier coefficients.
    pub fn spectral_density(&self, freq: f64) -> f64 {
        let (phi1, phi2) = self.coefficients();
        let z = Complex64::from_polar(1.0, -2.0 * PI * freq);
        let denom = Complex64::new(1.0, 0.0) - phi1 * z - phi2 * z * z;
        self.innovation_sd * self.innovation_sd / denom.norm_sqr()
    }
}

/// Simulates `len` samples of the AR(2) recursion from a zero initial state,
/// discarding the first `burn_in` samples.
pub fn simulate_ar2(spec: &Ar2Spec, len: usize, burn_in: usize, seed: u64) -> Vec<f64> {
    let (phi1, phi2) = spec.coefficients();
    let mut rng = rng(seed);
    let (mut z1, mut z2) = (0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(len);
    for t in 0..burn_in + len {
        let w: f64 = rng.sample(StandardNormal);
        let z = phi1 * z1 + phi2 * z2 + spec.innovation_sd * w;
        z2 = z1;
        z1 = z;
        if t >= burn_in {
            out.push(z);
        }
    }
    out
}

/// P channels by T samples at a fixed sampling rate.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeriesPanel {
    values: Vec<Vec<f64>>,
    sampling_rate: f64,
    channel_labels: Vec<String>,
}

impl TimeSeriesPanel {
    pub fn new(values: Vec<Vec<f64>>, sampling_rate: f64, channel_labels: Vec<String>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Data("panel has no channels".into()));
        }
        if channel_labels.len() != values.len() {
            return Err(Error::Dimension(format!(
                "{} labels for {} channels",
                channel_labels.len(),
                values.len()
            )));
        }
        if !(sampling_rate > 0.0) || !sampling_rate.is_finite() {
            return Err(Error::Domain(format!("sampling rate must be positive, got {sampling_rate}")));
        }
        let len = values[0].len();
        if len < 2 {
            return Err(Error::Data(format!("panel needs at least 2 samples, got {len}")));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != len {
                return Err(Error::Dimension(format!("channel {i} has {} samples, expected {len}", row.len())));
            }
            if let Some(t) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Data(format!("non-finite value in channel {i} at sample {t}")));
            }
        }
        Ok(Self {
            values,
            sampling_rate,
            channel_labels,
        })
    }

    /// Panel with labels `Y1..YP`.
    pub fn unlabeled(values: Vec<Vec<f64>>, sampling_rate: f64) -> Result<Self> {
        let labels = default_labels(values.len());
        Self::new(values, sampling_rate, labels)
    }

    pub fn n_channels(&self) -> usize {
        self.values.len()
    }

    pub fn len(&self) -> usize {
        self.values[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sampling_rate(&self) -> f64 {
        self.sampling_rate
    }

    pub fn labels(&self) -> &[String] {
        &self.channel_labels
    }

    pub fn channel(&self, i: usize) -> &[f64] {
        &self.values[i]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("Y{i}")).collect()
}

/// `Y(t) = A Z(t) + noise_sd·ε(t)` with independent latents `Z_l`.
///
/// Channel indices are zero-based throughout; `ground_truth_edges` holds
/// every pair `(i, j)`, `i < j`, whose rows of `A` share a nonzero latent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixingModel {
    /// P rows by L columns.
    pub mixing: Vec<Vec<f64>>,
    pub latent_specs: Vec<Ar2Spec>,
    pub noise_sd: f64,
    pub ground_truth_edges: Vec<(usize, usize)>,
    /// Minimal planted loops, when the model was built to carry them.
    #[serde(default)]
    pub planted_cycles: Vec<Vec<usize>>,
    #[serde(default)]
    pub planted_cliques: Vec<Vec<usize>>,
}

impl MixingModel {
    pub fn new(mixing: Vec<Vec<f64>>, latent_specs: Vec<Ar2Spec>, noise_sd: f64) -> Result<Self> {
        let model = Self {
            ground_truth_edges: shared_latent_edges(&mixing),
            mixing,
            latent_specs,
            noise_sd,
            planted_cycles: Vec::new(),
            planted_cliques: Vec::new(),
        };
        model.validate()?;
        Ok(model)
    }

    pub fn n_channels(&self) -> usize {
        self.mixing.len()
    }

    pub fn n_latents(&self) -> usize {
        self.latent_specs.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.mixing.is_empty() {
            return Err(Error::Dimension("mixing matrix has no rows".into()));
        }
        let l = self.latent_specs.len();
        for (i, row) in self.mixing.iter().enumerate() {
            if row.len() != l {
                return Err(Error::Dimension(format!(
                    "mixing row {i} has {} columns but there are {l} latent specs",
                    row.len()
                )));
            }
            if row.iter().any(|a| !a.is_finite()) {
                return Err(Error::Data(format!("non-finite mixing weight in row {i}")));
            }
        }
        for spec in &self.latent_specs {
            Ar2Spec::new(spec.root_magnitude, spec.phase, spec.innovation_sd)?;
        }
        if !(self.noise_sd >= 0.0) || !self.noise_sd.is_finite() {
            return Err(Error::Domain(format!("noise sd must be nonnegative, got {}", self.noise_sd)));
        }
        let p = self.mixing.len();
        if let Some(&(i, j)) = self.ground_truth_edges.iter().find(|&&(i, j)| !(i < j && j < p)) {
            return Err(Error::Dimension(format!("ground-truth edge ({i}, {j}) outside 0 <= i < j < {p}")));
        }
        Ok(())
    }
}

fn shared_latent_edges(mixing: &[Vec<f64>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..mixing.len() {
        for j in i + 1..mixing.len() {
            let shared = mixing[i].iter().zip(&mixing[j]).any(|(a, b)| *a != 0.0 && *b != 0.0);
            if shared {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Simulates the mixture. Latent `l` uses sub-seed stream `l` and the noise of
/// channel `i` uses stream `L + i`.
pub fn simulate_mixture(model: &MixingModel, len: usize, sampling_rate: f64, seed: u64) -> Result<TimeSeriesPanel> {
    model.validate()?;
    if len < 2 {
        return Err(Error::Domain(format!("need at least 2 samples, got {len}")));
    }
    let n_latents = model.n_latents();
    let latents: Vec<Vec<f64>> = model
        .latent_specs
        .par_iter()
        .enumerate()
        .map(|(l, spec)| simulate_ar2(spec, len, DEFAULT_BURN_IN, sub_seed(seed, l as u64)))
        .collect();

    let values: Vec<Vec<f64>> = model
        .mixing
        .par_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut y = vec![0.0; len];
            for (a, z) in row.iter().zip(&latents) {
                if *a == 0.0 {
                    continue;
                }
                for (yt, zt) in y.iter_mut().zip(z) {
                    *yt += a * zt;
                }
            }
            if model.noise_sd > 0.0 {
                let mut rng = rng(sub_seed(seed, (n_latents + i) as u64));
                for yt in y.iter_mut() {
                    let e: f64 = rng.sample(StandardNormal);
                    *yt += model.noise_sd * e;
                }
            }
            y
        })
        .collect();

    TimeSeriesPanel::unlabeled(values, sampling_rate)
}

/// The generators used as worked examples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Preset {
    /// Nine channels over eight latents: two loops joined by a bridge channel.
    #[serde(rename = "1")]
    TwoCycles,
    /// Nine channels over five latents: a loop and a 4-clique.
    #[serde(rename = "2")]
    CycleAndClique,
    /// Six channels arranged on a ring of shared latents.
    #[serde(rename = "3-cyclic")]
    Cyclic,
    /// Six channels sharing latents with no loop.
    #[serde(rename = "3-random")]
    Random,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::TwoCycles, Preset::CycleAndClique, Preset::Cyclic, Preset::Random];

    pub fn id(&self) -> &'static str {
        match self {
            Preset::TwoCycles => "1",
            Preset::CycleAndClique => "2",
            Preset::Cyclic => "3-cyclic",
            Preset::Random => "3-random",
        }
    }

    /// The mixing matrix, P rows by L columns.
    pub fn mixing(&self) -> Vec<Vec<f64>> {
        let (scale, rows): (f64, &[&[f64]]) = match self {
            Preset::TwoCycles => (
                0.5,
                &[
                    &[1., 1., 0., 0., 0., 0., 0., 0.],
                    &[0., 1., 1., 0., 0., 0., 0., 0.],
                    &[0., 0., 1., 1., 0., 0., 0., 0.],
                    &[1., 0., 0., 1., 0., 0., 0., 0.],
                    &[0., 0., 0., 1., 1., 0., 0., 0.],
                    &[0., 0., 0., 0., 1., 1., 0., 0.],
                    &[0., 0., 0., 0., 0., 1., 1., 0.],
                    &[0., 0., 0., 0., 0., 0., 1., 1.],
                    &[0., 0., 0., 0., 1., 0., 0., 1.],
                ],
            ),
            Preset::CycleAndClique => (
                0.5,
                &[
                    &[1., 1., 0., 0., 0.],
                    &[0., 1., 1., 0., 0.],
                    &[0., 0., 1., 1., 0.],
                    &[1., 0., 0., 1., 0.],
                    &[0., 0., 0., 1., 1.],
                    &[0., 0., 0., 0., 2.],
                    &[0., 0., 0., 0., 2.],
                    &[0., 0., 0., 0., 2.],
                    &[0., 0., 0., 0., 2.],
                ],
            ),
            // y_i = Z_{i-1} + Z_i (indices mod 6, Z_0 = Z_6)
            Preset::Cyclic => (
                1.0,
                &[
                    &[1., 0., 0., 0., 0., 1.],
                    &[1., 1., 0., 0., 0., 0.],
                    &[0., 1., 1., 0., 0., 0.],
                    &[0., 0., 1., 1., 0., 0.],
                    &[0., 0., 0., 1., 1., 0.],
                    &[0., 0., 0., 0., 1., 1.],
                ],
            ),
            Preset::Random => (
                1.0,
                &[
                    &[0., 0., 1., 1., 0., 1.],
                    &[0., 1., 0., 0., 0., 1.],
                    &[1., 0., 0., 0., 0., 0.],
                    &[1., 1., 1., 0., 0., 0.],
                    &[0., 0., 0., 1., 1., 0.],
                    &[0., 0., 0., 0., 1., 0.],
                ],
            ),
        };
        rows.iter().map(|r| r.iter().map(|a| scale * a).collect()).collect()
    }

    pub fn model(&self, noise_scale: f64, sampling_rate: f64) -> Result<MixingModel> {
        if !(noise_scale >= 0.0) {
            return Err(Error::Domain(format!("noise scale must be nonnegative, got {noise_scale}")));
        }
        let mixing = self.mixing();
        let spec = Ar2Spec::with_peak_hz(PRESET_ROOT_MAGNITUDE, PRESET_PEAK_HZ, sampling_rate, 1.0)?;
        let n_latents = mixing[0].len();
        let mut model = MixingModel::new(mixing, vec![spec; n_latents], noise_scale)?;
        match self {
            Preset::TwoCycles => model.planted_cycles = vec![vec![0, 1, 2, 3], vec![5, 6, 7, 8]],
            Preset::CycleAndClique => {
                model.planted_cycles = vec![vec![0, 1, 2, 3]];
                model.planted_cliques = vec![vec![5, 6, 7, 8]];
            }
            Preset::Cyclic => model.planted_cycles = vec![(0..6).collect()],
            Preset::Random => {}
        }
        Ok(model)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches("example-");
        Preset::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset '{s}', expected one of 1, 2, 3-cyclic, 3-random")))
    }
}

/// Simulates one of the worked-example generators and returns the panel
/// together with the exact model used.
pub fn preset_example(
    preset: Preset,
    noise_scale: f64,
    seed: u64,
    len: usize,
    sampling_rate: f64,
) -> Result<(TimeSeriesPanel, MixingModel)> {
    let model = preset.model(noise_scale, sampling_rate)?;
    let panel = simulate_mixture(&model, len, sampling_rate, seed)?;
    Ok((panel, model))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coefficients_match_closed_form() {
        let (p1, p2) = ar2_coefficients(1.01, 0.1).unwrap();
        assert_eq!(p1, 2.0 * (0.2 * PI).cos() / 1.01);
        assert_eq!(p2, -1.0 / (1.01 * 1.01));

        // phi1 = (2/1.414) cos(pi 154/500)
        let (p1, p2) = ar2_coefficients(1.414, 0.154).unwrap();
        assert!((p1 - (2.0 / 1.414) * (PI * 154.0 / 500.0).cos()).abs() < 1e-15);
        assert!((p2 + 1.0 / (1.414f64 * 1.414)).abs() < 1e-15);

        let (_, p2) = ar2_coefficients(1e6, 0.3).unwrap();
        assert!(p2.abs() < 1e-11);
    }

    #[test]
    fn coefficient_domain_errors() {
        assert!(matches!(ar2_coefficients(1.0, 0.1), Err(Error::Domain(_))));
        assert!(matches!(ar2_coefficients(0.5, 0.1), Err(Error::Domain(_))));
        assert!(matches!(ar2_coefficients(1.1, 0.0), Err(Error::Domain(_))));
        assert!(matches!(ar2_coefficients(1.1, 0.5), Err(Error::Domain(_))));
        assert!(matches!(ar2_coefficients(f64::NAN, 0.2), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn roots_annihilate_characteristic_polynomial(m in 1.0001f64..5.0, psi in 0.001f64..0.499) {
            let spec = Ar2Spec::new(m, psi, 1.0).unwrap();
            let (phi1, phi2) = spec.coefficients();
            let (r1, r2) = spec.roots();
            for r in [r1, r2] {
                let value = Complex64::new(1.0, 0.0) - phi1 * r - phi2 * r * r;
                let scale = 1.0 + (phi1 * r).norm() + (phi2 * r * r).norm();
                prop_assert!(value.norm() / scale < 1e-10);
                prop_assert!((r.norm() - m).abs() < 1e-12 * m);
            }
        }
    }

    #[test]
    fn zero_innovations_give_zero_path() {
        let spec = Ar2Spec::new(1.05, 0.1, 0.0).unwrap();
        assert!(simulate_ar2(&spec, 256, 10, 3).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn simulation_is_deterministic() {
        let spec = Ar2Spec::new(1.05, 0.1, 1.0).unwrap();
        assert_eq!(simulate_ar2(&spec, 500, 100, 9), simulate_ar2(&spec, 500, 100, 9));
        assert_ne!(simulate_ar2(&spec, 500, 100, 9), simulate_ar2(&spec, 500, 100, 10));
        // burn-in only shifts the window
        let long = simulate_ar2(&spec, 600, 0, 9);
        assert_eq!(&long[100..], &simulate_ar2(&spec, 500, 100, 9)[..]);
    }

    #[test]
    fn stationary_variance_matches_long_run() {
        let spec = Ar2Spec::new(1.05, 0.1, 1.0).unwrap();
        let x = simulate_ar2(&spec, 1 << 16, DEFAULT_BURN_IN, 11);
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / x.len() as f64;
        let target = spec.stationary_variance();
        assert!((var / target - 1.0).abs() < 0.10, "var {var} vs {target}");
    }

    #[test]
    fn identity_mixing_reproduces_latents() {
        let spec = Ar2Spec::new(1.05, 0.2, 1.0).unwrap();
        let model = MixingModel::new(
            vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            vec![spec; 3],
            0.0,
        )
        .unwrap();
        let panel = simulate_mixture(&model, 300, 100.0, 5).unwrap();
        for l in 0..3 {
            let z = simulate_ar2(&spec, 300, DEFAULT_BURN_IN, sub_seed(5, l as u64));
            assert_eq!(panel.channel(l), &z[..]);
        }
        assert!(model.ground_truth_edges.is_empty());
    }

    #[test]
    fn mixture_is_linear_in_mixing() {
        let mut model = Preset::TwoCycles.model(0.0, 100.0).unwrap();
        let once = simulate_mixture(&model, 200, 100.0, 1).unwrap();
        for row in model.mixing.iter_mut() {
            row.iter_mut().for_each(|a| *a *= 2.0);
        }
        let twice = simulate_mixture(&model, 200, 100.0, 1).unwrap();
        for (a, b) in once.rows().iter().zip(twice.rows()) {
            for (x, y) in a.iter().zip(b) {
                assert_eq!(2.0 * x, *y);
            }
        }
    }

    #[test]
    fn mismatched_mixing_is_rejected() {
        let spec = Ar2Spec::new(1.05, 0.2, 1.0).unwrap();
        let err = MixingModel::new(vec![vec![1.0, 1.0]], vec![spec], 0.0).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn preset_ground_truth() {
        let m1 = Preset::TwoCycles.model(1.0, 100.0).unwrap();
        assert_eq!((m1.n_channels(), m1.n_latents()), (9, 8));
        assert!(m1.mixing.iter().flatten().all(|&a| a == 0.0 || a == 0.5));
        // both planted 4-cycles are present as edges
        for cycle in &m1.planted_cycles {
            for k in 0..4 {
                let (a, b) = (cycle[k], cycle[(k + 1) % 4]);
                assert!(m1.ground_truth_edges.contains(&(a.min(b), a.max(b))));
            }
        }
        // bridge channel 5 (index 4) and the row-9 channel (index 8)
        for e in [(2, 4), (3, 4), (4, 5), (4, 8), (5, 8), (7, 8)] {
            assert!(m1.ground_truth_edges.contains(&e), "{e:?}");
        }
        assert_eq!(m1.ground_truth_edges.len(), 12);

        let m2 = Preset::CycleAndClique.model(1.0, 100.0).unwrap();
        assert_eq!((m2.n_channels(), m2.n_latents()), (9, 5));
        assert_eq!(m2.mixing[5][4], 1.0);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            assert!(m2.ground_truth_edges.contains(&(a, b)));
        }
        for a in 5..9 {
            for b in a + 1..9 {
                assert!(m2.ground_truth_edges.contains(&(a, b)));
            }
        }

        let m3 = Preset::Cyclic.model(0.0, 100.0).unwrap();
        assert_eq!(m3.ground_truth_edges, vec![(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]);

        let m4 = Preset::Random.model(0.0, 100.0).unwrap();
        assert_eq!(m4.ground_truth_edges, vec![(0, 1), (0, 3), (0, 4), (1, 3), (2, 3), (4, 5)]);
        assert_eq!(m4.latent_specs[0].phase, 0.1);
    }

    #[test]
    fn preset_parsing() {
        assert_eq!("3-cyclic".parse::<Preset>().unwrap(), Preset::Cyclic);
        assert_eq!("example-1".parse::<Preset>().unwrap(), Preset::TwoCycles);
        assert!(matches!("4".parse::<Preset>(), Err(Error::Config(_))));
    }

    #[test]
    fn panel_validation() {
        assert!(TimeSeriesPanel::unlabeled(vec![vec![1.0]], 1.0).is_err());
        assert!(TimeSeriesPanel::unlabeled(vec![vec![1.0, f64::NAN]], 1.0).is_err());
        assert!(TimeSeriesPanel::unlabeled(vec![vec![1.0, 2.0], vec![1.0]], 1.0).is_err());
        assert!(TimeSeriesPanel::unlabeled(vec![vec![1.0, 2.0]], 0.0).is_err());
        let p = TimeSeriesPanel::unlabeled(vec![vec![1.0, 2.0, 3.0]], 10.0).unwrap();
        assert_eq!((p.n_channels(), p.len()), (1, 3));
        assert_eq!(p.labels(), &["Y1".to_string()]);
    }
}
