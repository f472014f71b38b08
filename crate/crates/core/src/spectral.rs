//! Frequency-domain dependence between channels.
//!
//! Fourier coefficients use the `1/√T` normalisation with time indexed
//! `t = 1..T`. The cross spectrum at each one-sided Fourier frequency is a
//! kernel-weighted average of the rank-one periodogram matrices `d(ω)d(ω)*`
//! over neighbouring grid frequencies (wrapping through negative
//! frequencies). Coherence is averaged over the in-band frequencies and
//! mapped to a distance by a decreasing transform.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::sim::{default_labels, TimeSeriesPanel};
use crate::{Error, Result};

/// Running window sums are recomputed from scratch this often.
const RUNNING_SUM_REFRESH: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    #[default]
    Rectangular,
    Parzen,
}

impl Kernel {
    /// Weights for offsets `-m..=m`.
    fn weights(&self, half_width: usize) -> Vec<f64> {
        let m = half_width as isize;
        (-m..=m)
            .map(|o| match self {
                Kernel::Rectangular => 1.0,
                Kernel::Parzen => {
                    let u = (o as f64 / (half_width + 1) as f64).abs();
                    if u <= 0.5 {
                        1.0 - 6.0 * u * u + 6.0 * u * u * u
                    } else {
                        2.0 * (1.0 - u).powi(3)
                    }
                }
            })
            .collect()
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Rectangular => "rectangular",
            Kernel::Parzen => "parzen",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rectangular" | "rect" | "daniell" => Ok(Kernel::Rectangular),
            "parzen" => Ok(Kernel::Parzen),
            other => Err(Error::Config(format!("unknown kernel '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SpectralOptions {
    pub kernel: Kernel,
    /// Half-width of the kernel support in cycles/sample; `None` uses
    /// [`default_bandwidth`].
    pub bandwidth: Option<f64>,
    /// Subtract each channel's mean before transforming.
    pub demean: bool,
}

/// `4/√T` cycles per sample.
pub fn default_bandwidth(len: usize) -> f64 {
    4.0 / (len as f64).sqrt()
}

/// One-sided Fourier coefficients, P rows by `⌊T/2⌋ + 1` columns, at
/// `ω_k = k/T`.
pub fn fourier_coefficients(panel: &TimeSeriesPanel) -> Vec<Vec<Complex64>> {
    let half = panel.len() / 2;
    full_fourier(panel, false)
        .into_iter()
        .map(|mut row| {
            row.truncate(half + 1);
            row
        })
        .collect()
}

/// Coefficients on the whole two-sided grid `k = 0..T`.
fn full_fourier(panel: &TimeSeriesPanel, demean: bool) -> Vec<Vec<Complex64>> {
    let n = panel.len();
    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let norm = 1.0 / (n as f64).sqrt();
    // shift from the FFT's t = 0..T-1 indexing to t = 1..T
    let shift: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(norm, -2.0 * PI * k as f64 / n as f64))
        .collect();
    panel
        .rows()
        .par_iter()
        .map(|row| {
            let mean = if demean { row.iter().sum::<f64>() / n as f64 } else { 0.0 };
            let mut buf: Vec<Complex64> = row.iter().map(|&x| Complex64::new(x - mean, 0.0)).collect();
            fft.process(&mut buf);
            buf.iter_mut().zip(&shift).for_each(|(d, s)| *d *= s);
            buf
        })
        .collect()
}

/// Smoothed cross-spectral matrices on the one-sided grid.
#[derive(Clone, Debug)]
pub struct SpectralMatrix {
    frequencies: Vec<f64>,
    n_channels: usize,
    values: Vec<Complex64>,
    bandwidth: f64,
    half_width: usize,
    kernel: Kernel,
    labels: Vec<String>,
}

impl SpectralMatrix {
    /// Frequencies in cycles per sample.
    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn n_channels(&self) -> usize {
        self.n_channels
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Number of grid frequencies on each side of the centre inside the kernel support.
    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Row-major P×P matrix at frequency index `k`.
    pub fn at(&self, k: usize) -> &[Complex64] {
        let p2 = self.n_channels * self.n_channels;
        &self.values[k * p2..(k + 1) * p2]
    }

    pub fn entry(&self, k: usize, i: usize, j: usize) -> Complex64 {
        self.at(k)[i * self.n_channels + j]
    }
}

pub fn smoothed_cross_spectrum(panel: &TimeSeriesPanel, options: &SpectralOptions) -> Result<SpectralMatrix> {
    let n = panel.len();
    let h = options.bandwidth.unwrap_or_else(|| default_bandwidth(n));
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::Domain(format!("bandwidth must lie in (0, 0.5) cycles/sample, got {h}")));
    }
    let half_width = (h * n as f64).floor() as usize;
    if 2 * half_width + 1 < 3 {
        return Err(Error::Guard(format!(
            "bandwidth {h} covers fewer than 3 Fourier frequencies at T = {n}; coherence would be identically 1"
        )));
    }
    Ok(smooth_with_half_width(panel, options.kernel, half_width, h, options.demean))
}

pub(crate) fn smooth_with_half_width(
    panel: &TimeSeriesPanel,
    kernel: Kernel,
    half_width: usize,
    bandwidth: f64,
    demean: bool,
) -> SpectralMatrix {
    let n = panel.len();
    let p = panel.n_channels();
    let n_freq = n / 2 + 1;
    let coef = full_fourier(panel, demean);
    let weights = kernel.weights(half_width);
    let total: f64 = weights.iter().sum();

    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect();
    let smoothed: Vec<Vec<Complex64>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let raw: Vec<Complex64> = coef[i].iter().zip(&coef[j]).map(|(a, b)| a * b.conj()).collect();
            let mut out = match kernel {
                Kernel::Rectangular => running_window(&raw, half_width, n_freq),
                Kernel::Parzen => weighted_window(&raw, &weights, n_freq),
            };
            out.iter_mut().for_each(|v| *v /= total);
            if i == j {
                // running sums can leave a rounding residue below zero
                out.iter_mut().for_each(|v| *v = Complex64::new(v.re.max(0.0), 0.0));
            }
            out
        })
        .collect();

    let p2 = p * p;
    let mut values = vec![Complex64::new(0.0, 0.0); n_freq * p2];
    for (&(i, j), series) in pairs.iter().zip(&smoothed) {
        for (k, v) in series.iter().enumerate() {
            values[k * p2 + i * p + j] = *v;
            values[k * p2 + j * p + i] = v.conj();
        }
    }

    SpectralMatrix {
        frequencies: (0..n_freq).map(|k| k as f64 / n as f64).collect(),
        n_channels: p,
        values,
        bandwidth,
        half_width,
        kernel,
        labels: panel.labels().to_vec(),
    }
}

fn wrap(k: isize, n: usize) -> usize {
    k.rem_euclid(n as isize) as usize
}

fn window_sum(raw: &[Complex64], centre: usize, m: usize) -> Complex64 {
    let n = raw.len();
    let c = centre as isize;
    (c - m as isize..=c + m as isize).map(|k| raw[wrap(k, n)]).sum()
}

fn running_window(raw: &[Complex64], m: usize, n_freq: usize) -> Vec<Complex64> {
    let n = raw.len();
    let mut out = Vec::with_capacity(n_freq);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n_freq {
        if k % RUNNING_SUM_REFRESH == 0 {
            acc = window_sum(raw, k, m);
        } else {
            acc += raw[wrap(k as isize + m as isize, n)];
            acc -= raw[wrap(k as isize - m as isize - 1, n)];
        }
        out.push(acc);
    }
    out
}

fn weighted_window(raw: &[Complex64], weights: &[f64], n_freq: usize) -> Vec<Complex64> {
    let n = raw.len();
    let m = (weights.len() / 2) as isize;
    (0..n_freq)
        .map(|k| {
            weights
                .iter()
                .enumerate()
                .map(|(o, w)| *w * raw[wrap(k as isize + o as isize - m, n)])
                .sum()
        })
        .collect()
}

/// A closed frequency interval in Hz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub low: f64,
    pub high: f64,
}

impl Band {
    pub fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }

    pub fn contains(&self, hz: f64) -> bool {
        hz >= self.low && hz <= self.high
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] Hz", self.low, self.high)
    }
}

/// Band-averaged squared coherence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoherenceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    pub band: Band,
    pub sampling_rate: f64,
    pub kernel: Kernel,
    pub bandwidth: f64,
}

impl CoherenceMatrix {
    pub fn n_channels(&self) -> usize {
        self.values.len()
    }
}

pub fn band_coherence(spec: &SpectralMatrix, band: Band, sampling_rate: f64) -> Result<CoherenceMatrix> {
    let nyquist = sampling_rate / 2.0;
    if !(band.low >= 0.0 && band.low < band.high && band.high <= nyquist) {
        return Err(Error::Domain(format!("band {band} must satisfy 0 <= low < high <= {nyquist} Hz")));
    }
    let in_band: Vec<usize> = spec
        .frequencies
        .iter()
        .enumerate()
        .filter(|(_, w)| band.contains(*w * sampling_rate))
        .map(|(k, _)| k)
        .collect();
    if in_band.is_empty() {
        let spacing = spec.frequencies.get(1).copied().unwrap_or(0.5) * sampling_rate;
        return Err(Error::Data(format!(
            "no Fourier frequency falls in band {band}; grid spacing is {spacing} Hz"
        )));
    }

    let p = spec.n_channels;
    let mut values = vec![vec![0.0; p]; p];
    for i in 0..p {
        values[i][i] = 1.0;
        for j in i + 1..p {
            let sum: f64 = in_band
                .iter()
                .map(|&k| {
                    let fii = spec.entry(k, i, i).re;
                    let fjj = spec.entry(k, j, j).re;
                    let denom = fii * fjj;
                    if denom > 0.0 {
                        spec.entry(k, i, j).norm_sqr() / denom
                    } else {
                        0.0
                    }
                })
                .sum();
            let c = (sum / in_band.len() as f64).clamp(0.0, 1.0);
            values[i][j] = c;
            values[j][i] = c;
        }
    }
    Ok(CoherenceMatrix {
        labels: spec.labels.clone(),
        values,
        band,
        sampling_rate,
        kernel: spec.kernel,
        bandwidth: spec.bandwidth,
    })
}

/// Decreasing map from coherence in [0, 1] to a dissimilarity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceTransform {
    /// `1 - C`
    #[default]
    OneMinus,
    /// `√(1 - C²)`
    SqrtOneMinusSq,
}

impl DistanceTransform {
    pub fn apply(&self, c: f64) -> f64 {
        match self {
            DistanceTransform::OneMinus => 1.0 - c,
            DistanceTransform::SqrtOneMinusSq => (1.0 - c * c).max(0.0).sqrt(),
        }
    }
}

impl fmt::Display for DistanceTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DistanceTransform::OneMinus => "one_minus",
            DistanceTransform::SqrtOneMinusSq => "sqrt_one_minus_sq",
        })
    }
}

impl FromStr for DistanceTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one_minus" => Ok(DistanceTransform::OneMinus),
            "sqrt_one_minus_sq" => Ok(DistanceTransform::SqrtOneMinusSq),
            other => Err(Error::Config(format!("unknown distance transform '{other}'"))),
        }
    }
}

/// Symmetric, nonnegative, zero-diagonal dissimilarity matrix. The triangle
/// inequality is not required.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    values: Vec<Vec<f64>>,
    labels: Vec<String>,
}

impl DistanceMatrix {
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self> {
        let labels = default_labels(values.len());
        Self::with_labels(values, labels)
    }

    pub fn with_labels(values: Vec<Vec<f64>>, labels: Vec<String>) -> Result<Self> {
        let p = values.len();
        if labels.len() != p {
            return Err(Error::Dimension(format!("{} labels for a {p}x{p} matrix", labels.len())));
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != p {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {p}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Data(format!("entry ({i}, {j}) = {v} is not a finite nonnegative distance")));
                }
                if i == j && v != 0.0 {
                    return Err(Error::Data(format!("diagonal entry {i} is {v}, expected 0")));
                }
            }
        }
        for i in 0..p {
            for j in i + 1..p {
                if values[i][j] != values[j][i] {
                    return Err(Error::Data(format!(
                        "matrix is not symmetric at ({i}, {j}): {} vs {}",
                        values[i][j], values[j][i]
                    )));
                }
            }
        }
        Ok(Self { values, labels })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The matrix with rows and columns reordered so that new index `k` is old index `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let values = order.iter().map(|&i| order.iter().map(|&j| self.values[i][j]).collect()).collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Self { values, labels }
    }
}

pub fn coherence_to_distance(coherence: &CoherenceMatrix, transform: DistanceTransform) -> DistanceMatrix {
    let p = coherence.n_channels();
    let values = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| if i == j { 0.0 } else { transform.apply(coherence.values[i][j]) })
                .collect()
        })
        .collect();
    DistanceMatrix {
        values,
        labels: coherence.labels.clone(),
    }
}
