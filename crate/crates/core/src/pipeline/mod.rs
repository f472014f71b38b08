//! End-to-end orchestration: simulate or ingest panels, compute band
//! coherence networks, their persistence diagrams and landscapes, and test
//! for group differences per band and homology dimension.
//!
//! A run is described by a [`PipelineConfig`], usually read from TOML:
//!
//! ```toml
//! sampling_rate = 100.0
//! samples = 2048
//! seed = 1
//! output_dir = "out"
//!
//! [[groups]]
//! name = "cyclic"
//! preset = "3-cyclic"
//! subjects = 20
//! noise = 0.5
//!
//! [[groups]]
//! name = "random"
//! preset = "3-random"
//! subjects = 20
//! noise = 0.5
//!
//! [[bands]]
//! name = "alpha"
//! low = 8.0
//! high = 12.0
//!
//! [test]
//! permutations = 999
//! ```
//!
//! Every artifact is listed with its SHA-256 in `manifest.json`, which is
//! written last. Identical configs produce byte-identical outputs.

pub mod io;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::homology::{betti_curve, persistence, rips_filtration, PersistenceDiagram};
use crate::inference::{permutation_test, GroupSample, PermutationOptions, PermutationTestReport};
use crate::landscape::{
    landscape_from_diagram, landscape_from_diagram_capped, mean_landscape, Grid, PersistenceLandscape, DEFAULT_MAX_LEVELS,
};
use crate::rng::sub_seed;
use crate::sim::{simulate_mixture, MixingModel, Preset, TimeSeriesPanel};
use crate::spectral::{
    band_coherence, coherence_to_distance, smoothed_cross_spectrum, Band, CoherenceMatrix, DistanceMatrix, DistanceTransform,
    SpectralMatrix, SpectralOptions,
};
use crate::{Error, Result};

pub use io::ingest_panel;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedBand {
    pub name: String,
    pub low: f64,
    pub high: f64,
}

impl NamedBand {
    pub fn new(name: &str, low: f64, high: f64) -> Self {
        Self {
            name: name.into(),
            low,
            high,
        }
    }

    pub fn band(&self) -> Band {
        Band::new(self.low, self.high)
    }
}

/// Delta, theta, alpha, beta and gamma.
pub fn default_bands() -> Vec<NamedBand> {
    vec![
        NamedBand::new("delta", 0.5, 4.0),
        NamedBand::new("theta", 4.0, 8.0),
        NamedBand::new("alpha", 8.0, 12.0),
        NamedBand::new("beta", 12.0, 30.0),
        NamedBand::new("gamma", 30.0, 50.0),
    ]
}

/// One group of subjects. Exactly one of `preset`, `model` or `files` is set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GroupConfig {
    pub name: String,
    /// Built-in example id such as `"1"` or `"3-cyclic"`.
    pub preset: Option<String>,
    /// JSON file holding a [`MixingModel`].
    pub model: Option<PathBuf>,
    /// One panel CSV per subject.
    pub files: Vec<PathBuf>,
    /// Number of simulated subjects.
    pub subjects: usize,
    /// Noise scale for presets.
    pub noise: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LandscapeConfig {
    pub levels: usize,
    /// Grid of the exported mean-landscape CSVs.
    pub grid: Grid,
    /// Truncate essential classes at the largest filtration threshold
    /// instead of leaving them out.
    pub cap_infinite: bool,
}

impl Default for LandscapeConfig {
    fn default() -> Self {
        Self {
            levels: DEFAULT_MAX_LEVELS,
            grid: Grid::default(),
            cap_infinite: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TestConfig {
    pub permutations: usize,
    pub alpha: f64,
    pub seed: u64,
    /// Divide alpha by the number of bands.
    pub bonferroni: bool,
    /// Also write each null sample as CSV.
    pub null_csv: bool,
}

impl Default for TestConfig {
    fn default() -> Self {
        Self {
            permutations: 999,
            alpha: 0.05,
            seed: 0,
            bonferroni: false,
            null_csv: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub sampling_rate: f64,
    /// Samples per simulated subject.
    pub samples: usize,
    /// Seed of the simulated subjects.
    pub seed: u64,
    pub groups: Vec<GroupConfig>,
    pub bands: Vec<NamedBand>,
    pub spectral: SpectralOptions,
    pub transform: DistanceTransform,
    pub max_dim: usize,
    pub landscape: LandscapeConfig,
    pub test: TestConfig,
    pub output_dir: PathBuf,
    /// Also write every subject's panel CSV.
    pub write_panels: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            sampling_rate: 100.0,
            samples: 2048,
            seed: 0,
            groups: Vec::new(),
            bands: default_bands(),
            spectral: SpectralOptions::default(),
            transform: DistanceTransform::default(),
            max_dim: 2,
            landscape: LandscapeConfig::default(),
            test: TestConfig::default(),
            output_dir: PathBuf::from("spectral-tda-out"),
            write_panels: false,
        }
    }
}

fn check_name(kind: &str, name: &str) -> Result<()> {
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
        return Err(Error::Config(format!(
            "{kind} name '{name}' must be nonempty and use only letters, digits, '-' or '_'"
        )));
    }
    Ok(())
}

impl PipelineConfig {
    /// Parses TOML. Relative paths inside the file are resolved against its directory.
    pub fn from_toml_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut config: Self = toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        let resolve = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for g in &mut config.groups {
            g.model.iter_mut().for_each(resolve);
            g.files.iter_mut().for_each(resolve);
        }
        resolve(&mut config.output_dir);
        Ok(config)
    }

    /// Checks the config; returns warnings that do not stop a run.
    pub fn validate(&self) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        if !(self.sampling_rate > 0.0 && self.sampling_rate.is_finite()) {
            return Err(Error::Config(format!("sampling_rate must be positive, got {}", self.sampling_rate)));
        }
        if !(1..=3).contains(&self.max_dim) {
            return Err(Error::Config(format!("max_dim must be 1, 2 or 3, got {}", self.max_dim)));
        }
        if self.groups.is_empty() {
            return Err(Error::Config("no groups configured".into()));
        }
        if self.bands.is_empty() {
            return Err(Error::Config("no bands configured".into()));
        }
        let mut names = BTreeSet::new();
        for g in &self.groups {
            check_name("group", &g.name)?;
            if !names.insert(g.name.as_str()) {
                return Err(Error::Config(format!("duplicate group name '{}'", g.name)));
            }
            let sources = g.preset.is_some() as usize + g.model.is_some() as usize + (!g.files.is_empty()) as usize;
            if sources != 1 {
                return Err(Error::Config(format!(
                    "group '{}' needs exactly one of preset, model or files",
                    g.name
                )));
            }
            if let Some(p) = &g.preset {
                p.parse::<Preset>()?;
            }
            if (g.preset.is_some() || g.model.is_some()) && g.subjects == 0 {
                return Err(Error::Config(format!("group '{}' simulates no subjects", g.name)));
            }
            for f in g.model.iter().chain(&g.files) {
                if !f.is_file() {
                    return Err(Error::Config(format!("group '{}': file {} does not exist", g.name, f.display())));
                }
            }
        }
        let nyquist = self.sampling_rate / 2.0;
        let mut band_names = BTreeSet::new();
        for b in &self.bands {
            check_name("band", &b.name)?;
            if !band_names.insert(b.name.as_str()) {
                return Err(Error::Config(format!("duplicate band name '{}'", b.name)));
            }
            if !(b.low >= 0.0 && b.low < b.high && b.high <= nyquist) {
                return Err(Error::Config(format!(
                    "band '{}' [{}, {}] Hz must satisfy 0 <= low < high <= {nyquist}",
                    b.name, b.low, b.high
                )));
            }
        }
        for (i, a) in self.bands.iter().enumerate() {
            for b in &self.bands[i + 1..] {
                if a.low < b.high && b.low < a.high {
                    warnings.push(format!("bands '{}' and '{}' overlap", a.name, b.name));
                }
            }
        }
        self.permutation_options().validate()?;
        if self.groups.len() != 2 {
            warnings.push(format!(
                "{} groups configured; the permutation test needs exactly 2 and is skipped",
                self.groups.len()
            ));
        }
        Ok(warnings)
    }

    pub fn permutation_options(&self) -> PermutationOptions {
        PermutationOptions {
            permutations: self.test.permutations,
            alpha: self.test.alpha,
            seed: self.test.seed,
            levels: self.landscape.levels,
            bonferroni: self.test.bonferroni.then_some(self.bands.len()),
        }
    }
}

/// Seed of subject `subject` in group `group`.
pub fn subject_seed(seed: u64, group: usize, subject: usize) -> u64 {
    sub_seed(sub_seed(seed, group as u64), subject as u64)
}

pub fn subject_id(index: usize) -> String {
    format!("s{:03}", index + 1)
}

/// Coherence and distance matrices of one band.
pub fn coherence_stage(
    spectrum: &SpectralMatrix,
    band: Band,
    sampling_rate: f64,
    transform: DistanceTransform,
) -> Result<(CoherenceMatrix, DistanceMatrix)> {
    let coherence = band_coherence(spectrum, band, sampling_rate)?;
    let distance = coherence_to_distance(&coherence, transform);
    Ok((coherence, distance))
}

/// Rips persistence of a distance matrix, tagged with the hash of its CSV form.
pub fn persistence_stage(distance: &DistanceMatrix, max_dim: usize) -> Result<PersistenceDiagram> {
    let filtration = rips_filtration(distance, max_dim)?;
    Ok(persistence(&filtration).with_source_hash(sha256_hex(io::distance_csv(distance).as_bytes())))
}

/// Landscape of one dimension, in the exact form that its JSON file reloads to.
pub fn landscape_stage(diagram: &PersistenceDiagram, dim: usize, levels: usize, cap_infinite: bool) -> Result<PersistenceLandscape> {
    let cap = diagram.thresholds().last().copied();
    let landscape = match cap {
        Some(cap) if cap_infinite => landscape_from_diagram_capped(diagram, dim, levels, cap),
        _ => landscape_from_diagram(diagram, dim, levels),
    };
    PersistenceLandscape::from_document(&landscape.to_document())
}

pub fn test_stage(
    band: &str,
    first: Vec<PersistenceLandscape>,
    second: Vec<PersistenceLandscape>,
    options: &PermutationOptions,
) -> Result<PermutationTestReport> {
    let g1 = GroupSample::new(first, band)?;
    let g2 = GroupSample::new(second, band)?;
    permutation_test(&g1, &g2, options)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub artifacts: Vec<ManifestEntry>,
}

/// Results of one [`run_pipeline`] call.
#[derive(Clone, Debug)]
pub struct PipelineSummary {
    pub manifest: Manifest,
    pub reports: Vec<PermutationTestReport>,
    pub warnings: Vec<String>,
}

struct Subject {
    group: usize,
    index: usize,
    panel: TimeSeriesPanel,
}

struct Writer {
    root: PathBuf,
    entries: std::sync::Mutex<Vec<ManifestEntry>>,
}

impl Writer {
    fn put(&self, rel: &str, text: &str) -> Result<()> {
        io::write_text(&self.root.join(rel), text)?;
        self.entries.lock().unwrap().push(ManifestEntry {
            path: rel.to_string(),
            sha256: sha256_hex(text.as_bytes()),
            bytes: text.len(),
        });
        Ok(())
    }

    fn put_json<T: Serialize>(&self, rel: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.put(rel, &text)
    }
}

fn load_subjects(config: &PipelineConfig) -> Result<Vec<Subject>> {
    let mut jobs = Vec::new();
    for (g, group) in config.groups.iter().enumerate() {
        if !group.files.is_empty() {
            for (i, f) in group.files.iter().enumerate() {
                jobs.push((g, i, Some(f.clone()), None));
            }
            continue;
        }
        let model = match (&group.preset, &group.model) {
            (Some(p), _) => p.parse::<Preset>()?.model(group.noise, config.sampling_rate)?,
            (_, Some(path)) => {
                let m: MixingModel = io::read_json(path)?;
                m.validate()?;
                m
            }
            _ => unreachable!("validated"),
        };
        for i in 0..group.subjects {
            jobs.push((g, i, None, Some(model.clone())));
        }
    }
    jobs.into_par_iter()
        .map(|(g, i, file, model)| {
            let panel = match (file, model) {
                (Some(f), _) => io::ingest_panel(&f, config.sampling_rate)?,
                (_, Some(m)) => simulate_mixture(&m, config.samples, config.sampling_rate, subject_seed(config.seed, g, i))?,
                _ => unreachable!(),
            };
            Ok(Subject { group: g, index: i, panel })
        })
        .collect()
}

/// Runs every stage and writes the artifacts under `config.output_dir`.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineSummary> {
    let warnings = config.validate()?;
    let subjects = load_subjects(config)?;
    let writer = Writer {
        root: config.output_dir.clone(),
        entries: std::sync::Mutex::new(Vec::new()),
    };
    writer.put_json("config.json", config)?;
    let n_dims = config.max_dim;
    let levels = config.landscape.levels;

    // one spectrum per subject, then landscapes per band and homology dimension
    let results: Vec<Vec<Vec<PersistenceLandscape>>> = subjects
        .par_iter()
        .map(|s| -> Result<Vec<Vec<PersistenceLandscape>>> {
            let group = &config.groups[s.group].name;
            let id = subject_id(s.index);
            if config.write_panels {
                writer.put(&format!("panels/{group}/{id}.csv"), &io::panel_csv(&s.panel))?;
            }
            let spectrum = smoothed_cross_spectrum(&s.panel, &config.spectral)?;
            config
                .bands
                .iter()
                .map(|b| {
                    let dir = format!("{}/{group}/{id}", b.name);
                    let (coherence, distance) = coherence_stage(&spectrum, b.band(), s.panel.sampling_rate(), config.transform)
                        .map_err(|e| Error::Data(format!("band '{}': {e}", b.name)))?;
                    let diagram = persistence_stage(&distance, config.max_dim)?;
                    writer.put(&format!("{dir}/coherence.csv"), &io::coherence_csv(&coherence))?;
                    writer.put(&format!("{dir}/distance.csv"), &io::distance_csv(&distance))?;
                    writer.put_json(&format!("{dir}/diagram.json"), &diagram.to_document())?;
                    writer.put(&format!("{dir}/betti.csv"), &io::betti_csv(&betti_curve(&diagram)))?;
                    (0..n_dims)
                        .map(|k| {
                            let l = landscape_stage(&diagram, k, levels, config.landscape.cap_infinite)?;
                            writer.put_json(&format!("{dir}/landscape_h{k}.json"), &l.to_document())?;
                            Ok(l)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let options = config.permutation_options();
    let mut jobs = Vec::new();
    for (bi, band) in config.bands.iter().enumerate() {
        for k in 0..n_dims {
            jobs.push((bi, band, k));
        }
    }
    let reports: Vec<Option<PermutationTestReport>> = jobs
        .par_iter()
        .map(|&(bi, band, k)| -> Result<Option<PermutationTestReport>> {
            let group_landscapes = |g: usize| -> Vec<PersistenceLandscape> {
                subjects
                    .iter()
                    .zip(&results)
                    .filter(|(s, _)| s.group == g)
                    .map(|(_, r)| r[bi][k].clone())
                    .collect()
            };
            for (g, group) in config.groups.iter().enumerate() {
                let mean = mean_landscape(&group_landscapes(g), &config.landscape.grid)?;
                writer.put(
                    &format!("{}/{}/mean_landscape_h{k}.csv", band.name, group.name),
                    &io::landscape_grid_csv(&mean, &config.landscape.grid),
                )?;
            }
            if config.groups.len() != 2 {
                return Ok(None);
            }
            let report = test_stage(&band.name, group_landscapes(0), group_landscapes(1), &options)?;
            writer.put_json(&format!("{}/test_h{k}.json", band.name), &report)?;
            if config.test.null_csv {
                writer.put(&format!("{}/null_h{k}.csv", band.name), &io::null_csv(&report.null_sample))?;
            }
            Ok(Some(report))
        })
        .collect::<Result<_>>()?;

    let mut artifacts = writer.entries.into_inner().unwrap();
    artifacts.sort_by(|a, b| a.path.cmp(&b.path));
    let manifest = Manifest { artifacts };
    io::write_json(&config.output_dir.join("manifest.json"), &manifest)?;
    Ok(PipelineSummary {
        manifest,
        reports: reports.into_iter().flatten().collect(),
        warnings,
    })
}
