use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use spectral_tda::homology::betti_curve;
use spectral_tda::inference::PermutationOptions;
use spectral_tda::landscape::Grid;
use spectral_tda::pipeline::{self, io, PipelineConfig};
use spectral_tda::sim::{simulate_mixture, MixingModel, Preset};
use spectral_tda::spectral::{smoothed_cross_spectrum, Band, DistanceTransform, Kernel, SpectralOptions};
use spectral_tda::{Error, Result};

const THREADS_ENV: &str = "SPECTRAL_TDA_THREADS";

/// Topological analysis of multichannel time series through band-coherence networks.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a mixture of latent AR(2) oscillators into a panel CSV.
    Simulate(SimulateArgs),
    /// Band coherence and distance matrices of a panel CSV.
    Coherence(CoherenceArgs),
    /// Rips persistence diagram of a distance CSV.
    Persist(PersistArgs),
    /// Persistence landscape of one diagram dimension.
    Landscape(LandscapeArgs),
    /// Two-sample permutation test on landscape files.
    Test(TestArgs),
    /// Run every stage from a TOML config.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Built-in example: 1, 2, 3-cyclic or 3-random.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    preset: Option<Preset>,
    /// JSON mixing model.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Noise scale for presets.
    #[arg(long, default_value_t = 1.0)]
    noise: f64,
    #[arg(long, default_value_t = 2048)]
    samples: usize,
    #[arg(long, default_value_t = 100.0)]
    sampling_rate: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output panel CSV; a JSON sidecar with the model is written next to it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CoherenceArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 100.0)]
    sampling_rate: f64,
    /// Band as LOW:HIGH in Hz.
    #[arg(long, value_parser = parse_band)]
    band: Band,
    #[arg(long, default_value_t = Kernel::Rectangular)]
    kernel: Kernel,
    /// Kernel half-width in cycles per sample; defaults to 4/sqrt(T).
    #[arg(long)]
    bandwidth: Option<f64>,
    #[arg(long, default_value_t = DistanceTransform::OneMinus)]
    transform: DistanceTransform,
    /// Directory receiving coherence.csv and distance.csv.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct PersistArgs {
    #[arg(long)]
    distance: PathBuf,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write the Betti curves as CSV.
    #[arg(long)]
    betti: Option<PathBuf>,
}

#[derive(Args)]
struct LandscapeArgs {
    #[arg(long)]
    diagram: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = spectral_tda::landscape::DEFAULT_MAX_LEVELS)]
    levels: usize,
    /// Truncate essential classes at the largest threshold.
    #[arg(long)]
    cap_infinite: bool,
    #[arg(long)]
    out: PathBuf,
    /// Also write the landscape sampled on --grid as CSV.
    #[arg(long)]
    grid_csv: Option<PathBuf>,
    /// Grid as T_MIN:T_MAX:N.
    #[arg(long, value_parser = parse_grid, default_value = "0:1:512")]
    grid: Grid,
}

#[derive(Args)]
struct TestArgs {
    /// Landscape JSON files of the first group.
    #[arg(long, num_args = 1.., required = true)]
    group1: Vec<PathBuf>,
    #[arg(long, num_args = 1.., required = true)]
    group2: Vec<PathBuf>,
    /// Band label recorded in the report.
    #[arg(long, default_value = "band")]
    band: String,
    #[arg(long, default_value_t = 999)]
    permutations: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = spectral_tda::landscape::DEFAULT_MAX_LEVELS)]
    levels: usize,
    /// Number of simultaneous tests for a Bonferroni correction.
    #[arg(long)]
    bonferroni: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    null_csv: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    permutations: Option<usize>,
}

fn parse_band(s: &str) -> std::result::Result<Band, String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LOW:HIGH")?;
    let lo = lo.trim().parse::<f64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok(Band::new(lo, hi))
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err("expected T_MIN:T_MAX:N".into());
    };
    let a = a.parse::<f64>().map_err(|e| e.to_string())?;
    let b = b.parse::<f64>().map_err(|e| e.to_string())?;
    let n = n.parse::<usize>().map_err(|e| e.to_string())?;
    Grid::new(a, b, n).map_err(|e| e.to_string())
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let model = match (&args.preset, &args.model) {
        (Some(p), _) => p.model(args.noise, args.sampling_rate)?,
        (_, Some(path)) => io::read_json::<MixingModel>(path)?,
        _ => return Err(Error::Config("either --preset or --model is required".into())),
    };
    let panel = simulate_mixture(&model, args.samples, args.sampling_rate, args.seed)?;
    io::write_text(&args.out, &io::panel_csv(&panel))?;
    let sidecar = json!({
        "sampling_rate": args.sampling_rate,
        "samples": args.samples,
        "seed": args.seed,
        "labels": panel.labels(),
        "preset": args.preset.map(|p| p.id()),
        "model": model,
    });
    io::write_json(&args.out.with_extension("json"), &sidecar)
}

fn coherence(args: CoherenceArgs) -> Result<()> {
    let panel = io::ingest_panel(&args.input, args.sampling_rate)?;
    let options = SpectralOptions {
        kernel: args.kernel,
        bandwidth: args.bandwidth,
        ..Default::default()
    };
    let spectrum = smoothed_cross_spectrum(&panel, &options)?;
    let (c, d) = pipeline::coherence_stage(&spectrum, args.band, args.sampling_rate, args.transform)?;
    io::write_text(&args.out_dir.join("coherence.csv"), &io::coherence_csv(&c))?;
    io::write_text(&args.out_dir.join("distance.csv"), &io::distance_csv(&d))
}

fn persist(args: PersistArgs) -> Result<()> {
    let distance = io::read_distance(&args.distance)?;
    let diagram = pipeline::persistence_stage(&distance, args.max_dim)?;
    io::write_diagram(&args.out, &diagram)?;
    if let Some(path) = &args.betti {
        io::write_text(path, &io::betti_csv(&betti_curve(&diagram)))?;
    }
    Ok(())
}

fn landscape(args: LandscapeArgs) -> Result<()> {
    let diagram = io::read_diagram(&args.diagram)?;
    let l = pipeline::landscape_stage(&diagram, args.dim, args.levels, args.cap_infinite)?;
    io::write_landscape(&args.out, &l)?;
    if let Some(path) = &args.grid_csv {
        io::write_text(path, &io::landscape_grid_csv(&l, &args.grid))?;
    }
    Ok(())
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<spectral_tda::landscape::PersistenceLandscape>> {
    paths.iter().map(|p| io::read_landscape(p)).collect()
}

fn test(args: TestArgs) -> Result<()> {
    let options = PermutationOptions {
        permutations: args.permutations,
        alpha: args.alpha,
        seed: args.seed,
        levels: args.levels,
        bonferroni: args.bonferroni,
    };
    let report = pipeline::test_stage(&args.band, load_all(&args.group1)?, load_all(&args.group2)?, &options)?;
    io::write_json(&args.out, &report)?;
    if let Some(path) = &args.null_csv {
        io::write_text(path, &io::null_csv(&report.null_sample))?;
    }
    println!(
        "{} H{}: T = {:.6}, p = {:.4}, threshold = {:.6}, reject = {}",
        report.band, report.homology_dim, report.observed, report.p_value, report.threshold, report.reject
    );
    Ok(())
}

fn run_pipeline(args: PipelineArgs) -> Result<()> {
    let mut config = PipelineConfig::from_toml_file(&args.config)?;
    if let Some(dir) = args.output_dir {
        config.output_dir = dir;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(b) = args.permutations {
        config.test.permutations = b;
    }
    let summary = pipeline::run_pipeline(&config)?;
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    for r in &summary.reports {
        println!(
            "{:>8} H{}: T = {:.6}, p = {:.4}, reject = {}",
            r.band, r.homology_dim, r.observed, r.p_value, r.reject
        );
    }
    println!(
        "{} artifacts listed in {}",
        summary.manifest.artifacts.len(),
        Path::new(&config.output_dir).join("manifest.json").display()
    );
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .map_err(|_| Error::Config(format!("{THREADS_ENV}='{value}' is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("cannot start {n} threads: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Coherence(a) => coherence(a),
        Command::Persist(a) => persist(a),
        Command::Landscape(a) => landscape(a),
        Command::Test(a) => test(a),
        Command::Pipeline(a) => run_pipeline(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
