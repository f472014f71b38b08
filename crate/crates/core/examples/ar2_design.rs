//! Placing an AR(2) spectral peak: the root phase sets the peak frequency,
//! the root magnitude sets how sharp it is.
//!
//! cargo run --release --example ar2_design -- [peak_hz] [sampling_rate]

use spectral_tda::sim::{simulate_ar2, Ar2Spec, TimeSeriesPanel, DEFAULT_BURN_IN};
use spectral_tda::spectral::smoothed_cross_spectrum;

fn main() -> spectral_tda::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let peak_hz: f64 = args.first().map_or(10.0, |s| s.parse().expect("peak frequency"));
    let sr: f64 = args.get(1).map_or(100.0, |s| s.parse().expect("sampling rate"));
    let len = 1 << 14;

    println!("target peak {peak_hz} Hz at {sr} Hz sampling");
    println!("{:>6}  {:>8} {:>8}  {:>10}  {:>10}", "M", "phi1", "phi2", "density", "estimate");
    for m in [1.01, 1.05, 1.2, 1.5] {
        let spec = Ar2Spec::with_peak_hz(m, peak_hz, sr, 1.0)?;
        let (phi1, phi2) = spec.coefficients();

        // peak of the exact density on a fine grid
        let exact = (1..5000)
            .map(|i| i as f64 / 10_000.0)
            .max_by(|a, b| spec.spectral_density(*a).total_cmp(&spec.spectral_density(*b)))
            .unwrap()
            * sr;

        let z = simulate_ar2(&spec, len, DEFAULT_BURN_IN, 7);
        let s = smoothed_cross_spectrum(&TimeSeriesPanel::unlabeled(vec![z], sr)?, &Default::default())?;
        let k = (1..s.frequencies().len())
            .max_by(|&a, &b| s.entry(a, 0, 0).re.total_cmp(&s.entry(b, 0, 0).re))
            .unwrap();
        println!(
            "{m:>6.2}  {phi1:>8.4} {phi2:>8.4}  {exact:>8.2}Hz  {:>8.2}Hz",
            s.frequencies()[k] * sr
        );
    }
    Ok(())
}
