//! Sublevel-set persistence of a noisy series before and after smoothing.
//! Every local minimum starts a bar; smoothing removes the short ones.
//!
//! cargo run --release --example morse_filtration -- [window]

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use spectral_tda::embed::{smooth, sublevel_persistence, SmoothedSeries};

fn main() -> spectral_tda::Result<()> {
    let window: usize = std::env::args().nth(1).map_or(21, |s| s.parse().expect("odd window"));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let n = 1000;

    // slow sine plus alternating AR(1) noise
    let mut prev = 0.0;
    let y: Vec<f64> = (0..n)
        .map(|t| {
            let e: f64 = StandardNormal.sample(&mut rng);
            prev = -0.95 * prev + 0.3 * e;
            (2.0 * std::f64::consts::PI * t as f64 / 200.0).sin() + prev
        })
        .collect();

    for series in [SmoothedSeries::raw(y.clone()), smooth(&y, window)?] {
        let pd = sublevel_persistence(&series)?;
        let mut bars = pd.persistences(0);
        bars.truncate(6);
        let show: Vec<String> = bars.iter().map(|b| format!("{b:.3}")).collect();
        println!(
            "window {:>3}: {:>3} finite H0 bars, essential at {:.3}, longest [{}]",
            series.window(),
            pd.finite(0).len(),
            pd.infinite(0)[0],
            show.join(", ")
        );
    }
    Ok(())
}
