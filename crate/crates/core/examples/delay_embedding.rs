//! Delay embedding of one channel. A periodic signal traces a loop, which
//! shows up as a single dominant H1 bar; noise shortens it.
//!
//! cargo run --release --example delay_embedding -- [period] [lag]

use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use spectral_tda::embed::{cloud_distances, delay_embed};
use spectral_tda::homology::{persistence, rips_filtration};

fn main() -> spectral_tda::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let period: f64 = args.first().map_or(64.0, |s| s.parse().expect("period"));
    let lag: usize = args.get(1).map_or(16, |s| s.parse().expect("lag"));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);

    for sd in [0.0, 0.1, 0.3] {
        let noise = Normal::new(0.0, sd).unwrap();
        let y: Vec<f64> = (1..=512)
            .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period).sin() + noise.sample(&mut rng))
            .collect();
        let cloud = delay_embed(&y, 2, lag)?.subsample(5);
        let pd = persistence(&rips_filtration(&cloud_distances(&cloud), 2)?);
        let bars = pd.persistences(1);
        let show: Vec<String> = bars.iter().take(4).map(|b| format!("{b:.3}")).collect();
        println!(
            "noise sd {sd:.1}: {} points, {} H1 bars, longest [{}]",
            cloud.len(),
            bars.len(),
            show.join(", ")
        );
    }
    Ok(())
}
