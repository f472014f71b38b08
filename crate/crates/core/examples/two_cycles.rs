//! Two loops of shared latents in nine channels: the alpha-band coherence
//! network carries two long-lived one-dimensional classes.
//!
//! cargo run --release --example two_cycles -- [noise] [seeds] [samples]

use spectral_tda::homology::{persistence, rips_filtration};
use spectral_tda::sim::{preset_example, Preset};
use spectral_tda::spectral::{band_coherence, coherence_to_distance, smoothed_cross_spectrum, Band, DistanceTransform};

fn main() -> spectral_tda::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let noise: f64 = args.first().map_or(0.5, |s| s.parse().expect("noise scale"));
    let seeds: u64 = args.get(1).map_or(5, |s| s.parse().expect("seed count"));
    let samples: usize = args.get(2).map_or(1 << 13, |s| s.parse().expect("sample count"));
    let sr = 100.0;

    println!("noise {noise}, T = {samples}, alpha band");
    println!("{:>4}  {:>8} {:>8} {:>8}  {:>6}", "seed", "h1 #1", "h1 #2", "h1 #3", "ratio");
    for seed in 0..seeds {
        let (panel, _) = preset_example(Preset::TwoCycles, noise, seed, samples, sr)?;
        let spectrum = smoothed_cross_spectrum(&panel, &Default::default())?;
        let coherence = band_coherence(&spectrum, Band::new(8.0, 12.0), sr)?;
        let distance = coherence_to_distance(&coherence, DistanceTransform::OneMinus);
        let diagram = persistence(&rips_filtration(&distance, 2)?);
        let mut top = diagram.persistences(1);
        top.resize(3.max(top.len()), 0.0);
        let ratio = top[1] / top[2];
        println!("{seed:>4}  {:>8.4} {:>8.4} {:>8.4}  {ratio:>6.2}", top[0], top[1], top[2]);
    }
    Ok(())
}
