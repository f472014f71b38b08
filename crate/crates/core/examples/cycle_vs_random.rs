//! Six channels on a ring of shared latents against six channels with the
//! same number of links and no loop, tested on alpha-band H1 landscapes.
//!
//! cargo run --release --example cycle_vs_random -- [subjects] [noise]

use spectral_tda::homology::{persistence, rips_filtration};
use spectral_tda::inference::{permutation_test, GroupSample, PermutationOptions};
use spectral_tda::landscape::{landscape_from_diagram, lp_norm, mean_landscape_exact, Norm, PersistenceLandscape};
use spectral_tda::pipeline::subject_seed;
use spectral_tda::sim::{preset_example, Preset};
use spectral_tda::spectral::{band_coherence, coherence_to_distance, smoothed_cross_spectrum, Band, DistanceTransform};

fn landscapes(preset: Preset, group: usize, subjects: usize, noise: f64) -> spectral_tda::Result<Vec<PersistenceLandscape>> {
    let sr = 100.0;
    (0..subjects)
        .map(|i| {
            let (panel, _) = preset_example(preset, noise, subject_seed(42, group, i), 2048, sr)?;
            let spectrum = smoothed_cross_spectrum(&panel, &Default::default())?;
            let c = band_coherence(&spectrum, Band::new(8.0, 12.0), sr)?;
            let pd = persistence(&rips_filtration(&coherence_to_distance(&c, DistanceTransform::OneMinus), 2)?);
            Ok(landscape_from_diagram(&pd, 1, 16))
        })
        .collect()
}

fn main() -> spectral_tda::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let subjects: usize = args.first().map_or(20, |s| s.parse().expect("subject count"));
    let noise: f64 = args.get(1).map_or(0.5, |s| s.parse().expect("noise scale"));

    let cyclic = landscapes(Preset::Cyclic, 0, subjects, noise)?;
    let random = landscapes(Preset::Random, 1, subjects, noise)?;
    for (name, group) in [("cyclic", &cyclic), ("random", &random)] {
        let mean = mean_landscape_exact(group)?;
        println!("{name:>7}: mean H1 landscape L2 norm {:.5}", lp_norm(&mean, Norm::L2, 16));
    }

    let report = permutation_test(
        &GroupSample::new(cyclic, "alpha")?,
        &GroupSample::new(random, "alpha")?,
        &PermutationOptions {
            permutations: 999,
            ..Default::default()
        },
    )?;
    println!(
        "T = {:.5}, 95% null quantile {:.5}, p = {:.4}, reject = {}",
        report.observed, report.threshold, report.p_value, report.reject
    );
    Ok(())
}
