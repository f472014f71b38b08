//! Bottleneck and Wasserstein distances between the diagram of a random
//! dissimilarity matrix and diagrams of perturbed copies. The bottleneck
//! shift never exceeds the largest entry change.
//!
//! cargo run --release --example diagram_distances -- [points]

use rand::{Rng, SeedableRng};
use spectral_tda::homology::{bottleneck, persistence, rips_filtration, wasserstein};
use spectral_tda::spectral::DistanceMatrix;

fn main() -> spectral_tda::Result<()> {
    let p: usize = std::env::args().nth(1).map_or(12, |s| s.parse().expect("point count"));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    let mut d = vec![vec![0.0; p]; p];
    for i in 0..p {
        for j in i + 1..p {
            d[i][j] = rng.random_range(0.1..1.0);
            d[j][i] = d[i][j];
        }
    }
    let base = persistence(&rips_filtration(&DistanceMatrix::new(d.clone())?, 2)?);

    println!("{:>6}  {:>9} {:>9} {:>9}", "delta", "bottleneck", "W1", "W2");
    for delta in [0.001, 0.01, 0.05, 0.1] {
        let mut e = d.clone();
        for i in 0..p {
            for j in i + 1..p {
                e[i][j] += rng.random_range(-delta..=delta);
                e[j][i] = e[i][j];
            }
        }
        let moved = persistence(&rips_filtration(&DistanceMatrix::new(e)?, 2)?);
        println!(
            "{delta:>6}  {:>10.5} {:>9.5} {:>9.5}",
            bottleneck(&base, &moved, 1)?,
            wasserstein(&base, &moved, 1, 1.0)?,
            wasserstein(&base, &moved, 1, 2.0)?
        );
    }
    Ok(())
}
