//! Landscapes of two overlapping bars: the first level has two peaks and a
//! valley, the second level is the overlap.
//!
//! cargo run --example landscapes

use spectral_tda::landscape::{inner_product, landscape_from_pairs, linear_combination, lp_norm, mean_landscape_exact, Grid, Norm};

fn main() -> spectral_tda::Result<()> {
    let l = landscape_from_pairs(&[(0.0, 2.0), (1.0, 3.0)], 1, 8);
    for (k, level) in l.levels().iter().enumerate() {
        let knots: Vec<String> = level.breakpoints().map(|(t, v)| format!("({t}, {v})")).collect();
        println!("level {}: {}", k + 1, knots.join(" "));
    }
    for norm in [Norm::L1, Norm::L2, Norm::Inf] {
        println!("{norm:?} norm {:.6}", lp_norm(&l, norm, 8));
    }

    let single = landscape_from_pairs(&[(0.0, 2.0)], 1, 8);
    println!(
        "single bar L2 norm {:.12} (sqrt(2/3) = {:.12})",
        lp_norm(&single, Norm::L2, 1),
        (2.0f64 / 3.0).sqrt()
    );

    let mean = mean_landscape_exact(&[l.clone(), single.clone()])?;
    let diff = linear_combination(&[(1.0, &l), (-1.0, &single)])?;
    println!("mean level-1 peak {:.3}", mean.value(0, 1.0));
    println!(
        "<l, single> = {:.6}, |l - single| = {:.6}",
        inner_product(&l, &single, 8),
        lp_norm(&diff, Norm::L2, 8)
    );

    let grid = Grid::new(0.0, 3.0, 7)?;
    let sampled = l.on_grid(&grid);
    let row: Vec<String> = grid.points().iter().map(|&t| format!("{:.2}", sampled.value(0, t))).collect();
    println!("level 1 on {} grid points: {}", grid.n, row.join(" "));
    Ok(())
}
