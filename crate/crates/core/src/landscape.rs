//! Persistence landscapes.
//!
//! A pair `(b, d)` contributes the tent `max(0, min(t - b, d - t))`, and the
//! level `λ_k(t)` is the k-th largest tent value at `t`. Between consecutive
//! critical points (births, deaths, midpoints and crossings of a rising edge
//! with a falling edge) every level follows a single tent piece, so a level
//! is stored as knots plus the piece that generates each segment. Evaluation
//! then runs the same arithmetic as the definition.
//!
//! Averages and differences of landscapes are piecewise linear on the union
//! of the knots and are stored by interpolation. A grid-backed landscape
//! keeps its values on a uniform grid and is normed with the trapezoidal
//! rule.

use serde::{Deserialize, Serialize};

use crate::homology::PersistenceDiagram;
use crate::{Error, Result};

/// Default number of levels kept per landscape.
pub const DEFAULT_MAX_LEVELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Piece {
    Zero,
    /// `t - birth`
    Rise(f64),
    /// `death - t`
    Fall(f64),
    /// Linear interpolation between the segment's knot values.
    Linear,
}

/// One level `λ_k` with compact support `[knots[0], knots[last]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Level {
    knots: Vec<f64>,
    values: Vec<f64>,
    pieces: Vec<Piece>,
}

impl Level {
    fn linear(knots: Vec<f64>, values: Vec<f64>) -> Self {
        let pieces = vec![Piece::Linear; knots.len().saturating_sub(1)];
        Self { knots, values, pieces }
    }

    /// Breakpoints `(t, λ(t))`.
    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.knots.iter().copied().zip(self.values.iter().copied())
    }

    pub fn value(&self, t: f64) -> f64 {
        let n = self.knots.len();
        if n == 0 || t < self.knots[0] || t > self.knots[n - 1] {
            return 0.0;
        }
        let idx = self.knots.partition_point(|&k| k <= t);
        // knots[idx - 1] <= t < knots[idx]
        if self.knots[idx - 1] == t {
            return self.values[idx - 1];
        }
        let seg = idx - 1;
        match self.pieces[seg] {
            Piece::Zero => 0.0,
            Piece::Rise(b) => t - b,
            Piece::Fall(d) => d - t,
            Piece::Linear => {
                let (t0, t1) = (self.knots[seg], self.knots[seg + 1]);
                let (v0, v1) = (self.values[seg], self.values[seg + 1]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
        }
    }
}

/// Uniform evaluation grid with `n >= 2` points from `t_min` to `t_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        if !(t_min < t_max) || !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::Domain(format!("grid needs t_min < t_max, got [{t_min}, {t_max}]")));
        }
        if n < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points, got {n}")));
        }
        Ok(Self { t_min, t_max, n })
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.t_max - self.t_min) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i + 1 == self.n {
                    self.t_max
                } else {
                    self.t_min + i as f64 * step
                }
            })
            .collect()
    }

    /// Trapezoidal quadrature weights.
    pub fn weights(&self) -> Vec<f64> {
        let step = (self.t_max - self.t_min) / (self.n - 1) as f64;
        (0..self.n)
            .map(|i| if i == 0 || i + 1 == self.n { step / 2.0 } else { step })
            .collect()
    }
}

impl Default for Grid {
    /// `[0, 1]` with 512 points, the natural range of `1 - coherence` distances.
    fn default() -> Self {
        Self {
            t_min: 0.0,
            t_max: 1.0,
            n: 512,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceLandscape {
    homology_dim: usize,
    levels: Vec<Level>,
    grid: Option<Grid>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    L1,
    L2,
    Inf,
}

impl PersistenceLandscape {
    pub fn zero(homology_dim: usize) -> Self {
        Self {
            homology_dim,
            levels: Vec::new(),
            grid: None,
        }
    }

    pub fn homology_dim(&self) -> usize {
        self.homology_dim
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn grid(&self) -> Option<&Grid> {
        self.grid.as_ref()
    }

    /// `λ_level(t)` with `level` zero-based; zero beyond the stored levels.
    pub fn value(&self, level: usize, t: f64) -> f64 {
        self.levels.get(level).map_or(0.0, |l| l.value(t))
    }

    /// Grid-backed landscape from per-level values on `grid`.
    pub fn from_grid_values(homology_dim: usize, grid: Grid, values: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(row) = values.iter().find(|row| row.len() != grid.n) {
            return Err(Error::Dimension(format!("{} grid values for a {}-point grid", row.len(), grid.n)));
        }
        let points = grid.points();
        Ok(Self {
            homology_dim,
            levels: values.into_iter().map(|v| Level::linear(points.clone(), v)).collect(),
            grid: Some(grid),
        })
    }

    /// The same functions sampled on `grid`.
    pub fn on_grid(&self, grid: &Grid) -> Self {
        let values = evaluate_on(self, &grid.points());
        Self::from_grid_values(self.homology_dim, *grid, values).expect("values match the grid")
    }

    /// Translates every level by `shift` along the scale axis.
    pub fn shifted(&self, shift: f64) -> Self {
        let levels = self
            .levels
            .iter()
            .map(|l| Level {
                knots: l.knots.iter().map(|t| t + shift).collect(),
                values: l.values.clone(),
                pieces: l
                    .pieces
                    .iter()
                    .map(|p| match *p {
                        Piece::Rise(b) => Piece::Rise(b + shift),
                        Piece::Fall(d) => Piece::Fall(d + shift),
                        other => other,
                    })
                    .collect(),
            })
            .collect();
        Self {
            homology_dim: self.homology_dim,
            levels,
            grid: None,
        }
    }

    pub fn to_document(&self) -> LandscapeDocument {
        LandscapeDocument {
            dim: self.homology_dim,
            levels: self.levels.iter().map(|l| l.breakpoints().map(|(t, v)| [t, v]).collect()).collect(),
            grid: self.grid,
        }
    }

    /// Rebuilds a landscape from its breakpoints; segments interpolate linearly.
    pub fn from_document(doc: &LandscapeDocument) -> Result<Self> {
        let mut levels = Vec::with_capacity(doc.levels.len());
        for (k, pts) in doc.levels.iter().enumerate() {
            if pts.windows(2).any(|w| !(w[0][0] < w[1][0])) {
                return Err(Error::Data(format!("level {} breakpoints are not strictly increasing", k + 1)));
            }
            if pts.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Data(format!("level {} has a non-finite breakpoint", k + 1)));
            }
            levels.push(Level::linear(
                pts.iter().map(|p| p[0]).collect(),
                pts.iter().map(|p| p[1]).collect(),
            ));
        }
        if let Some(grid) = &doc.grid {
            Grid::new(grid.t_min, grid.t_max, grid.n)?;
            if levels.iter().any(|l| l.knots.len() != grid.n) {
                return Err(Error::Data("grid-backed landscape level does not match its grid".into()));
            }
        }
        Ok(Self {
            homology_dim: doc.dim,
            levels,
            grid: doc.grid,
        })
    }
}

/// On-disk form: `{"dim": k, "levels": [[[t, v], ...], ...], "grid": {...} | null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LandscapeDocument {
    pub dim: usize,
    pub levels: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub grid: Option<Grid>,
}

fn tent(b: f64, d: f64, t: f64) -> f64 {
    (t - b).min(d - t).max(0.0)
}

fn piece_at(b: f64, d: f64, t: f64) -> Piece {
    if t <= b || t >= d {
        Piece::Zero
    } else if t - b <= d - t {
        Piece::Rise(b)
    } else {
        Piece::Fall(d)
    }
}

/// Landscape of the finite pairs of `diagram` in dimension `dim`. Essential
/// classes are left out.
pub fn landscape_from_diagram(diagram: &PersistenceDiagram, dim: usize, max_levels: usize) -> PersistenceLandscape {
    landscape_from_pairs(diagram.finite(dim), dim, max_levels)
}

/// As [`landscape_from_diagram`], with essential classes born below `cap`
/// truncated to `(birth, cap)`.
pub fn landscape_from_diagram_capped(diagram: &PersistenceDiagram, dim: usize, max_levels: usize, cap: f64) -> PersistenceLandscape {
    let mut pairs = diagram.finite(dim).to_vec();
    pairs.extend(diagram.infinite(dim).iter().filter(|&&b| b < cap).map(|&b| (b, cap)));
    landscape_from_pairs(&pairs, dim, max_levels)
}

pub fn landscape_from_pairs(pairs: &[(f64, f64)], homology_dim: usize, max_levels: usize) -> PersistenceLandscape {
    let pairs: Vec<(f64, f64)> = pairs.iter().copied().filter(|(b, d)| d > b).collect();
    let n_levels = max_levels.min(pairs.len());
    if n_levels == 0 {
        return PersistenceLandscape::zero(homology_dim);
    }

    let mut critical: Vec<f64> = Vec::with_capacity(3 * pairs.len());
    for &(b, d) in &pairs {
        critical.extend([b, d, (b + d) / 2.0]);
    }
    for &(bi, di) in &pairs {
        let mi = (bi + di) / 2.0;
        for &(bj, dj) in &pairs {
            let mj = (bj + dj) / 2.0;
            let t = (bi + dj) / 2.0;
            if t > bi && t < mi && t > mj && t < dj {
                critical.push(t);
            }
        }
    }
    critical.sort_by(f64::total_cmp);
    critical.dedup();

    let top_k = |t: f64| -> Vec<usize> {
        let mut idx: Vec<usize> = (0..pairs.len()).collect();
        let value = |i: usize| tent(pairs[i].0, pairs[i].1, t);
        idx.sort_by(|&a, &b| value(b).total_cmp(&value(a)).then(a.cmp(&b)));
        idx.truncate(n_levels);
        idx
    };

    let knot_values: Vec<Vec<f64>> = critical
        .iter()
        .map(|&t| top_k(t).into_iter().map(|i| tent(pairs[i].0, pairs[i].1, t)).collect())
        .collect();
    let segment_pieces: Vec<Vec<Piece>> = critical
        .windows(2)
        .map(|w| {
            let mid = w[0] + (w[1] - w[0]) / 2.0;
            top_k(mid).into_iter().map(|i| piece_at(pairs[i].0, pairs[i].1, mid)).collect()
        })
        .collect();

    let levels = (0..n_levels)
        .map(|k| {
            let mut knots = vec![critical[0]];
            let mut values = vec![knot_values[0][k]];
            let mut pieces: Vec<Piece> = Vec::new();
            for (s, seg) in segment_pieces.iter().enumerate() {
                let piece = seg[k];
                if pieces.last() == Some(&piece) {
                    // same line continues: move the end knot
                    *knots.last_mut().unwrap() = critical[s + 1];
                    *values.last_mut().unwrap() = knot_values[s + 1][k];
                } else {
                    pieces.push(piece);
                    knots.push(critical[s + 1]);
                    values.push(knot_values[s + 1][k]);
                }
            }
            trim_zero_ends(Level { knots, values, pieces })
        })
        .filter(|l| !l.pieces.is_empty())
        .collect();

    PersistenceLandscape {
        homology_dim,
        levels,
        grid: None,
    }
}

fn trim_zero_ends(mut level: Level) -> Level {
    while level.pieces.first() == Some(&Piece::Zero) {
        level.pieces.remove(0);
        level.knots.remove(0);
        level.values.remove(0);
    }
    while level.pieces.last() == Some(&Piece::Zero) {
        level.pieces.pop();
        level.knots.pop();
        level.values.pop();
    }
    if level.pieces.is_empty() {
        level.knots.clear();
        level.values.clear();
    }
    level
}

fn evaluate_on(landscape: &PersistenceLandscape, points: &[f64]) -> Vec<Vec<f64>> {
    landscape
        .levels
        .iter()
        .map(|l| points.iter().map(|&t| l.value(t)).collect())
        .collect()
}

/// Stored levels evaluated on `grid`, one row per level.
pub fn evaluate(landscape: &PersistenceLandscape, grid: &Grid) -> Vec<Vec<f64>> {
    evaluate_on(landscape, &grid.points())
}

fn check_dims(ls: &[&PersistenceLandscape]) -> Result<usize> {
    let first = ls.first().ok_or_else(|| Error::Data("no landscapes to combine".into()))?;
    let dim = first.homology_dim;
    if let Some(other) = ls.iter().find(|l| l.homology_dim != dim) {
        return Err(Error::Dimension(format!(
            "landscapes of homology dimensions {dim} and {} cannot be combined",
            other.homology_dim
        )));
    }
    Ok(dim)
}

/// Pointwise mean on `grid`; the level count is the largest among the inputs.
pub fn mean_landscape(ls: &[PersistenceLandscape], grid: &Grid) -> Result<PersistenceLandscape> {
    let refs: Vec<&PersistenceLandscape> = ls.iter().collect();
    let dim = check_dims(&refs)?;
    let n_levels = ls.iter().map(|l| l.n_levels()).max().unwrap_or(0);
    let points = grid.points();
    let mut sums = vec![vec![0.0; grid.n]; n_levels];
    for l in ls {
        for (k, level) in l.levels.iter().enumerate() {
            for (s, &t) in sums[k].iter_mut().zip(&points) {
                *s += level.value(t);
            }
        }
    }
    let n = ls.len() as f64;
    sums.iter_mut().flatten().for_each(|s| *s /= n);
    PersistenceLandscape::from_grid_values(dim, *grid, sums)
}

/// `Σ cᵢ·Lᵢ` computed exactly on the union of the knots. When every input
/// shares one grid the result stays grid-backed.
pub fn linear_combination(terms: &[(f64, &PersistenceLandscape)]) -> Result<PersistenceLandscape> {
    let refs: Vec<&PersistenceLandscape> = terms.iter().map(|(_, l)| *l).collect();
    let dim = check_dims(&refs)?;
    let shared_grid = refs[0].grid.filter(|g| refs.iter().all(|l| l.grid.as_ref() == Some(g)));
    let n_levels = refs.iter().map(|l| l.n_levels()).max().unwrap_or(0);
    let levels = (0..n_levels)
        .map(|k| {
            let mut knots: Vec<f64> = refs
                .iter()
                .filter_map(|l| l.levels.get(k))
                .flat_map(|lv| lv.knots.iter().copied())
                .collect();
            knots.sort_by(f64::total_cmp);
            knots.dedup();
            let values = knots.iter().map(|&t| terms.iter().map(|(c, l)| c * l.value(k, t)).sum()).collect();
            Level::linear(knots, values)
        })
        .collect();
    Ok(PersistenceLandscape {
        homology_dim: dim,
        levels,
        grid: shared_grid,
    })
}

/// Exact pointwise mean, piecewise linear on the union of the knots.
pub fn mean_landscape_exact(ls: &[PersistenceLandscape]) -> Result<PersistenceLandscape> {
    let w = 1.0 / ls.len().max(1) as f64;
    let terms: Vec<(f64, &PersistenceLandscape)> = ls.iter().map(|l| (w, l)).collect();
    linear_combination(&terms)
}

fn segment_abs_integral(dt: f64, v0: f64, v1: f64) -> f64 {
    if v0 * v1 >= 0.0 {
        dt * (v0.abs() + v1.abs()) / 2.0
    } else {
        dt * (v0 * v0 + v1 * v1) / (2.0 * (v0.abs() + v1.abs()))
    }
}

/// Norm over the first `levels` levels: `(Σₖ ∫|λₖ|ᵖ)^(1/p)` for p = 1, 2 and
/// `maxₖ sup|λₖ|` for p = ∞. Breakpoint landscapes integrate exactly,
/// grid-backed ones use the trapezoidal rule.
pub fn lp_norm(landscape: &PersistenceLandscape, norm: Norm, levels: usize) -> f64 {
    let used = &landscape.levels[..levels.min(landscape.levels.len())];
    if norm == Norm::Inf {
        return used.iter().flat_map(|l| l.values.iter()).fold(0.0, |m, v| m.max(v.abs()));
    }
    let mut total = 0.0;
    for l in used {
        match &landscape.grid {
            Some(grid) => {
                for (w, v) in grid.weights().iter().zip(&l.values) {
                    total += w * if norm == Norm::L1 { v.abs() } else { v * v };
                }
            }
            None => {
                for s in 0..l.pieces.len() {
                    let dt = l.knots[s + 1] - l.knots[s];
                    let (v0, v1) = (l.values[s], l.values[s + 1]);
                    total += match norm {
                        Norm::L1 => segment_abs_integral(dt, v0, v1),
                        _ => dt * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0,
                    };
                }
            }
        }
    }
    match norm {
        Norm::L2 => total.sqrt(),
        _ => total,
    }
}

/// `Σₖ ∫ aₖ bₖ` over the first `levels` levels: trapezoidal when both share
/// a grid, exact otherwise.
pub fn inner_product(a: &PersistenceLandscape, b: &PersistenceLandscape, levels: usize) -> f64 {
    let n = levels.min(a.n_levels()).min(b.n_levels());
    let mut total = 0.0;
    for k in 0..n {
        let (la, lb) = (&a.levels[k], &b.levels[k]);
        match (&a.grid, &b.grid) {
            (Some(ga), Some(gb)) if ga == gb => {
                for ((w, x), y) in ga.weights().iter().zip(&la.values).zip(&lb.values) {
                    total += w * x * y;
                }
            }
            _ => {
                if la.knots.is_empty() || lb.knots.is_empty() {
                    continue;
                }
                let lo = la.knots[0].max(lb.knots[0]);
                let hi = la.knots[la.knots.len() - 1].min(lb.knots[lb.knots.len() - 1]);
                if !(lo < hi) {
                    continue;
                }
                let mut knots: Vec<f64> = la.knots.iter().chain(&lb.knots).copied().filter(|&t| t >= lo && t <= hi).collect();
                knots.sort_by(f64::total_cmp);
                knots.dedup();
                let fa: Vec<f64> = knots.iter().map(|&t| la.value(t)).collect();
                let fb: Vec<f64> = knots.iter().map(|&t| lb.value(t)).collect();
                for s in 0..knots.len() - 1 {
                    let dt = knots[s + 1] - knots[s];
                    total += dt / 6.0 * (2.0 * fa[s] * fb[s] + fa[s] * fb[s + 1] + fa[s + 1] * fb[s] + 2.0 * fa[s + 1] * fb[s + 1]);
                }
            }
        }
    }
    total
}
