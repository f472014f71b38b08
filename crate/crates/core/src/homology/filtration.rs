use std::cmp::Ordering;

use crate::spectral::DistanceMatrix;
use crate::{Error, Result};

/// Largest number of top-dimensional simplices the clique enumeration accepts.
pub const CLIQUE_BUDGET: u128 = 10_000_000;

/// A simplex with at most four vertices, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Simplex {
    vertices: [u32; 4],
    dim: u8,
    value: f64,
}

impl Simplex {
    pub fn new(vertices: &[u32], value: f64) -> Self {
        assert!((1..=4).contains(&vertices.len()), "simplices have 1 to 4 vertices");
        let mut v = [0u32; 4];
        v[..vertices.len()].copy_from_slice(vertices);
        v[..vertices.len()].sort_unstable();
        Self {
            vertices: v,
            dim: (vertices.len() - 1) as u8,
            value,
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices[..self.dim as usize + 1]
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Filtration order: value, then dimension, then vertices lexicographically.
    pub fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.dim.cmp(&other.dim))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

/// A Vietoris-Rips filtration in filtration order.
#[derive(Clone, Debug)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    n_vertices: usize,
    max_dim: usize,
    thresholds: Vec<f64>,
}

impl Filtration {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Highest simplex dimension enumerated; homology is complete below it.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Sorted distinct edge values.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Clique filtration of `distances` with simplices up to dimension `max_dim`.
pub fn rips_filtration(distances: &DistanceMatrix, max_dim: usize) -> Result<Filtration> {
    if !(1..=3).contains(&max_dim) {
        return Err(Error::Domain(format!("max_dim must be 1, 2 or 3, got {max_dim}")));
    }
    let p = distances.len();
    let top = binomial(p, max_dim + 1);
    if top > CLIQUE_BUDGET {
        return Err(Error::Guard(format!(
            "{top} simplices of dimension {max_dim} on {p} vertices exceed the enumeration budget of {CLIQUE_BUDGET}"
        )));
    }

    let d = distances.rows();
    let mut simplices = Vec::new();
    let mut stack = Vec::with_capacity(4);
    for v in 0..p {
        enumerate_cofaces(d, v, 0.0, &mut stack, max_dim, &mut simplices);
    }
    simplices.sort_by(Simplex::filtration_cmp);

    let mut thresholds: Vec<f64> = simplices.iter().filter(|s| s.dim() == 1).map(|s| s.value).collect();
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    Ok(Filtration {
        simplices,
        n_vertices: p,
        max_dim,
        thresholds,
    })
}

fn enumerate_cofaces(d: &[Vec<f64>], v: usize, value: f64, stack: &mut Vec<u32>, max_dim: usize, out: &mut Vec<Simplex>) {
    let value = stack.iter().fold(value, |acc, &u| acc.max(d[u as usize][v]));
    stack.push(v as u32);
    out.push(Simplex::new(stack, value));
    if stack.len() <= max_dim {
        for w in v + 1..d.len() {
            enumerate_cofaces(d, w, value, stack, max_dim, out);
        }
    }
    stack.pop();
}
