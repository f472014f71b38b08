//! Persistent homology of distance matrices.
//!
//! [`rips_filtration`] enumerates the clique complex, [`persistence`] reduces
//! its boundary matrix over Z/2 and [`betti_curve`], [`bottleneck`] and
//! [`wasserstein`] summarise and compare the resulting diagrams.

mod filtration;
mod metrics;
mod reduction;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use filtration::{rips_filtration, Filtration, Simplex, CLIQUE_BUDGET};
pub use metrics::{bottleneck, wasserstein, MAX_EXACT_POINTS};
pub use reduction::{boundary_columns, persistence, reduce_naive, reduce_with_clearing, zero_dim_union_find, Pairing};

use crate::{Error, Result};

/// Birth-death pairs per homology dimension.
///
/// Finite pairs always satisfy `death > birth`. Essential classes (infinite
/// death) are kept apart as a list of births.
#[derive(Clone, Debug, PartialEq)]
pub struct PersistenceDiagram {
    finite: Vec<Vec<(f64, f64)>>,
    infinite: Vec<Vec<f64>>,
    thresholds: Vec<f64>,
    max_dim: usize,
    source_hash: Option<String>,
}

fn sort_pairs(pairs: &mut [(f64, f64)]) {
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
}

impl PersistenceDiagram {
    /// Diagram from per-dimension pairs. Pairs with `death <= birth` are dropped.
    pub fn new(finite: Vec<Vec<(f64, f64)>>, infinite: Vec<Vec<f64>>) -> Self {
        let n_dims = finite.len().max(infinite.len());
        let mut finite = finite;
        let mut infinite = infinite;
        finite.resize(n_dims, Vec::new());
        infinite.resize(n_dims, Vec::new());
        for pairs in finite.iter_mut() {
            pairs.retain(|(b, d)| d > b);
            sort_pairs(pairs);
        }
        for births in infinite.iter_mut() {
            births.sort_by(f64::total_cmp);
        }
        Self {
            finite,
            infinite,
            thresholds: Vec::new(),
            max_dim: n_dims,
            source_hash: None,
        }
    }

    /// Single-dimension diagram, handy for tests and examples.
    pub fn from_dim(dim: usize, pairs: Vec<(f64, f64)>) -> Self {
        let mut finite = vec![Vec::new(); dim + 1];
        finite[dim] = pairs;
        Self::new(finite, Vec::new())
    }

    pub fn with_thresholds(mut self, thresholds: Vec<f64>, max_dim: usize) -> Self {
        self.thresholds = thresholds;
        self.max_dim = max_dim;
        self
    }

    pub fn with_source_hash(mut self, hash: impl Into<String>) -> Self {
        self.source_hash = Some(hash.into());
        self
    }

    /// Number of homology dimensions stored.
    pub fn n_dims(&self) -> usize {
        self.finite.len()
    }

    pub fn finite(&self, dim: usize) -> &[(f64, f64)] {
        self.finite.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn infinite(&self, dim: usize) -> &[f64] {
        self.infinite.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn source_hash(&self) -> Option<&str> {
        self.source_hash.as_deref()
    }

    /// Finite persistences `death - birth` in dimension `dim`, largest first.
    pub fn persistences(&self, dim: usize) -> Vec<f64> {
        let mut p: Vec<f64> = self.finite(dim).iter().map(|(b, d)| d - b).collect();
        p.sort_by(|a, b| b.total_cmp(a));
        p
    }

    /// Same diagram with every birth and death mapped through `f`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let finite = self
            .finite
            .iter()
            .map(|ps| ps.iter().map(|&(b, d)| (f(b), f(d))).collect())
            .collect();
        let infinite = self.infinite.iter().map(|bs| bs.iter().map(|&b| f(b)).collect()).collect();
        let mut out = Self::new(finite, infinite);
        out.thresholds = self.thresholds.iter().map(|&t| f(t)).collect();
        out.max_dim = self.max_dim;
        out
    }

    pub fn to_document(&self) -> DiagramDocument {
        DiagramDocument {
            dims: self
                .finite
                .iter()
                .enumerate()
                .map(|(k, ps)| (k.to_string(), ps.iter().map(|&(b, d)| [b, d]).collect()))
                .collect(),
            infinite: self
                .infinite
                .iter()
                .enumerate()
                .map(|(k, bs)| (k.to_string(), bs.clone()))
                .collect(),
            meta: DiagramMeta {
                thresholds: self.thresholds.clone(),
                max_dim: self.max_dim,
                source_hash: self.source_hash.clone(),
            },
        }
    }

    pub fn from_document(doc: &DiagramDocument) -> Result<Self> {
        let parse_dim = |k: &String| {
            k.parse::<usize>()
                .map_err(|_| Error::Data(format!("diagram dimension key '{k}' is not an integer")))
        };
        let mut n_dims = 0;
        for k in doc.dims.keys().chain(doc.infinite.keys()) {
            n_dims = n_dims.max(parse_dim(k)? + 1);
        }
        let mut finite = vec![Vec::new(); n_dims];
        let mut infinite = vec![Vec::new(); n_dims];
        for (k, pairs) in &doc.dims {
            let dim = parse_dim(k)?;
            for &[b, d] in pairs {
                if !(b.is_finite() && d.is_finite() && d > b) {
                    return Err(Error::Data(format!("invalid pair ({b}, {d}) in dimension {dim}")));
                }
                finite[dim].push((b, d));
            }
        }
        for (k, births) in &doc.infinite {
            infinite[parse_dim(k)?] = births.clone();
        }
        let mut out = Self::new(finite, infinite).with_thresholds(doc.meta.thresholds.clone(), doc.meta.max_dim);
        out.source_hash = doc.meta.source_hash.clone();
        Ok(out)
    }
}

/// On-disk form: `{"dims": {"0": [[b, d], ...]}, "infinite": {"0": [b, ...]}, "meta": {...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramDocument {
    pub dims: BTreeMap<String, Vec<[f64; 2]>>,
    #[serde(default)]
    pub infinite: BTreeMap<String, Vec<f64>>,
    pub meta: DiagramMeta,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiagramMeta {
    #[serde(default)]
    pub thresholds: Vec<f64>,
    #[serde(default)]
    pub max_dim: usize,
    #[serde(default)]
    pub source_hash: Option<String>,
}

/// Betti numbers as right-continuous step functions of the scale.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiCurve {
    /// Per dimension, `(ε, β)` with `β` holding on `[ε, next ε)`; zero before the first step.
    pub steps: Vec<Vec<(f64, usize)>>,
}

impl BettiCurve {
    pub fn at(&self, dim: usize, eps: f64) -> usize {
        let Some(steps) = self.steps.get(dim) else {
            return 0;
        };
        match steps.partition_point(|(t, _)| *t <= eps) {
            0 => 0,
            k => steps[k - 1].1,
        }
    }
}

/// `β_k(ε)` = number of pairs with `birth <= ε < death`.
pub fn betti_curve(diagram: &PersistenceDiagram) -> BettiCurve {
    let steps = (0..diagram.n_dims())
        .map(|dim| {
            let mut events: Vec<f64> = diagram
                .finite(dim)
                .iter()
                .flat_map(|&(b, d)| [b, d])
                .chain(diagram.infinite(dim).iter().copied())
                .collect();
            events.sort_by(f64::total_cmp);
            events.dedup();
            events
                .into_iter()
                .map(|eps| {
                    let alive = diagram.finite(dim).iter().filter(|&&(b, d)| b <= eps && eps < d).count()
                        + diagram.infinite(dim).iter().filter(|&&b| b <= eps).count();
                    (eps, alive)
                })
                .collect()
        })
        .collect();
    BettiCurve { steps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::DistanceMatrix;

    fn square() -> DistanceMatrix {
        let s = 2f64.sqrt();
        DistanceMatrix::new(vec![
            vec![0.0, 1.0, s, 1.0],
            vec![1.0, 0.0, 1.0, s],
            vec![s, 1.0, 0.0, 1.0],
            vec![1.0, s, 1.0, 0.0],
        ])
        .unwrap()
    }

    fn two_triangles() -> DistanceMatrix {
        // side 1, the two triangles 10 apart
        let p = 6;
        let rows = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        if i == j {
                            0.0
                        } else if i / 3 == j / 3 {
                            1.0
                        } else {
                            10.0
                        }
                    })
                    .collect()
            })
            .collect();
        DistanceMatrix::new(rows).unwrap()
    }

    #[test]
    fn square_has_one_loop() {
        let pd = persistence(&rips_filtration(&square(), 2).unwrap());
        assert_eq!(pd.finite(1), &[(1.0, 2f64.sqrt())]);
        assert_eq!(pd.finite(0), &[(0.0, 1.0), (0.0, 1.0), (0.0, 1.0)]);
        assert_eq!(pd.infinite(0), &[0.0]);
        assert!(pd.infinite(1).is_empty());

        let betti = betti_curve(&pd);
        assert_eq!(betti.at(0, 0.5), 4);
        assert_eq!((betti.at(0, 1.2), betti.at(1, 1.2)), (1, 1));
        assert_eq!((betti.at(0, 2.0), betti.at(1, 2.0)), (1, 0));
        assert_eq!(betti.at(0, -1.0), 0);
    }

    #[test]
    fn two_triangles_fill_at_birth() {
        let pd = persistence(&rips_filtration(&two_triangles(), 2).unwrap());
        assert_eq!(pd.finite(0), &[(0.0, 1.0), (0.0, 1.0), (0.0, 1.0), (0.0, 1.0), (0.0, 10.0)]);
        assert_eq!(pd.infinite(0), &[0.0]);
        assert!(pd.finite(1).is_empty());
    }

    #[test]
    fn union_find_agrees_with_reduction() {
        for d in [square(), two_triangles()] {
            let f = rips_filtration(&d, 2).unwrap();
            let pd = persistence(&f);
            let (finite, infinite) = zero_dim_union_find(&f);
            assert_eq!(pd.finite(0), &finite[..]);
            assert_eq!(pd.infinite(0), &infinite[..]);
        }
    }

    #[test]
    fn max_dim_three_reports_voids() {
        // octahedron: six points, opposite pairs farther apart
        let p = 6;
        let rows = (0..p)
            .map(|i| {
                (0..p)
                    .map(|j| {
                        if i == j {
                            0.0
                        } else if i / 2 == j / 2 {
                            1.5
                        } else {
                            1.0
                        }
                    })
                    .collect()
            })
            .collect();
        let pd = persistence(&rips_filtration(&DistanceMatrix::new(rows).unwrap(), 3).unwrap());
        assert_eq!(pd.n_dims(), 3);
        assert_eq!(pd.finite(2), &[(1.0, 1.5)]);
        assert!(pd.finite(1).is_empty());
    }

    #[test]
    fn document_round_trip() {
        let pd = persistence(&rips_filtration(&square(), 2).unwrap()).with_source_hash("abc");
        let json = serde_json::to_string(&pd.to_document()).unwrap();
        assert!(json.starts_with(r#"{"dims":{"0":[[0.0,1.0]"#), "{json}");
        let back: DiagramDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(PersistenceDiagram::from_document(&back).unwrap(), pd);
    }

    #[test]
    fn document_rejects_inverted_pairs() {
        let json = r#"{"dims": {"1": [[2.0, 1.0]]}, "meta": {}}"#;
        let doc: DiagramDocument = serde_json::from_str(json).unwrap();
        assert!(PersistenceDiagram::from_document(&doc).is_err());
    }
}
