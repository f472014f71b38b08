//! Univariate pathways: delay embedding into a point cloud, and moving-average
//! smoothing followed by sublevel-set persistence of the smoothed curve.

use serde::{Deserialize, Serialize};

use crate::homology::PersistenceDiagram;
use crate::spectral::DistanceMatrix;
use crate::{Error, Result};

pub const DEFAULT_EMBEDDING_DIMENSION: usize = 2;
pub const DEFAULT_LAG: usize = 1;
pub const DEFAULT_SMOOTHING_WINDOW: usize = 21;

/// Rows `(Y(s), Y(s - lag), …, Y(s - (m-1)·lag))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    points: Vec<Vec<f64>>,
    dimension: usize,
    lag: usize,
    channel: Option<String>,
}

impl PointCloud {
    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn channel(&self) -> Option<&str> {
        self.channel.as_deref()
    }

    pub fn with_channel(mut self, channel: impl Into<String>) -> Self {
        self.channel = Some(channel.into());
        self
    }

    /// Every `stride`-th point, starting with the first.
    pub fn subsample(&self, stride: usize) -> Self {
        let stride = stride.max(1);
        Self {
            points: self.points.iter().step_by(stride).cloned().collect(),
            ..self.clone()
        }
    }
}

pub fn delay_embed(series: &[f64], dimension: usize, lag: usize) -> Result<PointCloud> {
    if dimension < 2 {
        return Err(Error::Domain(format!("embedding dimension must be at least 2, got {dimension}")));
    }
    if lag < 1 {
        return Err(Error::Domain("embedding lag must be at least 1".into()));
    }
    let span = (dimension - 1) * lag;
    if series.len() <= span {
        return Err(Error::Data(format!(
            "series of length {} is too short for dimension {dimension} and lag {lag} (needs more than {span})",
            series.len()
        )));
    }
    let points = (span..series.len())
        .map(|s| (0..dimension).map(|j| series[s - j * lag]).collect())
        .collect();
    Ok(PointCloud {
        points,
        dimension,
        lag,
        channel: None,
    })
}

/// Euclidean distances between the points of `cloud`.
pub fn cloud_distances(cloud: &PointCloud) -> DistanceMatrix {
    let n = cloud.len();
    let mut rows = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = cloud.points[i]
                .iter()
                .zip(&cloud.points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    DistanceMatrix::new(rows).expect("Euclidean distances form a valid matrix")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothedSeries {
    values: Vec<f64>,
    window: usize,
}

impl SmoothedSeries {
    /// Wraps an already smooth curve (window 1).
    pub fn raw(values: Vec<f64>) -> Self {
        Self { values, window: 1 }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn window(&self) -> usize {
        self.window
    }
}

/// Centred moving average. Near the ends the window shrinks symmetrically so
/// it stays centred on the sample.
pub fn smooth(series: &[f64], window: usize) -> Result<SmoothedSeries> {
    if window == 0 || window.is_multiple_of(2) {
        return Err(Error::Domain(format!("smoothing window must be odd and positive, got {window}")));
    }
    if window > series.len() {
        return Err(Error::Domain(format!(
            "smoothing window {window} exceeds the series length {}",
            series.len()
        )));
    }
    let mut prefix = Vec::with_capacity(series.len() + 1);
    prefix.push(0.0);
    for &x in series {
        prefix.push(prefix.last().unwrap() + x);
    }
    let n = series.len();
    let values = (0..n)
        .map(|i| {
            let half = (window / 2).min(i).min(n - 1 - i);
            if half == 0 {
                return series[i];
            }
            (prefix[i + half + 1] - prefix[i - half]) / (2 * half + 1) as f64
        })
        .collect();
    Ok(SmoothedSeries { values, window })
}

/// Zero-dimensional persistence of the sublevel sets `{t : μ(t) ≤ a}`.
///
/// Components are born at local minima. When two merge at a local maximum,
/// the one with the higher minimum dies (elder rule). Equal values are
/// ordered by index, the earlier sample counting as lower.
pub fn sublevel_persistence(series: &SmoothedSeries) -> Result<PersistenceDiagram> {
    let y = &series.values;
    let n = y.len();
    if n < 2 {
        return Err(Error::Data(format!("sublevel persistence needs at least 2 samples, got {n}")));
    }
    if let Some(i) = y.iter().position(|v| !v.is_finite()) {
        return Err(Error::Data(format!("sample {i} is not finite")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));

    const UNSEEN: usize = usize::MAX;
    let mut parent = vec![UNSEEN; n];
    // root -> index of its minimum, which is the root itself under union by age
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut rank = vec![0usize; n];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }

    let mut finite = Vec::new();
    for &v in &order {
        parent[v] = v;
        for w in [v.wrapping_sub(1), v + 1] {
            if w >= n || parent[w] == UNSEEN {
                continue;
            }
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a == b {
                continue;
            }
            let (elder, younger) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
            finite.push((y[younger], y[v]));
            parent[younger] = elder;
        }
    }
    let root = find(&mut parent, order[0]);
    Ok(PersistenceDiagram::new(vec![finite], vec![vec![y[root]]]))
}
