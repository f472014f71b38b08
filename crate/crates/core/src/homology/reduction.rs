//! Boundary-matrix reduction over Z/2.

use super::filtration::{binomial, Filtration};
use super::PersistenceDiagram;

/// A reduced column is a sorted list of row indices; adding two columns is
/// their symmetric difference.
type Column = Vec<u32>;

fn add_into(target: &mut Column, source: &[u32]) {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&source[j..]);
    *target = out;
}

/// Boundary columns of the filtration, as sorted filtration positions.
pub fn boundary_columns(f: &Filtration) -> Vec<Column> {
    let p = f.n_vertices();
    // combinatorial-number-system index of each face dimension -> filtration position
    let mut position: Vec<Vec<u32>> = (0..f.max_dim()).map(|k| vec![u32::MAX; binomial(p, k + 1) as usize]).collect();
    let rank = |vs: &[u32]| -> usize { vs.iter().enumerate().map(|(i, &v)| binomial(v as usize, i + 1) as usize).sum() };
    for (pos, s) in f.simplices().iter().enumerate() {
        if s.dim() < f.max_dim() {
            position[s.dim()][rank(s.vertices())] = pos as u32;
        }
    }
    f.simplices()
        .iter()
        .map(|s| {
            if s.dim() == 0 {
                return Vec::new();
            }
            let vs = s.vertices();
            let mut col: Column = (0..vs.len())
                .map(|drop| {
                    let mut face = [0u32; 3];
                    let mut n = 0;
                    for (k, &v) in vs.iter().enumerate() {
                        if k != drop {
                            face[n] = v;
                            n += 1;
                        }
                    }
                    position[s.dim() - 1][rank(&face[..n])]
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect()
}

/// Persistence pairs `(birth position, death position)` and the unpaired
/// positions, both in filtration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(usize, usize)>,
    pub essential: Vec<usize>,
}

/// Standard left-to-right reduction without any shortcuts.
pub fn reduce_naive(f: &Filtration) -> Pairing {
    let mut columns = boundary_columns(f);
    let mut owner: Vec<Option<usize>> = vec![None; columns.len()];
    for j in 0..columns.len() {
        reduce_column(&mut columns, &owner, j);
        if let Some(&low) = columns[j].last() {
            owner[low as usize] = Some(j);
        }
    }
    pairing_from(&columns, &owner)
}

/// Reduction with clearing: dimensions are processed from the top down and
/// the column of every simplex that became a pivot is zeroed without work.
pub fn reduce_with_clearing(f: &Filtration) -> Pairing {
    let mut columns = boundary_columns(f);
    let mut owner: Vec<Option<usize>> = vec![None; columns.len()];
    let mut cleared = vec![false; columns.len()];
    for dim in (1..=f.max_dim()).rev() {
        for j in 0..columns.len() {
            if f.simplices()[j].dim() != dim {
                continue;
            }
            if cleared[j] {
                columns[j].clear();
                continue;
            }
            reduce_column(&mut columns, &owner, j);
            if let Some(&low) = columns[j].last() {
                owner[low as usize] = Some(j);
                cleared[low as usize] = true;
            }
        }
    }
    pairing_from(&columns, &owner)
}

fn reduce_column(columns: &mut [Column], owner: &[Option<usize>], j: usize) {
    while let Some(&low) = columns[j].last() {
        match owner[low as usize] {
            Some(k) => {
                let (head, tail) = columns.split_at_mut(j);
                add_into(&mut tail[0], &head[k]);
            }
            None => break,
        }
    }
}

fn pairing_from(columns: &[Column], owner: &[Option<usize>]) -> Pairing {
    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    for i in 0..columns.len() {
        match owner[i] {
            Some(j) => pairs.push((i, j)),
            None if columns[i].is_empty() => essential.push(i),
            None => {}
        }
    }
    Pairing { pairs, essential }
}

/// Diagram in dimensions `0..max_dim` of the filtration. Zero-length pairs are dropped.
pub fn persistence(f: &Filtration) -> PersistenceDiagram {
    diagram_from_pairing(f, &reduce_with_clearing(f))
}

pub(crate) fn diagram_from_pairing(f: &Filtration, pairing: &Pairing) -> PersistenceDiagram {
    let n_dims = f.max_dim();
    let mut finite = vec![Vec::new(); n_dims];
    let mut infinite = vec![Vec::new(); n_dims];
    let s = f.simplices();
    for &(i, j) in &pairing.pairs {
        let (birth, death) = (s[i].value(), s[j].value());
        if s[i].dim() < n_dims && death > birth {
            finite[s[i].dim()].push((birth, death));
        }
    }
    for &i in &pairing.essential {
        if s[i].dim() < n_dims {
            infinite[s[i].dim()].push(s[i].value());
        }
    }
    PersistenceDiagram::new(finite, infinite).with_thresholds(f.thresholds().to_vec(), f.max_dim())
}

/// Zero-dimensional pairs by union-find over the edges in filtration order,
/// using the elder rule: at a merge the component whose oldest vertex comes
/// later in the filtration dies.
pub fn zero_dim_union_find(f: &Filtration) -> (Vec<(f64, f64)>, Vec<f64>) {
    let n = f.n_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    // filtration position of each vertex, used as its age
    let mut born = vec![(0.0f64, usize::MAX); n];
    for (pos, s) in f.simplices().iter().enumerate() {
        if s.dim() == 0 {
            born[s.vertices()[0] as usize] = (s.value(), pos);
        }
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut finite = Vec::new();
    for s in f.simplices().iter().filter(|s| s.dim() == 1) {
        let (a, b) = (
            find(&mut parent, s.vertices()[0] as usize),
            find(&mut parent, s.vertices()[1] as usize),
        );
        if a == b {
            continue;
        }
        let (elder, younger) = if born[a].1 < born[b].1 { (a, b) } else { (b, a) };
        if s.value() > born[younger].0 {
            finite.push((born[younger].0, s.value()));
        }
        parent[younger] = elder;
    }
    let mut infinite: Vec<f64> = (0..n).filter(|&v| find(&mut parent, v) == v).map(|v| born[v].0).collect();
    infinite.sort_by(f64::total_cmp);
    finite.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    (finite, infinite)
}
