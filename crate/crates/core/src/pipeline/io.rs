//! File formats: panel and matrix CSVs, diagram, landscape and report JSON,
//! plot-ready grid CSVs.
//!
//! Floats are written in Rust's shortest round-trip form, so every value
//! read back is bit-identical to the one written.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::homology::{BettiCurve, DiagramDocument, PersistenceDiagram};
use crate::landscape::{evaluate, Grid, LandscapeDocument, PersistenceLandscape};
use crate::sim::TimeSeriesPanel;
use crate::spectral::{CoherenceMatrix, DistanceMatrix};
use crate::{Error, Result};

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
}

fn data_err(path: &Path, msg: impl std::fmt::Display) -> Error {
    Error::Data(format!("{}: {msg}", path.display()))
}

/// Header row, then one row per sample and one column per channel.
fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Err(data_err(path, "file is empty"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().map_err(|e| data_err(path, e))?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| data_err(path, e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != header.len() {
            return Err(data_err(
                path,
                format!(
                    "row {} (line {line}) has {} fields, expected {}",
                    rows.len() + 1,
                    record.len(),
                    header.len()
                ),
            ));
        }
        let row = record
            .iter()
            .zip(&header)
            .map(|(cell, column)| {
                let v: f64 = cell.parse().map_err(|_| {
                    data_err(
                        path,
                        format!("row {} (line {line}), column '{column}': '{cell}' is not a number", rows.len() + 1),
                    )
                })?;
                if !v.is_finite() {
                    return Err(data_err(
                        path,
                        format!(
                            "row {} (line {line}), column '{column}': value {cell} is not finite",
                            rows.len() + 1
                        ),
                    ));
                }
                Ok(v)
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// Reads a panel CSV: a header of channel labels, then one row per sample.
pub fn ingest_panel(path: &Path, sampling_rate: f64) -> Result<TimeSeriesPanel> {
    let (labels, rows) = read_table(path)?;
    if rows.len() < 2 {
        return Err(data_err(path, format!("needs at least 2 samples, found {}", rows.len())));
    }
    let values = (0..labels.len()).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
    TimeSeriesPanel::new(values, sampling_rate, labels).map_err(|e| match e {
        Error::Data(m) | Error::Dimension(m) => data_err(path, m),
        other => other,
    })
}

pub fn panel_csv(panel: &TimeSeriesPanel) -> String {
    let mut out = panel.labels().join(",");
    out.push('\n');
    for t in 0..panel.len() {
        let row: Vec<String> = panel.rows().iter().map(|ch| ch[t].to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn square_csv(labels: &[String], values: &[Vec<f64>]) -> String {
    let mut out = String::from("channel");
    for l in labels {
        out.push(',');
        out.push_str(l);
    }
    out.push('\n');
    for (l, row) in labels.iter().zip(values) {
        out.push_str(l);
        for v in row {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
    }
    out
}

pub fn coherence_csv(c: &CoherenceMatrix) -> String {
    square_csv(&c.labels, &c.values)
}

pub fn distance_csv(d: &DistanceMatrix) -> String {
    square_csv(d.labels(), d.rows())
}

/// Reads a labelled square matrix as written by [`distance_csv`].
pub fn read_distance(path: &Path) -> Result<DistanceMatrix> {
    let text = read_text(path)?;
    if text.trim().is_empty() {
        return Err(data_err(path, "file is empty"));
    }
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| data_err(path, e))?
        .iter()
        .skip(1)
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| data_err(path, e))?;
        if record.len() != header.len() + 1 {
            return Err(data_err(
                path,
                format!("row {} has {} fields, expected {}", rows.len() + 1, record.len(), header.len() + 1),
            ));
        }
        let row = record
            .iter()
            .skip(1)
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| data_err(path, format!("row {}: '{cell}' is not a number", rows.len() + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    DistanceMatrix::with_labels(rows, header).map_err(|e| match e {
        Error::Data(m) | Error::Dimension(m) => data_err(path, m),
        other => other,
    })
}

pub fn write_diagram(path: &Path, diagram: &PersistenceDiagram) -> Result<()> {
    write_json(path, &diagram.to_document())
}

pub fn read_diagram(path: &Path) -> Result<PersistenceDiagram> {
    let doc: DiagramDocument = read_json(path)?;
    PersistenceDiagram::from_document(&doc).map_err(|e| data_err(path, e))
}

pub fn write_landscape(path: &Path, landscape: &PersistenceLandscape) -> Result<()> {
    write_json(path, &landscape.to_document())
}

pub fn read_landscape(path: &Path) -> Result<PersistenceLandscape> {
    let doc: LandscapeDocument = read_json(path)?;
    PersistenceLandscape::from_document(&doc).map_err(|e| data_err(path, e))
}

/// `dim,epsilon,betti`, one row per step.
pub fn betti_csv(curve: &BettiCurve) -> String {
    let mut out = String::from("dim,epsilon,betti\n");
    for (dim, steps) in curve.steps.iter().enumerate() {
        for (eps, b) in steps {
            let _ = writeln!(out, "{dim},{eps},{b}");
        }
    }
    out
}

/// `t,lambda_1,…,lambda_K` sampled on `grid`.
pub fn landscape_grid_csv(landscape: &PersistenceLandscape, grid: &Grid) -> String {
    let values = evaluate(landscape, grid);
    let mut out = String::from("t");
    for k in 1..=values.len() {
        let _ = write!(out, ",lambda_{k}");
    }
    out.push('\n');
    for (i, t) in grid.points().iter().enumerate() {
        let _ = write!(out, "{t}");
        for level in &values {
            let _ = write!(out, ",{}", level[i]);
        }
        out.push('\n');
    }
    out
}

/// `replicate,statistic`.
pub fn null_csv(null_sample: &[f64]) -> String {
    let mut out = String::from("replicate,statistic\n");
    for (r, t) in null_sample.iter().enumerate() {
        let _ = writeln!(out, "{r},{t}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    #[test]
    fn ingests_a_small_panel() {
        let dir = tempfile::tempdir().unwrap();
        let p = write_tmp(&dir, "a.csv", "Fz,Cz\n1,2\n3, 4\n5,6\n");
        let panel = ingest_panel(&p, 100.0).unwrap();
        assert_eq!(panel.n_channels(), 2);
        assert_eq!(panel.len(), 3);
        assert_eq!(panel.channel(1), &[2.0, 4.0, 6.0]);
        assert_eq!(panel.labels(), &["Fz".to_string(), "Cz".to_string()]);
    }

    #[test]
    fn ingestion_errors_name_the_problem() {
        let dir = tempfile::tempdir().unwrap();
        let msg = |name: &str, text: &str| ingest_panel(&write_tmp(&dir, name, text), 100.0).unwrap_err().to_string();
        assert!(msg("empty.csv", "").contains("empty.csv: file is empty"));
        assert!(msg("ragged.csv", "a,b\n1,2\n3\n").contains("row 2"));
        let nan = msg("nan.csv", "a,b\n1,2\n3,NaN\n");
        assert!(nan.contains("row 2") && nan.contains("column 'b'"), "{nan}");
        assert!(msg("text.csv", "a,b\n1,x\n3,4\n").contains("'x' is not a number"));
        assert!(msg("short.csv", "a,b\n1,2\n").contains("at least 2 samples"));
        let missing = ingest_panel(Path::new("/nonexistent/panel.csv"), 1.0).unwrap_err();
        assert_eq!(missing.exit_code(), 3);
    }

    #[test]
    fn matrices_round_trip_exactly() {
        let d = DistanceMatrix::new(vec![vec![0.0, 0.1 + 0.2], vec![0.1 + 0.2, 0.0]]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let p = write_tmp(&dir, "d.csv", &distance_csv(&d));
        assert_eq!(read_distance(&p).unwrap(), d);
    }
}
