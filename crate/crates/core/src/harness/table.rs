use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::config::Variant;
use crate::error::{Error, Result};
use crate::metrics::MetricReport;

/// Mean scores of one (algorithm, dataset, variant) combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub algorithm: String,
    pub dataset: String,
    pub variant: Variant,
    pub precision: f64,
    pub recall: f64,
    pub pk: f64,
    pub window_diff: f64,
    pub k_mean: f64,
    pub n_samples: usize,
}

/// `variant - raw` for each metric of one (algorithm, dataset).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaRow {
    pub algorithm: String,
    pub dataset: String,
    pub variant: Variant,
    pub precision: f64,
    pub recall: f64,
    pub pk: f64,
    pub window_diff: f64,
}

/// A sample/algorithm/variant combination that produced no score.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub algorithm: String,
    pub dataset: String,
    pub variant: Variant,
    pub sample_id: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub cells: Vec<Cell>,
    pub deltas: Vec<DeltaRow>,
    pub failures: Vec<Failure>,
}

impl ResultTable {
    pub fn cell(&self, algorithm: &str, dataset: &str, variant: Variant) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.algorithm == algorithm && c.dataset == dataset && c.variant == variant)
    }

    pub fn delta(&self, algorithm: &str, dataset: &str, variant: Variant) -> Option<&DeltaRow> {
        self.deltas
            .iter()
            .find(|d| d.algorithm == algorithm && d.dataset == dataset && d.variant == variant)
    }
}

/// Running sums for one cell; sums are taken in the order reports arrive.
#[derive(Debug, Clone, Default)]
pub(crate) struct Accumulator {
    precision: f64,
    recall: f64,
    pk: f64,
    window_diff: f64,
    k: f64,
    n: usize,
}

impl Accumulator {
    pub(crate) fn add(&mut self, r: &MetricReport) {
        self.precision += r.precision;
        self.recall += r.recall;
        self.pk += r.pk;
        self.window_diff += r.window_diff;
        self.k += r.k_used as f64;
        self.n += 1;
    }

    pub(crate) fn finish(&self, algorithm: &str, dataset: &str, variant: Variant) -> Option<Cell> {
        (self.n > 0).then(|| {
            let n = self.n as f64;
            Cell {
                algorithm: algorithm.to_string(),
                dataset: dataset.to_string(),
                variant,
                precision: self.precision / n,
                recall: self.recall / n,
                pk: self.pk / n,
                window_diff: self.window_diff / n,
                k_mean: self.k / n,
                n_samples: self.n,
            }
        })
    }
}

/// Delta rows for every non-raw cell that has a raw counterpart.
pub(crate) fn deltas(cells: &[Cell]) -> Vec<DeltaRow> {
    let raw: BTreeMap<(&str, &str), &Cell> = cells
        .iter()
        .filter(|c| c.variant == Variant::Raw)
        .map(|c| ((c.algorithm.as_str(), c.dataset.as_str()), c))
        .collect();
    cells
        .iter()
        .filter(|c| c.variant != Variant::Raw)
        .filter_map(|c| {
            let base = raw.get(&(c.algorithm.as_str(), c.dataset.as_str()))?;
            Some(DeltaRow {
                algorithm: c.algorithm.clone(),
                dataset: c.dataset.clone(),
                variant: c.variant,
                precision: c.precision - base.precision,
                recall: c.recall - base.recall,
                pk: c.pk - base.pk,
                window_diff: c.window_diff - base.window_diff,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Both,
}

fn pct(v: f64) -> String {
    format!("{:.2}", v * 100.0)
}

/// Cells as CSV: metric columns in percent with two decimals.
pub fn cells_csv(table: &ResultTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "algorithm",
        "dataset",
        "variant",
        "precision",
        "recall",
        "pk",
        "window_diff",
        "k_mean",
        "n_samples",
    ])?;
    for c in &table.cells {
        w.write_record([
            c.algorithm.clone(),
            c.dataset.clone(),
            c.variant.to_string(),
            pct(c.precision),
            pct(c.recall),
            pct(c.pk),
            pct(c.window_diff),
            format!("{:.2}", c.k_mean),
            c.n_samples.to_string(),
        ])?;
    }
    finish_csv(w)
}

pub fn deltas_csv(table: &ResultTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["algorithm", "dataset", "variant", "precision", "recall", "pk", "window_diff"])?;
    for d in &table.deltas {
        w.write_record([
            d.algorithm.clone(),
            d.dataset.clone(),
            d.variant.to_string(),
            pct(d.precision),
            pct(d.recall),
            pct(d.pk),
            pct(d.window_diff),
        ])?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io("<csv buffer>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV built from UTF-8 strings"))
}

pub const CELLS_CSV: &str = "results.csv";
pub const DELTAS_CSV: &str = "deltas.csv";
pub const RESULTS_JSON: &str = "results.json";

/// Write the table into `dir`: `results.csv` and `deltas.csv` for CSV,
/// `results.json` (full precision) for JSON. Returns the files written.
pub fn emit(table: &ResultTable, format: OutputFormat, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    let mut write = |name: &str, body: String| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };
    if matches!(format, OutputFormat::Csv | OutputFormat::Both) {
        write(CELLS_CSV, cells_csv(table)?)?;
        write(DELTAS_CSV, deltas_csv(table)?)?;
    }
    if matches!(format, OutputFormat::Json | OutputFormat::Both) {
        write(RESULTS_JSON, serde_json::to_string_pretty(table)? + "\n")?;
    }
    Ok(written)
}
