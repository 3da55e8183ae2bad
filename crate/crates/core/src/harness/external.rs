//! JSON-lines boundary files.
//!
//! One object per line: `{"sample_id": "...", "algorithm": "...",
//! "boundaries": [..], "n": N}`. The harness writes reference segmentations
//! in this format, and hypotheses from external segmenters are read back in
//! it and scored exactly like the built-in algorithms.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::Variant;
use super::table::{deltas, Accumulator, Failure, ResultTable};
use crate::error::{Error, Result};
use crate::metrics::evaluate;
use crate::segmentation::Segmentation;

pub const REFERENCE_ALGORITHM: &str = "reference";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRecord {
    pub sample_id: String,
    pub algorithm: String,
    pub boundaries: Vec<usize>,
    pub n: usize,
}

impl BoundaryRecord {
    pub fn new(sample_id: impl Into<String>, algorithm: impl Into<String>, seg: &Segmentation) -> Self {
        BoundaryRecord {
            sample_id: sample_id.into(),
            algorithm: algorithm.into(),
            boundaries: seg.boundaries().to_vec(),
            n: seg.total_units(),
        }
    }

    pub fn segmentation(&self) -> Result<Segmentation> {
        Segmentation::new(self.boundaries.clone(), self.n)
    }
}

/// Dataset name of a sample id (`set2-3-5/0007` belongs to `set2-3-5`).
pub fn dataset_of(sample_id: &str) -> &str {
    sample_id.rsplit_once('/').map_or("external", |(d, _)| d)
}

pub fn write_jsonl(path: impl AsRef<Path>, records: &[BoundaryRecord]) -> Result<()> {
    let path = path.as_ref();
    let mut out = Vec::new();
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.push(b'\n');
    }
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&out).map_err(|e| Error::io(path, e))
}

/// A line of a boundary file that could not be used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

/// Parse JSON lines, collecting per-line errors instead of stopping.
pub fn parse_jsonl(text: &str) -> (Vec<(usize, BoundaryRecord)>, Vec<LineError>) {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<BoundaryRecord>(line) {
            Ok(r) => records.push((i + 1, r)),
            Err(e) => errors.push(LineError {
                line: i + 1,
                message: e.to_string(),
            }),
        }
    }
    (records, errors)
}

/// Load reference segmentations keyed by sample id. Any bad line is an error.
pub fn load_references(path: impl AsRef<Path>) -> Result<BTreeMap<String, Segmentation>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let (records, errors) = parse_jsonl(&text);
    if let Some(e) = errors.first() {
        return Err(Error::parse(path, e.line, e.message.clone()));
    }
    let mut out = BTreeMap::new();
    for (line, r) in records {
        let seg = r.segmentation().map_err(|e| Error::parse(path, line, e.to_string()))?;
        if out.insert(r.sample_id.clone(), seg).is_some() {
            return Err(Error::parse(path, line, format!("duplicate sample id {}", r.sample_id)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ImportOutcome {
    pub table: ResultTable,
    pub errors: Vec<LineError>,
}

/// Score externally produced hypotheses against `references`.
///
/// Lines that fail to parse, name an unknown sample or disagree on the unit
/// count are reported in `errors`; the remaining lines are scored with the
/// default window size and averaged per (algorithm, dataset).
pub fn import_external_str(
    text: &str,
    references: &BTreeMap<String, Segmentation>,
    variant: Variant,
) -> ImportOutcome {
    let (records, mut errors) = parse_jsonl(text);
    let mut order: Vec<(String, String)> = Vec::new();
    let mut acc: BTreeMap<(String, String), Accumulator> = BTreeMap::new();
    let mut failures = Vec::new();
    for (line, r) in records {
        let Some(reference) = references.get(&r.sample_id) else {
            errors.push(LineError {
                line,
                message: format!("unknown sample id {}", r.sample_id),
            });
            continue;
        };
        if r.n != reference.total_units() {
            errors.push(LineError {
                line,
                message: format!(
                    "sample {} has {} units, hypothesis says {}",
                    r.sample_id,
                    reference.total_units(),
                    r.n
                ),
            });
            continue;
        }
        let hyp = match r.segmentation() {
            Ok(h) => h,
            Err(e) => {
                errors.push(LineError { line, message: e.to_string() });
                continue;
            }
        };
        let key = (r.algorithm.clone(), dataset_of(&r.sample_id).to_string());
        match evaluate(&hyp, reference, None) {
            Ok(report) => {
                if !acc.contains_key(&key) {
                    order.push(key.clone());
                }
                acc.entry(key).or_default().add(&report);
            }
            Err(e) => failures.push(Failure {
                algorithm: key.0,
                dataset: key.1,
                variant,
                sample_id: r.sample_id.clone(),
                message: e.to_string(),
            }),
        }
    }
    let cells: Vec<_> = order
        .iter()
        .filter_map(|k| acc[k].finish(&k.0, &k.1, variant))
        .collect();
    let deltas = deltas(&cells);
    errors.sort_by_key(|e| e.line);
    ImportOutcome {
        table: ResultTable { cells, deltas, failures },
        errors,
    }
}

pub fn import_external(
    path: impl AsRef<Path>,
    references: &BTreeMap<String, Segmentation>,
    variant: Variant,
) -> Result<ImportOutcome> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(import_external_str(&text, references, variant))
}
