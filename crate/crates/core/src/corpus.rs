//! Document pools and concatenated benchmark samples.
//!
//! A pool document is a plain-text file with one sentence per line and blank
//! lines between paragraphs. Samples are built by concatenating slices of
//! pool documents, either the first `n` sentences of a document or a run of
//! whole paragraphs, and remember where each slice came from so the same
//! sample can be rebuilt from an entity-substituted copy of the pool.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::ops::Range;
use std::path::{Path, PathBuf};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng;
use crate::segmentation::Segmentation;

/// Separator line between segments in the Choi corpus layout.
pub const SEGMENT_SEPARATOR: &str = "==========";

/// File name looked up inside a pool directory for category overrides.
pub const MANIFEST_NAME: &str = "manifest.tsv";

/// Redraws allowed per segment before paragraph sampling gives up.
pub const PARAGRAPH_RETRY_LIMIT: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceDocument {
    pub doc_id: String,
    pub category: String,
    pub sentences: Vec<String>,
    /// Sentence-index ranges, in order, partitioning `0..sentences.len()`.
    pub paragraphs: Vec<Range<usize>>,
}

impl SourceDocument {
    pub fn new(
        doc_id: impl Into<String>,
        category: impl Into<String>,
        sentences: Vec<String>,
        paragraphs: Vec<Range<usize>>,
    ) -> Result<Self> {
        let doc = SourceDocument {
            doc_id: doc_id.into(),
            category: category.into(),
            sentences,
            paragraphs,
        };
        doc.validate()?;
        Ok(doc)
    }

    /// Parse the pool text format. Line numbers in errors are 1-based.
    pub fn parse(
        doc_id: impl Into<String>,
        category: impl Into<String>,
        text: &str,
        origin: &Path,
    ) -> Result<Self> {
        let mut sentences = Vec::new();
        let mut paragraphs = Vec::new();
        let mut start = 0;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim() == SEGMENT_SEPARATOR {
                return Err(Error::parse(
                    origin,
                    lineno + 1,
                    "segment separator in a pool document (is this a sample file?)",
                ));
            }
            if line.trim().is_empty() {
                if sentences.len() > start {
                    paragraphs.push(start..sentences.len());
                    start = sentences.len();
                }
                continue;
            }
            sentences.push(line.to_string());
        }
        if sentences.len() > start {
            paragraphs.push(start..sentences.len());
        }
        if sentences.is_empty() {
            return Err(Error::parse(origin, 1, "document contains no sentences"));
        }
        SourceDocument::new(doc_id, category, sentences, paragraphs)
    }

    fn validate(&self) -> Result<()> {
        if self.sentences.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "document {} has no sentences",
                self.doc_id
            )));
        }
        let mut expected = 0;
        for p in &self.paragraphs {
            if p.start != expected || p.end <= p.start {
                return Err(Error::InvalidArgument(format!(
                    "paragraphs of {} do not partition its sentences",
                    self.doc_id
                )));
            }
            expected = p.end;
        }
        if expected != self.sentences.len() {
            return Err(Error::InvalidArgument(format!(
                "paragraphs of {} do not partition its sentences",
                self.doc_id
            )));
        }
        Ok(())
    }

    /// Raw text: sentences joined by a single `\n`. Annotation offsets index
    /// into this string by character.
    pub fn raw_text(&self) -> String {
        self.sentences.join("\n")
    }

    /// Pool file form: one sentence per line, blank line between paragraphs.
    pub fn to_pool_format(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.paragraphs.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            for s in &self.sentences[p.clone()] {
                out.push_str(s);
                out.push('\n');
            }
        }
        out
    }
}

/// Leading alphabetic run of a document id: `A21` belongs to category `A`.
pub fn default_category(doc_id: &str) -> String {
    let prefix: String = doc_id.chars().take_while(|c| c.is_alphabetic()).collect();
    if prefix.is_empty() {
        doc_id.to_string()
    } else {
        prefix
    }
}

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| {
        let valid = e.utf8_error().valid_up_to();
        let line = e.as_bytes()[..valid].iter().filter(|&&b| b == b'\n').count() + 1;
        Error::parse(path, line, "invalid UTF-8")
    })
}

struct ManifestRow {
    doc_id: String,
    category: String,
    path: PathBuf,
}

fn read_manifest(path: &Path) -> Result<Vec<ManifestRow>> {
    let text = read_utf8(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 || fields.iter().any(|f| f.trim().is_empty()) {
            return Err(Error::parse(
                path,
                lineno + 1,
                "expected doc_id<TAB>category<TAB>relative_path",
            ));
        }
        rows.push(ManifestRow {
            doc_id: fields[0].trim().to_string(),
            category: fields[1].trim().to_string(),
            path: base.join(fields[2].trim()),
        });
    }
    Ok(rows)
}

/// Load a document pool.
///
/// `path` is either a directory of `*.txt` files (the file stem is the doc id;
/// an optional `manifest.tsv` overrides categories) or a manifest file listing
/// exactly the documents to load. Documents come back sorted by doc id.
pub fn load_pool(path: impl AsRef<Path>) -> Result<Vec<SourceDocument>> {
    let path = path.as_ref();
    let meta = fs::metadata(path).map_err(|e| Error::io(path, e))?;
    let mut docs = if meta.is_dir() {
        load_pool_dir(path)?
    } else {
        let mut docs = Vec::new();
        for row in read_manifest(path)? {
            let text = read_utf8(&row.path)?;
            docs.push(SourceDocument::parse(row.doc_id, row.category, &text, &row.path)?);
        }
        docs
    };
    if docs.is_empty() {
        return Err(Error::EmptyPool(path.to_path_buf()));
    }
    docs.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    let mut seen = HashSet::new();
    for d in &docs {
        if !seen.insert(d.doc_id.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "duplicate doc id {} in pool {}",
                d.doc_id,
                path.display()
            )));
        }
    }
    Ok(docs)
}

fn load_pool_dir(dir: &Path) -> Result<Vec<SourceDocument>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|entry| entry.map(|e| e.path()).map_err(|e| Error::io(dir, e)))
        .collect::<Result<_>>()?;
    files.retain(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"));
    files.sort();

    let manifest_path = dir.join(MANIFEST_NAME);
    let overrides: HashMap<String, (String, usize)> = if manifest_path.is_file() {
        read_manifest(&manifest_path)?
            .into_iter()
            .enumerate()
            .map(|(i, r)| (r.doc_id, (r.category, i)))
            .collect()
    } else {
        HashMap::new()
    };

    let mut docs = Vec::with_capacity(files.len());
    for file in files {
        let doc_id = file
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::parse(&file, 1, "file name is not valid UTF-8"))?
            .to_string();
        let category = overrides
            .get(&doc_id)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| default_category(&doc_id));
        let text = read_utf8(&file)?;
        docs.push(SourceDocument::parse(doc_id, category, &text, &file)?);
    }
    let loaded: HashSet<&str> = docs.iter().map(|d| d.doc_id.as_str()).collect();
    if let Some((id, (_, row))) = overrides.iter().find(|(id, _)| !loaded.contains(id.as_str())) {
        return Err(Error::parse(
            &manifest_path,
            row + 1,
            format!("manifest names {id}, which has no .txt file in the pool"),
        ));
    }
    Ok(docs)
}

/// Where one segment of a sample came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentSource {
    pub doc_id: String,
    /// 0-based half-open sentence range within the source document.
    pub sentences: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub segments: Vec<SegmentSource>,
    pub sentences: Vec<String>,
    pub reference: Segmentation,
    pub seed: u64,
}

impl Sample {
    /// Assemble a sample from segment sources, copying sentences from `docs`.
    pub fn assemble(segments: Vec<SegmentSource>, docs: &[SourceDocument], seed: u64) -> Result<Self> {
        let by_id: HashMap<&str, &SourceDocument> =
            docs.iter().map(|d| (d.doc_id.as_str(), d)).collect();
        let mut sentences = Vec::new();
        let mut lengths = Vec::with_capacity(segments.len());
        for seg in &segments {
            let doc = by_id.get(seg.doc_id.as_str()).ok_or_else(|| {
                Error::InvalidArgument(format!("unknown document {}", seg.doc_id))
            })?;
            let slice = doc.sentences.get(seg.sentences.clone()).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "sentence range {:?} out of bounds for {}",
                    seg.sentences, seg.doc_id
                ))
            })?;
            sentences.extend_from_slice(slice);
            lengths.push(slice.len());
        }
        let reference = Segmentation::from_lengths(&lengths)?;
        Ok(Sample {
            segments,
            sentences,
            reference,
            seed,
        })
    }

    /// The same segment layout drawn from another version of the pool (for
    /// instance an entity-substituted copy).
    pub fn rebuild_from(&self, docs: &[SourceDocument]) -> Result<Self> {
        Sample::assemble(self.segments.clone(), docs, self.seed)
    }

    pub fn to_choi_format(&self) -> String {
        format_choi(&self.sentences, &self.reference)
    }
}

/// Serialize sentences and a segmentation in the Choi corpus layout: a
/// separator line before the first sentence, between segments and after the
/// last sentence.
pub fn format_choi(sentences: &[String], reference: &Segmentation) -> String {
    let mut out = String::new();
    out.push_str(SEGMENT_SEPARATOR);
    out.push('\n');
    for range in reference.segment_ranges() {
        for s in &sentences[range] {
            out.push_str(s);
            out.push('\n');
        }
        out.push_str(SEGMENT_SEPARATOR);
        out.push('\n');
    }
    out
}

/// Parse a Choi-layout file back into sentences and the reference
/// segmentation. Blank lines are ignored; empty segments are skipped.
pub fn parse_choi(text: &str) -> Result<(Vec<String>, Segmentation)> {
    let mut sentences = Vec::new();
    let mut lengths = Vec::new();
    let mut current = 0;
    for line in text.lines() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim() == SEGMENT_SEPARATOR {
            if current > 0 {
                lengths.push(current);
                current = 0;
            }
        } else if !line.trim().is_empty() {
            sentences.push(line.to_string());
            current += 1;
        }
    }
    if current > 0 {
        lengths.push(current);
    }
    if sentences.is_empty() {
        return Err(Error::EmptyInput("sample file has no sentences"));
    }
    Ok((sentences, Segmentation::from_lengths(&lengths)?))
}

/// Draw a sample by concatenating `seg_count` segments, each the first `n`
/// sentences of a uniformly drawn document with `n` uniform in
/// `n_min..=n_max`. Documents are drawn with replacement; a document shorter
/// than `n` contributes all of its sentences.
pub fn generate_choi_sample(
    pool: &[SourceDocument],
    n_min: usize,
    n_max: usize,
    seg_count: usize,
    seed: u64,
) -> Result<Sample> {
    if pool.is_empty() {
        return Err(Error::Generation("pool is empty".into()));
    }
    if seg_count == 0 {
        return Err(Error::Generation("segment count must be at least 1".into()));
    }
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidArgument(format!(
            "segment length bounds must satisfy 1 <= n_min <= n_max, got {n_min}..{n_max}"
        )));
    }
    if let Some(short) = pool.iter().find(|d| d.sentences.len() < n_min) {
        return Err(Error::InvalidArgument(format!(
            "document {} has {} sentences, fewer than n_min = {n_min}",
            short.doc_id,
            short.sentences.len()
        )));
    }

    let segments = (0..seg_count)
        .map(|i| {
            let mut r = rng::stream(seed, i as u64);
            let doc = &pool[r.gen_range(0..pool.len())];
            let n = r.gen_range(n_min..=n_max);
            SegmentSource {
                doc_id: doc.doc_id.clone(),
                sentences: 0..n.min(doc.sentences.len()),
            }
        })
        .collect();
    Sample::assemble(segments, pool, seed)
}

/// Group documents by category (author), in category order.
pub fn group_by_category(pool: &[SourceDocument]) -> BTreeMap<&str, Vec<&SourceDocument>> {
    let mut groups: BTreeMap<&str, Vec<&SourceDocument>> = BTreeMap::new();
    for d in pool {
        groups.entry(d.category.as_str()).or_default().push(d);
    }
    groups
}

/// Draw a sample whose segments are runs of whole paragraphs.
///
/// For each segment: an author is drawn uniformly, then one of that author's
/// documents (with `Z` paragraphs), then `l` with `1 < l < Z`, then a start
/// paragraph `m` with `1 < m < Z - l`. The segment covers paragraphs `m`
/// through `m + l` inclusive (1-based). Draws that leave no valid `l` or `m`
/// are repeated, at most [`PARAGRAPH_RETRY_LIMIT`] times per segment.
pub fn generate_paragraph_sample(pool: &[SourceDocument], seg_count: usize, seed: u64) -> Result<Sample> {
    if pool.is_empty() {
        return Err(Error::Generation("pool is empty".into()));
    }
    if seg_count == 0 {
        return Err(Error::Generation("segment count must be at least 1".into()));
    }
    let authors: Vec<Vec<&SourceDocument>> = group_by_category(pool).into_values().collect();

    let mut segments = Vec::with_capacity(seg_count);
    for i in 0..seg_count {
        let mut r = rng::stream(seed, i as u64);
        let mut drawn = None;
        for _ in 0..PARAGRAPH_RETRY_LIMIT {
            let docs = &authors[r.gen_range(0..authors.len())];
            let doc = docs[r.gen_range(0..docs.len())];
            let z = doc.paragraphs.len();
            if z < 3 {
                continue;
            }
            let l = r.gen_range(2..z);
            // m ranges over 2..=z-l-1; empty when z - l < 3.
            if z - l < 3 {
                continue;
            }
            let m = r.gen_range(2..z - l);
            let first = &doc.paragraphs[m - 1];
            let last = &doc.paragraphs[m + l - 1];
            drawn = Some(SegmentSource {
                doc_id: doc.doc_id.clone(),
                sentences: first.start..last.end,
            });
            break;
        }
        let seg = drawn.ok_or_else(|| {
            Error::Generation(format!(
                "segment {i}: no valid paragraph run after {PARAGRAPH_RETRY_LIMIT} draws"
            ))
        })?;
        segments.push(seg);
    }
    Sample::assemble(segments, pool, seed)
}
