//! Experiment configuration, read from TOML.
//!
//! ```toml
//! pool = "pool"                 # directory of documents, or a manifest file
//! annotations = "annotations"   # standoff TSV directory (needed for ne_* variants)
//! output_dir = "results"
//! seed = 42
//! variants = ["raw", "ne_only", "ne_plus_coref"]
//! write_samples = true
//!
//! [preprocess]
//! stoplist = "smart"            # "smart", "none", or a path
//! stem = true
//! keep_numerals = true
//! pronouns = "pronouns.txt"     # optional, replaces the built-in list
//!
//! [[datasets]]
//! name = "set2-3-5"
//! procedure = "choi"            # or "paragraph"
//! min_len = 3
//! max_len = 5
//! seg_count = 10
//! sample_count = 100
//!
//! [[algorithms]]
//! algorithm = "c99"
//! name = "c99-fixed"            # optional label, defaults to the algorithm tag
//! fixed_segment_count = 10
//! ```
//!
//! Relative paths resolve against the directory holding the config file.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::{PreprocessOptions, Stoplist};
use crate::segment::{Algorithm, SegmenterOptions};

/// Which text a sample is segmented in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Original text.
    Raw,
    /// Named mentions replaced by identifiers; pronouns left alone.
    NeOnly,
    /// Every mention, pronouns included, replaced by identifiers.
    NePlusCoref,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Raw, Variant::NeOnly, Variant::NePlusCoref];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Raw => "raw",
            Variant::NeOnly => "ne_only",
            Variant::NePlusCoref => "ne_plus_coref",
        }
    }

    pub fn needs_annotations(self) -> bool {
        self != Variant::Raw
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variant {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Procedure {
    /// First `n` sentences of a random document, `n` in `min_len..=max_len`.
    Choi,
    /// A run of whole paragraphs from a random author's document.
    Paragraph,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub name: String,
    pub procedure: Procedure,
    #[serde(default)]
    pub min_len: Option<usize>,
    #[serde(default)]
    pub max_len: Option<usize>,
    #[serde(default = "default_seg_count")]
    pub seg_count: usize,
    pub sample_count: usize,
}

fn default_seg_count() -> usize {
    10
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSpec {
    pub name: String,
    pub options: SegmenterOptions,
}

/// `[[algorithms]]` table as written in the file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgorithmTable {
    algorithm: Algorithm,
    name: Option<String>,
    u00_penalty_weight: Option<f64>,
    dp_preferred_length: Option<f64>,
    dp_length_weight: Option<f64>,
    dp_segment_count: Option<usize>,
    c99_mask: Option<usize>,
    c99_auto_threshold_coeff: Option<f64>,
    fixed_segment_count: Option<usize>,
}

impl AlgorithmTable {
    fn into_spec(self) -> AlgorithmSpec {
        let d = SegmenterOptions::new(self.algorithm);
        AlgorithmSpec {
            name: self.name.unwrap_or_else(|| self.algorithm.to_string()),
            options: SegmenterOptions {
                algorithm: self.algorithm,
                u00_penalty_weight: self.u00_penalty_weight.unwrap_or(d.u00_penalty_weight),
                dp_preferred_length: self.dp_preferred_length.unwrap_or(d.dp_preferred_length),
                dp_length_weight: self.dp_length_weight.unwrap_or(d.dp_length_weight),
                dp_segment_count: self.dp_segment_count,
                c99_mask: self.c99_mask.unwrap_or(d.c99_mask),
                c99_auto_threshold_coeff: self
                    .c99_auto_threshold_coeff
                    .unwrap_or(d.c99_auto_threshold_coeff),
                fixed_segment_count: self.fixed_segment_count,
            },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PreprocessTable {
    #[serde(default = "default_stoplist")]
    stoplist: String,
    #[serde(default = "yes")]
    stem: bool,
    #[serde(default = "yes")]
    keep_numerals: bool,
    pronouns: Option<PathBuf>,
}

impl Default for PreprocessTable {
    fn default() -> Self {
        PreprocessTable {
            stoplist: default_stoplist(),
            stem: true,
            keep_numerals: true,
            pronouns: None,
        }
    }
}

fn default_stoplist() -> String {
    "smart".into()
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    pool: PathBuf,
    annotations: Option<PathBuf>,
    output_dir: PathBuf,
    #[serde(default)]
    seed: u64,
    #[serde(default = "raw_only")]
    variants: Vec<Variant>,
    #[serde(default = "yes")]
    write_samples: bool,
    #[serde(default)]
    preprocess: PreprocessTable,
    datasets: Vec<DatasetSpec>,
    algorithms: Vec<AlgorithmTable>,
}

fn raw_only() -> Vec<Variant> {
    vec![Variant::Raw]
}

/// A validated experiment description with all paths resolved.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub pool: PathBuf,
    pub annotations: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub variants: Vec<Variant>,
    pub write_samples: bool,
    pub preprocess: PreprocessOptions,
    /// Lowercase surfaces treated as pronouns when building `ne_only`.
    pub pronouns: HashSet<String>,
    pub datasets: Vec<DatasetSpec>,
    pub algorithms: Vec<AlgorithmSpec>,
}

impl ExperimentConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    /// Parse TOML text, resolving relative paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let resolve = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };

        let stoplist = match file.preprocess.stoplist.as_str() {
            "smart" => Stoplist::smart(),
            "none" | "" => Stoplist::empty(),
            path => Stoplist::load(resolve(PathBuf::from(path)))?,
        };
        let pronouns = match file.preprocess.pronouns {
            Some(p) => {
                let p = resolve(p);
                let text = fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?;
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(str::to_lowercase)
                    .collect()
            }
            None => crate::annotate::default_pronouns(),
        };
        let cfg = ExperimentConfig {
            pool: resolve(file.pool),
            annotations: file.annotations.map(resolve),
            output_dir: resolve(file.output_dir),
            seed: file.seed,
            variants: file.variants,
            write_samples: file.write_samples,
            preprocess: PreprocessOptions {
                stoplist,
                stem: file.preprocess.stem,
                keep_numerals: file.preprocess.keep_numerals,
            },
            pronouns,
            datasets: file.datasets,
            algorithms: file.algorithms.into_iter().map(AlgorithmTable::into_spec).collect(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.variants.is_empty() {
            return bad("at least one variant is required".into());
        }
        if self.algorithms.is_empty() {
            return bad("at least one algorithm is required".into());
        }
        if self.datasets.is_empty() {
            return bad("at least one dataset is required".into());
        }
        let mut seen = HashSet::new();
        for v in &self.variants {
            if !seen.insert(*v) {
                return bad(format!("variant {v} listed twice"));
            }
        }
        if self.annotations.is_none() {
            if let Some(v) = self.variants.iter().find(|v| v.needs_annotations()) {
                return bad(format!("variant {v} requires an annotations directory"));
            }
        }
        let mut names = HashSet::new();
        for a in &self.algorithms {
            if !names.insert(a.name.as_str()) {
                return bad(format!("algorithm name {} used twice", a.name));
            }
            a.options
                .validate()
                .map_err(|e| Error::Config(format!("algorithm {}: {e}", a.name)))?;
        }
        let mut names = HashSet::new();
        for d in &self.datasets {
            if !names.insert(d.name.as_str()) || d.name == super::ALL_DATASETS {
                return bad(format!("dataset name {} is reserved or used twice", d.name));
            }
            if d.name.contains('/') {
                return bad(format!("dataset name {} must not contain '/'", d.name));
            }
            if d.sample_count == 0 {
                return bad(format!("dataset {}: sample_count must be >= 1", d.name));
            }
            if d.seg_count == 0 {
                return bad(format!("dataset {}: seg_count must be >= 1", d.name));
            }
            if d.procedure == Procedure::Choi {
                match (d.min_len, d.max_len) {
                    (Some(lo), Some(hi)) if lo >= 1 && lo <= hi => {}
                    _ => {
                        return bad(format!(
                            "dataset {}: choi procedure needs 1 <= min_len <= max_len",
                            d.name
                        ))
                    }
                }
            }
        }
        Ok(())
    }
}
