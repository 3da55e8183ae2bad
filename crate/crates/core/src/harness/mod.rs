//! Config-driven experiments: generate samples, derive the raw and
//! entity-substituted variants, segment every variant with every configured
//! algorithm and average the scores into a [`ResultTable`].
//!
//! Samples are independent work units and may run on several threads; the
//! reduction into table cells always walks samples in index order, so the
//! table does not depend on the thread count.

pub mod config;
pub mod external;
pub mod table;

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use rayon::prelude::*;

pub use config::{AlgorithmSpec, DatasetSpec, ExperimentConfig, Procedure, Variant};
pub use external::{import_external, BoundaryRecord, ImportOutcome, LineError};
pub use table::{emit, Cell, DeltaRow, Failure, OutputFormat, ResultTable};

use crate::annotate::{load_annotations, substitute_entities, AnnotationSet};
use crate::corpus::{generate_choi_sample, generate_paragraph_sample, load_pool, Sample, SourceDocument};
use crate::error::{Error, Result};
use crate::metrics::{evaluate, MetricReport};
use crate::preprocess::preprocess;
use crate::rng::derive_seed;
use crate::segment::segment;
use table::{deltas, Accumulator};

/// Dataset label of the sample-weighted aggregate over all datasets.
pub const ALL_DATASETS: &str = "all";

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SEGBENCH_THREADS";

pub fn sample_id(dataset: &str, index: usize) -> String {
    format!("{dataset}/{index:04}")
}

/// The pool as seen by each variant. Documents without annotations are
/// identical in every variant.
pub fn variant_pools(
    pool: &[SourceDocument],
    annotations: &BTreeMap<String, AnnotationSet>,
    variants: &[Variant],
    pronouns: &std::collections::HashSet<String>,
) -> Result<HashMap<Variant, Vec<SourceDocument>>> {
    let mut out = HashMap::new();
    for &v in variants {
        let docs = pool
            .iter()
            .map(|doc| match (v, annotations.get(&doc.doc_id)) {
                (Variant::Raw, _) | (_, None) => Ok(doc.clone()),
                (Variant::NeOnly, Some(ann)) => substitute_entities(doc, &ann.without_pronouns(pronouns)),
                (Variant::NePlusCoref, Some(ann)) => substitute_entities(doc, ann),
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(v, docs);
    }
    Ok(out)
}

/// Generate every sample of one dataset. Sample `i` is seeded from
/// `(dataset seed, i)` only.
pub fn generate_dataset(pool: &[SourceDocument], spec: &DatasetSpec, dataset_seed: u64) -> Result<Vec<Sample>> {
    (0..spec.sample_count)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(dataset_seed, i as u64);
            match spec.procedure {
                Procedure::Choi => generate_choi_sample(
                    pool,
                    spec.min_len.unwrap_or(1),
                    spec.max_len.unwrap_or(1),
                    spec.seg_count,
                    seed,
                ),
                Procedure::Paragraph => generate_paragraph_sample(pool, spec.seg_count, seed),
            }
        })
        .collect()
}

fn dataset_seed(cfg: &ExperimentConfig, index: usize) -> u64 {
    derive_seed(cfg.seed, index as u64)
}

fn thread_count(explicit: Option<usize>) -> Result<Option<usize>> {
    if explicit.is_some() {
        return Ok(explicit);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| Some(n.max(1)))
            .map_err(|_| Error::Config(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(None),
    }
}

struct Loaded {
    pools: HashMap<Variant, Vec<SourceDocument>>,
}

fn load_inputs(cfg: &ExperimentConfig) -> Result<Loaded> {
    cfg.validate()?;
    let annotations = if cfg.variants.iter().any(|v| v.needs_annotations()) {
        let dir = cfg
            .annotations
            .as_ref()
            .ok_or_else(|| Error::Config("annotated variants need an annotations directory".into()))?;
        if !dir.is_dir() {
            return Err(Error::Config(format!(
                "annotations directory {} does not exist",
                dir.display()
            )));
        }
        load_annotations(dir)?
    } else {
        BTreeMap::new()
    };
    let pool = load_pool(&cfg.pool)?;
    let pools = variant_pools(&pool, &annotations, &cfg.variants, &cfg.pronouns)?;
    Ok(Loaded { pools })
}

/// Per-sample outcome, indexed `[algorithm][variant]`.
type SampleScores = Vec<Vec<std::result::Result<MetricReport, String>>>;

fn score_sample(cfg: &ExperimentConfig, pools: &HashMap<Variant, Vec<SourceDocument>>, sample: &Sample) -> SampleScores {
    let texts: Vec<_> = cfg
        .variants
        .iter()
        .map(|v| {
            sample
                .rebuild_from(&pools[v])
                .map(|s| preprocess(&s.sentences, &cfg.preprocess))
                .map_err(|e| e.to_string())
        })
        .collect();
    cfg.algorithms
        .iter()
        .map(|alg| {
            texts
                .iter()
                .map(|text| {
                    let text = text.as_ref().map_err(Clone::clone)?;
                    let hyp = segment(text, &alg.options).map_err(|e| e.to_string())?;
                    evaluate(&hyp, &sample.reference, None).map_err(|e| e.to_string())
                })
                .collect()
        })
        .collect()
}

/// Run with the worker count from `SEGBENCH_THREADS` (or rayon's default).
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    run_experiment_with_threads(cfg, None)
}

pub fn run_experiment_with_threads(cfg: &ExperimentConfig, threads: Option<usize>) -> Result<ResultTable> {
    let loaded = load_inputs(cfg)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(threads)? {
        builder = builder.num_threads(n);
    }
    let workers = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    workers.install(|| run_loaded(cfg, &loaded))
}

fn run_loaded(cfg: &ExperimentConfig, loaded: &Loaded) -> Result<ResultTable> {
    let raw_pool = &loaded.pools[&cfg.variants[0]];
    let mut per_dataset: Vec<Vec<SampleScores>> = Vec::with_capacity(cfg.datasets.len());
    for (di, spec) in cfg.datasets.iter().enumerate() {
        // Segment layout depends only on sentence counts, identical across variants.
        let samples = generate_dataset(raw_pool, spec, dataset_seed(cfg, di))?;
        let scores: Vec<SampleScores> = samples
            .par_iter()
            .map(|s| score_sample(cfg, &loaded.pools, s))
            .collect();
        per_dataset.push(scores);
    }

    let mut cells = Vec::new();
    let mut failures = Vec::new();
    let mut all: Vec<Vec<Accumulator>> =
        vec![vec![Accumulator::default(); cfg.variants.len()]; cfg.algorithms.len()];
    for (spec, scores) in cfg.datasets.iter().zip(&per_dataset) {
        for (ai, alg) in cfg.algorithms.iter().enumerate() {
            for (vi, &variant) in cfg.variants.iter().enumerate() {
                let mut acc = Accumulator::default();
                for (si, sample) in scores.iter().enumerate() {
                    match &sample[ai][vi] {
                        Ok(report) => {
                            acc.add(report);
                            all[ai][vi].add(report);
                        }
                        Err(message) => failures.push(Failure {
                            algorithm: alg.name.clone(),
                            dataset: spec.name.clone(),
                            variant,
                            sample_id: sample_id(&spec.name, si),
                            message: message.clone(),
                        }),
                    }
                }
                cells.extend(acc.finish(&alg.name, &spec.name, variant));
            }
        }
    }
    if cfg.datasets.len() > 1 {
        for (ai, alg) in cfg.algorithms.iter().enumerate() {
            for (vi, &variant) in cfg.variants.iter().enumerate() {
                cells.extend(all[ai][vi].finish(&alg.name, ALL_DATASETS, variant));
            }
        }
    }
    let deltas = deltas(&cells);
    Ok(ResultTable { cells, deltas, failures })
}

/// Number of cells a complete run of `cfg` produces.
pub fn expected_cell_count(cfg: &ExperimentConfig) -> usize {
    let datasets = cfg.datasets.len() + usize::from(cfg.datasets.len() > 1);
    datasets * cfg.algorithms.len() * cfg.variants.len()
}

/// Write every generated sample, per variant, in the Choi layout under
/// `dir/samples/<variant>/<dataset>/<index>.txt`, and all reference
/// segmentations to `dir/references.jsonl`.
pub fn export_samples(cfg: &ExperimentConfig, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    let loaded = load_inputs(cfg)?;
    let raw_pool = &loaded.pools[&cfg.variants[0]];
    let mut references = Vec::new();
    for (di, spec) in cfg.datasets.iter().enumerate() {
        let samples = generate_dataset(raw_pool, spec, dataset_seed(cfg, di))?;
        for &variant in &cfg.variants {
            let out = dir.join("samples").join(variant.as_str()).join(&spec.name);
            fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
            for (i, s) in samples.iter().enumerate() {
                let text = s.rebuild_from(&loaded.pools[&variant])?.to_choi_format();
                let path = out.join(format!("{i:04}.txt"));
                fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
            }
        }
        references.extend(
            samples
                .iter()
                .enumerate()
                .map(|(i, s)| BoundaryRecord::new(sample_id(&spec.name, i), external::REFERENCE_ALGORITHM, &s.reference)),
        );
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    external::write_jsonl(dir.join("references.jsonl"), &references)
}
