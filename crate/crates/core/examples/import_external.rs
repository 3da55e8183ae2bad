//! Score boundary files produced by another segmenter. The "external tool"
//! here places each boundary one sentence late; its output goes through the
//! same JSON-lines import the CLI `score` command uses.
//!
//! ```text
//! cargo run --example import_external
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;

use segbench::corpus::load_pool;
use segbench::harness::external::{import_external, write_jsonl, BoundaryRecord};
use segbench::harness::{generate_dataset, sample_id, DatasetSpec, Procedure, Variant};
use segbench::Segmentation;

fn main() -> segbench::Result<()> {
    let pool = load_pool(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/pool"))?;
    let spec = DatasetSpec {
        name: "set-3-5".into(),
        procedure: Procedure::Choi,
        min_len: Some(3),
        max_len: Some(5),
        seg_count: 10,
        sample_count: 20,
    };
    let samples = generate_dataset(&pool, &spec, 99)?;

    let mut references = BTreeMap::new();
    let mut late = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        let id = sample_id(&spec.name, i);
        let n = s.reference.total_units();
        let shifted: Vec<usize> = s.reference.boundaries().iter().map(|b| b + 1).filter(|&b| b < n).collect();
        late.push(BoundaryRecord::new(&id, "late-by-one", &Segmentation::new(shifted, n)?));
        references.insert(id, s.reference.clone());
    }
    // A malformed line and an unknown sample, reported without stopping the run.
    late.push(BoundaryRecord { sample_id: "set-3-5/9999".into(), algorithm: "late-by-one".into(), boundaries: vec![], n: 5 });

    let dir = std::env::temp_dir().join("segbench-import-example");
    std::fs::create_dir_all(&dir).map_err(|e| segbench::Error::io(&dir, e))?;
    let path = dir.join("late.jsonl");
    write_jsonl(&path, &late)?;

    let outcome = import_external(&path, &references, Variant::Raw)?;
    for e in &outcome.errors {
        println!("line {}: {}", e.line, e.message);
    }
    for c in &outcome.table.cells {
        println!(
            "{} on {} ({} samples): P {:.2} R {:.2} Pk {:.2} WD {:.2}",
            c.algorithm,
            c.dataset,
            c.n_samples,
            c.precision * 100.0,
            c.recall * 100.0,
            c.pk * 100.0,
            c.window_diff * 100.0
        );
    }
    Ok(())
}
