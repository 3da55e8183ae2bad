//! Segment one generated sample with each algorithm and score it against
//! the known boundaries.
//!
//! ```text
//! cargo run --example segment_algorithms [SEED]
//! ```

use std::path::PathBuf;

use segbench::corpus::{generate_choi_sample, load_pool};
use segbench::metrics::evaluate;
use segbench::preprocess::{preprocess, PreprocessOptions};
use segbench::segment::{segment, Algorithm, SegmenterOptions};

fn main() -> segbench::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let pool = load_pool(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/pool"))?;
    let sample = generate_choi_sample(&pool, 3, 11, 10, seed)?;
    let text = preprocess(&sample.sentences, &PreprocessOptions::default());
    println!("{} sentences, {} terms", text.len(), text.vocab_size());
    println!("{:<22} {:?}", "reference", sample.reference.boundaries());

    let mut runs = Vec::new();
    for algorithm in [Algorithm::C99, Algorithm::U00, Algorithm::DpLength] {
        runs.push((algorithm.to_string(), SegmenterOptions::new(algorithm)));
    }
    let mut c99 = SegmenterOptions::new(Algorithm::C99);
    c99.fixed_segment_count = Some(10);
    runs.push(("c99, 10 segments".into(), c99));
    let mut dp = SegmenterOptions::new(Algorithm::DpLength);
    dp.dp_segment_count = Some(10);
    runs.push(("dp_length, 10 segments".into(), dp));

    for (label, opts) in runs {
        let hyp = segment(&text, &opts)?;
        let r = evaluate(&hyp, &sample.reference, None)?;
        println!("{label:<22} {:?}", hyp.boundaries());
        println!(
            "{:<22} P {:.2} R {:.2} Pk {:.2} WD {:.2}",
            "",
            r.precision * 100.0,
            r.recall * 100.0,
            r.pk * 100.0,
            r.window_diff * 100.0
        );
    }
    Ok(())
}
