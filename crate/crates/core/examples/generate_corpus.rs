//! Draw concatenated samples from a document pool with both generation
//! procedures and print one of them in the Choi layout.
//!
//! ```text
//! cargo run --example generate_corpus [POOL_DIR] [SEED]
//! ```

use std::env;
use std::path::PathBuf;

use segbench::corpus::{generate_choi_sample, generate_paragraph_sample, group_by_category, load_pool};

fn main() -> segbench::Result<()> {
    let mut args = env::args().skip(1);
    let pool_dir = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/pool"));
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(42);

    let pool = load_pool(&pool_dir)?;
    println!("pool: {} documents", pool.len());
    for (category, docs) in group_by_category(&pool) {
        let ids: Vec<&str> = docs.iter().map(|d| d.doc_id.as_str()).collect();
        println!("  {category}: {}", ids.join(" "));
    }

    let choi = generate_choi_sample(&pool, 3, 5, 10, seed)?;
    println!("\nfirst-n-sentences sample, seed {seed}");
    for (src, len) in choi.segments.iter().zip(choi.reference.segment_lengths()) {
        println!("  {:>4} sentences {:?} ({len})", src.doc_id, src.sentences);
    }
    println!("  boundaries {:?}", choi.reference.boundaries());

    let para = generate_paragraph_sample(&pool, 10, seed)?;
    println!("\nparagraph-run sample, seed {seed}");
    println!("  segment lengths {:?}", para.reference.segment_lengths());

    println!("\nfirst three segments in the Choi layout:\n");
    let text = choi.to_choi_format();
    let end = text.match_indices("==========\n").nth(3).map_or(text.len(), |(i, _)| i + 11);
    print!("{}", &text[..end]);
    Ok(())
}
