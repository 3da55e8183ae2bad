//! Rewrite a newspaper paragraph with entity identifiers from a standoff
//! file, once with every mention and once leaving pronouns alone.
//!
//! ```text
//! cargo run --example annotate_paragraph
//! ```

use std::path::PathBuf;

use segbench::annotate::{default_pronouns, ne_stats, parse_standoff, substitute_entities};
use segbench::corpus::load_pool;

fn main() -> segbench::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/newswire");
    let doc = load_pool(&dir)?.remove(0);
    let ann = parse_standoff(dir.join("A21.tsv"))?;

    println!("{} entities, {} mentions", ann.entities.len(), ann.mention_count());
    for e in &ann.entities {
        let surfaces: Vec<&str> = e.mentions.iter().map(|m| m.surface.as_str()).collect();
        println!("  {:<13} {:<8} {}", e.entity_id, e.etype, surfaces.join(" | "));
    }

    let names_only = substitute_entities(&doc, &ann.without_pronouns(&default_pronouns()))?;
    let everything = substitute_entities(&doc, &ann)?;
    for (i, raw) in doc.sentences.iter().enumerate().take(5) {
        println!("\nraw:        {raw}");
        println!("names only: {}", names_only.sentences[i]);
        println!("all:        {}", everything.sentences[i]);
    }

    let stats = ne_stats(&[everything.raw_text()]);
    println!("\nidentifier tokens in the paragraph: {}", stats.overall.max);
    for (etype, s) in &stats.per_type {
        println!("  {etype:<8} {}", s.max);
    }
    Ok(())
}
