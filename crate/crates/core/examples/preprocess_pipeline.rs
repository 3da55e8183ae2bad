//! Tokenize, stop-list and stem raw and entity-substituted text side by side.
//! Pronouns fall to the stop list in the raw text but survive as identifier
//! tokens once substituted.
//!
//! ```text
//! cargo run --example preprocess_pipeline
//! ```

use segbench::preprocess::{porter, preprocess, tokenize, PreprocessOptions};

fn main() {
    let raw = [
        "He returned to his cell in the county jail.",
        "Hengesbach has been living in Grand Ledge since his house burned.",
    ];
    let annotated = [
        "A21person1 returned to A21person1 cell in the county jail.",
        "A21person5 has been living in A21location5 since A21person5 house burned.",
    ];
    let opts = PreprocessOptions::default();
    for (r, a) in raw.iter().zip(&annotated) {
        println!("raw       {:?}", preprocess(&[r], &opts).sentences()[0]);
        println!("annotated {:?}\n", preprocess(&[a], &opts).sentences()[0]);
    }

    let t = tokenize(&annotated);
    println!("identifier tokens: {:?}", t.identifier_tokens());
    println!("vocabulary before stop list and stemming: {}", t.vocab_size());
    println!("after: {}", preprocess(&annotated, &opts).vocab_size());

    println!();
    for w in ["caresses", "ponies", "relational", "generalizations", "pitching", "agreed"] {
        println!("{w:>16} -> {}", porter::stem(w));
    }
}
