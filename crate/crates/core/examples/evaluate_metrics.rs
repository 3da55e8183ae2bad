//! Precision, recall, Pk and WindowDiff on a few small hand-made cases,
//! including a near miss and a spurious boundary next to a true one.
//!
//! ```text
//! cargo run --example evaluate_metrics
//! ```

use segbench::metrics::{default_k, evaluate};
use segbench::Segmentation;

fn main() -> segbench::Result<()> {
    let reference = Segmentation::new(vec![5], 10)?;
    println!("reference {:?} over 10 units, k = {}", reference.boundaries(), default_k(&reference));
    let cases = [
        ("exact", vec![5]),
        ("off by one", vec![4]),
        ("extra boundary", vec![5, 6]),
        ("none", vec![]),
        ("every slot", (1..10).collect()),
    ];
    println!("{:<16} {:>6} {:>6} {:>6} {:>6}", "hypothesis", "P", "R", "Pk", "WD");
    for (label, b) in cases {
        let r = evaluate(&Segmentation::new(b, 10)?, &reference, None)?;
        println!(
            "{label:<16} {:>6.3} {:>6.3} {:>6.3} {:>6.3}",
            r.precision, r.recall, r.pk, r.window_diff
        );
    }
    Ok(())
}
