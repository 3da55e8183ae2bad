//! Linear text segmentation with entity-identifier substitution.
//!
//! The crate covers the whole experimental loop:
//!
//! * [`corpus`]: load document pools and generate concatenated samples with
//!   known boundaries.
//! * [`annotate`]: read standoff entity annotations and rewrite every
//!   mention, pronouns included, as a shared identifier token.
//! * [`preprocess`]: tokenize, drop stop words, Porter-stem, leaving
//!   identifier tokens untouched.
//! * [`segment`]: C99-style divisive clustering, a multinomial minimum
//!   description segmenter and a length-aware similarity DP, with an
//!   exhaustive reference search.
//! * [`metrics`]: precision, recall, Pk and WindowDiff.
//! * [`harness`]: config-driven runs over raw and annotated variants, with
//!   CSV/JSON result tables and scoring of external segmenter output.
//!
//! ```
//! use segbench::preprocess::{preprocess, PreprocessOptions};
//! use segbench::segment::{segment, Algorithm, SegmenterOptions};
//! use segbench::metrics::evaluate;
//! use segbench::Segmentation;
//!
//! let sentences = [
//!     "The court heard the appeal.", "The judge ruled on the appeal.",
//!     "The court adjourned.", "Rain fell over the valley.",
//!     "The valley flooded after rain.", "Rain kept falling.",
//! ];
//! let text = preprocess(&sentences, &PreprocessOptions::default());
//! let hyp = segment(&text, &SegmenterOptions::new(Algorithm::U00)).unwrap();
//! let reference = Segmentation::new(vec![3], 6).unwrap();
//! let report = evaluate(&hyp, &reference, None).unwrap();
//! assert!(report.pk <= 1.0);
//! ```

pub mod annotate;
pub mod corpus;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod preprocess;
pub mod rng;
pub mod segment;
pub mod segmentation;

pub use error::{Error, Result};
pub use segmentation::Segmentation;
