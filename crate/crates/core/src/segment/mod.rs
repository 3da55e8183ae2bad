//! Segmentation algorithms.
//!
//! * [`segment_c99`]: rank-matrix divisive clustering.
//! * [`segment_u00`]: minimum multinomial code length with a boundary
//!   penalty, solved globally.
//! * [`segment_dp_length`]: similarity cohesion against a preferred segment
//!   length, solved globally.
//! * [`segment_exhaustive`]: brute-force minimum for small inputs, the
//!   reference the two global solvers are tested against.

pub mod c99;
pub mod dp;
pub mod matrix;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use c99::segment_c99;
pub use dp::{CostModel, CostTable};
pub use matrix::{build_similarity, rank_transform, RankMatrix, SimilarityMatrix, SquareMatrix};

use crate::error::{Error, Result};
use crate::preprocess::TokenizedText;
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    C99,
    U00,
    DpLength,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::C99 => "c99",
            Algorithm::U00 => "u00",
            Algorithm::DpLength => "dp_length",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c99" => Ok(Algorithm::C99),
            "u00" => Ok(Algorithm::U00),
            "dp_length" => Ok(Algorithm::DpLength),
            other => Err(Error::InvalidArgument(format!(
                "unknown algorithm {other:?} (expected c99, u00 or dp_length)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmenterOptions {
    pub algorithm: Algorithm,
    /// Weight on the per-boundary `ln(total tokens)` penalty.
    pub u00_penalty_weight: f64,
    pub dp_preferred_length: f64,
    pub dp_length_weight: f64,
    pub dp_segment_count: Option<usize>,
    pub c99_mask: usize,
    pub c99_auto_threshold_coeff: f64,
    /// Target segment count for C99 and U00; automatic when unset.
    pub fixed_segment_count: Option<usize>,
}

impl Default for SegmenterOptions {
    fn default() -> Self {
        SegmenterOptions {
            algorithm: Algorithm::C99,
            u00_penalty_weight: 1.0,
            dp_preferred_length: 7.0,
            dp_length_weight: 0.01,
            dp_segment_count: None,
            c99_mask: 11,
            c99_auto_threshold_coeff: 1.2,
            fixed_segment_count: None,
        }
    }
}

impl SegmenterOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SegmenterOptions {
            algorithm,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.c99_mask == 0 || self.c99_mask.is_multiple_of(2) {
            return bad(format!("c99_mask must be odd and >= 1, got {}", self.c99_mask));
        }
        if !(0.0..).contains(&self.u00_penalty_weight) {
            return bad("u00_penalty_weight must be >= 0".into());
        }
        if self.dp_preferred_length.is_nan() || self.dp_preferred_length <= 0.0 {
            return bad("dp_preferred_length must be > 0".into());
        }
        if !(0.0..).contains(&self.dp_length_weight) {
            return bad("dp_length_weight must be >= 0".into());
        }
        if !self.c99_auto_threshold_coeff.is_finite() {
            return bad("c99_auto_threshold_coeff must be finite".into());
        }
        if self.dp_segment_count == Some(0) || self.fixed_segment_count == Some(0) {
            return bad("segment counts must be >= 1".into());
        }
        Ok(())
    }

    /// The cost model and target count the global solvers use for this
    /// configuration, or `None` for C99.
    pub fn cost_model(&self) -> Option<(CostModel, Option<usize>)> {
        match self.algorithm {
            Algorithm::C99 => None,
            Algorithm::U00 => Some((
                CostModel::Multinomial {
                    penalty_weight: self.u00_penalty_weight,
                },
                self.fixed_segment_count,
            )),
            Algorithm::DpLength => Some((
                CostModel::LengthSimilarity {
                    preferred_length: self.dp_preferred_length,
                    length_weight: self.dp_length_weight,
                },
                self.dp_segment_count,
            )),
        }
    }
}

pub fn segment_u00(text: &TokenizedText, opts: &SegmenterOptions) -> Result<Segmentation> {
    let model = CostModel::Multinomial {
        penalty_weight: opts.u00_penalty_weight,
    };
    dp::optimal(&CostTable::build(text, model)?, opts.fixed_segment_count)
}

pub fn segment_dp_length(text: &TokenizedText, opts: &SegmenterOptions) -> Result<Segmentation> {
    let model = CostModel::LengthSimilarity {
        preferred_length: opts.dp_preferred_length,
        length_weight: opts.dp_length_weight,
    };
    dp::optimal(&CostTable::build(text, model)?, opts.dp_segment_count)
}

/// Brute-force minimum under `model` (at most [`dp::EXHAUSTIVE_LIMIT`]
/// sentences). `segments` fixes the segment count when given.
pub fn segment_exhaustive(
    text: &TokenizedText,
    model: CostModel,
    segments: Option<usize>,
) -> Result<Segmentation> {
    if text.len() > dp::EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            n: text.len(),
            limit: dp::EXHAUSTIVE_LIMIT,
        });
    }
    dp::exhaustive(&CostTable::build(text, model)?, segments)
}

/// Run the algorithm selected in `opts`.
pub fn segment(text: &TokenizedText, opts: &SegmenterOptions) -> Result<Segmentation> {
    opts.validate()?;
    match opts.algorithm {
        Algorithm::C99 => segment_c99(text, opts),
        Algorithm::U00 => segment_u00(text, opts),
        Algorithm::DpLength => segment_dp_length(text, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::tokenize;

    fn two_topics() -> TokenizedText {
        let mut s = vec!["apple banana cherry"; 4];
        s.extend(vec!["xray yankee zulu"; 4]);
        tokenize(&s)
    }

    #[test]
    fn all_three_find_the_topic_shift() {
        let text = two_topics();
        let c99 = segment_c99(&text, &SegmenterOptions::new(Algorithm::C99)).unwrap();
        assert_eq!(c99.boundaries(), &[4]);
        let u00 = segment_u00(&text, &SegmenterOptions::new(Algorithm::U00)).unwrap();
        assert_eq!(u00.boundaries(), &[4]);
        let mut opts = SegmenterOptions::new(Algorithm::DpLength);
        opts.dp_preferred_length = 4.0;
        opts.dp_length_weight = 1.0;
        assert_eq!(segment_dp_length(&text, &opts).unwrap().boundaries(), &[4]);
    }

    #[test]
    fn single_sentence() {
        let text = tokenize(&["only one"]);
        for alg in [Algorithm::C99, Algorithm::U00, Algorithm::DpLength] {
            let seg = segment(&text, &SegmenterOptions::new(alg)).unwrap();
            assert!(seg.boundaries().is_empty(), "{alg}");
        }
    }

    #[test]
    fn empty_input_errors() {
        let text = tokenize::<&str>(&[]);
        for alg in [Algorithm::C99, Algorithm::U00, Algorithm::DpLength] {
            assert!(segment(&text, &SegmenterOptions::new(alg)).is_err());
        }
    }

    #[test]
    fn identical_sentences() {
        let text = tokenize(&["same words here"; 8]);
        let c99 = segment_c99(&text, &SegmenterOptions::new(Algorithm::C99)).unwrap();
        assert!(c99.boundaries().is_empty());
        let u00 = segment_u00(&text, &SegmenterOptions::new(Algorithm::U00)).unwrap();
        assert!(u00.boundaries().is_empty());
    }

    #[test]
    fn dp_count_larger_than_input() {
        let mut opts = SegmenterOptions::new(Algorithm::DpLength);
        opts.dp_segment_count = Some(3);
        assert!(segment_dp_length(&tokenize(&["a", "b"]), &opts).is_err());
    }

    #[test]
    fn c99_fixed_count() {
        let mut opts = SegmenterOptions::new(Algorithm::C99);
        opts.fixed_segment_count = Some(3);
        let seg = segment_c99(&two_topics(), &opts).unwrap();
        assert_eq!(seg.segment_count(), 3);
        assert!(seg.boundaries().contains(&4));
    }

    #[test]
    fn option_validation() {
        let o = SegmenterOptions { c99_mask: 4, ..Default::default() };
        assert!(o.validate().is_err());
        let o = SegmenterOptions { dp_preferred_length: 0.0, ..Default::default() };
        assert!(o.validate().is_err());
        let o = SegmenterOptions { u00_penalty_weight: f64::NAN, ..Default::default() };
        assert!(o.validate().is_err());
        assert!("bogus".parse::<Algorithm>().is_err());
        assert_eq!("dp_length".parse::<Algorithm>().unwrap(), Algorithm::DpLength);
    }
}
