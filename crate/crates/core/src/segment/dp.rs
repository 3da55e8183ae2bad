//! Segmentations that minimise an additive cost, solved exactly by dynamic
//! programming, plus the brute-force enumeration used to check the solver.
//!
//! A cost model assigns every candidate segment `start..end` (0-based,
//! half-open) an edge cost. The cost of a segmentation is the left-to-right
//! sum of its segment costs, computed the same way by the solver and the
//! enumerator so that optimal costs compare exactly.
//!
//! Ties are broken toward fewer boundaries, then toward the lexicographically
//! smallest (leftmost) boundary list.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::matrix::{build_similarity, SimilarityMatrix};
use crate::error::{Error, Result};
use crate::preprocess::TokenizedText;
use crate::segmentation::Segmentation;

/// Largest input the exhaustive search accepts.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CostModel {
    /// Laplace-smoothed multinomial code length of each segment plus
    /// `penalty_weight * ln(total tokens)` per boundary.
    Multinomial { penalty_weight: f64 },
    /// `length_weight * (len - preferred_length)^2 - (sum of pairwise
    /// similarities inside the segment) / len`.
    LengthSimilarity {
        preferred_length: f64,
        length_weight: f64,
    },
}

/// Edge costs for every candidate segment.
#[derive(Debug, Clone)]
pub struct CostTable {
    n: usize,
    edges: Vec<f64>,
}

impl CostTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost of segment `start..end`, `0 <= start < end <= n`.
    #[inline]
    pub fn edge(&self, start: usize, end: usize) -> f64 {
        self.edges[start * (self.n + 1) + end]
    }

    fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let w = n + 1;
        let mut edges = vec![f64::NAN; w * w];
        for start in 0..n {
            for end in start + 1..=n {
                edges[start * w + end] = f(start, end);
            }
        }
        CostTable { n, edges }
    }

    pub fn build(text: &TokenizedText, model: CostModel) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyInput("no sentences to segment"));
        }
        match model {
            CostModel::Multinomial { penalty_weight } => Ok(multinomial_table(text, penalty_weight)),
            CostModel::LengthSimilarity {
                preferred_length,
                length_weight,
            } => {
                let s = build_similarity(text)?;
                Ok(length_similarity_table(&s, preferred_length, length_weight))
            }
        }
    }

    /// Left-to-right sum of the segment costs of `seg`.
    pub fn cost(&self, seg: &Segmentation) -> f64 {
        assert_eq!(seg.total_units(), self.n, "segmentation size differs from cost table");
        seg.segment_ranges()
            .into_iter()
            .fold(0.0, |acc, r| acc + self.edge(r.start, r.end))
    }
}

fn multinomial_table(text: &TokenizedText, penalty_weight: f64) -> CostTable {
    let n = text.len();
    let vocab = text.vocab_size() as f64;
    let total_tokens = text.token_count();
    let penalty = if total_tokens > 0 {
        penalty_weight * (total_tokens as f64).ln()
    } else {
        0.0
    };
    let counts = text.counts();
    let mut word_counts = vec![0u32; text.vocab_size()];
    let w = n + 1;
    let mut edges = vec![f64::NAN; w * w];
    for start in 0..n {
        word_counts.iter_mut().for_each(|c| *c = 0);
        let mut len = 0u64;
        // Running sum of c * ln(c + 1) over the words of the segment.
        let mut c_log_c = 0.0;
        for end in start + 1..=n {
            for &(term, c) in &counts[end - 1] {
                let before = word_counts[term] as f64;
                let after = before + c as f64;
                c_log_c += after * (after + 1.0).ln() - before * (before + 1.0).ln();
                word_counts[term] += c;
                len += c as u64;
            }
            let code_length = if len == 0 {
                0.0
            } else {
                len as f64 * (len as f64 + vocab).ln() - c_log_c
            };
            edges[start * w + end] = if start > 0 { code_length + penalty } else { code_length };
        }
    }
    CostTable { n, edges }
}

fn length_similarity_table(s: &SimilarityMatrix, preferred_length: f64, length_weight: f64) -> CostTable {
    let n = s.n();
    let w = n + 1;
    let mut edges = vec![f64::NAN; w * w];
    for start in 0..n {
        let mut pair_sum = 0.0;
        for end in start + 1..=n {
            let newest = end - 1;
            for a in start..newest {
                pair_sum += s.get(a, newest);
            }
            let len = (end - start) as f64;
            let dev = len - preferred_length;
            edges[start * w + end] = length_weight * dev * dev - pair_sum / len;
        }
    }
    CostTable { n, edges }
}

/// Build a table directly from a cost function; used for custom models and
/// tests.
pub fn table_from_fn(n: usize, f: impl FnMut(usize, usize) -> f64) -> CostTable {
    CostTable::from_fn(n, f)
}

#[derive(Debug, Clone)]
struct Candidate {
    cost: f64,
    boundaries: Vec<usize>,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        compare(self.cost, &self.boundaries, other.cost, &other.boundaries) == Ordering::Less
    }
}

/// Total order used for ties: cost, then boundary count, then boundaries.
fn compare(cost_a: f64, bounds_a: &[usize], cost_b: f64, bounds_b: &[usize]) -> Ordering {
    cost_a
        .total_cmp(&cost_b)
        .then(bounds_a.len().cmp(&bounds_b.len()))
        .then_with(|| bounds_a.cmp(bounds_b))
}

fn check_count(n: usize, segments: Option<usize>) -> Result<()> {
    match segments {
        Some(0) => Err(Error::InvalidArgument("segment count must be at least 1".into())),
        Some(k) if k > n => Err(Error::InvalidArgument(format!(
            "cannot split {n} units into {k} segments"
        ))),
        _ => Ok(()),
    }
}

/// Minimum-cost segmentation, optionally with exactly `segments` segments.
#[allow(clippy::needless_range_loop)]
pub fn optimal(table: &CostTable, segments: Option<usize>) -> Result<Segmentation> {
    let n = table.n();
    check_count(n, segments)?;
    let best = match segments {
        None => {
            let mut best: Vec<Candidate> = Vec::with_capacity(n + 1);
            best.push(Candidate { cost: 0.0, boundaries: Vec::new() });
            for end in 1..=n {
                let mut winner: Option<Candidate> = None;
                for (start, prefix) in best.iter().enumerate() {
                    let cand = extend(prefix, start, table.edge(start, end));
                    if winner.as_ref().is_none_or(|w| cand.better_than(w)) {
                        winner = Some(cand);
                    }
                }
                best.push(winner.expect("at least one predecessor"));
            }
            best.pop().expect("n >= 1")
        }
        Some(k) => {
            // layer[end]: best split of 0..end into the current number of segments.
            let mut layer: Vec<Option<Candidate>> = (0..=n)
                .map(|end| {
                    (end > 0).then(|| Candidate {
                        cost: table.edge(0, end),
                        boundaries: Vec::new(),
                    })
                })
                .collect();
            for used in 2..=k {
                let mut next: Vec<Option<Candidate>> = vec![None; n + 1];
                for end in used..=n {
                    for start in used - 1..end {
                        let Some(prefix) = &layer[start] else { continue };
                        let cand = extend(prefix, start, table.edge(start, end));
                        if next[end].as_ref().is_none_or(|w| cand.better_than(w)) {
                            next[end] = Some(cand);
                        }
                    }
                }
                layer = next;
            }
            layer.pop().flatten().expect("k <= n leaves a feasible split")
        }
    };
    Segmentation::new(best.boundaries, n)
}

fn extend(prefix: &Candidate, start: usize, edge: f64) -> Candidate {
    let mut boundaries = prefix.boundaries.clone();
    if start > 0 {
        boundaries.push(start);
    }
    Candidate {
        cost: prefix.cost + edge,
        boundaries,
    }
}

/// Enumerate every segmentation (with exactly `segments` segments, if given)
/// and return the cheapest under the same tie-break as [`optimal`].
pub fn exhaustive(table: &CostTable, segments: Option<usize>) -> Result<Segmentation> {
    let n = table.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { n, limit: EXHAUSTIVE_LIMIT });
    }
    check_count(n, segments)?;
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 0u32..(1u32 << (n - 1)) {
        if let Some(k) = segments {
            if mask.count_ones() as usize != k - 1 {
                continue;
            }
        }
        let boundaries: Vec<usize> = (0..n - 1).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let mut cost = 0.0;
        let mut start = 0;
        for &end in boundaries.iter().chain(std::iter::once(&n)) {
            cost += table.edge(start, end);
            start = end;
        }
        let better = best
            .as_ref()
            .is_none_or(|(bc, bb)| compare(cost, &boundaries, *bc, bb) == Ordering::Less);
        if better {
            best = Some((cost, boundaries));
        }
    }
    let (_, boundaries) = best.expect("at least one segmentation");
    Segmentation::new(boundaries, n)
}
