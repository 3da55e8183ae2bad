//! Divisive clustering over a rank matrix.
//!
//! Starting from one segment, each step applies the single split (over all
//! current segments) that maximises the inside density
//! `D = sum of block rank mass / sum of block areas`. Splitting continues
//! until the requested number of segments is reached, or, without a target,
//! the density gain of a step is no longer above `mean + c * stddev` of all
//! gains.

use super::matrix::{build_similarity, rank_transform, RankMatrix};
use super::SegmenterOptions;
use crate::error::{Error, Result};
use crate::preprocess::TokenizedText;
use crate::segmentation::Segmentation;

/// 2-D prefix sums for O(1) block totals.
struct BlockSums {
    n: usize,
    prefix: Vec<f64>,
}

impl BlockSums {
    fn new(r: &RankMatrix) -> Self {
        let n = r.n();
        let w = n + 1;
        let mut prefix = vec![0.0; w * w];
        for i in 0..n {
            for j in 0..n {
                prefix[(i + 1) * w + j + 1] =
                    r.get(i, j) + prefix[i * w + j + 1] + prefix[(i + 1) * w + j] - prefix[i * w + j];
            }
        }
        BlockSums { n, prefix }
    }

    /// Sum over the diagonal block `start..end` x `start..end`.
    fn block(&self, start: usize, end: usize) -> f64 {
        let w = self.n + 1;
        self.prefix[end * w + end] - self.prefix[start * w + end] - self.prefix[end * w + start]
            + self.prefix[start * w + start]
    }
}

/// Result of running the divisive procedure: boundaries in the order they
/// were introduced, with the density after each split.
#[derive(Debug, Clone)]
pub struct SplitTrace {
    pub n: usize,
    pub splits: Vec<usize>,
    /// `densities[0]` is the unsplit density; `densities[k]` follows split k.
    pub densities: Vec<f64>,
}

impl SplitTrace {
    pub fn gradients(&self) -> Vec<f64> {
        self.densities.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Boundaries after the first `k` splits, ascending.
    pub fn segmentation(&self, k: usize) -> Segmentation {
        let mut b = self.splits[..k].to_vec();
        b.sort_unstable();
        Segmentation::new(b, self.n).expect("splits are distinct interior points")
    }
}

/// Greedily split `r`, at most `max_splits` times.
pub fn divisive_split(r: &RankMatrix, max_splits: usize) -> SplitTrace {
    let n = r.n();
    let sums = BlockSums::new(r);
    let mut cuts = vec![0, n];
    let mut mass = sums.block(0, n);
    let mut area = (n * n) as f64;
    let mut trace = SplitTrace {
        n,
        splits: Vec::new(),
        densities: vec![mass / area],
    };
    while trace.splits.len() < max_splits.min(n.saturating_sub(1)) {
        let mut best: Option<(f64, f64, f64, usize)> = None;
        for seg in cuts.windows(2) {
            let (start, end) = (seg[0], seg[1]);
            let outer_mass = sums.block(start, end);
            let outer_area = ((end - start) * (end - start)) as f64;
            for cut in start + 1..end {
                let m = mass - outer_mass + sums.block(start, cut) + sums.block(cut, end);
                let a = area - outer_area
                    + ((cut - start) * (cut - start)) as f64
                    + ((end - cut) * (end - cut)) as f64;
                let d = m / a;
                if best.is_none_or(|(bd, ..)| d > bd) {
                    best = Some((d, m, a, cut));
                }
            }
        }
        let Some((d, m, a, cut)) = best else { break };
        mass = m;
        area = a;
        let pos = cuts.partition_point(|&c| c < cut);
        cuts.insert(pos, cut);
        trace.splits.push(cut);
        trace.densities.push(d);
    }
    trace
}

/// Number of splits to keep under the gradient threshold rule: splits are
/// accepted while their density gain exceeds `mean + coeff * stddev`.
pub fn automatic_split_count(gradients: &[f64], coeff: f64) -> usize {
    if gradients.is_empty() {
        return 0;
    }
    let len = gradients.len() as f64;
    let mean = gradients.iter().sum::<f64>() / len;
    let var = gradients.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / len;
    let threshold = mean + coeff * var.sqrt();
    gradients.iter().take_while(|&&g| g > threshold).count()
}

pub fn segment_c99(text: &TokenizedText, opts: &SegmenterOptions) -> Result<Segmentation> {
    let n = text.len();
    if n == 0 {
        return Err(Error::EmptyInput("no sentences to segment"));
    }
    let s = build_similarity(text)?;
    let r = rank_transform(&s, opts.c99_mask)?;
    match opts.fixed_segment_count {
        Some(0) => Err(Error::InvalidArgument("segment count must be at least 1".into())),
        Some(k) => {
            let trace = divisive_split(&r, k - 1);
            Ok(trace.segmentation(trace.splits.len()))
        }
        None => {
            let trace = divisive_split(&r, n - 1);
            let keep = automatic_split_count(&trace.gradients(), opts.c99_auto_threshold_coeff);
            Ok(trace.segmentation(keep))
        }
    }
}
