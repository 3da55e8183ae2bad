use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A linear segmentation of `total_units` units (sentences).
///
/// Boundary `t` sits between unit `t` and unit `t + 1`, counting units from 1,
/// so valid boundaries lie in `1..total_units`. Boundaries are kept strictly
/// increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSegmentation")]
pub struct Segmentation {
    boundaries: Vec<usize>,
    total_units: usize,
}

#[derive(Deserialize)]
struct RawSegmentation {
    boundaries: Vec<usize>,
    total_units: usize,
}

impl TryFrom<RawSegmentation> for Segmentation {
    type Error = Error;

    fn try_from(raw: RawSegmentation) -> Result<Self> {
        Segmentation::new(raw.boundaries, raw.total_units)
    }
}

impl Segmentation {
    pub fn new(boundaries: Vec<usize>, total_units: usize) -> Result<Self> {
        if total_units == 0 {
            return Err(Error::InvalidSegmentation(
                "a segmentation needs at least one unit".into(),
            ));
        }
        for (i, &b) in boundaries.iter().enumerate() {
            if b == 0 || b >= total_units {
                return Err(Error::InvalidSegmentation(format!(
                    "boundary {b} outside 1..{total_units}"
                )));
            }
            if i > 0 && boundaries[i - 1] >= b {
                return Err(Error::InvalidSegmentation(format!(
                    "boundaries not strictly increasing at {} -> {b}",
                    boundaries[i - 1]
                )));
            }
        }
        Ok(Segmentation {
            boundaries,
            total_units,
        })
    }

    /// A single segment covering all units.
    pub fn unsegmented(total_units: usize) -> Result<Self> {
        Self::new(Vec::new(), total_units)
    }

    pub fn from_lengths(lengths: &[usize]) -> Result<Self> {
        if lengths.contains(&0) {
            return Err(Error::InvalidSegmentation(
                "segment lengths must be positive".into(),
            ));
        }
        let mut boundaries = Vec::with_capacity(lengths.len().saturating_sub(1));
        let mut acc = 0;
        for &len in lengths {
            acc += len;
            boundaries.push(acc);
        }
        let total = boundaries.pop().unwrap_or(0);
        Self::new(boundaries, total)
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn total_units(&self) -> usize {
        self.total_units
    }

    pub fn segment_count(&self) -> usize {
        self.boundaries.len() + 1
    }

    pub fn segment_lengths(&self) -> Vec<usize> {
        let mut prev = 0;
        self.boundaries
            .iter()
            .chain(std::iter::once(&self.total_units))
            .map(|&b| {
                let len = b - prev;
                prev = b;
                len
            })
            .collect()
    }

    /// 0-based half-open unit ranges of each segment.
    pub fn segment_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut prev = 0;
        self.boundaries
            .iter()
            .chain(std::iter::once(&self.total_units))
            .map(|&b| {
                let r = prev..b;
                prev = b;
                r
            })
            .collect()
    }

    /// Mirror image: unit `i` becomes unit `n + 1 - i`.
    pub fn reversed(&self) -> Self {
        let n = self.total_units;
        let boundaries = self.boundaries.iter().rev().map(|&b| n - b).collect();
        Segmentation {
            boundaries,
            total_units: n,
        }
    }
}
