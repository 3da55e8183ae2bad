//! Boundary precision/recall and the window metrics Pk and WindowDiff.
//!
//! Convention shared by both window metrics: units are numbered `1..=N`,
//! boundary slot `t` lies between unit `t` and unit `t + 1`, and the window
//! starting at unit `i` spans slots `i..i + k` (k slots), for
//! `i = 1..=N - k`. Scores are the fraction of the `N - k` windows in which
//! hypothesis and reference disagree.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::segmentation::Segmentation;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub precision: f64,
    pub recall: f64,
    pub pk: f64,
    pub window_diff: f64,
    pub k_used: usize,
    pub n_units: usize,
}

fn check_units(hyp: &Segmentation, reference: &Segmentation) -> Result<usize> {
    if hyp.total_units() != reference.total_units() {
        return Err(Error::UnitMismatch {
            hyp: hyp.total_units(),
            reference: reference.total_units(),
        });
    }
    Ok(reference.total_units())
}

/// Exact-match boundary precision and recall.
///
/// An empty hypothesis scores precision 1 against an empty reference and 0
/// otherwise; recall against an empty reference is 1.
pub fn precision_recall(hyp: &Segmentation, reference: &Segmentation) -> Result<(f64, f64)> {
    check_units(hyp, reference)?;
    let truth: HashSet<usize> = reference.boundaries().iter().copied().collect();
    let hits = hyp.boundaries().iter().filter(|b| truth.contains(b)).count() as f64;
    let precision = match (hyp.boundaries().len(), truth.len()) {
        (0, 0) => 1.0,
        (0, _) => 0.0,
        (h, _) => hits / h as f64,
    };
    let recall = if truth.is_empty() {
        1.0
    } else {
        hits / truth.len() as f64
    };
    Ok((precision, recall))
}

/// Half the mean reference segment length, rounded down, at least 1.
pub fn default_k(reference: &Segmentation) -> usize {
    (reference.total_units() / (2 * reference.segment_count())).max(1)
}

/// `counts[t]` = number of boundaries in slots `1..=t`.
fn prefix_counts(seg: &Segmentation) -> Vec<usize> {
    let n = seg.total_units();
    let mut counts = vec![0; n];
    for &b in seg.boundaries() {
        counts[b] += 1;
    }
    for t in 1..n {
        counts[t] += counts[t - 1];
    }
    counts
}

fn resolve_k(reference: &Segmentation, k: Option<usize>) -> Result<usize> {
    let n = reference.total_units();
    let k = k.unwrap_or_else(|| default_k(reference));
    if k == 0 || k >= n {
        return Err(Error::InvalidWindow { k, n });
    }
    Ok(k)
}

/// Score both window metrics in one pass.
fn window_scores(hyp: &Segmentation, reference: &Segmentation, k: usize) -> (f64, f64) {
    let n = reference.total_units();
    let h = prefix_counts(hyp);
    let r = prefix_counts(reference);
    let mut pk_miss = 0usize;
    let mut wd_miss = 0usize;
    for i in 1..=n - k {
        // Boundaries in slots i..=i+k-1.
        let in_h = h[i + k - 1] - h[i - 1];
        let in_r = r[i + k - 1] - r[i - 1];
        if (in_h == 0) != (in_r == 0) {
            pk_miss += 1;
        }
        if in_h != in_r {
            wd_miss += 1;
        }
    }
    let windows = (n - k) as f64;
    (pk_miss as f64 / windows, wd_miss as f64 / windows)
}

/// Probability that a window's end units are wrongly judged to share (or not
/// share) a segment. `k` defaults to [`default_k`] of the reference.
pub fn pk(hyp: &Segmentation, reference: &Segmentation, k: Option<usize>) -> Result<f64> {
    check_units(hyp, reference)?;
    let k = resolve_k(reference, k)?;
    Ok(window_scores(hyp, reference, k).0)
}

/// Fraction of windows whose boundary counts differ.
pub fn window_diff(hyp: &Segmentation, reference: &Segmentation, k: Option<usize>) -> Result<f64> {
    check_units(hyp, reference)?;
    let k = resolve_k(reference, k)?;
    Ok(window_scores(hyp, reference, k).1)
}

pub fn evaluate(hyp: &Segmentation, reference: &Segmentation, k: Option<usize>) -> Result<MetricReport> {
    let (precision, recall) = precision_recall(hyp, reference)?;
    let k_used = resolve_k(reference, k)?;
    let (pk, window_diff) = window_scores(hyp, reference, k_used);
    Ok(MetricReport {
        precision,
        recall,
        pk,
        window_diff,
        k_used,
        n_units: reference.total_units(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(b: &[usize], n: usize) -> Segmentation {
        Segmentation::new(b.to_vec(), n).unwrap()
    }

    #[test]
    fn precision_recall_cases() {
        let r = seg(&[3, 7], 10);
        assert_eq!(precision_recall(&r, &r).unwrap(), (1.0, 1.0));
        assert_eq!(precision_recall(&seg(&[5, 8], 10), &seg(&[5], 10)).unwrap(), (0.5, 1.0));
        assert_eq!(precision_recall(&seg(&[4], 10), &seg(&[5], 10)).unwrap(), (0.0, 0.0));
        assert_eq!(precision_recall(&seg(&[], 10), &seg(&[], 10)).unwrap(), (1.0, 1.0));
        assert_eq!(precision_recall(&seg(&[], 10), &seg(&[5], 10)).unwrap(), (0.0, 0.0));
        assert_eq!(precision_recall(&seg(&[5], 10), &seg(&[], 10)).unwrap(), (0.0, 1.0));
        assert!(matches!(
            precision_recall(&seg(&[], 9), &seg(&[], 10)),
            Err(Error::UnitMismatch { hyp: 9, reference: 10 })
        ));
    }

    #[test]
    fn default_window() {
        assert_eq!(default_k(&Segmentation::from_lengths(&[5, 5]).unwrap()), 2);
        assert_eq!(default_k(&Segmentation::from_lengths(&[10]).unwrap()), 5);
        assert_eq!(default_k(&Segmentation::from_lengths(&[3, 3, 3]).unwrap()), 1);
        assert_eq!(default_k(&Segmentation::from_lengths(&[1, 1]).unwrap()), 1);
    }

    #[test]
    fn worked_window_examples() {
        let r = seg(&[5], 10);
        assert_eq!(pk(&seg(&[4], 10), &r, Some(2)).unwrap(), 0.25);
        assert_eq!(window_diff(&seg(&[4], 10), &r, Some(2)).unwrap(), 0.25);
        assert_eq!(pk(&seg(&[], 10), &r, Some(2)).unwrap(), 0.25);
        assert_eq!(pk(&r, &r, None).unwrap(), 0.0);
        assert_eq!(window_diff(&r, &r, None).unwrap(), 0.0);
    }

    #[test]
    fn near_false_positive_separates_the_metrics() {
        // Extra boundary one slot after the true one. The window over slots
        // 5..=6 holds both; Pk sees "some boundary" on each side and passes
        // it, WindowDiff sees 2 against 1.
        let r = seg(&[5], 10);
        let h = seg(&[5, 6], 10);
        assert_eq!(pk(&h, &r, Some(2)).unwrap(), 1.0 / 8.0);
        assert_eq!(window_diff(&h, &r, Some(2)).unwrap(), 2.0 / 8.0);
    }

    #[test]
    fn window_errors() {
        let r = seg(&[2], 4);
        assert!(matches!(pk(&r, &r, Some(4)), Err(Error::InvalidWindow { k: 4, n: 4 })));
        assert!(window_diff(&r, &r, Some(0)).is_err());
        let one = seg(&[], 1);
        assert!(evaluate(&one, &one, None).is_err());
    }

    #[test]
    fn report_fields() {
        let rep = evaluate(&seg(&[4], 10), &seg(&[5], 10), None).unwrap();
        assert_eq!(rep.k_used, 2);
        assert_eq!(rep.n_units, 10);
        assert_eq!((rep.pk, rep.window_diff), (0.25, 0.25));
    }
}
