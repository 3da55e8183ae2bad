mod common;

use common::{metric_oracle, random_segmentation};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segbench::metrics::{default_k, evaluate, pk, precision_recall, window_diff};
use segbench::{Error, Segmentation};

fn seg(b: &[usize], n: usize) -> Segmentation {
    Segmentation::new(b.to_vec(), n).unwrap()
}

#[test]
fn worked_case_matches_oracle() {
    let (hyp, reference) = (seg(&[4], 10), seg(&[5], 10));
    assert_eq!(metric_oracle(&hyp, &reference, 2), (0.25, 0.25));
    assert_eq!(pk(&hyp, &reference, Some(2)).unwrap(), 0.25);
    assert_eq!(window_diff(&hyp, &reference, Some(2)).unwrap(), 0.25);
}

#[test]
fn empty_hypothesis_case() {
    let (hyp, reference) = (seg(&[], 10), seg(&[5], 10));
    assert_eq!(metric_oracle(&hyp, &reference, 2).0, 0.25);
    assert_eq!(pk(&hyp, &reference, Some(2)).unwrap(), 0.25);
}

#[test]
fn near_false_positive_penalized_by_window_diff_only_partly() {
    // A spurious boundary at 6, one slot after the true one: Pk sees one
    // disagreeing window, WindowDiff two.
    let (hyp, reference) = (seg(&[5, 6], 10), seg(&[5], 10));
    let (p, w) = metric_oracle(&hyp, &reference, 2);
    assert_eq!((p, w), (1.0 / 8.0, 2.0 / 8.0));
    assert_eq!(pk(&hyp, &reference, Some(2)).unwrap(), p);
    assert_eq!(window_diff(&hyp, &reference, Some(2)).unwrap(), w);
    assert!(w > 0.0);
}

#[test]
fn largest_window_is_single() {
    let reference = seg(&[3], 8);
    for hyp in [seg(&[], 8), seg(&[2, 5], 8), seg(&[3], 8)] {
        let v = pk(&hyp, &reference, Some(7)).unwrap();
        assert!(v == 0.0 || v == 1.0);
        assert_eq!(v, metric_oracle(&hyp, &reference, 7).0);
    }
}

#[test]
fn window_size_errors() {
    let r = seg(&[5], 10);
    assert!(matches!(pk(&r, &r, Some(10)), Err(Error::InvalidWindow { k: 10, n: 10 })));
    assert!(window_diff(&r, &r, Some(0)).is_err());
    assert!(matches!(pk(&seg(&[], 9), &r, None), Err(Error::UnitMismatch { .. })));
}

#[test]
fn precision_recall_examples() {
    assert_eq!(precision_recall(&seg(&[5], 10), &seg(&[5], 10)).unwrap(), (1.0, 1.0));
    assert_eq!(precision_recall(&seg(&[5, 8], 10), &seg(&[5], 10)).unwrap(), (0.5, 1.0));
    assert_eq!(precision_recall(&seg(&[4], 10), &seg(&[5], 10)).unwrap(), (0.0, 0.0));
    assert_eq!(precision_recall(&seg(&[], 10), &seg(&[], 10)).unwrap(), (1.0, 1.0));
    assert_eq!(precision_recall(&seg(&[], 10), &seg(&[5], 10)).unwrap(), (0.0, 0.0));
}

#[test]
fn default_window() {
    assert_eq!(default_k(&seg(&[5], 10)), 2);
    assert_eq!(default_k(&seg(&[], 10)), 5);
    assert_eq!(default_k(&seg(&[3, 6], 9)), 1);
    assert_eq!(default_k(&seg(&[], 1)), 1);
}

#[test]
fn report_fields() {
    let r = evaluate(&seg(&[4], 10), &seg(&[5], 10), None).unwrap();
    assert_eq!((r.k_used, r.n_units), (2, 10));
    assert_eq!((r.pk, r.window_diff), (0.25, 0.25));
}

#[test]
fn oracle_agreement_over_seeded_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=20);
        let (h, r) = (random_segmentation(&mut rng, n), random_segmentation(&mut rng, n));
        for k in 1..n {
            let (p, w) = metric_oracle(&h, &r, k);
            assert_eq!(pk(&h, &r, Some(k)).unwrap(), p);
            assert_eq!(window_diff(&h, &r, Some(k)).unwrap(), w);
        }
    }
}

fn pair() -> impl Strategy<Value = (Segmentation, Segmentation, usize)> {
    (2usize..=20).prop_flat_map(|n| {
        let slots = proptest::collection::vec(any::<bool>(), n - 1);
        (slots.clone(), slots, 1..n).prop_map(move |(a, b, k)| {
            let pick = |v: Vec<bool>| (1..n).filter(|&t| v[t - 1]).collect();
            (Segmentation::new(pick(a), n).unwrap(), Segmentation::new(pick(b), n).unwrap(), k)
        })
    })
}

proptest! {
    #[test]
    fn metrics_match_oracle((h, r, k) in pair()) {
        let (p, w) = metric_oracle(&h, &r, k);
        prop_assert_eq!(pk(&h, &r, Some(k)).unwrap(), p);
        prop_assert_eq!(window_diff(&h, &r, Some(k)).unwrap(), w);
    }

    #[test]
    fn bounded_and_zero_on_identity((h, r, k) in pair()) {
        let p = pk(&h, &r, Some(k)).unwrap();
        let w = window_diff(&h, &r, Some(k)).unwrap();
        prop_assert!((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&w));
        prop_assert!(p <= w);
        prop_assert_eq!(pk(&r, &r, Some(k)).unwrap(), 0.0);
        prop_assert_eq!(window_diff(&r, &r, Some(k)).unwrap(), 0.0);
    }

    #[test]
    fn reversal_invariance((h, r, k) in pair()) {
        let (hr, rr) = (h.reversed(), r.reversed());
        prop_assert_eq!(pk(&h, &r, Some(k)).unwrap(), pk(&hr, &rr, Some(k)).unwrap());
        prop_assert_eq!(window_diff(&h, &r, Some(k)).unwrap(), window_diff(&hr, &rr, Some(k)).unwrap());
    }
}
