use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segbench::preprocess::{tokenize, TokenizedText};
use segbench::segment::c99::divisive_split;
use segbench::segment::{
    build_similarity, rank_transform, segment, segment_exhaustive, Algorithm, CostModel, CostTable,
    SegmenterOptions, SquareMatrix,
};
use segbench::{Error, Segmentation};

fn blocks(a: &str, na: usize, b: &str, nb: usize) -> TokenizedText {
    let mut s = vec![a; na];
    s.extend(vec![b; nb]);
    tokenize(&s)
}

fn run(text: &TokenizedText, opts: SegmenterOptions) -> Vec<usize> {
    segment(text, &opts).unwrap().boundaries().to_vec()
}

fn random_text(rng: &mut impl Rng, n: usize) -> TokenizedText {
    let vocab: Vec<String> = (0..rng.gen_range(3..15)).map(|i| format!("w{i}")).collect();
    let sentences: Vec<String> = (0..n)
        .map(|_| {
            let len = rng.gen_range(0..7);
            (0..len).map(|_| vocab.choose(rng).unwrap().as_str()).collect::<Vec<_>>().join(" ")
        })
        .collect();
    tokenize(&sentences)
}

/// Brute-force rank: every window cell compared one by one.
fn rank_oracle(s: &SquareMatrix, mask: usize) -> SquareMatrix {
    let n = s.n() as i64;
    let half = (mask / 2) as i64;
    SquareMatrix::from_fn(s.n(), |i, j| {
        let (mut lower, mut cells) = (0, 0);
        for r in i as i64 - half..=i as i64 + half {
            for c in j as i64 - half..=j as i64 + half {
                if r < 0 || c < 0 || r >= n || c >= n {
                    continue;
                }
                cells += 1;
                if s.get(r as usize, c as usize) < s.get(i, j) {
                    lower += 1;
                }
            }
        }
        if cells == 1 {
            0.0
        } else {
            lower as f64 / (cells - 1) as f64
        }
    })
}

#[test]
fn similarity_by_dot_products() {
    let text = tokenize(&["a b", "a c", "c d"]);
    let s = build_similarity(&text).unwrap();
    // Frequency vectors over (a, b, c, d).
    let v = [[1.0, 1.0, 0.0, 0.0], [1.0, 0.0, 1.0, 0.0], [0.0, 0.0, 1.0, 1.0]];
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..4).map(|t| v[i][t] * v[j][t]).sum();
            let expect = if i == j { 1.0 } else { dot / 2.0 };
            assert_eq!(s.get(i, j), expect, "({i},{j})");
        }
    }
}

#[test]
fn rank_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=12 {
        for mask in [1, 3, 5, 11] {
            let s = SquareMatrix::from_fn(n, |_, _| (rng.gen_range(0..5) as f64) / 4.0);
            assert_eq!(rank_transform(&s, mask).unwrap(), rank_oracle(&s, mask), "n={n} mask={mask}");
        }
    }
}

#[test]
fn c99_two_blocks() {
    let text = blocks("apple banana", 4, "xray zulu", 4);
    let mut opts = SegmenterOptions::new(Algorithm::C99);
    opts.fixed_segment_count = Some(2);
    assert_eq!(run(&text, opts.clone()), vec![4]);

    // The chosen split is the density maximum over every 2-segmentation.
    let r = rank_transform(&build_similarity(&text).unwrap(), 11).unwrap();
    let density = |cut: usize| {
        let block = |a: usize, b: usize| -> f64 { (a..b).flat_map(|i| (a..b).map(move |j| (i, j))).map(|(i, j)| r.get(i, j)).sum() };
        (block(0, cut) + block(cut, 8)) / ((cut * cut + (8 - cut) * (8 - cut)) as f64)
    };
    let best = (1..8).max_by(|&a, &b| density(a).total_cmp(&density(b)).then(b.cmp(&a))).unwrap();
    assert_eq!(best, 4);
    assert_eq!(divisive_split(&r, 1).splits, vec![4]);

    opts.fixed_segment_count = None;
    assert_eq!(run(&text, opts), vec![4]);
}

#[test]
fn c99_degenerate_inputs() {
    let opts = SegmenterOptions::new(Algorithm::C99);
    assert!(run(&tokenize(&["only one"]), opts.clone()).is_empty());
    // Pinned: identical sentences rank to all zeros and automatic
    // termination keeps no split.
    assert!(run(&tokenize(&["same words here"; 9]), opts.clone()).is_empty());
    assert!(matches!(segment(&tokenize::<&str>(&[]), &opts), Err(Error::EmptyInput(_))));
}

#[test]
fn u00_examples() {
    let opts = SegmenterOptions::new(Algorithm::U00);
    assert_eq!(run(&blocks("apple banana cherry", 4, "xray yankee zulu", 4), opts.clone()), vec![4]);
    assert!(run(&tokenize(&["one sentence"]), opts.clone()).is_empty());
    assert!(run(&tokenize(&["same words here"; 8]), opts.clone()).is_empty());

    let model = opts.cost_model().unwrap().0;
    let text = blocks("apple banana cherry", 4, "xray yankee zulu", 4);
    assert_eq!(segment_exhaustive(&text, model, None).unwrap().boundaries(), &[4]);
}

#[test]
fn u00_signal_endpoints() {
    let mut opts = SegmenterOptions::new(Algorithm::U00);
    opts.u00_penalty_weight = 2.0;
    assert_eq!(run(&blocks("apple banana cherry", 4, "xray yankee zulu", 4), opts.clone()), vec![4]);
    assert!(run(&blocks("apple banana cherry", 4, "apple banana cherry", 4), opts).is_empty());
}

#[test]
fn dp_length_examples() {
    let mut opts = SegmenterOptions::new(Algorithm::DpLength);
    opts.dp_preferred_length = 5.0;
    opts.dp_length_weight = 1.0;
    let text = blocks("apple", 5, "zulu", 5);
    assert_eq!(run(&text, opts.clone()), vec![5]);
    let model = opts.cost_model().unwrap().0;
    assert_eq!(segment_exhaustive(&text, model, None).unwrap().boundaries(), &[5]);

    // No similarity and no length term: every segmentation costs 0.
    opts.dp_length_weight = 0.0;
    let disjoint: Vec<String> = (0..6).map(|i| format!("w{i}")).collect();
    assert!(run(&tokenize(&disjoint), opts.clone()).is_empty());

    let ten: Vec<String> = (0..10).map(|i| format!("w{i}")).collect();
    opts.dp_segment_count = Some(10);
    assert_eq!(run(&tokenize(&ten), opts.clone()), (1..10).collect::<Vec<_>>());
    opts.dp_segment_count = Some(11);
    assert!(segment(&tokenize(&ten), &opts).is_err());
}

#[test]
fn exhaustive_limits() {
    let model = CostModel::Multinomial { penalty_weight: 1.0 };
    let big: Vec<String> = (0..17).map(|i| format!("w{i}")).collect();
    assert!(matches!(
        segment_exhaustive(&tokenize(&big), model, None),
        Err(Error::TooLarge { n: 17, limit: 16 })
    ));
    assert!(segment_exhaustive(&tokenize(&["x"]), model, None).unwrap().boundaries().is_empty());
}

/// Optimal segmentation of `text` under `model` and its cost, from the DP
/// solver (via `segment`) and from enumeration.
fn both(text: &TokenizedText, algorithm: Algorithm, count: Option<usize>) -> ((Segmentation, f64), (Segmentation, f64)) {
    let mut opts = SegmenterOptions::new(algorithm);
    match algorithm {
        Algorithm::DpLength => opts.dp_segment_count = count,
        _ => opts.fixed_segment_count = count,
    }
    let model = opts.cost_model().unwrap().0;
    let table = CostTable::build(text, model).unwrap();
    let dp = segment(text, &opts).unwrap();
    let ex = segment_exhaustive(text, model, count).unwrap();
    let (cd, ce) = (table.cost(&dp), table.cost(&ex));
    ((dp, cd), (ex, ce))
}

#[test]
fn dp_equals_enumeration_on_random_inputs() {
    for algorithm in [Algorithm::U00, Algorithm::DpLength] {
        let mut rng = ChaCha8Rng::seed_from_u64(algorithm as u64 + 100);
        for case in 0..200 {
            let text = random_text(&mut rng, 10);
            let count = if case % 4 == 0 { Some(rng.gen_range(1..=10)) } else { None };
            let ((dp, cd), (ex, ce)) = both(&text, algorithm, count);
            assert_eq!(cd, ce, "{algorithm} case {case}");
            assert_eq!(dp, ex, "{algorithm} case {case}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_optimal_up_to_twelve(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = random_text(&mut rng, n);
        for algorithm in [Algorithm::U00, Algorithm::DpLength] {
            let ((dp, cd), (ex, ce)) = both(&text, algorithm, None);
            prop_assert_eq!(cd, ce);
            prop_assert_eq!(dp, ex);
        }
    }

    #[test]
    fn relabeling_vocabulary_changes_nothing(seed in any::<u64>(), n in 1usize..=25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let text = random_text(&mut rng, n);
        let mut perm: Vec<usize> = (0..text.vocab_size()).collect();
        perm.shuffle(&mut rng);
        let relabeled = TokenizedText::from_tokens(
            text.sentences()
                .iter()
                .map(|s| s.iter().map(|t| format!("v{}", perm[text.term_index(t).unwrap()])).collect())
                .collect(),
        );
        for algorithm in [Algorithm::C99, Algorithm::U00, Algorithm::DpLength] {
            let opts = SegmenterOptions::new(algorithm);
            let a = segment(&text, &opts).unwrap();
            let b = segment(&relabeled, &opts).unwrap();
            prop_assert_eq!(a.boundaries(), b.boundaries());
            prop_assert!(a.boundaries().iter().all(|&t| t >= 1 && t < n));
        }
    }
}
