use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::preprocess::TokenizedText;

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMatrix {
    n: usize,
    values: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            values: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        SquareMatrix { n, values }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("matrix rows must all have length n".into()));
        }
        Ok(SquareMatrix {
            n,
            values: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.n + j] = v;
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Cosine similarities between sentence frequency vectors.
pub type SimilarityMatrix = SquareMatrix;

/// Local ranks of a similarity matrix.
pub type RankMatrix = SquareMatrix;

/// Pairwise cosine similarity of the sentences' term-frequency vectors.
///
/// The diagonal is 1. A sentence with no tokens left has similarity 0 with
/// every other sentence.
pub fn build_similarity(text: &TokenizedText) -> Result<SimilarityMatrix> {
    let n = text.len();
    if n == 0 {
        return Err(Error::EmptyInput("no sentences to compare"));
    }
    let counts = text.counts();
    // Squared norms stay integral, so identical vectors give exactly 1.
    let sq_norms: Vec<f64> = counts
        .iter()
        .map(|row| row.iter().map(|&(_, c)| (c as f64) * (c as f64)).sum::<f64>())
        .collect();
    let mut s = SquareMatrix::zeros(n);
    for i in 0..n {
        s.set(i, i, 1.0);
        for j in i + 1..n {
            let v = if sq_norms[i] == 0.0 || sq_norms[j] == 0.0 {
                0.0
            } else {
                (sparse_dot(&counts[i], &counts[j]) / (sq_norms[i] * sq_norms[j]).sqrt()).min(1.0)
            };
            s.set(i, j, v);
            s.set(j, i, v);
        }
    }
    Ok(s)
}

fn sparse_dot(a: &[(usize, u32)], b: &[(usize, u32)]) -> f64 {
    let (mut i, mut j, mut acc) = (0, 0, 0.0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += a[i].1 as f64 * b[j].1 as f64;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Replace each entry by the fraction of its neighbours, inside a
/// `mask x mask` window centred on it and clipped to the matrix, that are
/// strictly smaller. A window clipped down to the entry itself ranks 0.
pub fn rank_transform(s: &SimilarityMatrix, mask: usize) -> Result<RankMatrix> {
    if mask == 0 || mask.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("rank mask must be odd and positive, got {mask}")));
    }
    let n = s.n();
    let half = mask / 2;
    Ok(SquareMatrix::from_fn(n, |i, j| {
        let rows = i.saturating_sub(half)..(i + half + 1).min(n);
        let cols = j.saturating_sub(half)..(j + half + 1).min(n);
        let neighbours = rows.len() * cols.len() - 1;
        if neighbours == 0 {
            return 0.0;
        }
        let v = s.get(i, j);
        let lower = rows
            .flat_map(|r| cols.clone().map(move |c| (r, c)))
            .filter(|&(r, c)| s.get(r, c) < v)
            .count();
        lower as f64 / neighbours as f64
    }))
}
