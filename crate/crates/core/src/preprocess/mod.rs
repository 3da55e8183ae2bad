//! Tokenization, stop-word removal and stemming.
//!
//! Identifier tokens produced by entity substitution are detected before any
//! lowercasing and are carried through every step byte for byte, so a
//! pronoun rewritten to `A21person1` survives a stop list that would have
//! dropped `he`.

pub mod porter;

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::annotate::{identifier_regex, is_identifier};
use crate::error::{Error, Result};

const SMART_STOPLIST: &str = include_str!("../../data/smart.stop");

/// A set of lowercase tokens to drop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stoplist {
    words: HashSet<String>,
}

impl Stoplist {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The SMART stop list (570 words).
    pub fn smart() -> Self {
        Self::parse(SMART_STOPLIST)
    }

    /// One token per line; `#` starts a comment line.
    pub fn parse(text: &str) -> Self {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        Stoplist { words }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(token)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Stoplist {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Stoplist {
            words: iter.into_iter().map(|s| s.into().to_lowercase()).collect(),
        }
    }
}

/// Sentence-partitioned tokens with their term-frequency vectors.
///
/// The vocabulary assigns indices in order of first occurrence, scanning
/// sentences in order. `counts[s]` is sentence `s`'s sparse frequency vector
/// sorted by term index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenizedText {
    sentences: Vec<Vec<String>>,
    is_identifier: Vec<Vec<bool>>,
    terms: Vec<String>,
    #[serde(skip)]
    vocab: HashMap<String, usize>,
    counts: Vec<Vec<(usize, u32)>>,
}

impl TokenizedText {
    pub fn from_tokens(sentences: Vec<Vec<String>>) -> Self {
        let is_identifier = sentences
            .iter()
            .map(|s| s.iter().map(|t| is_identifier(t)).collect())
            .collect();
        let mut vocab: HashMap<String, usize> = HashMap::new();
        let mut terms = Vec::new();
        let counts = sentences
            .iter()
            .map(|sentence| {
                let mut row: HashMap<usize, u32> = HashMap::new();
                for tok in sentence {
                    let idx = *vocab.entry(tok.clone()).or_insert_with(|| {
                        terms.push(tok.clone());
                        terms.len() - 1
                    });
                    *row.entry(idx).or_default() += 1;
                }
                let mut row: Vec<(usize, u32)> = row.into_iter().collect();
                row.sort_unstable();
                row
            })
            .collect();
        TokenizedText {
            sentences,
            is_identifier,
            terms,
            vocab,
            counts,
        }
    }

    pub fn sentences(&self) -> &[Vec<String>] {
        &self.sentences
    }

    pub fn identifier_flags(&self) -> &[Vec<bool>] {
        &self.is_identifier
    }

    /// Vocabulary in index order.
    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn term_index(&self, token: &str) -> Option<usize> {
        self.vocab.get(token).copied()
    }

    pub fn counts(&self) -> &[Vec<(usize, u32)>] {
        &self.counts
    }

    /// Number of sentences.
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn vocab_size(&self) -> usize {
        self.terms.len()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    /// All identifier tokens, in text order.
    pub fn identifier_tokens(&self) -> Vec<&str> {
        self.sentences
            .iter()
            .zip(&self.is_identifier)
            .flat_map(|(s, f)| s.iter().zip(f).filter(|(_, &id)| id).map(|(t, _)| t.as_str()))
            .collect()
    }

    fn map_tokens(&self, mut f: impl FnMut(&str, bool) -> Option<String>) -> Self {
        let sentences = self
            .sentences
            .iter()
            .zip(&self.is_identifier)
            .map(|(s, flags)| s.iter().zip(flags).filter_map(|(t, &id)| f(t, id)).collect())
            .collect();
        Self::from_tokens(sentences)
    }
}

fn push_words(out: &mut Vec<String>, text: &str) {
    let lower = text.to_lowercase();
    out.extend(
        lower
            .split(|c: char| !c.is_alphanumeric())
            .filter(|w| !w.is_empty())
            .map(str::to_string),
    );
}

/// Tokenize one sentence: identifier tokens verbatim, everything else as
/// lowercased maximal runs of letters and digits.
pub fn tokenize_sentence(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut last = 0;
    for m in identifier_regex().find_iter(sentence) {
        push_words(&mut out, &sentence[last..m.start()]);
        out.push(m.as_str().to_string());
        last = m.end();
    }
    push_words(&mut out, &sentence[last..]);
    out
}

pub fn tokenize<S: AsRef<str>>(sentences: &[S]) -> TokenizedText {
    TokenizedText::from_tokens(sentences.iter().map(|s| tokenize_sentence(s.as_ref())).collect())
}

/// Drop stop-listed tokens. Identifier tokens are always kept.
pub fn remove_stopwords(text: &TokenizedText, stoplist: &Stoplist) -> TokenizedText {
    text.map_tokens(|t, id| (id || !stoplist.contains(t)).then(|| t.to_string()))
}

/// Porter-stem every non-identifier token.
pub fn stem(text: &TokenizedText) -> TokenizedText {
    text.map_tokens(|t, id| Some(if id { t.to_string() } else { porter::stem(t) }))
}

/// Drop tokens made only of digits.
pub fn remove_numerals(text: &TokenizedText) -> TokenizedText {
    text.map_tokens(|t, id| (id || !t.chars().all(|c| c.is_numeric())).then(|| t.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessOptions {
    pub stoplist: Stoplist,
    pub stem: bool,
    pub keep_numerals: bool,
}

impl Default for PreprocessOptions {
    /// SMART stop list, Porter stemming, numerals kept.
    fn default() -> Self {
        PreprocessOptions {
            stoplist: Stoplist::smart(),
            stem: true,
            keep_numerals: true,
        }
    }
}

impl PreprocessOptions {
    /// No stop list and no stemming, for input that is already lemmatized.
    pub fn lemmatized() -> Self {
        PreprocessOptions {
            stoplist: Stoplist::empty(),
            stem: false,
            keep_numerals: true,
        }
    }
}

/// Tokenize, then remove stop words, numerals (if asked) and stem.
pub fn preprocess<S: AsRef<str>>(sentences: &[S], opts: &PreprocessOptions) -> TokenizedText {
    let mut t = tokenize(sentences);
    if !opts.stoplist.is_empty() {
        t = remove_stopwords(&t, &opts.stoplist);
    }
    if !opts.keep_numerals {
        t = remove_numerals(&t);
    }
    if opts.stem {
        t = stem(&t);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(t: &TokenizedText) -> Vec<Vec<&str>> {
        t.sentences()
            .iter()
            .map(|s| s.iter().map(String::as_str).collect())
            .collect()
    }

    #[test]
    fn tokenizes_identifiers_first() {
        let t = tokenize(&["A21person1 returned."]);
        assert_eq!(words(&t), vec![vec!["A21person1", "returned"]]);
        assert_eq!(t.identifier_flags(), &[vec![true, false]]);
        assert_eq!(words(&tokenize(&["March 31"])), vec![vec!["march", "31"]]);
        assert_eq!(words(&tokenize(&[""])), vec![Vec::<&str>::new()]);
        assert_eq!(
            words(&tokenize(&["the A21person2's stepson, 21-year-old"])),
            vec![vec!["the", "A21person2", "s", "stepson", "21", "year", "old"]]
        );
    }

    #[test]
    fn stopwords_spare_identifiers() {
        let stop = Stoplist::smart();
        let t = tokenize(&["he returned to the job"]);
        assert_eq!(words(&remove_stopwords(&t, &stop)), vec![vec!["returned", "job"]]);
        let t = tokenize(&["A21person1 returned to the job"]);
        assert_eq!(
            words(&remove_stopwords(&t, &stop)),
            vec![vec!["A21person1", "returned", "job"]]
        );
        assert_eq!(remove_stopwords(&t, &Stoplist::empty()), t);
    }

    #[test]
    fn smart_list_contents() {
        let stop = Stoplist::smart();
        assert_eq!(stop.len(), 570);
        for w in ["he", "his", "she", "they", "who", "the"] {
            assert!(stop.contains(w), "{w}");
        }
    }

    #[test]
    fn stemming_spares_identifiers() {
        let t = stem(&tokenize(&["A13person1 pitching caresses"]));
        assert_eq!(words(&t), vec![vec!["A13person1", "pitch", "caress"]]);
    }

    #[test]
    fn vocab_and_counts() {
        let t = tokenize(&["a b a", "c b"]);
        assert_eq!(t.terms(), &["a", "b", "c"]);
        assert_eq!(t.counts(), &[vec![(0, 2), (1, 1)], vec![(1, 1), (2, 1)]]);
        assert_eq!(t.term_index("c"), Some(2));
        assert_eq!(t.token_count(), 5);
    }

    #[test]
    fn numeral_flag() {
        let t = tokenize(&["won 31 to 7 in 1958"]);
        assert_eq!(words(&remove_numerals(&t)), vec![vec!["won", "to", "in"]]);
        let opts = PreprocessOptions { keep_numerals: true, ..Default::default() };
        assert_eq!(words(&preprocess(&["won 31 to 7"], &opts)), vec![vec!["won", "31", "7"]]);
    }

    #[test]
    fn stoplist_file_format() {
        let s = Stoplist::parse("# comment\nThe\n\n  of \n");
        assert_eq!(s.len(), 2);
        assert!(s.contains("the") && s.contains("of"));
    }
}
