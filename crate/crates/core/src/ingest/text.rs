//! Segmentation, keyword scoring and token-set similarity.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use thiserror::Error;

use crate::scalar::Real;

const WORDS: &str = include_str!("../../lexicon/words.txt");
const STOPWORDS: &str = include_str!("../../lexicon/stopwords.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("document {index} is outside 1..={len}")]
    DocIndex { index: usize, len: usize },
}

pub struct Tokenizer {
    words: HashSet<String>,
    stopwords: HashSet<String>,
    max_len: usize,
}

fn entries(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

impl Tokenizer {
    pub fn new<'a>(words: impl IntoIterator<Item = &'a str>, stopwords: impl IntoIterator<Item = &'a str>) -> Self {
        let stopwords: HashSet<String> = stopwords.into_iter().map(str::to_lowercase).collect();
        // stopwords segment as units so that they can be dropped whole
        let words: HashSet<String> = words.into_iter().map(str::to_owned).chain(stopwords.iter().cloned()).collect();
        let max_len = words.iter().map(|w| w.chars().count()).max().unwrap_or(1);
        Tokenizer { words, stopwords, max_len }
    }

    /// The tokenizer over the bundled dictionary and stopword list.
    pub fn bundled() -> &'static Tokenizer {
        static CELL: OnceLock<Tokenizer> = OnceLock::new();
        CELL.get_or_init(|| Tokenizer::new(entries(WORDS), entries(STOPWORDS)))
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_ascii_alphanumeric() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(chars[start..i].iter().collect::<String>().to_ascii_lowercase());
            } else if c.is_alphanumeric() {
                let longest = (2..=self.max_len.min(chars.len() - i))
                    .rev()
                    .find(|&n| {
                        let candidate: String = chars[i..i + n].iter().collect();
                        self.words.contains(&candidate)
                    })
                    .unwrap_or(1);
                out.push(chars[i..i + longest].iter().collect());
                i += longest;
            } else {
                i += 1;
            }
        }
        out.retain(|t| !self.stopwords.contains(t));
        out
    }
}

/// Segments with the bundled dictionary.
pub fn tokenize(text: &str) -> Vec<String> {
    Tokenizer::bundled().tokenize(text)
}

/// Top-k terms of document `doc_index` (1-based) by tf·idf, ties by term byte order.
pub fn tfidf_keywords<T: Real>(corpus: &[Vec<String>], doc_index: usize, k: usize) -> Result<Vec<(String, T)>, TextError> {
    if k == 0 {
        return Err(TextError::ZeroK);
    }
    if corpus.is_empty() {
        return Err(TextError::EmptyCorpus);
    }
    if doc_index == 0 || doc_index > corpus.len() {
        return Err(TextError::DocIndex { index: doc_index, len: corpus.len() });
    }
    let doc = &corpus[doc_index - 1];
    if doc.is_empty() {
        return Ok(Vec::new());
    }
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for t in doc {
        *counts.entry(t).or_default() += 1;
    }
    let n = T::count(corpus.len());
    let len = T::count(doc.len());
    let mut scored: Vec<(String, T)> = counts
        .into_iter()
        .map(|(term, count)| {
            let df = corpus.iter().filter(|d| d.iter().any(|t| t == term)).count();
            let score = T::count(count) / len * (n / T::count(df)).ln();
            (term.to_owned(), score)
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite scores").then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    Ok(scored)
}

/// Dice coefficient over token sets; 0 when both are empty.
pub fn string_similarity<T: Real>(a: &[String], b: &[String]) -> T {
    let a: BTreeSet<&str> = a.iter().map(String::as_str).collect();
    let b: BTreeSet<&str> = b.iter().map(String::as_str).collect();
    if a.is_empty() && b.is_empty() {
        return T::zero();
    }
    let common = a.intersection(&b).count();
    T::lit(2.0) * T::count(common) / T::count(a.len() + b.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn ascii_words() {
        assert_eq!(tokenize("eye contact"), ["eye", "contact"]);
        assert_eq!(tokenize("M-CHAT Screening"), ["m", "chat", "screening"]);
    }

    #[test]
    fn longest_match_and_single_characters() {
        let t = Tokenizer::new(["孤独", "孤独症", "症状"], ["的"]);
        assert_eq!(t.tokenize("孤独症的症状乙"), ["孤独症", "症状", "乙"]);
    }

    #[test]
    fn tfidf_worked_example() {
        let corpus = vec![toks(&["a", "b"]), toks(&["b"])];
        let top: Vec<(String, f64)> = tfidf_keywords(&corpus, 1, 1).unwrap();
        assert_eq!(top[0].0, "a");
        assert!((top[0].1 - 0.5 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn tfidf_ubiquitous_term_and_large_k() {
        let corpus = vec![toks(&["x", "y"]), toks(&["x"])];
        let all: Vec<(String, f64)> = tfidf_keywords(&corpus, 1, 10).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all.iter().find(|(t, _)| t == "x").unwrap().1, 0.0);
        assert_eq!(tfidf_keywords::<f64>(&corpus, 1, 0), Err(TextError::ZeroK));
        assert!(matches!(tfidf_keywords::<f64>(&corpus, 3, 1), Err(TextError::DocIndex { .. })));
    }

    #[test]
    fn dice_examples() {
        let x = toks(&["x", "y"]);
        assert_eq!(string_similarity::<f64>(&x, &x), 1.0);
        assert_eq!(string_similarity::<f64>(&x, &toks(&["z"])), 0.0);
        assert!((string_similarity::<f64>(&x, &toks(&["y"])) - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(string_similarity::<f64>(&[], &[]), 0.0);
        assert!((string_similarity::<f32>(&x, &toks(&["y"])) - 0.6666667).abs() < 1e-6);
    }
}
