//! Question-to-symptom and option-to-standard links by token similarity.

use std::collections::HashMap;

use super::text::{string_similarity, tokenize};
use crate::screening::Polarity;

/// An identified piece of text.
#[derive(Debug, Clone, PartialEq)]
pub struct TextItem {
    pub id: String,
    pub text: String,
}

impl TextItem {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        TextItem { id: id.into(), text: text.into() }
    }
}

/// An option with the context that decides whether it is an abnormal extreme.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredOption {
    pub id: String,
    pub question: String,
    pub question_text: String,
    pub score: f64,
    pub polarity: Polarity,
}

/// Pairs `(question id, symptom id)` whose token similarity reaches `theta`.
pub fn link_corresponding_symptoms(questions: &[TextItem], symptoms: &[TextItem], theta: f64) -> Vec<(String, String)> {
    let symptom_tokens: Vec<Vec<String>> = symptoms.iter().map(|s| tokenize(&s.text)).collect();
    let mut out = Vec::new();
    for q in questions {
        let qt = tokenize(&q.text);
        for (s, st) in symptoms.iter().zip(&symptom_tokens) {
            if string_similarity::<f64>(&qt, st) >= theta {
                out.push((q.id.clone(), s.id.clone()));
            }
        }
    }
    out
}

/// Options holding the abnormal extreme among their question's options.
pub fn abnormal_extremes(options: &[ScoredOption]) -> Vec<&ScoredOption> {
    let mut extreme: HashMap<&str, f64> = HashMap::new();
    for o in options {
        let e = extreme.entry(o.question.as_str()).or_insert(o.score);
        *e = match o.polarity {
            Polarity::Ascending => e.max(o.score),
            Polarity::Descending => e.min(o.score),
        };
    }
    options.iter().filter(|o| extreme[o.question.as_str()] == o.score).collect()
}

/// Pairs `(option id, standard id)` for abnormal-extreme options whose question
/// text reaches `theta` similarity with the standard.
pub fn link_match_standard(options: &[ScoredOption], standards: &[TextItem], theta: f64) -> Vec<(String, String)> {
    let standard_tokens: Vec<Vec<String>> = standards.iter().map(|s| tokenize(&s.text)).collect();
    let mut question_tokens: HashMap<&str, Vec<String>> = HashMap::new();
    let mut out = Vec::new();
    for o in abnormal_extremes(options) {
        let qt = question_tokens.entry(o.question.as_str()).or_insert_with(|| tokenize(&o.question_text));
        for (st, tokens) in standards.iter().zip(&standard_tokens) {
            if string_similarity::<f64>(qt, tokens) >= theta {
                out.push((o.id.clone(), st.id.clone()));
            }
        }
    }
    out
}
