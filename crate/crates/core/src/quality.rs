//! Accuracy estimation from triple labels, entity sampling and QA coverage.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qa::QaEngine;
use crate::store::{parse_line, Iri, Triple, TripleStore};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QualityError {
    #[error("successes must lie in [0, trials] with trials >= 1")]
    Counts,
    #[error("alpha must lie in (0, 1)")]
    Alpha,
    #[error("probability must lie in (0, 1)")]
    Probability,
    #[error("sample of {n} exceeds the {population} entities")]
    SampleTooLarge { n: usize, population: usize },
    #[error("no label records")]
    NoLabels,
    #[error("annotator {annotator} labels triple {triple} more than once")]
    DuplicateLabel { annotator: String, triple: String },
    #[error("annotator {annotator} labels {got} triples; the first annotator labels {expected}")]
    InconsistentTrials { annotator: String, expected: usize, got: usize },
    #[error("label line {line}: {message}")]
    LabelFile { line: usize, message: String },
    #[error("no questions")]
    NoQuestions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    Correct,
    Incorrect,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub annotator: String,
    pub entity: Iri,
    pub triple: Triple,
    pub choice: Choice,
}

#[derive(Deserialize)]
struct RawLabel {
    annotator: String,
    entity: Iri,
    triple: String,
    choice: Choice,
}

/// Parses a JSON-lines label file; `triple` holds one N-Triples statement.
pub fn parse_labels(text: &str) -> Result<Vec<LabelRecord>, QualityError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |message: String| QualityError::LabelFile { line: i + 1, message };
        let raw: RawLabel = serde_json::from_str(line).map_err(|e| err(e.to_string()))?;
        let triple = parse_line(&raw.triple, i + 1).map_err(|e| err(e.to_string()))?.ok_or_else(|| err("empty triple".into()))?;
        out.push(LabelRecord { annotator: raw.annotator, entity: raw.entity, triple, choice: raw.choice });
    }
    Ok(out)
}

/// Mean correct count over annotators, and the number of distinct triples.
pub fn aggregate_labels(records: &[LabelRecord]) -> Result<(f64, usize), QualityError> {
    let mut by_annotator: BTreeMap<&str, BTreeMap<String, Choice>> = BTreeMap::new();
    for r in records {
        let key = r.triple.to_ntriples();
        if by_annotator.entry(&r.annotator).or_default().insert(key.clone(), r.choice).is_some() {
            return Err(QualityError::DuplicateLabel { annotator: r.annotator.clone(), triple: key });
        }
    }
    let mut annotators = by_annotator.iter();
    let (_, first) = annotators.next().ok_or(QualityError::NoLabels)?;
    let trials: BTreeSet<&String> = first.keys().collect();
    for (a, labels) in annotators {
        if labels.keys().collect::<BTreeSet<_>>() != trials {
            return Err(QualityError::InconsistentTrials { annotator: (*a).to_owned(), expected: trials.len(), got: labels.len() });
        }
    }
    let correct: usize = by_annotator.values().map(|ls| ls.values().filter(|c| **c == Choice::Correct).count()).sum();
    Ok((correct as f64 / by_annotator.len() as f64, trials.len()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WilsonInterval<T> {
    pub center: T,
    pub half_width: T,
    pub alpha: T,
}

impl<T: Real> WilsonInterval<T> {
    pub fn lower(&self) -> T {
        (self.center - self.half_width).max(T::zero())
    }

    pub fn upper(&self) -> T {
        (self.center + self.half_width).min(T::one())
    }
}

/// Standard normal quantile by Acklam's rational approximation.
pub fn normal_quantile<T: Real>(p: T) -> Result<T, QualityError> {
    if !(p > T::zero() && p < T::one()) {
        return Err(QualityError::Probability);
    }
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] =
        [-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02, 6.680131188771972e+01, -1.328068155288572e+01];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00, 3.754408661907416e+00];
    let poly = |coef: &[f64], x: T| coef.iter().fold(T::zero(), |acc, c| acc * x + T::lit(*c));
    let low = T::lit(0.02425);
    let tail = |q: T| {
        let q = (T::lit(-2.0) * q.ln()).sqrt();
        poly(&C, q) / (poly(&D, q) * q + T::one())
    };
    if p < low {
        Ok(tail(p))
    } else if p > T::one() - low {
        Ok(-tail(T::one() - p))
    } else {
        let q = p - T::lit(0.5);
        let r = q * q;
        Ok(poly(&A, r) * q / (poly(&B, r) * r + T::one()))
    }
}

/// Wilson score interval for `successes` out of `trials` at significance `alpha`.
pub fn wilson<T: Real>(successes: T, trials: usize, alpha: T) -> Result<WilsonInterval<T>, QualityError> {
    if trials == 0 || !(successes >= T::zero() && successes <= T::count(trials)) {
        return Err(QualityError::Counts);
    }
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(QualityError::Alpha);
    }
    let z = normal_quantile(T::one() - alpha / T::lit(2.0))?;
    let n = T::count(trials);
    let p = successes / n;
    let z2 = z * z;
    let denom = T::one() + z2 / n;
    let center = (p + z2 / (T::lit(2.0) * n)) / denom;
    let half_width = z / denom * (p * (T::one() - p) / n + z2 / (T::lit(4.0) * n * n)).sqrt();
    Ok(WilsonInterval { center, half_width, alpha })
}

/// Subjects in the class or instance namespace, in IRI order.
pub fn entity_population(store: &TripleStore) -> Vec<Iri> {
    store.distinct_subjects().into_iter().filter(|s| s.is_instance() || s.is_class()).collect()
}

/// `n` entities drawn uniformly without replacement, each with all triples it is the subject of.
pub fn sample_entities(store: &TripleStore, n: usize, seed: u64) -> Result<Vec<(Iri, Vec<Triple>)>, QualityError> {
    let population = entity_population(store);
    if n > population.len() {
        return Err(QualityError::SampleTooLarge { n, population: population.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, population.len(), n);
    Ok(picked
        .into_iter()
        .map(|i| {
            let e = population[i].clone();
            let triples = store.dereference(&e);
            (e, triples)
        })
        .collect())
}

/// Fraction of questions the QA engine answers.
pub fn coverage_eval(questions: &[String], engine: &QaEngine, store: &TripleStore) -> Result<f64, QualityError> {
    if questions.is_empty() {
        return Err(QualityError::NoQuestions);
    }
    let answered = questions.iter().filter(|q| engine.answer_question(store, q).answered).count();
    Ok(answered as f64 / questions.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_at_five_percent() {
        let z: f64 = normal_quantile(0.975).unwrap();
        assert!((z - 1.959963984540054).abs() < 1e-8);
        let lo: f64 = normal_quantile(0.001).unwrap();
        assert!((lo + 3.090232306167813).abs() < 1e-8);
        assert!(normal_quantile(1.0f64).is_err());
    }

    #[test]
    fn domain_checks() {
        assert_eq!(wilson(5.0, 0, 0.05), Err(QualityError::Counts));
        assert_eq!(wilson(11.0, 10, 0.05), Err(QualityError::Counts));
        assert_eq!(wilson(5.0, 10, 0.0), Err(QualityError::Alpha));
        assert!(wilson(5.0f32, 10, 0.05).is_ok());
    }
}
