//! Question answering over the store: pattern templates, entity-description fallback
//! and screening-intent detection.

mod labels;
mod patterns;

use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::query::execute;
use crate::read::{iri, prop, Reader};
use crate::store::{Iri, LiteralTag, Term, TripleStore};
use crate::vocab;

pub use labels::{normalize_text, LabelIndex};
pub use patterns::{fill, instantiate, parse_patterns, AnswerKind, PatternRegistry, QuestionPattern};

pub const APOLOGY: &str = "抱歉，暂时无法回答这个问题。 Sorry, this question cannot be answered yet.";

const INTENT: &str = include_str!("../../lexicon/intent.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QaError {
    #[error("pattern file line {line}: {message}")]
    PatternFile { line: usize, message: String },
    #[error("pattern {id}: {message}")]
    Pattern { id: String, message: String },
    #[error("pattern registry is empty")]
    EmptyRegistry,
    #[error("slot `{0}` is not bound")]
    UnboundSlot(String),
    #[error("slot `{slot}`: no entity is labelled `{label}`")]
    UnresolvedSlot { slot: String, label: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Pattern,
    Fallback,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QaResult {
    pub answered: bool,
    pub route: Route,
    pub pattern: Option<String>,
    pub answer_text: String,
    pub entities: Vec<Iri>,
    pub screening_redirect: bool,
}

fn intent_terms() -> &'static [String] {
    static CELL: OnceLock<Vec<String>> = OnceLock::new();
    CELL.get_or_init(|| {
        INTENT.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).map(normalize_text).collect()
    })
}

/// Whether the question contains a term of the bundled intent lexicon.
pub fn detect_screening_intent(question: &str) -> bool {
    let q = normalize_text(question);
    intent_terms().iter().any(|t| q.contains(t.as_str()))
}

pub struct QaEngine {
    pub registry: PatternRegistry,
    pub labels: LabelIndex,
}

impl QaEngine {
    pub fn new(registry: PatternRegistry, labels: LabelIndex) -> Self {
        QaEngine { registry, labels }
    }

    pub fn answer_question(&self, store: &TripleStore, question: &str) -> QaResult {
        let screening_redirect = detect_screening_intent(question);
        let none = |route: Route, pattern: Option<String>| QaResult {
            answered: false,
            route,
            pattern,
            answer_text: APOLOGY.to_owned(),
            entities: Vec::new(),
            screening_redirect,
        };
        if question.trim().is_empty() {
            return none(Route::None, None);
        }
        let r = Reader::new(store);
        if let Some((pattern, slots)) = self.registry.match_pattern(question) {
            let Ok(ast) = instantiate(pattern, &slots, &self.labels) else { return none(Route::None, None) };
            let table = execute(&ast, store);
            let values: Vec<Term> = table.rows.iter().filter_map(|row| row.first().cloned()).collect();
            if values.is_empty() {
                return none(Route::Pattern, Some(pattern.id.clone()));
            }
            let (answer_text, entities) = match pattern.answer_kind {
                AnswerKind::EntityList => {
                    let iris: Vec<Iri> = values.iter().filter_map(|v| v.as_iri().cloned()).collect();
                    (iris.iter().map(|e| display_name(&r, e)).collect::<Vec<_>>().join("\n"), iris)
                }
                AnswerKind::Literal | AnswerKind::Description => {
                    let bound: Vec<Iri> = ast
                        .patterns
                        .iter()
                        .flat_map(|p| [&p.s, &p.o])
                        .filter_map(|t| match t {
                            crate::query::PatternTerm::Const(Term::Iri(i)) if i.is_instance() => Some(i.clone()),
                            _ => None,
                        })
                        .collect();
                    (bilingual(&values), bound)
                }
            };
            return QaResult {
                answered: true,
                route: Route::Pattern,
                pattern: Some(pattern.id.clone()),
                answer_text,
                entities,
                screening_redirect,
            };
        }
        if let Some((_, entity)) = self.labels.mention(question) {
            let intro = r.values(&entity, &prop("Introduction"));
            let mut text = display_name(&r, &entity);
            if !intro.is_empty() {
                text = format!("{text}\n{}", bilingual(&intro));
            }
            return QaResult {
                answered: true,
                route: Route::Fallback,
                pattern: None,
                answer_text: text,
                entities: vec![entity],
                screening_redirect,
            };
        }
        none(Route::None, None)
    }
}

/// `zh（en）` from the labels, falling back to the local name.
fn display_name(r: &Reader<'_>, entity: &Iri) -> String {
    let label = iri(vocab::RDFS_LABEL);
    match (r.zh(entity, &label), r.en(entity, &label)) {
        (Some(zh), Some(en)) => format!("{zh}（{en}）"),
        (Some(one), None) | (None, Some(one)) => one,
        (None, None) => entity.local_name().to_owned(),
    }
}

/// Non-English values on the first line, English values on the second.
fn bilingual(values: &[Term]) -> String {
    let mut zh = Vec::new();
    let mut en = Vec::new();
    for v in values {
        match v {
            Term::Literal(l) if l.tag() == LiteralTag::LangEn => en.push(l.lexical().to_owned()),
            Term::Literal(l) => zh.push(l.lexical().to_owned()),
            Term::Iri(i) => zh.push(i.as_str().to_owned()),
        }
    }
    let mut lines = Vec::new();
    if !zh.is_empty() {
        lines.push(zh.join("；"));
    }
    if !en.is_empty() {
        lines.push(en.join("; "));
    }
    lines.join("\n")
}
