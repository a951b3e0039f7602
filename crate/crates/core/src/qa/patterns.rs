use std::collections::BTreeMap;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::labels::{normalize_text, LabelIndex};
use super::QaError;
use crate::query::{parse_query, QueryAst};
use crate::read::iri;
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerKind {
    EntityList,
    Literal,
    Description,
}

/// Slot type: a class local name, or `number`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionPattern {
    pub id: String,
    pub matcher: Vec<String>,
    pub slots: BTreeMap<String, String>,
    pub template: String,
    pub answer_kind: AnswerKind,
    #[serde(default)]
    pub example_questions: Vec<String>,
}

const NUMBER: &str = "number";

impl QuestionPattern {
    pub fn is_number_slot(&self, slot: &str) -> bool {
        self.slots.get(slot).is_some_and(|t| t == NUMBER)
    }

    fn placeholder(slot: &str) -> String {
        format!("{{{slot}}}")
    }

    /// Every declared slot must appear in the template and in each matcher alternative,
    /// and the template must parse once slots are filled.
    pub fn check(&self) -> Result<(), QaError> {
        let bad = |message: String| QaError::Pattern { id: self.id.clone(), message };
        if self.matcher.is_empty() {
            return Err(bad("no matcher".into()));
        }
        for slot in self.slots.keys() {
            if !slot.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || slot.is_empty() {
                return Err(bad(format!("slot name `{slot}` is not an identifier")));
            }
            if !self.template.contains(&Self::placeholder(slot)) {
                return Err(bad(format!("slot `{slot}` is missing from the template")));
            }
            if let Some(m) = self.matcher.iter().find(|m| !m.contains(&Self::placeholder(slot))) {
                return Err(bad(format!("slot `{slot}` is missing from matcher `{m}`")));
            }
        }
        let dummy: BTreeMap<String, String> = self
            .slots
            .keys()
            .map(|s| (s.clone(), if self.is_number_slot(s) { "0".to_owned() } else { "<urn:slot:x>".to_owned() }))
            .collect();
        parse_query(&fill(&self.template, &dummy)).map_err(|e| bad(format!("template: {e}")))?;
        Ok(())
    }
}

pub fn fill(template: &str, values: &BTreeMap<String, String>) -> String {
    let mut out = template.to_owned();
    for (slot, value) in values {
        out = out.replace(&QuestionPattern::placeholder(slot), value);
    }
    out
}

/// Parses a JSON-lines pattern file.
pub fn parse_patterns(text: &str) -> Result<Vec<QuestionPattern>, QaError> {
    let mut out: Vec<QuestionPattern> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let p: QuestionPattern =
            serde_json::from_str(line).map_err(|e| QaError::PatternFile { line: i + 1, message: e.to_string() })?;
        p.check()?;
        if out.iter().any(|q| q.id == p.id) {
            return Err(QaError::PatternFile { line: i + 1, message: format!("duplicate pattern id {}", p.id) });
        }
        out.push(p);
    }
    Ok(out)
}

struct Compiled {
    pattern: QuestionPattern,
    regexes: Vec<Regex>,
}

/// Patterns in file order, each matcher compiled with slots expanded to the labels of their class.
pub struct PatternRegistry {
    compiled: Vec<Compiled>,
}

impl PatternRegistry {
    pub fn compile(patterns: Vec<QuestionPattern>, labels: &LabelIndex) -> Result<Self, QaError> {
        let mut compiled = Vec::new();
        for pattern in patterns {
            pattern.check()?;
            let mut groups = BTreeMap::new();
            for (slot, ty) in &pattern.slots {
                let body = if ty == NUMBER {
                    r"\d+(?:\.\d+)?".to_owned()
                } else {
                    let mut ls: Vec<&str> = labels.labels_of(&iri(&vocab::class_iri(ty)));
                    if ls.is_empty() {
                        return Err(QaError::Pattern { id: pattern.id.clone(), message: format!("no labels for slot type {ty}") });
                    }
                    ls.sort_by(|a, b| b.chars().count().cmp(&a.chars().count()).then(a.cmp(b)));
                    ls.iter().map(|l| regex::escape(l)).collect::<Vec<_>>().join("|")
                };
                groups.insert(slot.clone(), format!("(?P<{slot}>{body})"));
            }
            let regexes = pattern
                .matcher
                .iter()
                .map(|m| {
                    Regex::new(&fill(m, &groups))
                        .map_err(|e| QaError::Pattern { id: pattern.id.clone(), message: format!("matcher `{m}`: {e}") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            compiled.push(Compiled { pattern, regexes });
        }
        if compiled.is_empty() {
            return Err(QaError::EmptyRegistry);
        }
        Ok(PatternRegistry { compiled })
    }

    pub fn patterns(&self) -> impl Iterator<Item = &QuestionPattern> {
        self.compiled.iter().map(|c| &c.pattern)
    }

    pub fn get(&self, id: &str) -> Option<&QuestionPattern> {
        self.patterns().find(|p| p.id == id)
    }

    /// The first pattern whose matcher accepts the normalized question, with its slot texts.
    pub fn match_pattern(&self, question: &str) -> Option<(&QuestionPattern, BTreeMap<String, String>)> {
        let q = normalize_text(question);
        for c in &self.compiled {
            for re in &c.regexes {
                if let Some(caps) = re.captures(&q) {
                    let slots =
                        c.pattern.slots.keys().filter_map(|s| Some((s.clone(), caps.name(s)?.as_str().to_owned()))).collect();
                    return Some((&c.pattern, slots));
                }
            }
        }
        None
    }
}

/// Fills the template with resolved IRIs and parses it.
pub fn instantiate(pattern: &QuestionPattern, slots: &BTreeMap<String, String>, labels: &LabelIndex) -> Result<QueryAst, QaError> {
    let mut values = BTreeMap::new();
    for (slot, ty) in &pattern.slots {
        let text = slots.get(slot).ok_or_else(|| QaError::UnboundSlot(slot.clone()))?;
        let value = if ty == NUMBER {
            let n: f64 = text.trim().parse().map_err(|_| QaError::UnresolvedSlot { slot: slot.clone(), label: text.clone() })?;
            if !n.is_finite() {
                return Err(QaError::UnresolvedSlot { slot: slot.clone(), label: text.clone() });
            }
            text.trim().to_owned()
        } else {
            let class = iri(&vocab::class_iri(ty));
            let found = labels.resolve(text, Some(&class));
            let first = found.first().ok_or_else(|| QaError::UnresolvedSlot { slot: slot.clone(), label: text.clone() })?;
            format!("<{}>", first.as_str())
        };
        values.insert(slot.clone(), value);
    }
    parse_query(&fill(&pattern.template, &values)).map_err(|e| QaError::Pattern { id: pattern.id.clone(), message: e.to_string() })
}
