//! Screening scales read back from the store, with sessions, scoring and explanations.

mod sessions;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;
use uuid::Uuid;

use crate::read::{iri, prop, Reader};
use crate::store::{Iri, TripleStore};
use crate::vocab;

pub use sessions::{RegistryError, SessionLogError, SessionRegistry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScreeningError {
    #[error("unknown screening tool {0}")]
    UnknownTool(Iri),
    #[error("unknown screening question {0}")]
    UnknownQuestion(Iri),
    #[error("unknown session {0}")]
    UnknownSession(Uuid),
    #[error("question {question} does not belong to tool {tool}")]
    ForeignQuestion { question: Iri, tool: Iri },
    #[error("option {option} is not an option of question {question}")]
    ForeignOption { option: Iri, question: Iri },
    #[error("session is incomplete; unanswered: {}", .0.iter().map(Iri::as_str).collect::<Vec<_>>().join(", "))]
    Incomplete(Vec<Iri>),
}

/// Which score extreme signals risk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    /// Higher totals are riskier; at risk when total >= boundary.
    Ascending,
    /// Lower totals are riskier; at risk when total <= boundary.
    Descending,
}

impl Polarity {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "ascending" | "ascending_risk" => Some(Polarity::Ascending),
            "descending" | "descending_risk" => Some(Polarity::Descending),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Polarity::Ascending => "ascending",
            Polarity::Descending => "descending",
        }
    }

    pub fn at_risk(self, total: f64, boundary: f64) -> bool {
        match self {
            Polarity::Ascending => total >= boundary,
            Polarity::Descending => total <= boundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Language {
    Zh,
    En,
}

impl Language {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "zh" => Some(Language::Zh),
            "en" => Some(Language::En),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningTool {
    pub iri: Iri,
    pub name: String,
    pub name_en: Option<String>,
    pub introduction: String,
    pub author: String,
    pub users: Vec<String>,
    pub age_min: f64,
    pub age_max: f64,
    pub time_minutes: Option<i64>,
    pub rule: String,
    pub boundary: f64,
    pub polarity: Polarity,
    pub language: Option<Language>,
    pub questions: Vec<Iri>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningQuestion {
    pub iri: Iri,
    pub tool: Iri,
    pub text: String,
    pub text_en: Option<String>,
    pub options: Vec<Iri>,
    pub corresponding_symptoms: BTreeSet<Iri>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningOption {
    pub iri: Iri,
    pub question: Iri,
    pub text: String,
    pub text_en: Option<String>,
    pub score: f64,
    pub matched_standards: BTreeSet<Iri>,
}

/// Labels and introduction of a linked symptom or standard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Description {
    pub iri: Iri,
    pub label_zh: Option<String>,
    pub label_en: Option<String>,
    pub introduction_zh: Option<String>,
    pub introduction_en: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScreeningSession {
    pub id: Uuid,
    pub tool: Iri,
    pub answers: BTreeMap<Iri, Iri>,
    pub created_at: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Advice {
    SeekProfessionalEvaluation,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreeningResult {
    pub total: f64,
    pub boundary: f64,
    pub at_risk: bool,
    pub matched_standards: BTreeSet<Iri>,
    pub advice: Advice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultExplanation {
    pub option: Iri,
    pub option_text: String,
    pub standard: Description,
}

#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub tools: BTreeMap<Iri, ScreeningTool>,
    pub questions: BTreeMap<Iri, ScreeningQuestion>,
    pub options: BTreeMap<Iri, ScreeningOption>,
    pub descriptions: BTreeMap<Iri, Description>,
}

impl Catalog {
    /// Reads every scale, question and option. Ill-formed scales are skipped.
    pub fn from_store(store: &TripleStore) -> Self {
        let r = Reader::new(store);
        let label = iri(vocab::RDFS_LABEL);
        let mut catalog = Catalog::default();
        for o in r.instances("Option") {
            let Some(question) = r.iris(&o, &prop("optionOf")).into_iter().next() else { continue };
            let Some(score) = r.number(&o, &prop("Score")) else { continue };
            let matched_standards: BTreeSet<Iri> = r.iris(&o, &prop("matchStandard")).into_iter().collect();
            for st in &matched_standards {
                catalog.descriptions.entry(st.clone()).or_insert_with(|| r.description(st));
            }
            let option = ScreeningOption {
                text: r.zh(&o, &label).unwrap_or_default(),
                text_en: r.en(&o, &label),
                iri: o.clone(),
                question,
                score,
                matched_standards,
            };
            catalog.options.insert(o, option);
        }
        for q in r.instances("ScreeningQuestion") {
            let Some(tool) = r.iris(&q, &prop("questionOf")).into_iter().next() else { continue };
            let options: Vec<Iri> = r.iris(&q, &prop("hasOption")).into_iter().filter(|o| catalog.options.contains_key(o)).collect();
            let corresponding_symptoms: BTreeSet<Iri> = r.iris(&q, &prop("correspondingSymptom")).into_iter().collect();
            for s in &corresponding_symptoms {
                catalog.descriptions.entry(s.clone()).or_insert_with(|| r.description(s));
            }
            let question = ScreeningQuestion {
                text: r.zh(&q, &label).unwrap_or_default(),
                text_en: r.en(&q, &label),
                iri: q.clone(),
                tool,
                options,
                corresponding_symptoms,
            };
            catalog.questions.insert(q, question);
        }
        for t in r.instances("ScreeningTool") {
            let (Some(boundary), Some(polarity)) = (
                r.number(&t, &prop("ScreeningBoundary")),
                r.literal(&t, &prop("ScoringPolarity"), None).as_deref().and_then(Polarity::parse),
            ) else {
                continue;
            };
            let questions: Vec<Iri> = r.iris(&t, &prop("hasQuestion")).into_iter().filter(|q| catalog.questions.contains_key(q)).collect();
            if questions.is_empty() {
                continue;
            }
            let mut users: Vec<String> = r
                .values(&t, &prop("User"))
                .into_iter()
                .filter_map(|v| v.as_literal().map(|l| l.lexical().to_owned()))
                .collect();
            users.sort();
            let tool = ScreeningTool {
                name: r.zh(&t, &label).unwrap_or_default(),
                name_en: r.en(&t, &label),
                introduction: r.zh(&t, &prop("Introduction")).unwrap_or_default(),
                author: r.literal(&t, &prop("Author"), None).unwrap_or_default(),
                users,
                age_min: r.number(&t, &prop("MinAge")).unwrap_or(0.0),
                age_max: r.number(&t, &prop("MaxAge")).unwrap_or(f64::INFINITY),
                time_minutes: r.number(&t, &prop("Time")).map(|n| n as i64),
                rule: r.zh(&t, &prop("Rule")).unwrap_or_default(),
                language: r.literal(&t, &prop("Language"), None).as_deref().and_then(Language::parse),
                iri: t.clone(),
                boundary,
                polarity,
                questions,
            };
            catalog.tools.insert(t, tool);
        }
        catalog
    }

    /// Tools whose age range covers `age`, filled by `filler` and in `language`, ordered by name.
    pub fn filter_tools(&self, age: f64, filler: Option<&str>, language: Option<Language>) -> Vec<&ScreeningTool> {
        let mut out: Vec<&ScreeningTool> = self
            .tools
            .values()
            .filter(|t| t.age_min <= age && age <= t.age_max)
            .filter(|t| filler.is_none_or(|f| t.users.iter().any(|u| u == f)))
            .filter(|t| language.is_none_or(|l| t.language == Some(l)))
            .collect();
        out.sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.iri.cmp(&b.iri)));
        out
    }

    pub fn tool(&self, tool: &Iri) -> Result<&ScreeningTool, ScreeningError> {
        self.tools.get(tool).ok_or_else(|| ScreeningError::UnknownTool(tool.clone()))
    }

    pub fn start_session(&self, tool: &Iri) -> Result<ScreeningSession, ScreeningError> {
        self.tool(tool)?;
        Ok(ScreeningSession { id: Uuid::new_v4(), tool: tool.clone(), answers: BTreeMap::new(), created_at: now() })
    }

    /// Records or overwrites the answer to `question`.
    pub fn answer(&self, session: &mut ScreeningSession, question: &Iri, option: &Iri) -> Result<(), ScreeningError> {
        let q = self.questions.get(question).ok_or_else(|| ScreeningError::UnknownQuestion(question.clone()))?;
        if q.tool != session.tool {
            return Err(ScreeningError::ForeignQuestion { question: question.clone(), tool: session.tool.clone() });
        }
        if !q.options.contains(option) {
            return Err(ScreeningError::ForeignOption { option: option.clone(), question: question.clone() });
        }
        session.answers.insert(question.clone(), option.clone());
        Ok(())
    }

    pub fn unanswered(&self, session: &ScreeningSession) -> Result<Vec<Iri>, ScreeningError> {
        let tool = self.tool(&session.tool)?;
        Ok(tool.questions.iter().filter(|q| !session.answers.contains_key(*q)).cloned().collect())
    }

    pub fn score(&self, session: &ScreeningSession) -> Result<ScreeningResult, ScreeningError> {
        let missing = self.unanswered(session)?;
        if !missing.is_empty() {
            return Err(ScreeningError::Incomplete(missing));
        }
        let tool = self.tool(&session.tool)?;
        let mut total = 0.0;
        let mut matched_standards = BTreeSet::new();
        for q in &tool.questions {
            let o = &self.options[&session.answers[q]];
            total += o.score;
            matched_standards.extend(o.matched_standards.iter().cloned());
        }
        let at_risk = tool.polarity.at_risk(total, tool.boundary);
        Ok(ScreeningResult {
            total,
            boundary: tool.boundary,
            at_risk,
            matched_standards,
            advice: if at_risk { Advice::SeekProfessionalEvaluation } else { Advice::None },
        })
    }

    /// Symptoms the question investigates.
    pub fn explain_question(&self, question: &Iri) -> Result<Vec<&Description>, ScreeningError> {
        let q = self.questions.get(question).ok_or_else(|| ScreeningError::UnknownQuestion(question.clone()))?;
        Ok(q.corresponding_symptoms.iter().filter_map(|s| self.descriptions.get(s)).collect())
    }

    /// Chosen options paired with the standards they match, in question order.
    pub fn explain_result(&self, session: &ScreeningSession) -> Result<Vec<ResultExplanation>, ScreeningError> {
        self.score(session)?;
        let tool = self.tool(&session.tool)?;
        let mut out = Vec::new();
        for q in &tool.questions {
            let o = &self.options[&session.answers[q]];
            for st in &o.matched_standards {
                if let Some(d) = self.descriptions.get(st) {
                    out.push(ResultExplanation { option: o.iri.clone(), option_text: o.text.clone(), standard: d.clone() });
                }
            }
        }
        Ok(out)
    }

    /// Options of a question, ordered as stored.
    pub fn options_of(&self, question: &Iri) -> Vec<&ScreeningOption> {
        self.questions
            .get(question)
            .map(|q| q.options.iter().filter_map(|o| self.options.get(o)).collect())
            .unwrap_or_default()
    }

    /// The abnormal (or normal, with `abnormal = false`) extreme option of each question.
    pub fn extreme_choices(&self, tool: &Iri, abnormal: bool) -> Result<BTreeMap<Iri, Iri>, ScreeningError> {
        let t = self.tool(tool)?;
        let high = matches!((t.polarity, abnormal), (Polarity::Ascending, true) | (Polarity::Descending, false));
        let mut out = BTreeMap::new();
        for q in &t.questions {
            let opts = self.options_of(q);
            let pick = if high {
                opts.iter().max_by(|a, b| a.score.total_cmp(&b.score).then_with(|| b.iri.cmp(&a.iri)))
            } else {
                opts.iter().min_by(|a, b| a.score.total_cmp(&b.score).then_with(|| a.iri.cmp(&b.iri)))
            };
            if let Some(o) = pick {
                out.insert(q.clone(), o.iri.clone());
            }
        }
        Ok(out)
    }
}

fn now() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}
