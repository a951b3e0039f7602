//! Fused records to typed triples.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::records::{RecordKind, SourceRecord};
use super::Violation;
use crate::ontology::OntologySchema;
use crate::store::{Iri, Literal, Term, Triple};
use crate::vocab;

/// Datatype properties whose values are Chinese text; the `En`-suffixed field carries English.
const ZH_TEXT: &[&str] = &[
    "Introduction",
    "PatientGroups",
    "Pathogeny",
    "Synonym",
    "Name",
    "Title",
    "Specialty",
    "HospitalDepartment",
    "Address",
    "HospitalLevel",
    "Rule",
];

pub fn instance(id: &str) -> Iri {
    Iri::new(vocab::instance_iri(id)).expect("record ids form valid IRIs")
}

pub fn property(local: &str) -> Iri {
    Iri::new(vocab::property_iri(local)).expect("valid property IRI")
}

pub fn class(local: &str) -> Iri {
    Iri::new(vocab::class_iri(local)).expect("valid class IRI")
}

fn builtin(iri: &str) -> Iri {
    Iri::new(iri).expect("vocabulary IRI")
}

pub fn base_class(kind: RecordKind) -> &'static str {
    match kind {
        RecordKind::Disease => "Disease",
        RecordKind::Symptom => "Symptom",
        RecordKind::DiagnosticStandard => "DiagnosticStandard",
        RecordKind::ScreeningTool => "ScreeningTool",
        RecordKind::ScreeningQuestion => "ScreeningQuestion",
        RecordKind::Option => "Option",
        RecordKind::Physician => "Physician",
        RecordKind::Hospital => "Hospital",
        RecordKind::Division => "AdministrativeDivision",
        RecordKind::Intervention => "InterventionMethod",
    }
}

fn default_class(kind: RecordKind) -> &'static str {
    match kind {
        RecordKind::Intervention => "EvidenceBasedPractice",
        other => base_class(other),
    }
}

pub struct Emitter<'a> {
    schema: &'a OntologySchema,
    /// Known record ids per kind, after fusion.
    ids: HashMap<RecordKind, HashSet<String>>,
    /// Raw id to representative id for fused kinds.
    reps: HashMap<String, String>,
    pub triples: Vec<Triple>,
    pub violations: Vec<Violation>,
}

impl<'a> Emitter<'a> {
    pub fn new(schema: &'a OntologySchema, records: &BTreeMap<RecordKind, Vec<SourceRecord>>, reps: HashMap<String, String>) -> Self {
        let ids = records.iter().map(|(k, rs)| (*k, rs.iter().map(|r| r.id.clone()).collect())).collect();
        Emitter { schema, ids, reps, triples: Vec::new(), violations: Vec::new() }
    }

    fn violation(&mut self, rec: &SourceRecord, reason: impl Into<String>) {
        self.violations.push(Violation { kind: Some(rec.kind), record: rec.id.clone(), line: rec.line, reason: reason.into() });
    }

    fn push(&mut self, s: &Iri, p: Iri, o: impl Into<Term>) {
        self.triples.push(Triple::new(s.clone(), p, o));
    }

    /// Resolves the record's class, or records a violation.
    pub fn class_of(&mut self, rec: &SourceRecord) -> Option<Iri> {
        let local = match rec.kind {
            RecordKind::Division => match rec.text("level").as_deref() {
                Some("province") => "Province".to_owned(),
                Some("city") => "City".to_owned(),
                Some("district") => "District".to_owned(),
                other => {
                    self.violation(rec, format!("unknown division level {other:?}"));
                    return None;
                }
            },
            kind => rec.text("class").unwrap_or_else(|| default_class(kind).to_owned()),
        };
        let iri = Iri::new(vocab::class_iri(&local)).ok().filter(|c| self.schema.classes.contains_key(c));
        let Some(iri) = iri else {
            self.violation(rec, format!("class {local} is not declared"));
            return None;
        };
        if !self.schema.ancestors(&iri).contains(&class(base_class(rec.kind))) {
            self.violation(rec, format!("class {local} is not a kind of {}", base_class(rec.kind)));
            return None;
        }
        Some(iri)
    }

    fn labels(&mut self, s: &Iri, rec: &SourceRecord, zh: &str, en: &str) {
        let label = builtin(vocab::RDFS_LABEL);
        for v in rec.texts(zh) {
            self.push(s, label.clone(), Literal::zh(v.trim()));
        }
        for v in rec.texts(en) {
            self.push(s, label.clone(), Literal::en(v.trim()));
        }
    }

    fn text(&mut self, s: &Iri, rec: &SourceRecord, field: &str) {
        let p = property(field);
        for v in rec.texts(field) {
            let v = v.trim();
            let lit = if ZH_TEXT.contains(&field) { Literal::zh(v) } else { Literal::plain(v) };
            self.push(s, p.clone(), lit);
        }
        for v in rec.texts(&format!("{field}En")) {
            self.push(s, p.clone(), Literal::en(v.trim()));
        }
    }

    fn float(&mut self, s: &Iri, rec: &SourceRecord, field: &str, prop: &str, value: Option<f64>) {
        match value.map(Literal::float) {
            Some(Ok(lit)) => self.push(s, property(prop), lit),
            _ => self.violation(rec, format!("{field} is not a finite number")),
        }
    }

    fn integer(&mut self, s: &Iri, rec: &SourceRecord, field: &str) {
        match rec.number(field) {
            Some(n) if n.fract() == 0.0 && n.abs() < 9.0e15 => self.push(s, property(field), Literal::integer(n as i64)),
            Some(_) => self.violation(rec, format!("{field} is not an integer")),
            None => {}
        }
    }

    fn geo(&mut self, s: &Iri, rec: &SourceRecord) {
        match (rec.number("Lat"), rec.number("Lng")) {
            (Some(lat), Some(lng)) if (-90.0..=90.0).contains(&lat) && (-180.0..=180.0).contains(&lng) => {
                self.push(s, property("GeoCoordinates"), Literal::plain(format!("{lat},{lng}")));
            }
            _ => self.violation(rec, "Lat/Lng missing or out of range"),
        }
    }

    /// Object links to other records, resolving fused ids.
    fn link(&mut self, s: &Iri, rec: &SourceRecord, field: &str, prop: &str, target: RecordKind, inverse: Option<&str>) {
        for raw in rec.texts(field) {
            let id = self.reps.get(&raw).cloned().unwrap_or(raw);
            if !self.ids.get(&target).is_some_and(|ids| ids.contains(&id)) {
                self.violation(rec, format!("{field} refers to unknown {target} `{id}`"));
                continue;
            }
            let o = instance(&id);
            self.push(s, property(prop), o.clone());
            if let Some(inv) = inverse {
                self.push(&o, property(inv), s.clone());
            }
        }
    }

    pub fn emit(&mut self, rec: &SourceRecord) {
        let Some(class_iri) = self.class_of(rec) else { return };
        let s = instance(&rec.id);
        self.push(&s, builtin(vocab::RDF_TYPE), class_iri);
        match rec.kind {
            RecordKind::Disease => {
                self.labels(&s, rec, "Label", "LabelEn");
                for f in ["SCTID", "ICD10Code", "Synonym", "Introduction", "PatientGroups", "Pathogeny"] {
                    self.text(&s, rec, f);
                }
                self.link(&s, rec, "hasSymptom", "hasSymptom", RecordKind::Symptom, Some("symptomOf"));
                self.link(&s, rec, "hasDiagnosticStandard", "hasDiagnosticStandard", RecordKind::DiagnosticStandard, None);
                self.link(&s, rec, "hasScreeningTool", "hasScreeningTool", RecordKind::ScreeningTool, None);
                self.link(&s, rec, "hasIntervention", "hasIntervention", RecordKind::Intervention, None);
            }
            RecordKind::Symptom | RecordKind::Intervention => {
                self.labels(&s, rec, "Label", "LabelEn");
                self.text(&s, rec, "Introduction");
            }
            RecordKind::DiagnosticStandard => {
                self.labels(&s, rec, "Label", "LabelEn");
                self.link(&s, rec, "relatedSymptom", "relatedSymptom", RecordKind::Symptom, None);
            }
            RecordKind::ScreeningTool => {
                self.labels(&s, rec, "Label", "LabelEn");
                for f in ["Introduction", "Author", "User", "Rule", "Language"] {
                    self.text(&s, rec, f);
                }
                match rec.text("Age").as_deref().and_then(parse_age) {
                    Some((lo, hi)) if lo <= hi => {
                        self.float(&s, rec, "Age", "MinAge", Some(lo));
                        self.float(&s, rec, "Age", "MaxAge", Some(hi));
                    }
                    _ => self.violation(rec, "Age must read `min-max` with min <= max"),
                }
                self.integer(&s, rec, "Time");
                self.float(&s, rec, "ScreeningBoundary", "ScreeningBoundary", rec.number("ScreeningBoundary"));
                match rec.text("ScoringPolarity").as_deref().map(crate::screening::Polarity::parse) {
                    Some(Some(p)) => self.push(&s, property("ScoringPolarity"), Literal::plain(p.name())),
                    _ => self.violation(rec, "ScoringPolarity must be ascending or descending"),
                }
            }
            RecordKind::ScreeningQuestion => {
                self.labels(&s, rec, "Label", "LabelEn");
                self.link(&s, rec, "tool", "questionOf", RecordKind::ScreeningTool, Some("hasQuestion"));
            }
            RecordKind::Option => {
                self.labels(&s, rec, "Label", "LabelEn");
                self.float(&s, rec, "Score", "Score", rec.number("Score"));
                self.link(&s, rec, "question", "optionOf", RecordKind::ScreeningQuestion, Some("hasOption"));
            }
            RecordKind::Physician => {
                self.labels(&s, rec, "Name", "NameEn");
                for f in ["Name", "Title", "Specialty", "HospitalDepartment"] {
                    self.text(&s, rec, f);
                }
                self.link(&s, rec, "workAt", "workAt", RecordKind::Hospital, Some("hasPhysician"));
                self.link(&s, rec, "specializeIn", "specializeIn", RecordKind::Disease, None);
            }
            RecordKind::Hospital => {
                self.labels(&s, rec, "Name", "NameEn");
                for f in ["Name", "Address", "ContactDetails", "HospitalLevel"] {
                    self.text(&s, rec, f);
                }
                self.geo(&s, rec);
                self.link(&s, rec, "locateAt", "locateAt", RecordKind::Division, None);
            }
            RecordKind::Division => {
                self.labels(&s, rec, "Name", "NameEn");
                self.text(&s, rec, "Name");
                self.integer(&s, rec, "Population");
                self.geo(&s, rec);
                self.link(&s, rec, "parent", "locateAt", RecordKind::Division, None);
            }
        }
    }

    /// Adds precomputed links between emitted instances.
    pub fn push_links(&mut self, prop: &str, pairs: &[(String, String)]) {
        let p = property(prop);
        for (a, b) in pairs {
            self.triples.push(Triple::new(instance(a), p.clone(), instance(b)));
        }
    }
}

/// Parses `"lo-hi"` age ranges in years.
pub fn parse_age(text: &str) -> Option<(f64, f64)> {
    let (lo, hi) = text.trim().split_once('-')?;
    let (lo, hi): (f64, f64) = (lo.trim().parse().ok()?, hi.trim().parse().ok()?);
    (lo.is_finite() && hi.is_finite() && lo >= 0.0).then_some((lo, hi))
}
