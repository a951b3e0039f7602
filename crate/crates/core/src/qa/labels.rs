use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::ingest::normalize;
use crate::ontology::OntologySchema;
use crate::read::{iri, prop};
use crate::store::{Iri, Pattern, Term, TripleStore};
use crate::vocab;

/// Classes whose labels are sentences rather than names.
const UNNAMED: &[&str] = &["ScreeningQuestion", "Option"];

/// Folds a question or label for matching: width, case, trailing punctuation.
pub fn normalize_text(text: &str) -> String {
    let s = normalize(text);
    s.trim_end_matches(['?', '!', '.', '。', '？', '！', ' ']).trim().split_whitespace().collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Source {
    Label,
    Synonym,
}

/// Normalized labels and synonyms of instances, with each instance's types closed upward.
#[derive(Debug, Clone, Default)]
pub struct LabelIndex {
    entries: BTreeMap<String, BTreeSet<(Source, Iri)>>,
    types: HashMap<Iri, BTreeSet<Iri>>,
}

impl LabelIndex {
    pub fn from_store(store: &TripleStore, schema: &OntologySchema) -> Self {
        let mut index = LabelIndex::default();
        let ty = Term::Iri(iri(vocab::RDF_TYPE));
        for t in store.lookup(Pattern { s: None, p: Some(&ty), o: None }) {
            if let (true, Term::Iri(class)) = (t.s.is_instance(), &t.o) {
                index.types.entry(t.s.clone()).or_default().extend(schema.ancestors(class));
            }
        }
        for (p, source) in [(iri(vocab::RDFS_LABEL), Source::Label), (prop("Synonym"), Source::Synonym)] {
            let p = Term::Iri(p);
            for t in store.lookup(Pattern { s: None, p: Some(&p), o: None }) {
                let Some(lit) = t.o.as_literal() else { continue };
                if !index.types.contains_key(&t.s) {
                    continue;
                }
                let key = normalize_text(lit.lexical());
                if !key.is_empty() {
                    index.entries.entry(key).or_default().insert((source, t.s));
                }
            }
        }
        index
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_a(&self, entity: &Iri, class: &Iri) -> bool {
        self.types.get(entity).is_some_and(|ts| ts.contains(class))
    }

    /// Instances carrying `label`, restricted to `class` when given; primary labels first, then IRI order.
    pub fn resolve(&self, label: &str, class: Option<&Iri>) -> Vec<Iri> {
        self.entries
            .get(&normalize_text(label))
            .into_iter()
            .flatten()
            .filter(|(_, e)| class.is_none_or(|c| self.is_a(e, c)))
            .map(|(_, e)| e.clone())
            .fold(Vec::new(), |mut acc, e| {
                if !acc.contains(&e) {
                    acc.push(e);
                }
                acc
            })
    }

    /// Every label with at least one instance of `class`.
    pub fn labels_of(&self, class: &Iri) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, es)| es.iter().any(|(_, e)| self.is_a(e, class)))
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// The longest label of a named instance occurring in the question.
    pub fn mention(&self, question: &str) -> Option<(&str, Iri)> {
        let q = normalize_text(question);
        let unnamed: Vec<Iri> = UNNAMED.iter().map(|c| iri(&vocab::class_iri(c))).collect();
        self.entries
            .iter()
            .filter(|(label, _)| label.chars().count() >= 2 && q.contains(label.as_str()))
            .filter_map(|(label, es)| {
                let named = es.iter().find(|(_, e)| !unnamed.iter().any(|c| self.is_a(e, c)))?;
                Some((label.as_str(), named.0, named.1.clone()))
            })
            .min_by(|a, b| b.0.chars().count().cmp(&a.0.chars().count()).then(a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2)))
            .map(|(label, _, e)| (label, e))
    }
}
