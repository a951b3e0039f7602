//! Deduplicated triple store with SPO, POS and OSP indexes over interned terms.

mod ntriples;
mod term;

use std::collections::{BTreeSet, HashMap};
use std::ops::RangeInclusive;

use thiserror::Error;

pub use ntriples::{canonical_dump, parse_line, parse_ntriples, serialize_ntriples, SyntaxError, SyntaxErrorKind};
pub use term::{Iri, Literal, LiteralTag, Term, TermError, Triple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("store is frozen")]
    Frozen,
}

type Key = (u32, u32, u32);

#[derive(Debug, Clone, Default)]
pub struct TripleStore {
    terms: Vec<Term>,
    ids: HashMap<Term, u32>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    frozen: bool,
}

/// A lookup pattern; `None` is a wildcard.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pattern<'a> {
    pub s: Option<&'a Term>,
    pub p: Option<&'a Term>,
    pub o: Option<&'a Term>,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        let mut store = Self::new();
        for t in triples {
            store.insert(t).expect("fresh store is not frozen");
        }
        store
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn freeze(&mut self) {
        self.frozen = true;
    }

    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    /// Returns whether the triple was new.
    pub fn insert(&mut self, triple: Triple) -> Result<bool, StoreError> {
        if self.frozen {
            return Err(StoreError::Frozen);
        }
        let s = self.intern(Term::Iri(triple.s));
        let p = self.intern(Term::Iri(triple.p));
        let o = self.intern(triple.o);
        if !self.spo.insert((s, p, o)) {
            return Ok(false);
        }
        self.pos.insert((p, o, s));
        self.osp.insert((o, s, p));
        Ok(true)
    }

    fn intern(&mut self, term: Term) -> u32 {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = u32::try_from(self.terms.len()).expect("term table overflow");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    fn id_of(&self, term: &Term) -> Option<u32> {
        self.ids.get(term).copied()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        let s = self.ids.get(&Term::Iri(triple.s.clone()));
        let p = self.ids.get(&Term::Iri(triple.p.clone()));
        let o = self.id_of(&triple.o);
        match (s, p, o) {
            (Some(&s), Some(&p), Some(o)) => self.spo.contains(&(s, p, o)),
            _ => false,
        }
    }

    fn resolve(&self, (s, p, o): Key) -> Triple {
        let iri = |id: u32| match &self.terms[id as usize] {
            Term::Iri(iri) => iri.clone(),
            Term::Literal(_) => unreachable!("subject and predicate ids always denote IRIs"),
        };
        Triple { s: iri(s), p: iri(p), o: self.terms[o as usize].clone() }
    }

    fn keys(&self, pattern: Pattern<'_>) -> Vec<Key> {
        let bind = |t: Option<&Term>| t.map(|t| self.id_of(t));
        let (s, p, o) = (bind(pattern.s), bind(pattern.p), bind(pattern.o));
        if matches!(s, Some(None)) || matches!(p, Some(None)) || matches!(o, Some(None)) {
            return Vec::new();
        }
        let (s, p, o) = (s.flatten(), p.flatten(), o.flatten());
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                if self.spo.contains(&(s, p, o)) {
                    vec![(s, p, o)]
                } else {
                    Vec::new()
                }
            }
            (Some(s), Some(p), None) => self.spo.range(span2(s, p)).copied().collect(),
            (Some(s), None, None) => self.spo.range(span1(s)).copied().collect(),
            (None, Some(p), Some(o)) => self.pos.range(span2(p, o)).map(|&(p, o, s)| (s, p, o)).collect(),
            (None, Some(p), None) => self.pos.range(span1(p)).map(|&(p, o, s)| (s, p, o)).collect(),
            (Some(s), None, Some(o)) => self.osp.range(span2(o, s)).map(|&(o, s, p)| (s, p, o)).collect(),
            (None, None, Some(o)) => self.osp.range(span1(o)).map(|&(o, s, p)| (s, p, o)).collect(),
            (None, None, None) => self.spo.iter().copied().collect(),
        }
    }

    /// All triples matching the pattern.
    pub fn lookup(&self, pattern: Pattern<'_>) -> Vec<Triple> {
        self.keys(pattern).into_iter().map(|k| self.resolve(k)).collect()
    }

    /// Number of triples matching the pattern, without materializing them.
    pub fn count(&self, pattern: Pattern<'_>) -> usize {
        let bind = |t: Option<&Term>| t.map(|t| self.id_of(t));
        let (s, p, o) = (bind(pattern.s), bind(pattern.p), bind(pattern.o));
        if matches!(s, Some(None)) || matches!(p, Some(None)) || matches!(o, Some(None)) {
            return 0;
        }
        match (s.flatten(), p.flatten(), o.flatten()) {
            (Some(s), Some(p), None) => self.spo.range(span2(s, p)).count(),
            (Some(s), None, None) => self.spo.range(span1(s)).count(),
            (None, Some(p), Some(o)) => self.pos.range(span2(p, o)).count(),
            (None, Some(p), None) => self.pos.range(span1(p)).count(),
            (Some(s), None, Some(o)) => self.osp.range(span2(o, s)).count(),
            (None, None, Some(o)) => self.osp.range(span1(o)).count(),
            (None, None, None) => self.len(),
            (Some(s), Some(p), Some(o)) => usize::from(self.spo.contains(&(s, p, o))),
        }
    }

    /// Every triple, in index order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| self.resolve(k))
    }

    /// Objects of `(s, p, ?)`.
    pub fn objects(&self, s: &Iri, p: &Iri) -> Vec<Term> {
        let (s, p) = (Term::Iri(s.clone()), Term::Iri(p.clone()));
        self.lookup(Pattern { s: Some(&s), p: Some(&p), o: None }).into_iter().map(|t| t.o).collect()
    }

    /// Subjects of `(?, p, o)`.
    pub fn subjects(&self, p: &Iri, o: &Term) -> Vec<Iri> {
        let p = Term::Iri(p.clone());
        self.lookup(Pattern { s: None, p: Some(&p), o: Some(o) }).into_iter().map(|t| t.s).collect()
    }

    /// Distinct subjects in the store, ascending by IRI.
    pub fn distinct_subjects(&self) -> Vec<Iri> {
        let mut ids: Vec<u32> = self.spo.iter().map(|&(s, _, _)| s).collect();
        ids.dedup();
        let mut out: Vec<Iri> = ids
            .into_iter()
            .map(|id| self.terms[id as usize].as_iri().expect("subject is an IRI").clone())
            .collect();
        out.sort();
        out
    }

    /// All triples with `iri` as subject, in canonical order.
    pub fn dereference(&self, iri: &Iri) -> Vec<Triple> {
        let s = Term::Iri(iri.clone());
        let mut out = self.lookup(Pattern { s: Some(&s), ..Pattern::default() });
        out.sort_by(Triple::canonical_cmp);
        out
    }

    /// Canonically ordered N-Triples dump of the whole store.
    pub fn to_ntriples(&self) -> String {
        canonical_dump(self.iter().collect())
    }
}

fn span1(a: u32) -> RangeInclusive<Key> {
    (a, 0, 0)..=(a, u32::MAX, u32::MAX)
}

fn span2(a: u32, b: u32) -> RangeInclusive<Key> {
    (a, b, 0)..=(a, b, u32::MAX)
}
