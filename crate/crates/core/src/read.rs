//! Typed accessors over entity properties in the store.

use crate::store::{Iri, LiteralTag, Pattern, Term, TripleStore};
use crate::screening::Description;
use crate::vocab;

pub(crate) fn iri(s: &str) -> Iri {
    Iri::new(s).expect("vocabulary IRI")
}

pub(crate) fn prop(local: &str) -> Iri {
    iri(&vocab::property_iri(local))
}

pub(crate) struct Reader<'a> {
    store: &'a TripleStore,
}

impl<'a> Reader<'a> {
    pub fn new(store: &'a TripleStore) -> Self {
        Reader { store }
    }

    pub fn values(&self, s: &Iri, p: &Iri) -> Vec<Term> {
        let mut v = self.store.objects(s, p);
        v.sort();
        v
    }

    pub fn literal(&self, s: &Iri, p: &Iri, tag: Option<LiteralTag>) -> Option<String> {
        self.values(s, p)
            .into_iter()
            .filter_map(|t| t.as_literal().cloned())
            .find(|l| tag.is_none_or(|tag| l.tag() == tag))
            .map(|l| l.lexical().to_owned())
    }

    pub fn zh(&self, s: &Iri, p: &Iri) -> Option<String> {
        self.literal(s, p, Some(LiteralTag::LangZh)).or_else(|| self.literal(s, p, Some(LiteralTag::Plain)))
    }

    pub fn en(&self, s: &Iri, p: &Iri) -> Option<String> {
        self.literal(s, p, Some(LiteralTag::LangEn))
    }

    pub fn number(&self, s: &Iri, p: &Iri) -> Option<f64> {
        self.values(s, p).iter().find_map(|t| t.as_literal().and_then(|l| l.as_number()))
    }

    pub fn iris(&self, s: &Iri, p: &Iri) -> Vec<Iri> {
        self.values(s, p).into_iter().filter_map(|t| t.as_iri().cloned()).collect()
    }

    pub fn instances(&self, class_local: &str) -> Vec<Iri> {
        let ty = Term::Iri(iri(vocab::RDF_TYPE));
        let class = Term::Iri(iri(&vocab::class_iri(class_local)));
        let mut out: Vec<Iri> =
            self.store.lookup(Pattern { s: None, p: Some(&ty), o: Some(&class) }).into_iter().map(|t| t.s).collect();
        out.sort();
        out
    }

    pub fn description(&self, s: &Iri) -> Description {
        let label = iri(vocab::RDFS_LABEL);
        let intro = prop("Introduction");
        Description {
            iri: s.clone(),
            label_zh: self.zh(s, &label),
            label_en: self.en(s, &label),
            introduction_zh: self.zh(s, &intro),
            introduction_en: self.en(s, &intro),
        }
    }
}
