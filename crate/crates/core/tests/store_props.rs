mod common;

use asdkb::store::{canonical_dump, parse_ntriples, serialize_ntriples, Iri, Literal, LiteralTag, Pattern, Term, Triple, TripleStore};
use common::gen;
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;

fn matches(t: &Triple, s: Option<&Term>, p: Option<&Term>, o: Option<&Term>) -> bool {
    s.is_none_or(|s| *s == Term::Iri(t.s.clone())) && p.is_none_or(|p| *p == Term::Iri(t.p.clone())) && o.is_none_or(|o| *o == t.o)
}

fn sorted(mut v: Vec<Triple>) -> Vec<Triple> {
    v.sort_by(Triple::canonical_cmp);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_index_path_agrees_with_a_scan(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let triples = gen::random_triples(&mut r, 1000);
        let store = TripleStore::from_triples(triples.clone());
        let all: Vec<Triple> = store.iter().collect();
        prop_assert_eq!(store.count(Pattern::default()), store.len());
        for t in &triples {
            prop_assert!(store.contains(t));
        }
        for _ in 0..100 {
            let reference = triples.choose(&mut r).cloned();
            let pick = |r: &mut rand_chacha::ChaCha8Rng, known: Option<Term>, fresh: Term| {
                match r.random_range(0..3) {
                    0 => None,
                    1 => known.or(Some(fresh)),
                    _ => Some(fresh),
                }
            };
            let fresh = (Term::Iri(gen::node(r.random_range(0..30))), Term::Iri(gen::pred(r.random_range(0..6))), gen::random_object(&mut r));
            let s = pick(&mut r, reference.as_ref().map(|t| Term::Iri(t.s.clone())), fresh.0);
            let p = pick(&mut r, reference.as_ref().map(|t| Term::Iri(t.p.clone())), fresh.1);
            let o = pick(&mut r, reference.as_ref().map(|t| t.o.clone()), fresh.2);
            let got = store.lookup(Pattern { s: s.as_ref(), p: p.as_ref(), o: o.as_ref() });
            let want: Vec<Triple> = all.iter().filter(|t| matches(t, s.as_ref(), p.as_ref(), o.as_ref())).cloned().collect();
            prop_assert_eq!(store.count(Pattern { s: s.as_ref(), p: p.as_ref(), o: o.as_ref() }), want.len());
            prop_assert_eq!(sorted(got), sorted(want));
        }
    }

    #[test]
    fn duplicates_count_once(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let triples = gen::random_triples(&mut r, 200);
        let mut store = TripleStore::from_triples(triples.clone());
        let n = store.len();
        for t in triples.iter().take(20) {
            store.insert(t.clone()).unwrap();
        }
        prop_assert_eq!(store.len(), n);
    }

    #[test]
    fn parse_inverts_serialize(seed in any::<u64>(), texts in proptest::collection::vec("\\PC*", 0..8)) {
        let mut r = gen::rng(seed);
        let mut triples = gen::random_triples(&mut r, 50);
        for (i, text) in texts.iter().enumerate() {
            let lit = match i % 3 { 0 => Literal::zh(text), 1 => Literal::en(text), _ => Literal::plain(text) };
            triples.push(Triple::new(gen::node(i), gen::pred(0), lit));
        }
        triples.push(Triple::new(gen::node(0), gen::pred(1), Literal::plain("tab\there \"quoted\" \\ back\nnew\r\u{1}")));
        let text = serialize_ntriples(&triples);
        prop_assert_eq!(parse_ntriples(&text).unwrap(), triples.clone());
        let canonical = canonical_dump(triples.clone());
        prop_assert_eq!(canonical_dump(parse_ntriples(&canonical).unwrap()), canonical);
    }
}

#[test]
fn thousand_random_triples_are_found() {
    let mut r = gen::rng(7);
    let triples: Vec<Triple> = (0..1000)
        .map(|i| Triple::new(gen::node(i), gen::pred(r.random_range(0..5)), gen::random_object(&mut r)))
        .collect();
    let store = TripleStore::from_triples(triples.clone());
    assert_eq!(store.len(), 1000);
    for t in &triples {
        assert_eq!(store.lookup(Pattern { s: Some(&Term::Iri(t.s.clone())), p: Some(&Term::Iri(t.p.clone())), o: Some(&t.o) }), vec![t.clone()]);
    }
}

#[test]
fn chinese_literal_line() {
    let t = parse_ntriples("<i:s> <i:p> \"你好\"@zh .").unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(t[0].o.as_literal().unwrap().tag(), LiteralTag::LangZh);
    assert!(parse_ntriples("<i:s> <i:p> <i:o>\n<i:s> <i:p> \"x\"").unwrap_err().line == 1);
}

#[test]
fn fixture_lookups_and_dereference() {
    let kb = common::kb();
    let d1 = Iri::new("http://w3id.org/asdkb/instance/disease1").unwrap();
    let has = Iri::new("http://w3id.org/asdkb/ontology/property/hasSymptom").unwrap();
    let mut symptoms: Vec<String> = kb.store.objects(&d1, &has).iter().map(|t| t.as_iri().unwrap().local_name().to_owned()).collect();
    symptoms.sort();
    let mut want: Vec<String> = common::jsonl("kb/diseases.jsonl")[0]["hasSymptom"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_owned())
        .collect();
    want.sort();
    assert_eq!(symptoms, want);

    let s64 = Iri::new("http://w3id.org/asdkb/instance/symptom64").unwrap();
    let described = kb.store.dereference(&s64);
    let preds: Vec<&str> = described.iter().map(|t| t.p.local_name()).collect();
    assert!(preds.contains(&"type") && preds.contains(&"label") && preds.contains(&"Introduction"));
    assert!(kb.store.dereference(&Iri::new("http://w3id.org/asdkb/instance/nothing").unwrap()).is_empty());
    for s in kb.store.distinct_subjects() {
        assert!(!kb.store.dereference(&s).is_empty());
    }
}

#[test]
fn frozen_store_rejects_mutation() {
    let mut store = TripleStore::new();
    store.freeze();
    assert!(store.insert(Triple::new(gen::node(0), gen::pred(0), gen::node(1))).is_err());
    assert!(store.lookup(Pattern::default()).is_empty());
}
