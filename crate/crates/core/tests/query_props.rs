mod common;

use asdkb::query::{execute, execute_in_order, join_order, parse_query, QueryError};
use asdkb::store::{Iri, Literal, Triple, TripleStore};
use common::{gen, oracles};
use proptest::prelude::*;

fn rendered(rows: &[Vec<asdkb::store::Term>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|t| t.to_ntriples()).collect()).collect();
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn execute_matches_nested_loop(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let triples = gen::random_triples(&mut r, 300);
        let store = TripleStore::from_triples(triples);
        let all: Vec<Triple> = store.iter().collect();
        for _ in 0..10 {
            let mut ast = gen::random_query(&mut r);
            let limit = ast.limit.take();
            let got = execute(&ast, &store);
            prop_assert_eq!(rendered(&got.rows), oracles::nested_loop(&ast, &all), "{}", ast);
            ast.limit = limit;
            if let Some(n) = limit {
                let limited = execute(&ast, &store);
                prop_assert_eq!(&limited.rows[..], &got.rows[..n.min(got.rows.len())]);
            }
        }
    }

    #[test]
    fn join_order_does_not_change_rows(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let store = TripleStore::from_triples(gen::random_triples(&mut r, 200));
        let ast = gen::random_query(&mut r);
        let base = execute(&ast, &store);
        let mut order: Vec<usize> = (0..ast.patterns.len()).collect();
        for _ in 0..6 {
            rand::seq::SliceRandom::shuffle(&mut order[..], &mut r);
            prop_assert_eq!(&execute_in_order(&ast, &store, &order).rows, &base.rows);
        }
        let mut chosen = join_order(&ast, &store);
        chosen.sort();
        prop_assert_eq!(chosen, (0..ast.patterns.len()).collect::<Vec<_>>());
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let ast = gen::random_query(&mut gen::rng(seed));
        prop_assert_eq!(parse_query(&ast.to_string()).unwrap(), ast);
    }
}

fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

#[test]
fn symptoms_of_a_disease() {
    let store = TripleStore::from_triples([
        Triple::new(iri("i:d1"), iri("i:hasSymptom"), iri("i:s1")),
        Triple::new(iri("i:d1"), iri("i:hasSymptom"), iri("i:s2")),
        Triple::new(iri("i:d2"), iri("i:hasSymptom"), iri("i:s3")),
    ]);
    let t = execute(&parse_query("SELECT ?s WHERE { <i:d1> <i:hasSymptom> ?s }").unwrap(), &store);
    assert_eq!(t.to_tsv(), "?s\n<i:s1>\n<i:s2>\n");
    let none = execute(&parse_query("SELECT ?s WHERE { ?d <i:absent> ?s }").unwrap(), &store);
    assert!(none.is_empty());
}

#[test]
fn grammar_examples() {
    let ast = parse_query("SELECT ?s WHERE { ?d <i:hasSymptom> ?s }").unwrap();
    assert_eq!((ast.select_vars.len(), ast.patterns.len()), (1, 1));
    assert_eq!(parse_query("SELECT ?x WHERE { ?y <i:p> ?z }"), Err(QueryError::UnknownVariable("x".into())));
    let ast = parse_query("SELECT ?o WHERE { ?o <i:Score> ?s . FILTER(?s >= 2.0) }").unwrap();
    assert_eq!(ast.filters.len(), 1);
    assert!(parse_query("select ?o where { ?o <i:Score> ?s FILTER(?s ≥ 2) } limit 3").is_ok());
    assert!(matches!(parse_query("SELECT ?o WHERE { ?o <i:p> ?s FILTER(?s < \"x\") }"), Err(QueryError::Syntax { .. })));
}

#[test]
fn score_filter_on_fixture_scale() {
    let kb = common::kb();
    let q = "SELECT ?q ?o ?v WHERE { ?q <http://w3id.org/asdkb/ontology/property/questionOf> <http://w3id.org/asdkb/instance/tool01> . \
             ?o <http://w3id.org/asdkb/ontology/property/optionOf> ?q . ?o <http://w3id.org/asdkb/ontology/property/Score> ?v . FILTER(?v >= 2) }";
    let ast = parse_query(q).unwrap();
    let got = execute(&ast, &kb.store);
    let all: Vec<Triple> = kb.store.iter().collect();
    assert!(!got.is_empty());
    assert_eq!(rendered(&got.rows), oracles::nested_loop(&ast, &all));
}

#[test]
fn numeric_filters_drop_non_numbers() {
    let store = TripleStore::from_triples([
        Triple::new(iri("i:a"), iri("i:v"), Literal::integer(3)),
        Triple::new(iri("i:b"), iri("i:v"), Literal::plain("3")),
        Triple::new(iri("i:c"), iri("i:v"), Literal::float(3.0).unwrap()),
    ]);
    let t = execute(&parse_query("SELECT ?x WHERE { ?x <i:v> ?n FILTER(?n = 3) }").unwrap(), &store);
    assert_eq!(t.to_tsv(), "?x\n<i:a>\n<i:c>\n");
}
