//! Seeded generators for random stores, queries and duplicate-laden records.

#![allow(dead_code)]

use std::collections::BTreeMap;

use asdkb::ingest::{RecordKind, SourceRecord};
use asdkb::query::{Comparator, Filter, PatternTerm, QueryAst, TriplePattern};
use asdkb::store::{Iri, Literal, Term, Triple};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn node(i: usize) -> Iri {
    Iri::new(format!("http://w3id.org/asdkb/instance/n{i}")).unwrap()
}

pub fn pred(i: usize) -> Iri {
    Iri::new(format!("http://w3id.org/asdkb/ontology/property/p{i}")).unwrap()
}

const NODES: usize = 24;
const PREDS: usize = 5;

pub fn random_object(r: &mut ChaCha8Rng) -> Term {
    match r.random_range(0..6) {
        0 | 1 | 2 => Term::Iri(node(r.random_range(0..NODES))),
        3 => Term::Literal(Literal::integer(r.random_range(0..10))),
        4 => Term::Literal(Literal::float(r.random_range(0..20) as f64 / 2.0).unwrap()),
        _ => Term::Literal(if r.random_bool(0.5) { Literal::zh(["症状", "量表", "医院"][r.random_range(0..3)]) } else { Literal::plain(format!("v{}", r.random_range(0..4))) }),
    }
}

pub fn random_triples(r: &mut ChaCha8Rng, max: usize) -> Vec<Triple> {
    let n = r.random_range(0..=max);
    (0..n).map(|_| Triple::new(node(r.random_range(0..NODES)), pred(r.random_range(0..PREDS)), random_object(r))).collect()
}

const VARS: [&str; 4] = ["a", "b", "c", "d"];

fn random_position(r: &mut ChaCha8Rng, const_fn: impl Fn(&mut ChaCha8Rng) -> Term, var_bias: f64) -> PatternTerm {
    if r.random_bool(var_bias) {
        PatternTerm::Var(VARS[r.random_range(0..VARS.len())].to_owned())
    } else {
        PatternTerm::Const(const_fn(r))
    }
}

/// 1 to 3 patterns, at most one filter, optional limit; always valid.
pub fn random_query(r: &mut ChaCha8Rng) -> QueryAst {
    let n = r.random_range(1..=3);
    let mut patterns: Vec<TriplePattern> = (0..n)
        .map(|_| TriplePattern {
            s: random_position(r, |r| Term::Iri(node(r.random_range(0..NODES))), 0.8),
            p: random_position(r, |r| Term::Iri(pred(r.random_range(0..PREDS))), 0.2),
            o: random_position(r, random_object, 0.7),
        })
        .collect();
    let mut bound: Vec<String> =
        patterns.iter().flat_map(|p| [&p.s, &p.p, &p.o]).filter_map(|t| t.var().map(str::to_owned)).collect();
    bound.sort();
    bound.dedup();
    if bound.is_empty() {
        patterns[0].o = PatternTerm::Var("a".into());
        bound.push("a".into());
    }
    let mut select: Vec<String> = bound.iter().filter(|_| r.random_bool(0.6)).cloned().collect();
    if select.is_empty() {
        select.push(bound.choose(r).unwrap().clone());
    }
    select.shuffle(r);
    let mut filters = Vec::new();
    if r.random_bool(0.4) {
        let var = bound.choose(r).unwrap().clone();
        let (op, value) = if r.random_bool(0.6) {
            let ops = [Comparator::Eq, Comparator::Ne, Comparator::Lt, Comparator::Le, Comparator::Gt, Comparator::Ge];
            (*ops.choose(r).unwrap(), Term::Literal(Literal::integer(r.random_range(0..10))))
        } else {
            (if r.random_bool(0.5) { Comparator::Eq } else { Comparator::Ne }, random_object(r))
        };
        filters.push(Filter { var, op, value });
    }
    let limit = r.random_bool(0.3).then(|| r.random_range(1..8));
    QueryAst { select_vars: select, patterns, filters, limit }
}

/// Renders `canonical` with random width, case and padding changes that normalize back to it.
pub fn disguise(r: &mut ChaCha8Rng, canonical: &str) -> String {
    let mut out = String::new();
    if r.random_bool(0.3) {
        out.push_str(["  ", "\u{3000}", " \u{3000}"][r.random_range(0..3)]);
    }
    for c in canonical.chars() {
        let c = if c.is_ascii_lowercase() && r.random_bool(0.3) { c.to_ascii_uppercase() } else { c };
        if c.is_ascii_graphic() && r.random_bool(0.3) {
            out.push(char::from_u32(c as u32 + 0xFEE0).unwrap());
        } else {
            out.push(c);
        }
    }
    if r.random_bool(0.3) {
        out.push(' ');
    }
    out
}

/// Synthetic hospitals with their canonical (address, phone); empty means absent.
pub fn hospitals(r: &mut ChaCha8Rng, n: usize) -> (Vec<SourceRecord>, Vec<(String, String)>) {
    let addresses: Vec<String> = (0..n * 2 / 3).map(|i| format!("南京市鼓楼区路{i}号")).collect();
    let phones: Vec<String> = (0..n * 2 / 3).map(|i| format!("025-8{i:06}")).collect();
    let mut records = Vec::new();
    let mut truth = Vec::new();
    for i in 0..n {
        let a = if r.random_bool(0.1) { String::new() } else { addresses.choose(r).unwrap().clone() };
        let p = if r.random_bool(0.1) { String::new() } else { phones.choose(r).unwrap().clone() };
        let fields = BTreeMap::from([
            ("Name".to_owned(), json!(format!("医院{i}"))),
            ("Address".to_owned(), json!(if a.is_empty() { " ".to_owned() } else { disguise(r, &a) })),
            ("ContactDetails".to_owned(), json!(if p.is_empty() { String::new() } else { disguise(r, &p) })),
        ]);
        records.push(SourceRecord::new(RecordKind::Hospital, format!("h{i:03}"), fields));
        truth.push((a, p));
    }
    (records, truth)
}

/// Synthetic physicians over hospital ids, with canonical (hospital, name, title).
pub fn physicians(r: &mut ChaCha8Rng, n: usize, hospital_ids: &[String]) -> (Vec<SourceRecord>, Vec<(String, String, String)>) {
    let names = ["王芳", "李静", "张伟", "刘洋", "陈晨", "zhao lei"];
    let titles = ["主任医师", "副主任医师", "主治医师", "住院医师"];
    let mut records = Vec::new();
    let mut truth = Vec::new();
    for i in 0..n {
        let h = hospital_ids.choose(r).unwrap().clone();
        let name = names.choose(r).unwrap().to_string();
        let title = titles.choose(r).unwrap().to_string();
        let fields = BTreeMap::from([
            ("Name".to_owned(), json!(disguise(r, &name))),
            ("Title".to_owned(), json!(disguise(r, &title))),
            ("workAt".to_owned(), json!(h)),
            ("ThumbsUp".to_owned(), json!(r.random_range(0..20))),
        ]);
        records.push(SourceRecord::new(RecordKind::Physician, format!("p{i:03}"), fields));
        truth.push((h, name, title));
    }
    (records, truth)
}
