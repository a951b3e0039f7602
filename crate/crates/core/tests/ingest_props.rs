mod common;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use asdkb::ingest::{
    fuse_hospitals, fuse_physicians, ingest_all, string_similarity, tfidf_keywords, tokenize, IngestConfig, IngestError, RecordKind,
};
use asdkb::store::Iri;
use common::{gen, oracles};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn hospital_oracle(ids: &[String], truth: &[(String, String)]) -> Vec<Vec<String>> {
    oracles::pairwise_closure(ids, |i, j| {
        let (a, b) = (&truth[i], &truth[j]);
        (!a.0.is_empty() && a.0 == b.0) || (!a.1.is_empty() && a.1 == b.1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fusion_equals_pairwise_closure(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let (hospitals, htruth) = gen::hospitals(&mut r, 60);
        let hids: Vec<String> = hospitals.iter().map(|h| h.id.clone()).collect();
        let want = hospital_oracle(&hids, &htruth);
        let got = fuse_hospitals(&hospitals);
        prop_assert_eq!(&got, &want);

        let class_of: HashMap<&str, usize> =
            want.iter().enumerate().flat_map(|(c, ids)| ids.iter().map(move |id| (id.as_str(), c))).collect();
        let (physicians, ptruth) = gen::physicians(&mut r, 40, &hids);
        let pids: Vec<String> = physicians.iter().map(|p| p.id.clone()).collect();
        let pwant = oracles::pairwise_closure(&pids, |i, j| {
            let (a, b) = (&ptruth[i], &ptruth[j]);
            class_of[a.0.as_str()] == class_of[b.0.as_str()] && a.1 == b.1 && a.2 == b.2
        });
        let reps = asdkb::ingest::fusion::representatives(&got);
        let (pgot, dangling) = fuse_physicians(&physicians, &reps);
        prop_assert!(dangling.is_empty());
        prop_assert_eq!(&pgot, &pwant);

        let mut shuffled = hospitals.clone();
        shuffled.shuffle(&mut r);
        prop_assert_eq!(fuse_hospitals(&shuffled), got);
    }

    #[test]
    fn partition_covers_every_record_once(seed in any::<u64>()) {
        let (hospitals, _) = gen::hospitals(&mut gen::rng(seed), 40);
        let p = fuse_hospitals(&hospitals);
        let mut all: Vec<&String> = p.iter().flatten().collect();
        all.sort();
        let mut ids: Vec<&String> = hospitals.iter().map(|h| &h.id).collect();
        ids.sort();
        prop_assert_eq!(all, ids);
    }

    #[test]
    fn dice_is_symmetric_and_one_only_on_equal_sets(a in proptest::collection::vec("[a-e]", 0..6), b in proptest::collection::vec("[a-e]", 0..6)) {
        let ab: f64 = string_similarity(&a, &b);
        prop_assert_eq!(ab, string_similarity::<f64>(&b, &a));
        prop_assert!((0.0..=1.0).contains(&ab));
        let (sa, sb): (BTreeSet<_>, BTreeSet<_>) = (a.iter().collect(), b.iter().collect());
        prop_assert_eq!(ab == 1.0, sa == sb && !sa.is_empty());
        let common = sa.intersection(&sb).count() as f64;
        let want = if sa.is_empty() && sb.is_empty() { 0.0 } else { 2.0 * common / (sa.len() + sb.len()) as f64 };
        prop_assert!((ab - want).abs() < 1e-12);
    }

    #[test]
    fn tfidf_matches_the_definition(corpus in proptest::collection::vec(proptest::collection::vec("[a-f]", 1..8), 1..6), k in 1usize..10) {
        for doc in 1..=corpus.len() {
            let top: Vec<(String, f64)> = tfidf_keywords(&corpus, doc, k).unwrap();
            let vocab: BTreeSet<&String> = corpus[doc - 1].iter().collect();
            prop_assert_eq!(top.len(), k.min(vocab.len()));
            for w in top.windows(2) {
                prop_assert!(w[0].1 >= w[1].1);
                if w[0].1 == w[1].1 {
                    prop_assert!(w[0].0 < w[1].0);
                }
            }
            for (term, score) in &top {
                prop_assert!(*score >= 0.0);
                prop_assert!((score - oracles::tfidf(&corpus, doc, term)).abs() < 1e-12);
            }
            let cutoff = top.last().map(|t| t.1).unwrap_or(f64::INFINITY);
            for term in vocab.iter().filter(|t| !top.iter().any(|(x, _)| x == **t)) {
                prop_assert!(oracles::tfidf(&corpus, doc, term) <= cutoff);
            }
        }
    }
}

#[test]
fn tokenizer_golden() {
    let golden = include_str!("golden/tokenize.tsv");
    for line in golden.lines() {
        let (input, tokens) = line.split_once('\t').unwrap();
        let want: Vec<&str> = tokens.split(' ').filter(|t| !t.is_empty()).collect();
        assert_eq!(tokenize(input), want, "{input}");
    }
    assert!(tokenize("").is_empty());
    assert_eq!(tokenize("eye contact"), ["eye", "contact"]);
}

#[test]
fn tfidf_worked_example() {
    let corpus = vec![vec!["a".to_owned(), "b".to_owned()], vec!["b".to_owned()]];
    let top: Vec<(String, f64)> = tfidf_keywords(&corpus, 1, 1).unwrap();
    assert_eq!(top[0].0, "a");
    assert!((top[0].1 - oracles::tfidf(&corpus, 1, "a")).abs() < 1e-15);
    assert!((top[0].1 - 0.5 * 2f64.ln()).abs() < 1e-15);
}

fn entity(local: &str) -> Iri {
    Iri::new(format!("http://w3id.org/asdkb/instance/{local}")).unwrap()
}

fn links(prop: &str) -> BTreeSet<(String, String)> {
    let kb = common::kb();
    let p = Iri::new(format!("http://w3id.org/asdkb/ontology/property/{prop}")).unwrap();
    kb.store
        .iter()
        .filter(|t| t.p == p)
        .map(|t| (t.s.local_name().to_owned(), t.o.as_iri().unwrap().local_name().to_owned()))
        .collect()
}

fn dice(a: &str, b: &str) -> f64 {
    let (x, y): (BTreeSet<String>, BTreeSet<String>) = (tokenize(a).into_iter().collect(), tokenize(b).into_iter().collect());
    if x.is_empty() && y.is_empty() {
        return 0.0;
    }
    2.0 * x.intersection(&y).count() as f64 / (x.len() + y.len()) as f64
}

#[test]
fn fixture_links_equal_all_pairs_filter() {
    let questions = common::jsonl("kb/questions.jsonl");
    let symptoms = common::jsonl("kb/symptoms.jsonl");
    let standards = common::jsonl("kb/standards.jsonl");
    let options = common::jsonl("kb/options.jsonl");
    let tools = common::jsonl("kb/tools.jsonl");
    let text = |v: &serde_json::Value| v["Label"].as_str().unwrap().to_owned();
    let id = |v: &serde_json::Value| v["id"].as_str().unwrap().to_owned();

    let mut want = BTreeSet::new();
    for q in &questions {
        for s in &symptoms {
            if dice(&text(q), &text(s)) >= 0.5 {
                want.insert((id(q), id(s)));
            }
        }
    }
    assert_eq!(links("correspondingSymptom"), want);
    assert!(want.contains(&("tool01-q01".to_owned(), "symptom1".to_owned())));

    let polarity: HashMap<String, String> = tools.iter().map(|t| (id(t), t["ScoringPolarity"].as_str().unwrap().to_owned())).collect();
    let question: HashMap<String, &serde_json::Value> = questions.iter().map(|q| (id(q), q)).collect();
    let mut by_question: BTreeMap<String, Vec<&serde_json::Value>> = BTreeMap::new();
    for o in &options {
        by_question.entry(o["question"].as_str().unwrap().to_owned()).or_default().push(o);
    }
    let mut want = BTreeSet::new();
    for (qid, opts) in &by_question {
        let q = question[qid];
        let scores: Vec<f64> = opts.iter().map(|o| o["Score"].as_f64().unwrap()).collect();
        let ascending = polarity[q["tool"].as_str().unwrap()].starts_with("ascending");
        let extreme = if ascending { scores.iter().cloned().fold(f64::MIN, f64::max) } else { scores.iter().cloned().fold(f64::MAX, f64::min) };
        for o in opts.iter().filter(|o| o["Score"].as_f64().unwrap() == extreme) {
            for st in &standards {
                if dice(&text(q), &text(st)) >= 0.5 {
                    want.insert((id(o), id(st)));
                }
            }
        }
    }
    assert_eq!(links("matchStandard"), want);
    assert!(want.iter().any(|(o, st)| o.starts_with("tool01-q05") && st == "standard1"));
}

#[test]
fn fixture_fusion_and_votes() {
    let kb = common::kb();
    let merged: usize = kb.report.merges.iter().map(|m| m.members.len() - 1).sum();
    assert_eq!(merged, (71 - 65) + (25 - 20));
    assert_eq!(kb.report.count(RecordKind::Physician), 65);
    let raw = common::jsonl("kb/physicians.jsonl");
    for m in kb.report.merges.iter().filter(|m| m.kind == RecordKind::Physician) {
        let up: u64 = raw.iter().filter(|p| m.members.contains(&p["id"].as_str().unwrap().to_owned())).map(|p| p["ThumbsUp"].as_u64().unwrap_or(0)).sum();
        assert_eq!(kb.report.vote_seeds[&m.members[0]].0, up);
        for gone in &m.members[1..] {
            assert!(kb.store.dereference(&entity(gone)).is_empty());
        }
    }
}

fn copy_fixtures(dir: &std::path::Path) {
    for e in std::fs::read_dir(common::data_dir()).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.join(e.file_name())).unwrap();
    }
}

#[test]
fn missing_required_field_skips_one_record() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("symptoms.jsonl");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
    let mut rec: serde_json::Value = serde_json::from_str(&lines[64]).unwrap();
    rec.as_object_mut().unwrap().remove("Label");
    lines[64] = rec.to_string();
    std::fs::write(&path, lines.join("\n")).unwrap();
    let (_, _, report) = ingest_all(dir.path(), &IngestConfig::default()).unwrap();
    let missing: Vec<_> = report.violations.iter().filter(|v| v.reason.contains("missing required")).collect();
    assert_eq!(missing.len(), 1);
    assert_eq!((missing[0].record.as_str(), missing[0].line), ("symptom65", 65));
    assert_eq!(report.count(RecordKind::Symptom), 64);
}

#[test]
fn corrupt_line_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let path = dir.path().join("hospitals.jsonl");
    let mut text = std::fs::read_to_string(&path).unwrap();
    text.push_str("{not json\n");
    std::fs::write(&path, text).unwrap();
    match ingest_all(dir.path(), &IngestConfig::default()) {
        Err(IngestError::Record { file, line, .. }) => {
            assert!(file.ends_with("hospitals.jsonl"));
            assert_eq!(line, 26);
        }
        other => panic!("expected a record error, got {:?}", other.map(|r| r.2.counts)),
    }
}

#[test]
fn empty_files_give_an_empty_instance_set() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(common::data_dir().join("ontology.txt"), dir.path().join("ontology.txt")).unwrap();
    for kind in RecordKind::ALL {
        std::fs::write(dir.path().join(kind.file_name()), "").unwrap();
    }
    let (_, store, report) = ingest_all(dir.path(), &IngestConfig::default()).unwrap();
    assert!(report.counts.values().all(|&n| n == 0));
    assert!(report.violations.is_empty());
    assert!(store.distinct_subjects().iter().all(|s| !s.is_instance()));
}

#[test]
fn emitted_instances_are_typed_and_valid() {
    let kb = common::kb();
    assert!(kb.report.violations.is_empty());
    let triples: Vec<_> = kb.store.iter().collect();
    let typing = asdkb::ontology::typing_of(&triples);
    for t in &triples {
        assert!(kb.schema.check_domain_range(t, &typing).unwrap().is_ok(), "{}", t.to_ntriples());
    }
    for s in kb.store.distinct_subjects().into_iter().filter(Iri::is_instance) {
        assert!(typing.contains_key(&s), "{s} has no type");
    }
}
