//! One line per headline criterion, each timed against its budget.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use asdkb::ingest::{fuse_hospitals, fuse_physicians, fusion::representatives, ingest_all, IngestConfig, RecordKind};
use asdkb::ontology::{load_ontology, typing_of};
use asdkb::qa::Route;
use asdkb::quality::wilson;
use asdkb::query::execute;
use asdkb::recommend::{Physician, Tally, VoteBook};
use asdkb::screening::Polarity;
use asdkb::store::{canonical_dump, parse_ntriples, Iri, Triple, TripleStore};
use common::{gen, oracles};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn wilson_reproduction() -> Outcome {
    let w = wilson(712.0f64, 732, 0.05).map_err(|e| e.to_string())?;
    ensure((w.center - 0.9702).abs() <= 0.0001, || format!("center {:.6}", w.center))?;
    ensure((0.0119..=0.0122).contains(&w.half_width), || format!("half-width {:.6}", w.half_width))?;
    let (lo, hi) = oracles::wilson_bounds(712.0, 732.0, 0.05);
    ensure((w.half_width - (hi - lo) / 2.0).abs() < 1e-9, || "half-width differs from the quadratic-root oracle".into())?;
    Ok(format!("{:.2}% ± {:.2}%", 100.0 * w.center, 100.0 * w.half_width))
}

fn ontology_statistics() -> Outcome {
    let text = std::fs::read_to_string(common::data_dir().join("ontology.txt")).map_err(|e| e.to_string())?;
    let s = load_ontology(&text).map_err(|e| e.to_string())?;
    let got = (s.classes.len(), s.datatype_property_count(), s.object_property_count(), s.hierarchy_depth());
    ensure(got == (32, 25, 16, 4), || format!("got {got:?}"))?;
    Ok(format!("{} classes, {} datatype, {} object properties, depth {}", got.0, got.1, got.2, got.3))
}

fn ingest_integrity() -> Outcome {
    let (schema, store, report) = ingest_all(&common::data_dir(), &IngestConfig::default()).map_err(|e| e.to_string())?;
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(common::data_dir().join("manifest.json")).unwrap()).unwrap();
    for kind in RecordKind::ALL {
        let want = manifest["fused"][kind.name()].as_u64().unwrap() as usize;
        ensure(report.count(kind) == want, || format!("{}: {} != {want}", kind.name(), report.count(kind)))?;
    }
    ensure(report.violations.is_empty(), || format!("{} violations", report.violations.len()))?;
    let triples: Vec<Triple> = store.iter().collect();
    let typing = typing_of(&triples);
    let bad = triples.iter().filter(|t| !schema.check_domain_range(t, &typing).is_ok_and(|v| v.is_ok())).count();
    ensure(bad == 0, || format!("{bad} domain/range violations"))?;
    let instances: Vec<Iri> = store.distinct_subjects().into_iter().filter(Iri::is_instance).collect();
    let expected: usize = report.counts.values().sum();
    ensure(instances.len() == expected, || format!("{} instances, {expected} records", instances.len()))?;
    for i in &instances {
        ensure(!store.dereference(i).is_empty(), || format!("{i} does not dereference"))?;
    }
    Ok(format!("{} instances, {} triples", instances.len(), store.len()))
}

fn rendered(rows: &[Vec<asdkb::store::Term>]) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|t| t.to_ntriples()).collect()).collect();
    out.sort();
    out
}

fn query_oracle() -> Outcome {
    let mut rows = 0;
    for seed in 0..100u64 {
        let mut r = gen::rng(1_000 + seed);
        let store = TripleStore::from_triples(gen::random_triples(&mut r, 1000));
        let all: Vec<Triple> = store.iter().collect();
        for _ in 0..100 {
            let mut ast = gen::random_query(&mut r);
            ast.limit = None;
            let got = rendered(&execute(&ast, &store).rows);
            ensure(got == oracles::nested_loop(&ast, &all), || format!("store {seed}: {ast}"))?;
            rows += got.len();
        }
    }
    Ok(format!("10000 queries, {rows} rows"))
}

fn fusion_oracle() -> Outcome {
    let mut r = gen::rng(2024);
    let (hospitals, htruth) = gen::hospitals(&mut r, 200);
    let hids: Vec<String> = hospitals.iter().map(|h| h.id.clone()).collect();
    let hwant = oracles::pairwise_closure(&hids, |i, j| {
        let (a, b) = (&htruth[i], &htruth[j]);
        (!a.0.is_empty() && a.0 == b.0) || (!a.1.is_empty() && a.1 == b.1)
    });
    let class_of: BTreeMap<&str, usize> =
        hwant.iter().enumerate().flat_map(|(c, ids)| ids.iter().map(move |id| (id.as_str(), c))).collect();
    let (physicians, ptruth) = gen::physicians(&mut r, 100, &hids);
    let pids: Vec<String> = physicians.iter().map(|p| p.id.clone()).collect();
    let pwant = oracles::pairwise_closure(&pids, |i, j| {
        let (a, b) = (&ptruth[i], &ptruth[j]);
        class_of[a.0.as_str()] == class_of[b.0.as_str()] && a.1 == b.1 && a.2 == b.2
    });
    let (mut hs, mut ps) = (hospitals.clone(), physicians.clone());
    for round in 0..=10 {
        if round > 0 {
            hs.shuffle(&mut r);
            ps.shuffle(&mut r);
        }
        let hgot = fuse_hospitals(&hs);
        ensure(hgot == hwant, || format!("hospital partition differs in round {round}"))?;
        let (pgot, dangling) = fuse_physicians(&ps, &representatives(&hgot));
        ensure(dangling.is_empty() && pgot == pwant, || format!("physician partition differs in round {round}"))?;
    }
    Ok(format!("{} hospital and {} physician classes, 10 shuffles", hwant.len(), pwant.len()))
}

fn screening_correctness() -> Outcome {
    let c = &common::kb().catalog;
    let session = |tool: &Iri, answers: &BTreeMap<Iri, Iri>| {
        let mut s = c.start_session(tool).unwrap();
        for (q, o) in answers {
            c.answer(&mut s, q, o).unwrap();
        }
        c.score(&s).unwrap()
    };
    for tool in c.tools.keys() {
        ensure(session(tool, &c.extreme_choices(tool, true).unwrap()).at_risk, || format!("{tool} abnormal extreme not at risk"))?;
        ensure(!session(tool, &c.extreme_choices(tool, false).unwrap()).at_risk, || format!("{tool} normal extreme at risk"))?;
    }
    let mut r = gen::rng(77);
    let tools: Vec<&Iri> = c.tools.keys().collect();
    for _ in 0..1000 {
        let tool = *tools.choose(&mut r).unwrap();
        let t = &c.tools[tool];
        let mut answers: BTreeMap<Iri, Iri> =
            t.questions.iter().map(|q| (q.clone(), c.options_of(q).choose(&mut r).unwrap().iri.clone())).collect();
        let before = session(tool, &answers);
        let sum: f64 = answers.values().map(|o| c.options[o].score).sum();
        ensure(before.total == sum, || format!("{tool}: total {} != sum {sum}", before.total))?;
        let q = t.questions.choose(&mut r).unwrap();
        let now = c.options[&answers[q]].score;
        let riskier: Vec<_> = c
            .options_of(q)
            .into_iter()
            .filter(|o| if t.polarity == Polarity::Ascending { o.score >= now } else { o.score <= now })
            .collect();
        answers.insert(q.clone(), riskier.choose(&mut r).unwrap().iri.clone());
        let after = session(tool, &answers);
        ensure(!before.at_risk || after.at_risk, || format!("{tool}: risk dropped after moving {q} toward risk"))?;
    }
    Ok(format!("{} tools, 1000 perturbations", c.tools.len()))
}

fn ranking() -> Outcome {
    let kb = common::kb();
    let d = &kb.directory;
    let titles = [("主任医师", 4i64), ("副主任医师", 3), ("主治医师", 2), ("住院医师", 1)];
    let level = |l: &str| match l {
        "三级甲等" => 6i64,
        "三级乙等" => 5,
        "三级丙等" => 4,
        "二级甲等" => 3,
        "二级乙等" => 2,
        "二级丙等" => 1,
        _ => 0,
    };
    let mut r = gen::rng(50);
    let hospitals: Vec<&Iri> = d.hospitals.keys().collect();
    let mut ps = Vec::new();
    let mut seeds = BTreeMap::new();
    for i in 0..50 {
        let (title, rank) = *titles.choose(&mut r).unwrap();
        let iri = Iri::new(format!("http://w3id.org/asdkb/instance/rank{i:02}")).unwrap();
        seeds.insert(iri.clone(), Tally { up: r.random_range(0..5), down: r.random_range(0..5) });
        ps.push(Physician {
            iri,
            name: ["王芳", "李静", "张伟"].choose(&mut r).unwrap().to_string(),
            title: title.into(),
            title_rank: rank,
            specialty: String::new(),
            department: String::new(),
            work_at: (*hospitals.choose(&mut r).unwrap()).clone(),
        });
    }
    let book = VoteBook::new(seeds.clone());
    let got: Vec<Iri> = d.rank(&ps.iter().collect::<Vec<_>>(), &book).into_iter().map(|x| x.physician.iri).collect();
    let mut want: Vec<_> = ps
        .iter()
        .map(|p| {
            let t = seeds[&p.iri];
            let title = titles.iter().find(|x| x.0 == p.title).unwrap().1;
            (-title, -level(&d.hospitals[&p.work_at].level), -(t.up as i64 - t.down as i64), p.name.clone().into_bytes(), p.iri.clone())
        })
        .collect();
    want.sort();
    ensure(got == want.into_iter().map(|w| w.4).collect::<Vec<_>>(), || "rank differs from the tuple sort".into())?;

    let empty: Vec<&String> = d.divisions.keys().filter(|c| d.candidates(c).unwrap().is_empty()).collect();
    ensure(!empty.is_empty(), || "no division without candidates".into())?;
    let book = VoteBook::new(kb.vote_seeds());
    for code in &empty {
        let centre = d.divisions[*code].centroid;
        let mut dist: Vec<(f64, &Iri)> = d
            .hospitals
            .values()
            .map(|h| (oracles::great_circle_km((centre.lat, centre.lng), (h.location.lat, h.location.lng)), &h.iri))
            .collect();
        dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(b.1)));
        let want: BTreeSet<&Iri> = dist.iter().take(5).map(|x| x.1).collect();
        let rec = d.recommend(code, 5, &book).map_err(|e| e.to_string())?;
        let hs: BTreeSet<&Iri> = rec.physicians.iter().map(|p| &p.hospital.iri).collect();
        let near: BTreeSet<&Iri> = d.nearest_hospitals(code, 5).unwrap().into_iter().map(|(h, _)| &h.iri).collect();
        ensure(rec.fallback && near == want && hs.is_subset(&want), || format!("{code}: nearest set differs"))?;
    }
    Ok(format!("50 physicians, {} fallback divisions", empty.len()))
}

fn qa_coverage() -> Outcome {
    let kb = common::kb();
    let questions = common::jsonl("eval/coverage_questions.jsonl");
    let answered = questions.iter().filter(|q| kb.qa.answer_question(&kb.store, q["question"].as_str().unwrap()).answered).count();
    ensure(answered >= 16, || format!("{answered}/{}", questions.len()))?;
    for q in ["孤独症都有哪些临床表现？", "哪些干预方法是有效的？"] {
        let res = kb.qa.answer_question(&kb.store, q);
        ensure(res.answered && res.route == Route::Pattern, || format!("{q} routed {:?}", res.route))?;
    }
    Ok(format!("{answered}/{} answered", questions.len()))
}

fn dump_round_trip() -> Outcome {
    let store = &common::kb().store;
    let first = store.to_ntriples();
    let imported = TripleStore::from_triples(parse_ntriples(&first).map_err(|e| e.to_string())?);
    let second = imported.to_ntriples();
    ensure(first == second, || "dumps differ".into())?;
    ensure(first == canonical_dump(store.iter().collect()), || "dump is not canonical".into())?;
    Ok(format!("{} bytes", first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("wilson reproduction", wilson_reproduction, 1),
        ("ontology statistics", ontology_statistics, 1),
        ("ingest integrity", ingest_integrity, 10),
        ("query oracle equivalence", query_oracle, 60),
        ("fusion oracle equivalence", fusion_oracle, 10),
        ("screening correctness", screening_correctness, 10),
        ("recommendation ranking", ranking, 5),
        ("qa coverage", qa_coverage, 5),
        ("dump round-trip", dump_round_trip, 5),
    ];
    common::kb();
    let mut failed = Vec::new();
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if took < Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("{detail}; over the {budget} s budget"))
            }
        });
        match &outcome {
            Ok(detail) => println!("PASS  {name:<28} {:>8.3} s / {budget} s  {detail}", took.as_secs_f64()),
            Err(why) => {
                println!("FAIL  {name:<28} {:>8.3} s / {budget} s  {why}", took.as_secs_f64());
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
