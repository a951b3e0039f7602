//! Record ingest: loading, fusion, link mining and validated triple emission.

pub mod emit;
pub mod fusion;
pub mod linking;
pub mod records;
pub mod text;

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::ontology::{self, OntologyError, OntologySchema, Verdict};
use crate::screening::Polarity;
use crate::store::TripleStore;

pub use fusion::{fuse_hospitals, fuse_physicians, merge_records, normalize, Partition};
pub use linking::{link_corresponding_symptoms, link_match_standard, ScoredOption, TextItem};
pub use records::{RecordKind, SourceRecord};
pub use text::{string_similarity, tfidf_keywords, tokenize, TextError, Tokenizer};

pub const ONTOLOGY_FILE: &str = "ontology.txt";

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{line}: {message}", file.display())]
    Record { file: PathBuf, line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Ontology { path: PathBuf, source: OntologyError },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IngestConfig {
    pub theta_sym: f64,
    pub theta_std: f64,
}

impl Default for IngestConfig {
    fn default() -> Self {
        IngestConfig { theta_sym: 0.5, theta_std: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: Option<RecordKind>,
    pub record: String,
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeGroup {
    pub kind: RecordKind,
    pub members: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LinkCounts {
    pub corresponding_symptom: usize,
    pub match_standard: usize,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IngestReport {
    pub raw_counts: BTreeMap<&'static str, usize>,
    pub counts: BTreeMap<&'static str, usize>,
    pub merges: Vec<MergeGroup>,
    pub links: LinkCounts,
    pub violations: Vec<Violation>,
    /// Seeded thumbs per fused physician id.
    pub vote_seeds: BTreeMap<String, (u64, u64)>,
    pub triples: usize,
}

impl IngestReport {
    pub fn count(&self, kind: RecordKind) -> usize {
        self.counts.get(kind.name()).copied().unwrap_or(0)
    }
}

pub fn load_schema(data_dir: &Path) -> Result<OntologySchema, IngestError> {
    let path = data_dir.join(ONTOLOGY_FILE);
    let text = std::fs::read_to_string(&path).map_err(|source| IngestError::Io { path: path.clone(), source })?;
    ontology::load_ontology(&text).map_err(|source| IngestError::Ontology { path, source })
}

/// Reads every record file under `data_dir` and builds the frozen store.
pub fn ingest_all(data_dir: &Path, config: &IngestConfig) -> Result<(OntologySchema, TripleStore, IngestReport), IngestError> {
    let schema = load_schema(data_dir)?;
    let mut records = BTreeMap::new();
    for kind in RecordKind::ALL {
        records.insert(kind, records::load_kind(data_dir, kind)?);
    }
    let (store, report) = ingest_records(&schema, records, config);
    Ok((schema, store, report))
}

/// Fuses, links and emits in-memory records; the returned store is frozen.
pub fn ingest_records(
    schema: &OntologySchema,
    mut records: BTreeMap<RecordKind, Vec<SourceRecord>>,
    config: &IngestConfig,
) -> (TripleStore, IngestReport) {
    let mut report = IngestReport::default();
    for kind in RecordKind::ALL {
        let list = records.entry(kind).or_default();
        report.raw_counts.insert(kind.name(), list.len());
        let mut seen = HashMap::new();
        list.retain(|r| {
            let missing = r.missing_required();
            if !missing.is_empty() {
                report.violations.push(Violation {
                    kind: Some(kind),
                    record: r.id.clone(),
                    line: r.line,
                    reason: format!("missing required field(s): {}", missing.join(", ")),
                });
                return false;
            }
            if let Some(first) = seen.insert(r.id.clone(), r.line) {
                report.violations.push(Violation {
                    kind: Some(kind),
                    record: r.id.clone(),
                    line: r.line,
                    reason: format!("duplicate id, first seen on line {first}"),
                });
                return false;
            }
            true
        });
    }

    // instance matching
    let hospital_partition = fuse_hospitals(&records[&RecordKind::Hospital]);
    let hospital_reps = fusion::representatives(&hospital_partition);
    let (physician_partition, dangling) = fuse_physicians(&records[&RecordKind::Physician], &hospital_reps);
    for id in dangling {
        let rec = records[&RecordKind::Physician].iter().find(|r| r.id == id).expect("dangling id comes from the input");
        report.violations.push(Violation {
            kind: Some(RecordKind::Physician),
            record: id.clone(),
            line: rec.line,
            reason: format!("workAt refers to unknown hospital `{}`", rec.text("workAt").unwrap_or_default()),
        });
    }
    let mut reps = hospital_reps;
    for (kind, partition) in [(RecordKind::Hospital, &hospital_partition), (RecordKind::Physician, &physician_partition)] {
        let by_id: HashMap<&str, &SourceRecord> = records[&kind].iter().map(|r| (r.id.as_str(), r)).collect();
        let fused: Vec<SourceRecord> = partition
            .iter()
            .map(|class| {
                if class.len() > 1 {
                    report.merges.push(MergeGroup { kind, members: class.clone() });
                }
                let group: Vec<&SourceRecord> = class.iter().map(|id| by_id[id.as_str()]).collect();
                merge_records(&group)
            })
            .collect();
        records.insert(kind, fused);
    }
    reps.extend(fusion::representatives(&physician_partition));
    for p in &records[&RecordKind::Physician] {
        let seed = |f: &str| p.number(f).filter(|n| *n >= 0.0).map_or(0, |n| n as u64);
        report.vote_seeds.insert(p.id.clone(), (seed("ThumbsUp"), seed("ThumbsDown")));
    }

    // link mining
    let question_items: Vec<TextItem> = records[&RecordKind::ScreeningQuestion]
        .iter()
        .map(|q| TextItem::new(&q.id, q.text("Label").unwrap_or_default()))
        .collect();
    let symptom_items: Vec<TextItem> =
        records[&RecordKind::Symptom].iter().map(|s| TextItem::new(&s.id, s.text("Label").unwrap_or_default())).collect();
    let standard_items: Vec<TextItem> = records[&RecordKind::DiagnosticStandard]
        .iter()
        .map(|s| TextItem::new(&s.id, s.text("Label").unwrap_or_default()))
        .collect();
    let polarity: HashMap<&str, Polarity> = records[&RecordKind::ScreeningTool]
        .iter()
        .filter_map(|t| Some((t.id.as_str(), Polarity::parse(&t.text("ScoringPolarity")?)?)))
        .collect();
    let question_of: HashMap<&str, (&str, String)> = records[&RecordKind::ScreeningQuestion]
        .iter()
        .filter_map(|q| {
            let tool = q.fields.get("tool")?.as_str()?;
            Some((q.id.as_str(), (tool, q.text("Label").unwrap_or_default())))
        })
        .collect();
    let scored: Vec<ScoredOption> = records[&RecordKind::Option]
        .iter()
        .filter_map(|o| {
            let qid = o.text("question")?;
            let (tool, text) = question_of.get(qid.as_str())?;
            Some(ScoredOption {
                id: o.id.clone(),
                question: qid,
                question_text: text.clone(),
                score: o.number("Score")?,
                polarity: *polarity.get(tool)?,
            })
        })
        .collect();
    let symptom_links = link_corresponding_symptoms(&question_items, &symptom_items, config.theta_sym);
    let standard_links = link_match_standard(&scored, &standard_items, config.theta_std);
    report.links = LinkCounts { corresponding_symptom: symptom_links.len(), match_standard: standard_links.len() };

    // emission
    let mut emitter = emit::Emitter::new(schema, &records, reps);
    for kind in RecordKind::ALL {
        for rec in &records[&kind] {
            emitter.emit(rec);
        }
    }
    emitter.push_links("correspondingSymptom", &symptom_links);
    emitter.push_links("matchStandard", &standard_links);
    let mut triples = schema.to_triples();
    triples.append(&mut emitter.triples);
    report.violations.append(&mut emitter.violations);

    let typing = ontology::typing_of(&triples);
    let mut store = TripleStore::new();
    for t in triples {
        let verdict = schema
            .check_domain_range(&t, &typing)
            .unwrap_or_else(|e| Verdict::Violation(e.to_string()));
        match verdict {
            Verdict::Ok => {
                store.insert(t).expect("store is not yet frozen");
            }
            Verdict::Violation(reason) => report.violations.push(Violation {
                kind: None,
                record: t.s.local_name().to_owned(),
                line: 0,
                reason: format!("{}: {reason}", t.to_ntriples()),
            }),
        }
    }
    store.freeze();

    for kind in RecordKind::ALL {
        let class = emit::class(emit::base_class(kind));
        let members = schema.descendants(&class);
        let n = store
            .distinct_subjects()
            .iter()
            .filter(|s| s.is_instance() && typing.get(*s).is_some_and(|ts| ts.iter().any(|t| members.contains(t))))
            .count();
        report.counts.insert(kind.name(), n);
    }
    report.triples = store.len();
    (store, report)
}
