use std::path::PathBuf;

use asdkb::ingest::{ingest_all, IngestConfig, RecordKind};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/kb")
}

fn manifest() -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(data_dir().join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn fixture_counts_match_manifest() {
    let (schema, store, report) = ingest_all(&data_dir(), &IngestConfig::default()).unwrap();
    for v in &report.violations {
        eprintln!("{v:?}");
    }
    assert!(report.violations.is_empty());
    let m = manifest();
    for kind in RecordKind::ALL {
        assert_eq!(report.raw_counts[kind.name()] as u64, m["raw"][kind.name()].as_u64().unwrap(), "{}", kind.name());
        assert_eq!(report.count(kind) as u64, m["fused"][kind.name()].as_u64().unwrap(), "{}", kind.name());
    }
    assert_eq!(schema.classes.len(), 32);
    assert_eq!(schema.datatype_property_count(), 25);
    assert_eq!(schema.object_property_count(), 16);
    assert!(store.is_frozen());
    eprintln!("links {:?}, triples {}", report.links, report.triples);
}
