#![allow(dead_code)]
pub mod gen;
pub mod oracles;

use std::path::PathBuf;
use std::sync::OnceLock;

use asdkb::ingest::IngestConfig;
use asdkb::KnowledgeBase;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn data_dir() -> PathBuf {
    fixtures().join("kb")
}

pub fn kb() -> &'static KnowledgeBase {
    static KB: OnceLock<KnowledgeBase> = OnceLock::new();
    KB.get_or_init(|| KnowledgeBase::load(&data_dir(), &IngestConfig::default()).expect("fixture knowledge base loads"))
}

pub fn jsonl(path: &str) -> Vec<serde_json::Value> {
    std::fs::read_to_string(fixtures().join(path))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}
