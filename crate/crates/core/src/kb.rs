//! Everything loaded from one data directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use crate::ingest::{self, IngestConfig, IngestError, IngestReport};
use crate::ontology::OntologySchema;
use crate::qa::{parse_patterns, LabelIndex, PatternRegistry, QaEngine, QaError};
use crate::recommend::{Directory, RankConfig, Tally};
use crate::screening::Catalog;
use crate::store::{Iri, TripleStore};

pub const PATTERN_FILE: &str = "patterns.jsonl";

#[derive(Debug, Error)]
pub enum KbError {
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Patterns { path: PathBuf, source: QaError },
}

pub struct KnowledgeBase {
    pub schema: OntologySchema,
    pub store: TripleStore,
    pub report: IngestReport,
    pub catalog: Arc<Catalog>,
    pub directory: Directory,
    pub qa: QaEngine,
}

impl KnowledgeBase {
    /// Ingests `data_dir` and compiles the pattern file found there.
    pub fn load(data_dir: &Path, config: &IngestConfig) -> Result<Self, KbError> {
        Self::load_with_patterns(data_dir, &data_dir.join(PATTERN_FILE), config)
    }

    pub fn load_with_patterns(data_dir: &Path, pattern_file: &Path, config: &IngestConfig) -> Result<Self, KbError> {
        let (schema, store, report) = ingest::ingest_all(data_dir, config)?;
        let text = std::fs::read_to_string(pattern_file).map_err(|source| KbError::Io { path: pattern_file.to_owned(), source })?;
        let patterns = parse_patterns(&text).map_err(|source| KbError::Patterns { path: pattern_file.to_owned(), source })?;
        Self::assemble(schema, store, report, patterns).map_err(|source| KbError::Patterns { path: pattern_file.to_owned(), source })
    }

    pub fn assemble(
        schema: OntologySchema,
        store: TripleStore,
        report: IngestReport,
        patterns: Vec<crate::qa::QuestionPattern>,
    ) -> Result<Self, QaError> {
        let labels = LabelIndex::from_store(&store, &schema);
        let registry = PatternRegistry::compile(patterns, &labels)?;
        let catalog = Arc::new(Catalog::from_store(&store));
        let directory = Directory::from_store(&store, &RankConfig::default());
        Ok(KnowledgeBase { schema, store, report, catalog, directory, qa: QaEngine::new(registry, labels) })
    }

    /// Vote seeds keyed by physician IRI; physicians without a seed start at zero.
    pub fn vote_seeds(&self) -> Vec<(Iri, Tally)> {
        self.directory
            .physicians
            .keys()
            .map(|p| {
                let (up, down) = self.report.vote_seeds.get(p.local_name()).copied().unwrap_or((0, 0));
                (p.clone(), Tally { up, down })
            })
            .collect()
    }
}
