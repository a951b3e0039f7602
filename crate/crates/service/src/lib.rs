//! HTTP API over a loaded knowledge base.

mod api;
mod page;

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context};
use asdkb::ingest::IngestConfig;
use asdkb::recommend::{VoteBook, DEFAULT_FALLBACK_K};
use asdkb::screening::SessionRegistry;
use asdkb::KnowledgeBase;

pub use api::router;

pub const SESSION_LOG: &str = "sessions.jsonl";
pub const VOTE_LOG: &str = "votes.jsonl";

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub data_dir: PathBuf,
    pub port: u16,
    pub thresholds: (f64, f64),
    pub fallback_k: usize,
    pub pattern_file: Option<PathBuf>,
    /// Where the session and vote logs live; `None` keeps both in memory.
    pub state_dir: Option<PathBuf>,
}

impl ServiceConfig {
    pub fn new(data_dir: impl Into<PathBuf>) -> Self {
        ServiceConfig {
            data_dir: data_dir.into(),
            port: 8080,
            thresholds: (0.5, 0.5),
            fallback_k: DEFAULT_FALLBACK_K,
            pattern_file: None,
            state_dir: None,
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.port == 0 {
            bail!("port must lie in 1..=65535");
        }
        let (a, b) = self.thresholds;
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
            bail!("thresholds must lie in [0, 1]");
        }
        if self.fallback_k == 0 {
            bail!("fallback k must be at least 1");
        }
        Ok(())
    }

    pub fn ingest_config(&self) -> IngestConfig {
        IngestConfig { theta_sym: self.thresholds.0, theta_std: self.thresholds.1 }
    }
}

pub struct AppState {
    pub kb: KnowledgeBase,
    pub sessions: SessionRegistry,
    pub votes: VoteBook,
    pub fallback_k: usize,
}

/// Loads the knowledge base, refusing any ingest violation.
pub fn load_kb(config: &ServiceConfig) -> anyhow::Result<KnowledgeBase> {
    config.validate()?;
    let kb = match &config.pattern_file {
        Some(p) => KnowledgeBase::load_with_patterns(&config.data_dir, p, &config.ingest_config()),
        None => KnowledgeBase::load(&config.data_dir, &config.ingest_config()),
    }
    .with_context(|| format!("loading {}", config.data_dir.display()))?;
    if let Some(v) = kb.report.violations.first() {
        bail!(
            "{} ingest violation(s); first: {} line {} ({}): {}",
            kb.report.violations.len(),
            v.kind.map_or("ontology", |k| k.file_name()),
            v.line,
            v.record,
            v.reason
        );
    }
    Ok(kb)
}

pub fn startup(config: &ServiceConfig) -> anyhow::Result<Arc<AppState>> {
    let kb = load_kb(config)?;
    let seeds = kb.vote_seeds();
    let (sessions, votes) = match &config.state_dir {
        Some(dir) => open_logs(&kb, dir, seeds)?,
        None => (SessionRegistry::in_memory(Arc::clone(&kb.catalog)), VoteBook::new(seeds)),
    };
    Ok(Arc::new(AppState { kb, sessions, votes, fallback_k: config.fallback_k }))
}

fn open_logs(
    kb: &KnowledgeBase,
    dir: &Path,
    seeds: Vec<(asdkb::store::Iri, asdkb::recommend::Tally)>,
) -> anyhow::Result<(SessionRegistry, VoteBook)> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let sessions = SessionRegistry::with_log(Arc::clone(&kb.catalog), &dir.join(SESSION_LOG))?;
    let votes = VoteBook::with_log(seeds, &dir.join(VOTE_LOG))?;
    Ok((sessions, votes))
}
