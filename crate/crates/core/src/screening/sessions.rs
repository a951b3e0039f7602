//! Concurrent session registry with an append-only JSONL log.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;
use uuid::Uuid;

use super::{Catalog, ResultExplanation, ScreeningError, ScreeningResult, ScreeningSession};
use crate::store::Iri;

#[derive(Debug, Error)]
pub enum SessionLogError {
    #[error("session log {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("session log {}:{line}: {message}", path.display())]
    Corrupt { path: PathBuf, line: usize, message: String },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum Event {
    Start { id: Uuid, tool: String, at: u64 },
    Answer { id: Uuid, question: String, option: String },
}

struct Log {
    path: PathBuf,
    file: Mutex<File>,
}

impl Log {
    fn append(&self, event: &Event) -> Result<(), SessionLogError> {
        let mut line = serde_json::to_string(event).expect("events serialize");
        line.push('\n');
        let mut f = self.file.lock().unwrap_or_else(|e| e.into_inner());
        f.write_all(line.as_bytes())
            .and_then(|_| f.flush())
            .map_err(|source| SessionLogError::Io { path: self.path.clone(), source })
    }
}

#[derive(Debug, Error)]
pub enum RegistryError {
    #[error(transparent)]
    Screening(#[from] ScreeningError),
    #[error(transparent)]
    Log(#[from] SessionLogError),
}

/// Sessions keyed by id, each behind its own lock.
pub struct SessionRegistry {
    catalog: Arc<Catalog>,
    sessions: RwLock<HashMap<Uuid, Arc<Mutex<ScreeningSession>>>>,
    log: Option<Log>,
}

impl SessionRegistry {
    pub fn in_memory(catalog: Arc<Catalog>) -> Self {
        SessionRegistry { catalog, sessions: RwLock::new(HashMap::new()), log: None }
    }

    /// Replays `path` if it exists, then appends every later change to it.
    pub fn with_log(catalog: Arc<Catalog>, path: &Path) -> Result<Self, SessionLogError> {
        let io = |source| SessionLogError::Io { path: path.to_owned(), source };
        let mut sessions = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |message: String| SessionLogError::Corrupt { path: path.to_owned(), line: i + 1, message };
                let event: Event = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                replay(&catalog, &mut sessions, event).map_err(|e| corrupt(e.to_string()))?;
            }
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        let sessions = sessions.into_iter().map(|(k, v)| (k, Arc::new(Mutex::new(v)))).collect();
        Ok(SessionRegistry { catalog, sessions: RwLock::new(sessions), log: Some(Log { path: path.to_owned(), file: Mutex::new(file) }) })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn len(&self) -> usize {
        self.sessions.read().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn entry(&self, id: Uuid) -> Result<Arc<Mutex<ScreeningSession>>, ScreeningError> {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&id)
            .cloned()
            .ok_or(ScreeningError::UnknownSession(id))
    }

    pub fn start(&self, tool: &Iri) -> Result<ScreeningSession, RegistryError> {
        let session = self.catalog.start_session(tool)?;
        if let Some(log) = &self.log {
            log.append(&Event::Start { id: session.id, tool: tool.as_str().to_owned(), at: session.created_at })?;
        }
        self.sessions.write().unwrap_or_else(|e| e.into_inner()).insert(session.id, Arc::new(Mutex::new(session.clone())));
        Ok(session)
    }

    pub fn get(&self, id: Uuid) -> Result<ScreeningSession, ScreeningError> {
        Ok(self.entry(id)?.lock().unwrap_or_else(|e| e.into_inner()).clone())
    }

    pub fn answer(&self, id: Uuid, question: &Iri, option: &Iri) -> Result<ScreeningSession, RegistryError> {
        let entry = self.entry(id)?;
        let mut session = entry.lock().unwrap_or_else(|e| e.into_inner());
        let mut next = session.clone();
        self.catalog.answer(&mut next, question, option)?;
        if let Some(log) = &self.log {
            log.append(&Event::Answer { id, question: question.as_str().to_owned(), option: option.as_str().to_owned() })?;
        }
        *session = next;
        Ok(session.clone())
    }

    pub fn score(&self, id: Uuid) -> Result<(ScreeningResult, Vec<ResultExplanation>), ScreeningError> {
        let session = self.get(id)?;
        Ok((self.catalog.score(&session)?, self.catalog.explain_result(&session)?))
    }
}

fn replay(catalog: &Catalog, sessions: &mut HashMap<Uuid, ScreeningSession>, event: Event) -> Result<(), ScreeningError> {
    let parse = |s: &str| Iri::new(s).map_err(|_| ScreeningError::UnknownQuestion(Iri::new("urn:invalid").expect("valid")));
    match event {
        Event::Start { id, tool, at } => {
            let tool = parse(&tool)?;
            catalog.tool(&tool)?;
            sessions.insert(id, ScreeningSession { id, tool, answers: Default::default(), created_at: at });
        }
        Event::Answer { id, question, option } => {
            let session = sessions.get_mut(&id).ok_or(ScreeningError::UnknownSession(id))?;
            catalog.answer(session, &parse(&question)?, &parse(&option)?)?;
        }
    }
    Ok(())
}
