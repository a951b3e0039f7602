//! Thumbs counters with an append-only JSONL log.

use std::collections::{BTreeMap, HashMap};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::store::Iri;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn parse(text: &str) -> Option<Self> {
        match text.trim() {
            "up" => Some(Direction::Up),
            "down" => Some(Direction::Down),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Tally {
    pub up: u64,
    pub down: u64,
}

impl Tally {
    pub fn net(&self) -> i64 {
        self.up as i64 - self.down as i64
    }
}

#[derive(Debug, Error)]
pub enum VoteError {
    #[error("unknown physician {0}")]
    UnknownPhysician(String),
    #[error("vote log {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("vote log {}:{line}: {message}", path.display())]
    Corrupt { path: PathBuf, line: usize, message: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    physician: Iri,
    direction: Direction,
}

#[derive(Default)]
struct Counter {
    up: AtomicU64,
    down: AtomicU64,
}

impl Counter {
    fn bump(&self, d: Direction) -> Tally {
        match d {
            Direction::Up => self.up.fetch_add(1, Ordering::SeqCst),
            Direction::Down => self.down.fetch_add(1, Ordering::SeqCst),
        };
        self.tally()
    }

    fn tally(&self) -> Tally {
        Tally { up: self.up.load(Ordering::SeqCst), down: self.down.load(Ordering::SeqCst) }
    }
}

pub struct VoteBook {
    counters: HashMap<Iri, Counter>,
    log: Option<(PathBuf, Mutex<File>)>,
}

impl VoteBook {
    /// Counters for exactly the given physicians, starting at their seeds.
    pub fn new(seeds: impl IntoIterator<Item = (Iri, Tally)>) -> Self {
        let counters = seeds
            .into_iter()
            .map(|(iri, t)| (iri, Counter { up: AtomicU64::new(t.up), down: AtomicU64::new(t.down) }))
            .collect();
        VoteBook { counters, log: None }
    }

    /// Replays `path` on top of the seeds, then appends later votes to it.
    pub fn with_log(seeds: impl IntoIterator<Item = (Iri, Tally)>, path: &Path) -> Result<Self, VoteError> {
        let io = |source| VoteError::Io { path: path.to_owned(), source };
        let mut book = VoteBook::new(seeds);
        if path.exists() {
            let reader = BufReader::new(File::open(path).map_err(io)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |message: String| VoteError::Corrupt { path: path.to_owned(), line: i + 1, message };
                let entry: Entry = serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                let counter = book.counters.get(&entry.physician).ok_or_else(|| corrupt(format!("unknown physician {}", entry.physician)))?;
                counter.bump(entry.direction);
            }
        }
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(io)?;
        }
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        book.log = Some((path.to_owned(), Mutex::new(file)));
        Ok(book)
    }

    pub fn tally(&self, physician: &Iri) -> Option<Tally> {
        self.counters.get(physician).map(Counter::tally)
    }

    pub fn vote(&self, physician: &Iri, direction: Direction) -> Result<Tally, VoteError> {
        let counter = self.counters.get(physician).ok_or_else(|| VoteError::UnknownPhysician(physician.to_string()))?;
        let Some((path, file)) = &self.log else { return Ok(counter.bump(direction)) };
        let mut line = serde_json::to_string(&Entry { physician: physician.clone(), direction }).expect("entries serialize");
        line.push('\n');
        let mut f = file.lock().unwrap_or_else(|e| e.into_inner());
        f.write_all(line.as_bytes()).and_then(|_| f.flush()).map_err(|source| VoteError::Io { path: path.clone(), source })?;
        Ok(counter.bump(direction))
    }

    pub fn snapshot(&self) -> BTreeMap<Iri, Tally> {
        self.counters.iter().map(|(k, c)| (k.clone(), c.tally())).collect()
    }
}
