//! Physician recommendation by administrative division with a distance fallback.

mod geo;
mod votes;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::read::{iri, prop, Reader};
use crate::store::{Iri, Pattern, Term, TripleStore};
use crate::vocab;

pub use geo::{haversine_km, GeoError, LatLng, EARTH_RADIUS_KM};
pub use votes::{Direction, Tally, VoteBook, VoteError};

pub const DEFAULT_FALLBACK_K: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecommendError {
    #[error("unknown division {0}")]
    UnknownDivision(String),
    #[error("division {0} has candidates; distance fallback does not apply")]
    HasCandidates(String),
    #[error("no hospitals to search")]
    NoHospitals,
    #[error("k must be at least 1")]
    ZeroK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionLevel {
    Province,
    City,
    District,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Division {
    pub code: String,
    pub iri: Iri,
    pub name: String,
    pub level: DivisionLevel,
    pub parent: Option<String>,
    pub population: Option<i64>,
    pub centroid: LatLng<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hospital {
    pub iri: Iri,
    pub name: String,
    pub address: String,
    pub contact: String,
    pub level: String,
    pub level_rank: i64,
    pub location: LatLng<f64>,
    pub division: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Physician {
    pub iri: Iri,
    pub name: String,
    pub title: String,
    pub title_rank: i64,
    pub specialty: String,
    pub department: String,
    pub work_at: Iri,
}

/// Lookup tables for titles and hospital grades; unknown values rank 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankConfig {
    pub titles: BTreeMap<String, i64>,
    pub levels: BTreeMap<String, i64>,
}

impl Default for RankConfig {
    fn default() -> Self {
        let titles = [("主任医师", 4), ("副主任医师", 3), ("主治医师", 2), ("住院医师", 1)];
        let levels = [("三级甲等", 6), ("三级乙等", 5), ("三级丙等", 4), ("二级甲等", 3), ("二级乙等", 2), ("二级丙等", 1)];
        RankConfig {
            titles: titles.into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
            levels: levels.into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
        }
    }
}

impl RankConfig {
    pub fn title_rank(&self, title: &str) -> i64 {
        self.titles.get(title.trim()).copied().unwrap_or(0)
    }

    pub fn level_rank(&self, level: &str) -> i64 {
        self.levels.get(level.trim()).copied().unwrap_or(0)
    }
}

/// The three ranking keys plus the residual tie-breakers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankKey {
    pub title_rank: i64,
    pub level_rank: i64,
    pub net_votes: i64,
    pub name: String,
    pub iri: Iri,
}

/// Descending on the three keys, ascending on name then IRI.
pub fn compare_keys(a: &RankKey, b: &RankKey) -> Ordering {
    b.title_rank
        .cmp(&a.title_rank)
        .then(b.level_rank.cmp(&a.level_rank))
        .then(b.net_votes.cmp(&a.net_votes))
        .then_with(|| a.name.as_bytes().cmp(b.name.as_bytes()))
        .then_with(|| a.iri.as_str().as_bytes().cmp(b.iri.as_str().as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ranked {
    pub physician: Physician,
    pub hospital: Hospital,
    pub votes: Tally,
    pub key: RankKey,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub division: String,
    pub fallback: bool,
    pub physicians: Vec<Ranked>,
}

#[derive(Debug, Clone, Default)]
pub struct Directory {
    pub divisions: BTreeMap<String, Division>,
    pub hospitals: BTreeMap<Iri, Hospital>,
    pub physicians: BTreeMap<Iri, Physician>,
    children: BTreeMap<String, Vec<String>>,
}

impl Directory {
    pub fn from_store(store: &TripleStore, config: &RankConfig) -> Self {
        let r = Reader::new(store);
        let label = iri(vocab::RDFS_LABEL);
        let ty = iri(vocab::RDF_TYPE);
        let locate = prop("locateAt");
        let geo = prop("GeoCoordinates");
        let text = |s: &Iri, p: &str| r.zh(s, &prop(p)).unwrap_or_default();
        let mut dir = Directory::default();
        for (class, level) in [("Province", DivisionLevel::Province), ("City", DivisionLevel::City), ("District", DivisionLevel::District)] {
            for d in r.instances(class) {
                let Some(centroid) = r.literal(&d, &geo, None).as_deref().and_then(LatLng::parse) else { continue };
                let division = Division {
                    code: d.local_name().to_owned(),
                    name: r.zh(&d, &label).unwrap_or_default(),
                    level,
                    parent: r.iris(&d, &locate).first().map(|p| p.local_name().to_owned()),
                    population: r.number(&d, &prop("Population")).map(|n| n as i64),
                    iri: d,
                    centroid,
                };
                dir.divisions.insert(division.code.clone(), division);
            }
        }
        for d in dir.divisions.values() {
            if let Some(p) = &d.parent {
                dir.children.entry(p.clone()).or_default().push(d.code.clone());
            }
        }
        let hospital_class = Term::Iri(iri(&vocab::class_iri("Hospital")));
        let mut hospitals: BTreeSet<Iri> = BTreeSet::new();
        for t in store.lookup(Pattern { s: None, p: Some(&Term::Iri(ty.clone())), o: Some(&hospital_class) }) {
            hospitals.insert(t.s);
        }
        for h in hospitals {
            let Some(location) = r.literal(&h, &geo, None).as_deref().and_then(LatLng::parse) else { continue };
            let Some(division) = r.iris(&h, &locate).into_iter().map(|d| d.local_name().to_owned()).find(|d| dir.divisions.contains_key(d))
            else {
                continue;
            };
            let level = text(&h, "HospitalLevel");
            let hospital = Hospital {
                name: r.zh(&h, &label).unwrap_or_default(),
                address: text(&h, "Address"),
                contact: r.literal(&h, &prop("ContactDetails"), None).unwrap_or_default(),
                level_rank: config.level_rank(&level),
                level,
                iri: h.clone(),
                location,
                division,
            };
            dir.hospitals.insert(h, hospital);
        }
        for p in r.instances("Physician") {
            let Some(work_at) = r.iris(&p, &prop("workAt")).into_iter().find(|h| dir.hospitals.contains_key(h)) else { continue };
            let title = text(&p, "Title");
            let physician = Physician {
                name: r.zh(&p, &label).unwrap_or_default(),
                title_rank: config.title_rank(&title),
                title,
                specialty: text(&p, "Specialty"),
                department: text(&p, "HospitalDepartment"),
                iri: p.clone(),
                work_at,
            };
            dir.physicians.insert(p, physician);
        }
        dir
    }

    pub fn division(&self, code: &str) -> Result<&Division, RecommendError> {
        self.divisions.get(code).ok_or_else(|| RecommendError::UnknownDivision(code.to_owned()))
    }

    pub fn children(&self, code: &str) -> Vec<&Division> {
        self.children.get(code).into_iter().flatten().filter_map(|c| self.divisions.get(c)).collect()
    }

    /// Resolves the most specific of province, city and district, each given by code or by name.
    pub fn resolve(&self, province: Option<&str>, city: Option<&str>, district: Option<&str>) -> Result<&Division, RecommendError> {
        let mut current: Option<&Division> = None;
        for (want, level) in [(province, DivisionLevel::Province), (city, DivisionLevel::City), (district, DivisionLevel::District)] {
            let Some(want) = want.map(str::trim).filter(|w| !w.is_empty()) else { continue };
            let pool: Vec<&Division> = match current {
                Some(parent) => self.subtree(&parent.code).into_iter().filter_map(|c| self.divisions.get(&c)).collect(),
                None => self.divisions.values().collect(),
            };
            let found = pool
                .into_iter()
                .filter(|d| d.level == level)
                .find(|d| d.code == want || d.name == want)
                .ok_or_else(|| RecommendError::UnknownDivision(want.to_owned()))?;
            current = Some(found);
        }
        current.ok_or_else(|| RecommendError::UnknownDivision(String::new()))
    }

    /// The division and every division below it.
    pub fn subtree(&self, code: &str) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut stack = vec![code.to_owned()];
        while let Some(c) = stack.pop() {
            if out.insert(c.clone()) {
                stack.extend(self.children.get(&c).into_iter().flatten().cloned());
            }
        }
        out
    }

    /// Physicians whose hospital lies in the division's subtree, ordered by IRI.
    pub fn candidates(&self, code: &str) -> Result<Vec<&Physician>, RecommendError> {
        self.division(code)?;
        let area = self.subtree(code);
        Ok(self.physicians.values().filter(|p| area.contains(&self.hospitals[&p.work_at].division)).collect())
    }

    /// The `k` hospitals nearest to the division centroid, ties by IRI.
    pub fn nearest_hospitals(&self, code: &str, k: usize) -> Result<Vec<(&Hospital, f64)>, RecommendError> {
        if k == 0 {
            return Err(RecommendError::ZeroK);
        }
        let centre = self.division(code)?.centroid;
        if self.hospitals.is_empty() {
            return Err(RecommendError::NoHospitals);
        }
        let mut by_distance: Vec<(&Hospital, f64)> = self
            .hospitals
            .values()
            .map(|h| (h, haversine_km(centre, h.location).expect("stored coordinates are in range")))
            .collect();
        by_distance.sort_by(|a, b| a.1.total_cmp(&b.1).then_with(|| a.0.iri.as_str().as_bytes().cmp(b.0.iri.as_str().as_bytes())));
        by_distance.truncate(k);
        Ok(by_distance)
    }

    /// Physicians of the nearest hospitals; only valid when the division has no candidates.
    pub fn expand_by_distance(&self, code: &str, k: usize) -> Result<Vec<&Physician>, RecommendError> {
        if !self.candidates(code)?.is_empty() {
            return Err(RecommendError::HasCandidates(code.to_owned()));
        }
        let near: BTreeSet<&Iri> = self.nearest_hospitals(code, k)?.into_iter().map(|(h, _)| &h.iri).collect();
        Ok(self.physicians.values().filter(|p| near.contains(&p.work_at)).collect())
    }

    pub fn key(&self, p: &Physician, votes: &VoteBook) -> RankKey {
        RankKey {
            title_rank: p.title_rank,
            level_rank: self.hospitals.get(&p.work_at).map_or(0, |h| h.level_rank),
            net_votes: votes.tally(&p.iri).unwrap_or_default().net(),
            name: p.name.clone(),
            iri: p.iri.clone(),
        }
    }

    pub fn rank(&self, physicians: &[&Physician], votes: &VoteBook) -> Vec<Ranked> {
        let mut out: Vec<Ranked> = physicians
            .iter()
            .map(|p| Ranked {
                physician: (*p).clone(),
                hospital: self.hospitals[&p.work_at].clone(),
                votes: votes.tally(&p.iri).unwrap_or_default(),
                key: self.key(p, votes),
            })
            .collect();
        out.sort_by(|a, b| compare_keys(&a.key, &b.key));
        out
    }

    /// Ranked candidates of the division, or of the `k` nearest hospitals when it has none.
    pub fn recommend(&self, code: &str, k: usize, votes: &VoteBook) -> Result<Recommendation, RecommendError> {
        let candidates = self.candidates(code)?;
        let (fallback, list) =
            if candidates.is_empty() { (true, self.expand_by_distance(code, k)?) } else { (false, candidates) };
        Ok(Recommendation { division: code.to_owned(), fallback, physicians: self.rank(&list, votes) })
    }
}
