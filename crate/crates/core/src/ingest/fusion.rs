//! Instance matching for hospitals and physicians.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::Value;

use super::records::SourceRecord;

/// Trim, fold full-width forms to ASCII, map the ideographic space, lowercase ASCII.
pub fn normalize(value: &str) -> String {
    value
        .trim()
        .chars()
        .map(|c| match c {
            '\u{3000}' => ' ',
            '\u{FF01}'..='\u{FF5E}' => char::from_u32(c as u32 - 0xFEE0).expect("maps into ASCII"),
            c => c,
        })
        .collect::<String>()
        .trim()
        .to_ascii_lowercase()
}

pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }

    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.parent.len() {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}

/// Equivalence classes of record ids: each class sorted, classes ordered by their smallest id.
pub type Partition = Vec<Vec<String>>;

fn partition_by_keys(ids: &[&str], keys: &[Vec<String>]) -> Partition {
    let mut uf = UnionFind::new(ids.len());
    let mut first: HashMap<&str, usize> = HashMap::new();
    for (i, ks) in keys.iter().enumerate() {
        for k in ks {
            match first.get(k.as_str()) {
                Some(&j) => uf.union(i, j),
                None => {
                    first.insert(k, i);
                }
            }
        }
    }
    let mut classes: Partition = uf
        .groups()
        .into_iter()
        .map(|g| {
            let mut ids: Vec<String> = g.into_iter().map(|i| ids[i].to_owned()).collect();
            ids.sort();
            ids
        })
        .collect();
    classes.sort();
    classes
}

/// Hospitals sharing a normalized, non-empty Address or ContactDetails are equivalent.
pub fn fuse_hospitals(records: &[SourceRecord]) -> Partition {
    let ids: Vec<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let keys: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut ks = Vec::new();
            for (tag, field) in [("a", "Address"), ("c", "ContactDetails")] {
                if let Some(v) = r.text(field).map(|v| normalize(&v)).filter(|v| !v.is_empty()) {
                    ks.push(format!("{tag}\u{0}{v}"));
                }
            }
            ks
        })
        .collect();
    partition_by_keys(&ids, &keys)
}

/// Maps every record id to the smallest id of its class.
pub fn representatives(partition: &Partition) -> HashMap<String, String> {
    let mut out = HashMap::new();
    for class in partition {
        for id in class {
            out.insert(id.clone(), class[0].clone());
        }
    }
    out
}

/// Physicians are equivalent when their fused hospitals, names and titles coincide.
/// Records whose `workAt` does not resolve are returned separately.
pub fn fuse_physicians(records: &[SourceRecord], hospital_rep: &HashMap<String, String>) -> (Partition, Vec<String>) {
    let mut dangling = Vec::new();
    let mut ids = Vec::new();
    let mut keys = Vec::new();
    for r in records {
        let Some(rep) = r.text("workAt").and_then(|h| hospital_rep.get(&h)) else {
            dangling.push(r.id.clone());
            continue;
        };
        let name = normalize(&r.text("Name").unwrap_or_default());
        let title = normalize(&r.text("Title").unwrap_or_default());
        ids.push(r.id.as_str());
        keys.push(vec![format!("{rep}\u{0}{name}\u{0}{title}")]);
    }
    dangling.sort();
    (partition_by_keys(&ids, &keys), dangling)
}

/// Fields summed rather than merged when records fuse.
pub const SUMMED_FIELDS: &[&str] = &["ThumbsUp", "ThumbsDown"];

/// Merges a class into one record under the smallest id: scalars keep the longest
/// non-empty rendering (ties to the smaller), arrays take the union, counters add up.
pub fn merge_records(group: &[&SourceRecord]) -> SourceRecord {
    let mut sorted: Vec<&SourceRecord> = group.to_vec();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let head = sorted[0];
    let keys: BTreeSet<&String> = sorted.iter().flat_map(|r| r.fields.keys()).collect();
    let mut fields = BTreeMap::new();
    for key in keys {
        let values: Vec<&Value> = sorted.iter().filter_map(|r| r.fields.get(key)).collect();
        let merged = if SUMMED_FIELDS.contains(&key.as_str()) {
            let total: i64 = values.iter().filter_map(|v| v.as_i64()).sum();
            Value::from(total)
        } else if values.iter().any(|v| v.is_array()) {
            let mut seen = BTreeSet::new();
            let mut items = Vec::new();
            for v in values {
                let list = match v {
                    Value::Array(a) => a.clone(),
                    other => vec![(*other).clone()],
                };
                for item in list {
                    if seen.insert(item.to_string()) {
                        items.push(item);
                    }
                }
            }
            items.sort_by_key(|a| a.to_string());
            Value::Array(items)
        } else {
            values
                .into_iter()
                .min_by(|a, b| {
                    let (ra, rb) = (render(a), render(b));
                    rb.chars().count().cmp(&ra.chars().count()).then_with(|| ra.cmp(&rb))
                })
                .cloned()
                .unwrap_or(Value::Null)
        };
        fields.insert(key.clone(), merged);
    }
    SourceRecord { kind: head.kind, id: head.id.clone(), line: head.line, fields }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.trim().to_owned(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
