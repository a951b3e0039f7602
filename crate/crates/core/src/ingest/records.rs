use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use super::IngestError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    Disease,
    Symptom,
    DiagnosticStandard,
    ScreeningTool,
    ScreeningQuestion,
    Option,
    Physician,
    Hospital,
    Division,
    Intervention,
}

impl RecordKind {
    pub const ALL: [RecordKind; 10] = [
        RecordKind::Disease,
        RecordKind::Symptom,
        RecordKind::DiagnosticStandard,
        RecordKind::ScreeningTool,
        RecordKind::ScreeningQuestion,
        RecordKind::Option,
        RecordKind::Physician,
        RecordKind::Hospital,
        RecordKind::Division,
        RecordKind::Intervention,
    ];

    pub fn file_name(self) -> &'static str {
        match self {
            RecordKind::Disease => "diseases.jsonl",
            RecordKind::Symptom => "symptoms.jsonl",
            RecordKind::DiagnosticStandard => "standards.jsonl",
            RecordKind::ScreeningTool => "tools.jsonl",
            RecordKind::ScreeningQuestion => "questions.jsonl",
            RecordKind::Option => "options.jsonl",
            RecordKind::Physician => "physicians.jsonl",
            RecordKind::Hospital => "hospitals.jsonl",
            RecordKind::Division => "divisions.jsonl",
            RecordKind::Intervention => "interventions.jsonl",
        }
    }

    /// Key used in manifests and reports.
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Disease => "disease",
            RecordKind::Symptom => "symptom",
            RecordKind::DiagnosticStandard => "diagnostic_standard",
            RecordKind::ScreeningTool => "screening_tool",
            RecordKind::ScreeningQuestion => "screening_question",
            RecordKind::Option => "option",
            RecordKind::Physician => "physician",
            RecordKind::Hospital => "hospital",
            RecordKind::Division => "division",
            RecordKind::Intervention => "intervention",
        }
    }

    pub fn required_fields(self) -> &'static [&'static str] {
        match self {
            RecordKind::Disease => &["Label", "SCTID", "ICD10Code"],
            RecordKind::Symptom | RecordKind::DiagnosticStandard | RecordKind::Intervention => &["Label"],
            RecordKind::ScreeningTool => &["Label", "Age", "ScreeningBoundary", "ScoringPolarity"],
            RecordKind::ScreeningQuestion => &["Label", "tool"],
            RecordKind::Option => &["Label", "question", "Score"],
            RecordKind::Physician => &["Name", "Title", "workAt"],
            RecordKind::Hospital => &["Name", "Lat", "Lng", "locateAt"],
            RecordKind::Division => &["Name", "level", "Lat", "Lng"],
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One line of a record file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SourceRecord {
    pub kind: RecordKind,
    pub id: String,
    pub line: usize,
    pub fields: BTreeMap<String, Value>,
}

impl SourceRecord {
    pub fn new(kind: RecordKind, id: impl Into<String>, fields: BTreeMap<String, Value>) -> Self {
        SourceRecord { kind, id: id.into(), line: 0, fields }
    }

    /// Text of a scalar field; numbers are rendered, empty strings count as absent.
    pub fn text(&self, key: &str) -> Option<String> {
        match self.fields.get(key)? {
            Value::String(s) if !s.trim().is_empty() => Some(s.clone()),
            Value::Number(n) => Some(n.to_string()),
            Value::Bool(b) => Some(b.to_string()),
            _ => None,
        }
    }

    pub fn number(&self, key: &str) -> Option<f64> {
        match self.fields.get(key)? {
            Value::Number(n) => n.as_f64(),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    }

    /// Values of a possibly multi-valued field.
    pub fn texts(&self, key: &str) -> Vec<String> {
        match self.fields.get(key) {
            Some(Value::Array(items)) => items
                .iter()
                .filter_map(|v| match v {
                    Value::String(s) if !s.trim().is_empty() => Some(s.clone()),
                    Value::Number(n) => Some(n.to_string()),
                    _ => None,
                })
                .collect(),
            Some(_) => self.text(key).into_iter().collect(),
            None => Vec::new(),
        }
    }

    pub fn missing_required(&self) -> Vec<&'static str> {
        self.kind
            .required_fields()
            .iter()
            .copied()
            .filter(|f| self.texts(f).is_empty())
            .collect()
    }
}

pub fn parse_records(kind: RecordKind, text: &str, file: &Path) -> Result<Vec<SourceRecord>, IngestError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| IngestError::Record { file: file.to_path_buf(), line: i + 1, message };
        let value: Value = serde_json::from_str(line).map_err(|e| bad(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(bad("expected a JSON object".into()));
        };
        let mut fields: BTreeMap<String, Value> = map.into_iter().collect();
        let id = match fields.remove("id") {
            Some(Value::String(s)) if !s.trim().is_empty() => s,
            _ => return Err(bad("record has no string `id`".into())),
        };
        if id.chars().any(|c| !(c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))) {
            return Err(bad(format!("id `{id}` may only use ASCII letters, digits, `-`, `_` and `.`")));
        }
        out.push(SourceRecord { kind, id, line: i + 1, fields });
    }
    Ok(out)
}

pub fn load_kind(data_dir: &Path, kind: RecordKind) -> Result<Vec<SourceRecord>, IngestError> {
    let path: PathBuf = data_dir.join(kind.file_name());
    let text = std::fs::read_to_string(&path).map_err(|source| IngestError::Io { path: path.clone(), source })?;
    parse_records(kind, &text, &path)
}
