use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("empty IRI")]
    EmptyIri,
    #[error("IRI `{0}` contains whitespace or a forbidden character")]
    ForbiddenCharacter(String),
    #[error("IRI `{0}` is not absolute (missing scheme)")]
    NotAbsolute(String),
    #[error("literal `{lexical}` is not a valid {expected}")]
    InvalidLexical { lexical: String, expected: &'static str },
}

/// An absolute IRI.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, TermError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(TermError::EmptyIri);
        }
        if value
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\'))
        {
            return Err(TermError::ForbiddenCharacter(value.to_owned()));
        }
        if !has_scheme(value) {
            return Err(TermError::NotAbsolute(value.to_owned()));
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `/` or `#`.
    pub fn local_name(&self) -> &str {
        let s = self.as_str();
        match s.rfind(['/', '#']) {
            Some(i) if i + 1 < s.len() => &s[i + 1..],
            _ => s,
        }
    }

    pub fn is_instance(&self) -> bool {
        self.0.starts_with(vocab::INSTANCE_NS)
    }

    pub fn is_class(&self) -> bool {
        self.0.starts_with(vocab::CLASS_NS)
    }
}

fn has_scheme(s: &str) -> bool {
    let Some(colon) = s.find(':') else { return false };
    let scheme = &s[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Iri {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Iri {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Iri::new(s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiteralTag {
    LangZh,
    LangEn,
    TypedFloat,
    TypedInteger,
    Plain,
}

impl LiteralTag {
    pub fn is_numeric(self) -> bool {
        matches!(self, LiteralTag::TypedFloat | LiteralTag::TypedInteger)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    tag: LiteralTag,
}

impl Literal {
    pub fn new(lexical: impl AsRef<str>, tag: LiteralTag) -> Result<Self, TermError> {
        let lexical = lexical.as_ref();
        match tag {
            LiteralTag::TypedFloat => {
                if !lexical.trim().parse::<f64>().is_ok_and(f64::is_finite) || lexical.trim() != lexical {
                    return Err(TermError::InvalidLexical { lexical: lexical.to_owned(), expected: "float" });
                }
            }
            LiteralTag::TypedInteger => {
                if lexical.parse::<i64>().is_err() {
                    return Err(TermError::InvalidLexical { lexical: lexical.to_owned(), expected: "integer" });
                }
            }
            _ => {}
        }
        Ok(Literal { lexical: Arc::from(lexical), tag })
    }

    pub fn zh(text: impl AsRef<str>) -> Self {
        Literal { lexical: Arc::from(text.as_ref()), tag: LiteralTag::LangZh }
    }

    pub fn en(text: impl AsRef<str>) -> Self {
        Literal { lexical: Arc::from(text.as_ref()), tag: LiteralTag::LangEn }
    }

    pub fn plain(text: impl AsRef<str>) -> Self {
        Literal { lexical: Arc::from(text.as_ref()), tag: LiteralTag::Plain }
    }

    pub fn float(value: f64) -> Result<Self, TermError> {
        if !value.is_finite() {
            return Err(TermError::InvalidLexical { lexical: value.to_string(), expected: "float" });
        }
        let lexical = if value.fract() == 0.0 && value.abs() < 1e15 { format!("{value:.1}") } else { value.to_string() };
        Ok(Literal { lexical: Arc::from(lexical), tag: LiteralTag::TypedFloat })
    }

    pub fn integer(value: i64) -> Self {
        Literal { lexical: Arc::from(value.to_string()), tag: LiteralTag::TypedInteger }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn tag(&self) -> LiteralTag {
        self.tag
    }

    /// Numeric value of typed numeric literals only.
    pub fn as_number(&self) -> Option<f64> {
        if self.tag.is_numeric() {
            self.lexical.parse().ok()
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            Term::Iri(_) => None,
        }
    }

    /// N-Triples serialization of the term.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        write_term(&mut out, self);
        out
    }

    /// Plain text value: the IRI string or the literal's lexical form.
    pub fn text(&self) -> &str {
        match self {
            Term::Iri(iri) => iri.as_str(),
            Term::Literal(lit) => lit.lexical(),
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ntriples())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub s: Iri,
    pub p: Iri,
    pub o: Term,
}

impl Triple {
    pub fn new(s: Iri, p: Iri, o: impl Into<Term>) -> Self {
        Triple { s, p, o: o.into() }
    }

    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        out.push('<');
        out.push_str(self.s.as_str());
        out.push_str("> <");
        out.push_str(self.p.as_str());
        out.push_str("> ");
        write_term(&mut out, &self.o);
        out.push_str(" .");
        out
    }

    /// Canonical dump order: byte order of subject, then predicate, then the serialized object.
    pub fn canonical_cmp(&self, other: &Triple) -> Ordering {
        self.s
            .as_str()
            .cmp(other.s.as_str())
            .then_with(|| self.p.as_str().cmp(other.p.as_str()))
            .then_with(|| self.o.to_ntriples().cmp(&other.o.to_ntriples()))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => {
            out.push('<');
            out.push_str(iri.as_str());
            out.push('>');
        }
        Term::Literal(lit) => {
            out.push('"');
            escape_into(out, lit.lexical());
            out.push('"');
            match lit.tag() {
                LiteralTag::LangZh => out.push_str("@zh"),
                LiteralTag::LangEn => out.push_str("@en"),
                LiteralTag::TypedFloat => {
                    out.push_str("^^<");
                    out.push_str(vocab::XSD_FLOAT);
                    out.push('>');
                }
                LiteralTag::TypedInteger => {
                    out.push_str("^^<");
                    out.push_str(vocab::XSD_INTEGER);
                    out.push('>');
                }
                LiteralTag::Plain => {}
            }
        }
    }
}

fn escape_into(out: &mut String, s: &str) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
}
