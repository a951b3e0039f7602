//! Line-oriented reader and writer for the N-Triples subset used by dumps.

use thiserror::Error;

use super::term::{Iri, Literal, LiteralTag, TermError, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub kind: SyntaxErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unterminated IRI")]
    UnterminatedIri,
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("bad escape sequence `{0}`")]
    BadEscape(String),
    #[error("unsupported language tag `@{0}`")]
    UnsupportedLanguage(String),
    #[error("unsupported datatype <{0}>")]
    UnsupportedDatatype(String),
    #[error("trailing content after `.`")]
    TrailingContent,
    #[error(transparent)]
    Term(#[from] TermError),
}

pub fn parse_ntriples(text: &str) -> Result<Vec<Triple>, SyntaxError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(t) = parse_line(line, i + 1)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Parses one line; `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str, line_no: usize) -> Result<Option<Triple>, SyntaxError> {
    let mut cur = Cursor { chars: line.char_indices().collect(), pos: 0, line: line_no };
    cur.skip_ws();
    if cur.at_end() || cur.peek() == Some('#') {
        return Ok(None);
    }
    let s = cur.iri()?;
    cur.skip_ws();
    let p = cur.iri()?;
    cur.skip_ws();
    let o = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('"') => Term::Literal(cur.literal()?),
        _ => return Err(cur.err(SyntaxErrorKind::Expected("IRI or literal object"))),
    };
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err(cur.err(SyntaxErrorKind::Expected("`.` ending the triple")));
    }
    cur.pos += 1;
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => Ok(Some(Triple { s, p, o })),
        Some(_) => Err(cur.err(SyntaxErrorKind::TrailingContent)),
    }
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t' | '\r')) {
            self.pos += 1;
        }
    }

    fn err(&self, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError { line: self.line, column: self.pos + 1, kind }
    }

    fn err_at(&self, pos: usize, kind: SyntaxErrorKind) -> SyntaxError {
        SyntaxError { line: self.line, column: pos + 1, kind }
    }

    fn iri(&mut self) -> Result<Iri, SyntaxError> {
        let start = self.pos;
        if self.bump() != Some('<') {
            self.pos = start;
            return Err(self.err(SyntaxErrorKind::Expected("`<` starting an IRI")));
        }
        let mut value = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err_at(start, SyntaxErrorKind::UnterminatedIri)),
                Some('>') => break,
                Some('\\') => value.push(self.escape(true)?),
                Some(c) => value.push(c),
            }
        }
        Iri::new(value).map_err(|e| self.err_at(start, e.into()))
    }

    fn literal(&mut self) -> Result<Literal, SyntaxError> {
        let start = self.pos;
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err_at(start, SyntaxErrorKind::UnterminatedString)),
                Some('"') => break,
                Some('\\') => lexical.push(self.escape(false)?),
                Some(c) => lexical.push(c),
            }
        }
        let tag = match self.peek() {
            Some('@') => {
                self.bump();
                let tag_start = self.pos;
                let mut lang = String::new();
                while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '-') {
                    lang.push(c);
                    self.pos += 1;
                }
                match lang.as_str() {
                    "zh" => LiteralTag::LangZh,
                    "en" => LiteralTag::LangEn,
                    _ => return Err(self.err_at(tag_start, SyntaxErrorKind::UnsupportedLanguage(lang))),
                }
            }
            Some('^') => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.err(SyntaxErrorKind::Expected("`^^` before a datatype")));
                }
                let dt_start = self.pos;
                let dt = self.iri()?;
                match dt.as_str() {
                    vocab::XSD_FLOAT => LiteralTag::TypedFloat,
                    vocab::XSD_INTEGER => LiteralTag::TypedInteger,
                    vocab::XSD_STRING => LiteralTag::Plain,
                    other => {
                        return Err(self.err_at(dt_start, SyntaxErrorKind::UnsupportedDatatype(other.to_owned())))
                    }
                }
            }
            _ => LiteralTag::Plain,
        };
        Literal::new(lexical, tag).map_err(|e| self.err_at(start, e.into()))
    }

    fn escape(&mut self, in_iri: bool) -> Result<char, SyntaxError> {
        let start = self.pos - 1;
        let c = self.bump();
        let simple = match c {
            Some('u') => return self.hex(start, 4),
            Some('U') => return self.hex(start, 8),
            Some(c) if in_iri => Err(c),
            Some('"') => Ok('"'),
            Some('\\') => Ok('\\'),
            Some('n') => Ok('\n'),
            Some('t') => Ok('\t'),
            Some('r') => Ok('\r'),
            Some(c) => Err(c),
            None => return Err(self.err_at(start, SyntaxErrorKind::BadEscape("\\".into()))),
        };
        simple.map_err(|c| self.err_at(start, SyntaxErrorKind::BadEscape(format!("\\{c}"))))
    }

    fn hex(&mut self, start: usize, digits: usize) -> Result<char, SyntaxError> {
        let mut code = 0u32;
        let mut seen = String::new();
        for _ in 0..digits {
            let c = self.bump();
            let Some(d) = c.and_then(|c| c.to_digit(16)) else {
                seen.extend(c);
                return Err(self.err_at(start, SyntaxErrorKind::BadEscape(format!("\\u{seen}"))));
            };
            seen.extend(c);
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.err_at(start, SyntaxErrorKind::BadEscape(format!("\\u{seen}"))))
    }
}

/// Serializes triples in the order given, one per line with a trailing newline.
pub fn serialize_ntriples<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> String {
    let mut out = String::new();
    for t in triples {
        out.push_str(&t.to_ntriples());
        out.push('\n');
    }
    out
}

/// Sorts into canonical order, drops duplicates and serializes.
pub fn canonical_dump(mut triples: Vec<Triple>) -> String {
    triples.sort_by(Triple::canonical_cmp);
    triples.dedup();
    serialize_ntriples(&triples)
}
