use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::store::{Iri, Literal, LiteralTag, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("variable ?{0} does not occur in any triple pattern")]
    UnknownVariable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(String),
    Const(Term),
}

impl PatternTerm {
    pub fn var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Const(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub s: PatternTerm,
    pub p: PatternTerm,
    pub o: PatternTerm,
}

impl TriplePattern {
    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.s, &self.p, &self.o]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparator {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparator {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparator::Eq => "=",
            Comparator::Ne => "!=",
            Comparator::Lt => "<",
            Comparator::Le => "<=",
            Comparator::Gt => ">",
            Comparator::Ge => ">=",
        }
    }

    pub fn holds(self, ord: std::cmp::Ordering) -> bool {
        use std::cmp::Ordering::*;
        match self {
            Comparator::Eq => ord == Equal,
            Comparator::Ne => ord != Equal,
            Comparator::Lt => ord == Less,
            Comparator::Le => ord != Greater,
            Comparator::Gt => ord == Greater,
            Comparator::Ge => ord != Less,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    pub var: String,
    pub op: Comparator,
    pub value: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueryAst {
    pub select_vars: Vec<String>,
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<Filter>,
    pub limit: Option<usize>,
}

impl QueryAst {
    /// Checks that patterns are non-empty and every selected or filtered variable is bound by a pattern.
    pub fn validate(&self) -> Result<(), QueryError> {
        if self.patterns.is_empty() {
            return Err(QueryError::Syntax { column: 1, message: "at least one triple pattern is required".into() });
        }
        if self.select_vars.is_empty() {
            return Err(QueryError::Syntax { column: 1, message: "at least one variable must be selected".into() });
        }
        let bound: BTreeSet<&str> = self.patterns.iter().flat_map(|p| p.positions()).filter_map(PatternTerm::var).collect();
        for v in self.select_vars.iter().chain(self.filters.iter().map(|f| &f.var)) {
            if !bound.contains(v.as_str()) {
                return Err(QueryError::UnknownVariable(v.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Const(t) => write!(f, "{}", t.to_ntriples()),
        }
    }
}

impl fmt::Display for QueryAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SELECT")?;
        for v in &self.select_vars {
            write!(f, " ?{v}")?;
        }
        f.write_str(" WHERE {")?;
        for (i, p) in self.patterns.iter().enumerate() {
            if i > 0 {
                f.write_str(" .")?;
            }
            write!(f, " {} {} {}", p.s, p.p, p.o)?;
        }
        for flt in &self.filters {
            write!(f, " FILTER(?{} {} {})", flt.var, flt.op.symbol(), flt.value.to_ntriples())?;
        }
        f.write_str(" }")?;
        if let Some(n) = self.limit {
            write!(f, " LIMIT {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Iri(Iri),
    Lit(Literal),
    Num(Literal),
    Op(Comparator),
    Punct(char),
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

fn syntax(column: usize, message: impl Into<String>) -> QueryError {
    QueryError::Syntax { column: column + 1, message: message.into() }
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>, QueryError> {
        let mut lx = Lexer { chars: src.chars().collect(), pos: 0, _src: src };
        let mut out = Vec::new();
        loop {
            while lx.peek().is_some_and(char::is_whitespace) {
                lx.pos += 1;
            }
            let start = lx.pos;
            let Some(c) = lx.peek() else { break };
            let tok = match c {
                '{' | '}' | '(' | ')' | '.' => {
                    lx.pos += 1;
                    Tok::Punct(c)
                }
                '?' => {
                    lx.pos += 1;
                    let name = lx.take_while(|c| c.is_alphanumeric() || c == '_');
                    if name.is_empty() {
                        return Err(syntax(start, "expected a variable name after `?`"));
                    }
                    Tok::Var(name)
                }
                '<' if lx.looks_like_iri() => Tok::Iri(lx.iri()?),
                '"' => Tok::Lit(lx.literal()?),
                '=' => {
                    lx.pos += 1;
                    Tok::Op(Comparator::Eq)
                }
                '!' => {
                    lx.pos += 1;
                    if lx.peek() != Some('=') {
                        return Err(syntax(start, "expected `!=`"));
                    }
                    lx.pos += 1;
                    Tok::Op(Comparator::Ne)
                }
                '≠' => {
                    lx.pos += 1;
                    Tok::Op(Comparator::Ne)
                }
                '≤' => {
                    lx.pos += 1;
                    Tok::Op(Comparator::Le)
                }
                '≥' => {
                    lx.pos += 1;
                    Tok::Op(Comparator::Ge)
                }
                '<' | '>' => {
                    lx.pos += 1;
                    let eq = lx.peek() == Some('=');
                    if eq {
                        lx.pos += 1;
                    }
                    Tok::Op(match (c, eq) {
                        ('<', false) => Comparator::Lt,
                        ('<', true) => Comparator::Le,
                        ('>', false) => Comparator::Gt,
                        _ => Comparator::Ge,
                    })
                }
                c if c.is_ascii_digit() || c == '-' || c == '+' => Tok::Num(lx.number()?),
                c if c.is_ascii_alphabetic() => Tok::Word(lx.take_while(|c| c.is_ascii_alphanumeric())),
                other => return Err(syntax(start, format!("unexpected character `{other}`"))),
            };
            out.push((start, tok));
        }
        Ok(out)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    /// `<` opens an IRI when a `>` follows before any whitespace.
    fn looks_like_iri(&self) -> bool {
        for &c in &self.chars[self.pos + 1..] {
            if c == '>' {
                return true;
            }
            if c.is_whitespace() || c == '=' {
                return false;
            }
        }
        false
    }

    fn iri(&mut self) -> Result<Iri, QueryError> {
        let start = self.pos;
        self.pos += 1;
        let body = self.take_while(|c| c != '>');
        self.pos += 1;
        Iri::new(body).map_err(|e| syntax(start, e.to_string()))
    }

    fn literal(&mut self) -> Result<Literal, QueryError> {
        let start = self.pos;
        self.pos += 1;
        let mut lex = String::new();
        loop {
            match self.peek() {
                None => return Err(syntax(start, "unterminated string literal")),
                Some('"') => {
                    self.pos += 1;
                    break;
                }
                Some('\\') => {
                    let at = self.pos;
                    self.pos += 1;
                    let c = self.peek().ok_or_else(|| syntax(at, "bad escape"))?;
                    self.pos += 1;
                    lex.push(match c {
                        '"' => '"',
                        '\\' => '\\',
                        'n' => '\n',
                        't' => '\t',
                        'u' => {
                            let hex: String = self.chars.get(self.pos..self.pos + 4).unwrap_or(&[]).iter().collect();
                            self.pos += 4;
                            u32::from_str_radix(&hex, 16)
                                .ok()
                                .filter(|_| hex.len() == 4)
                                .and_then(char::from_u32)
                                .ok_or_else(|| syntax(at, format!("bad escape `\\u{hex}`")))?
                        }
                        other => return Err(syntax(at, format!("bad escape `\\{other}`"))),
                    });
                }
                Some(c) => {
                    lex.push(c);
                    self.pos += 1;
                }
            }
        }
        let tag = match self.peek() {
            Some('@') => {
                self.pos += 1;
                let at = self.pos;
                match self.take_while(|c| c.is_ascii_alphanumeric() || c == '-').as_str() {
                    "zh" => LiteralTag::LangZh,
                    "en" => LiteralTag::LangEn,
                    other => return Err(syntax(at, format!("unsupported language tag `@{other}`"))),
                }
            }
            Some('^') if self.chars.get(self.pos + 1) == Some(&'^') => {
                self.pos += 2;
                let at = self.pos;
                if self.peek() != Some('<') {
                    return Err(syntax(at, "expected a datatype IRI"));
                }
                let dt = self.iri()?;
                match dt.as_str() {
                    vocab::XSD_FLOAT => LiteralTag::TypedFloat,
                    vocab::XSD_INTEGER => LiteralTag::TypedInteger,
                    vocab::XSD_STRING => LiteralTag::Plain,
                    other => return Err(syntax(at, format!("unsupported datatype <{other}>"))),
                }
            }
            _ => LiteralTag::Plain,
        };
        Literal::new(lex, tag).map_err(|e| syntax(start, e.to_string()))
    }

    fn number(&mut self) -> Result<Literal, QueryError> {
        let start = self.pos;
        let mut text = String::new();
        if let Some(sign @ ('-' | '+')) = self.peek() {
            text.push(sign);
            self.pos += 1;
        }
        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut float = false;
        if self.peek() == Some('.') && self.chars.get(self.pos + 1).is_some_and(char::is_ascii_digit) {
            float = true;
            self.pos += 1;
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            float = true;
            text.push('e');
            self.pos += 1;
            if let Some(sign @ ('-' | '+')) = self.peek() {
                text.push(sign);
                self.pos += 1;
            }
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        let tag = if float { LiteralTag::TypedFloat } else { LiteralTag::TypedInteger };
        Literal::new(&text, tag).map_err(|_| syntax(start, format!("malformed number `{text}`")))
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), QueryError> {
        if self.keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.column(), format!("expected `{kw}`")))
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), QueryError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.column(), format!("expected `{c}`")))
        }
    }

    fn term(&mut self) -> Result<PatternTerm, QueryError> {
        let col = self.column();
        match self.next() {
            Some(Tok::Var(v)) => Ok(PatternTerm::Var(v)),
            Some(Tok::Iri(i)) => Ok(PatternTerm::Const(Term::Iri(i))),
            Some(Tok::Lit(l)) | Some(Tok::Num(l)) => Ok(PatternTerm::Const(Term::Literal(l))),
            _ => Err(syntax(col, "expected an IRI, literal or variable")),
        }
    }

    fn filter(&mut self) -> Result<Filter, QueryError> {
        self.expect_keyword("FILTER")?;
        self.expect_punct('(')?;
        let col = self.column();
        let Some(Tok::Var(var)) = self.next() else {
            return Err(syntax(col, "expected a variable in FILTER"));
        };
        let col = self.column();
        let Some(Tok::Op(op)) = self.next() else {
            return Err(syntax(col, "expected a comparison operator"));
        };
        let col = self.column();
        let value = match self.next() {
            Some(Tok::Num(l)) | Some(Tok::Lit(l)) => Term::Literal(l),
            Some(Tok::Iri(i)) => Term::Iri(i),
            _ => return Err(syntax(col, "expected a constant in FILTER")),
        };
        let numeric = value.as_literal().is_some_and(|l| l.tag().is_numeric());
        if !numeric && !matches!(op, Comparator::Eq | Comparator::Ne) {
            return Err(syntax(col, "ordering comparisons need a numeric constant"));
        }
        self.expect_punct(')')?;
        Ok(Filter { var, op, value })
    }
}

pub fn parse_query(text: &str) -> Result<QueryAst, QueryError> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count() };
    p.expect_keyword("SELECT")?;
    let mut select_vars = Vec::new();
    while let Some(Tok::Var(v)) = p.peek() {
        select_vars.push(v.clone());
        p.pos += 1;
    }
    if select_vars.is_empty() {
        return Err(syntax(p.column(), "expected at least one selected variable"));
    }
    p.expect_keyword("WHERE")?;
    p.expect_punct('{')?;
    let mut patterns = Vec::new();
    let mut filters = Vec::new();
    loop {
        match p.peek() {
            Some(Tok::Punct('}')) => {
                p.pos += 1;
                break;
            }
            Some(Tok::Punct('.')) if !patterns.is_empty() || !filters.is_empty() => {
                p.pos += 1;
            }
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("FILTER") => filters.push(p.filter()?),
            None => return Err(syntax(p.column(), "expected `}`")),
            _ => {
                if !filters.is_empty() {
                    return Err(syntax(p.column(), "triple patterns must precede filters"));
                }
                let s = p.term()?;
                let pr = p.term()?;
                let o = p.term()?;
                patterns.push(TriplePattern { s, p: pr, o });
                if !matches!(p.peek(), Some(Tok::Punct('.' | '}')) | Some(Tok::Word(_))) {
                    return Err(syntax(p.column(), "expected `.` or `}` after a triple pattern"));
                }
            }
        }
    }
    if patterns.is_empty() {
        return Err(syntax(p.column(), "at least one triple pattern is required"));
    }
    let mut limit = None;
    if p.keyword("LIMIT") {
        p.pos += 1;
        let col = p.column();
        match p.next() {
            Some(Tok::Num(l)) if l.tag() == LiteralTag::TypedInteger => {
                let n: i64 = l.lexical().parse().expect("validated integer");
                if n <= 0 || l.lexical().starts_with(['+', '-']) {
                    return Err(syntax(col, "LIMIT must be a positive integer"));
                }
                limit = Some(n as usize);
            }
            _ => return Err(syntax(col, "LIMIT must be a positive integer")),
        }
    }
    if p.peek().is_some() {
        return Err(syntax(p.column(), "unexpected trailing input"));
    }
    let ast = QueryAst { select_vars, patterns, filters, limit };
    ast.validate()?;
    Ok(ast)
}
