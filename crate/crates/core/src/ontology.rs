//! Schema layer: classes, hierarchy and property definitions, plus domain/range checks.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::store::{Iri, Literal, LiteralTag, Term, Triple};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OntologyError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{from} references undeclared class {iri}")]
    Dangling { from: Iri, iri: Iri },
    #[error("class hierarchy cycle through {}", fmt_iris(.0))]
    Cycle(Vec<Iri>),
    #[error("duplicate declaration of {0}")]
    Duplicate(Iri),
    #[error("class {0} lies outside the class namespace")]
    OutsideNamespace(Iri),
    #[error("class {0} lists itself as a parent")]
    SelfParent(Iri),
    #[error("{0} has no domain")]
    NoDomain(Iri),
    #[error("unknown class {0}")]
    UnknownClass(Iri),
    #[error("undeclared predicate {0}")]
    UndeclaredPredicate(Iri),
}

fn fmt_iris(iris: &[Iri]) -> String {
    iris.iter().map(Iri::as_str).collect::<Vec<_>>().join(" -> ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExternalRelation {
    EquivalentClass,
    SubClassOf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDef {
    pub iri: Iri,
    pub label_zh: String,
    pub label_en: String,
    pub comment: Option<String>,
    pub parents: BTreeSet<Iri>,
    pub external_equivalents: BTreeSet<(Iri, ExternalRelation)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    Datatype,
    Object,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Datatype {
    String,
    Float,
    Integer,
}

impl Datatype {
    pub fn name(self) -> &'static str {
        match self {
            Datatype::String => "string",
            Datatype::Float => "float",
            Datatype::Integer => "integer",
        }
    }

    pub fn xsd_iri(self) -> &'static str {
        match self {
            Datatype::String => vocab::XSD_STRING,
            Datatype::Float => vocab::XSD_FLOAT,
            Datatype::Integer => vocab::XSD_INTEGER,
        }
    }

    fn parse(name: &str) -> Option<Self> {
        match name {
            "string" => Some(Datatype::String),
            "float" => Some(Datatype::Float),
            "integer" => Some(Datatype::Integer),
            _ => None,
        }
    }

    /// Whether a literal's lexical form is a valid value of this datatype.
    pub fn accepts(self, lit: &Literal) -> bool {
        match self {
            Datatype::String => !lit.tag().is_numeric(),
            Datatype::Float => lit.lexical().parse::<f64>().is_ok_and(f64::is_finite),
            Datatype::Integer => lit.lexical().parse::<i64>().is_ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyRange {
    Class(Iri),
    Datatype(Datatype),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyDef {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub label_zh: String,
    pub label_en: String,
    pub domains: BTreeSet<Iri>,
    pub range: PropertyRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OntologySchema {
    pub classes: BTreeMap<Iri, ClassDef>,
    pub properties: BTreeMap<Iri, PropertyDef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violation(String),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

/// Types asserted for each subject.
pub type Typing = HashMap<Iri, BTreeSet<Iri>>;

pub fn load_ontology(document: &str) -> Result<OntologySchema, OntologyError> {
    let mut schema = OntologySchema::default();
    for (i, raw) in document.lines().enumerate() {
        let line_no = i + 1;
        let content = strip_comment(raw);
        if content.trim().is_empty() {
            continue;
        }
        let line = Line::split(content, line_no)?;
        match line.keyword {
            "CLASS" => {
                let def = line.class()?;
                if schema.classes.contains_key(&def.iri) {
                    return Err(OntologyError::Duplicate(def.iri));
                }
                schema.classes.insert(def.iri.clone(), def);
            }
            "PROP" => {
                let def = line.property()?;
                if schema.properties.contains_key(&def.iri) {
                    return Err(OntologyError::Duplicate(def.iri));
                }
                schema.properties.insert(def.iri.clone(), def);
            }
            other => return Err(line.error(0, format!("unknown declaration `{other}`"))),
        }
    }
    schema.validate()?;
    Ok(schema)
}

/// Cuts a `#` comment that starts a line or follows whitespace outside an IRI.
fn strip_comment(raw: &str) -> &str {
    let mut in_iri = false;
    let mut prev_ws = true;
    for (i, c) in raw.char_indices() {
        match c {
            '<' => in_iri = true,
            '>' => in_iri = false,
            '#' if !in_iri && prev_ws => return &raw[..i],
            _ => {}
        }
        prev_ws = c.is_whitespace();
    }
    raw
}

struct Line<'a> {
    line: usize,
    keyword: &'a str,
    head: (usize, &'a str),
    fields: Vec<(usize, &'a str, &'a str)>,
}

impl<'a> Line<'a> {
    fn split(content: &'a str, line: usize) -> Result<Self, OntologyError> {
        let mut parts = Vec::new();
        let mut start = 0;
        for (i, c) in content.char_indices() {
            if c == '|' {
                parts.push((start, &content[start..i]));
                start = i + 1;
            }
        }
        parts.push((start, &content[start..]));
        let col = |byte: usize| content[..byte].chars().count() + 1;
        let (head_off, head) = parts[0];
        let head_trim = head.trim_start();
        let head_off = head_off + (head.len() - head_trim.len());
        let head = head_trim.trim_end();
        let (keyword, rest) = head.split_once(char::is_whitespace).unwrap_or((head, ""));
        let rest_trim = rest.trim_start();
        let iri_off = head_off + keyword.len() + (rest.len() - rest_trim.len()) + usize::from(!rest.is_empty());
        let head = (col(iri_off), rest_trim);
        let mut fields = Vec::new();
        for &(off, part) in &parts[1..] {
            let trimmed = part.trim();
            let lead = part.len() - part.trim_start().len();
            let column = col(off + lead);
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(OntologyError::Parse { line, column, message: format!("expected key=value, found `{trimmed}`") });
            };
            fields.push((column, key.trim(), value.trim()));
        }
        Ok(Line { line, keyword, head, fields })
    }

    fn error(&self, column: usize, message: String) -> OntologyError {
        OntologyError::Parse { line: self.line, column: column.max(1), message }
    }

    fn iri(&self, column: usize, text: &str) -> Result<Iri, OntologyError> {
        let inner = text
            .strip_prefix('<')
            .and_then(|t| t.strip_suffix('>'))
            .ok_or_else(|| self.error(column, format!("expected <iri>, found `{text}`")))?;
        Iri::new(inner).map_err(|e| self.error(column, e.to_string()))
    }

    fn iri_list(&self, column: usize, text: &str) -> Result<Vec<Iri>, OntologyError> {
        text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| self.iri(column, s)).collect()
    }

    fn unique_fields(&self) -> Result<BTreeMap<&'a str, (usize, &'a str)>, OntologyError> {
        let mut out = BTreeMap::new();
        for &(col, key, value) in &self.fields {
            if out.insert(key, (col, value)).is_some() {
                return Err(self.error(col, format!("field `{key}` repeated")));
            }
        }
        Ok(out)
    }

    fn label(&self, fields: &BTreeMap<&str, (usize, &str)>, key: &str) -> Result<String, OntologyError> {
        match fields.get(key) {
            Some(&(_, v)) if !v.is_empty() => Ok(v.to_owned()),
            Some(&(col, _)) => Err(self.error(col, format!("empty `{key}` label"))),
            None => Err(self.error(self.head.0, format!("missing `{key}` label"))),
        }
    }

    fn class(&self) -> Result<ClassDef, OntologyError> {
        let iri = self.iri(self.head.0, self.head.1)?;
        let fields = self.unique_fields()?;
        for (key, &(col, _)) in &fields {
            if !matches!(*key, "zh" | "en" | "parents" | "comment" | "equivalentClass" | "externalSubClassOf") {
                return Err(self.error(col, format!("unknown class field `{key}`")));
            }
        }
        let mut parents = BTreeSet::new();
        if let Some(&(col, v)) = fields.get("parents") {
            for p in self.iri_list(col, v)? {
                if !parents.insert(p) {
                    return Err(self.error(col, "duplicate parent".into()));
                }
            }
        }
        let mut external_equivalents = BTreeSet::new();
        for (key, rel) in [("equivalentClass", ExternalRelation::EquivalentClass), ("externalSubClassOf", ExternalRelation::SubClassOf)] {
            if let Some(&(col, v)) = fields.get(key) {
                for e in self.iri_list(col, v)? {
                    external_equivalents.insert((e, rel));
                }
            }
        }
        Ok(ClassDef {
            label_zh: self.label(&fields, "zh")?,
            label_en: self.label(&fields, "en")?,
            comment: fields.get("comment").map(|&(_, v)| v.to_owned()).filter(|v| !v.is_empty()),
            iri,
            parents,
            external_equivalents,
        })
    }

    fn property(&self) -> Result<PropertyDef, OntologyError> {
        let iri = self.iri(self.head.0, self.head.1)?;
        let fields = self.unique_fields()?;
        for (key, &(col, _)) in &fields {
            if !matches!(*key, "zh" | "en" | "kind" | "domain" | "range") {
                return Err(self.error(col, format!("unknown property field `{key}`")));
            }
        }
        let kind = match fields.get("kind") {
            Some((_, "datatype")) => PropertyKind::Datatype,
            Some((_, "object")) => PropertyKind::Object,
            Some(&(col, v)) => return Err(self.error(col, format!("unknown property kind `{v}`"))),
            None => return Err(self.error(self.head.0, "missing `kind`".into())),
        };
        let domains = match fields.get("domain") {
            Some(&(col, v)) => self.iri_list(col, v)?.into_iter().collect(),
            None => BTreeSet::new(),
        };
        let range = match fields.get("range") {
            None => return Err(self.error(self.head.0, "missing `range`".into())),
            Some(&(col, v)) => match kind {
                PropertyKind::Object => PropertyRange::Class(self.iri(col, v)?),
                PropertyKind::Datatype => PropertyRange::Datatype(
                    Datatype::parse(v).ok_or_else(|| self.error(col, format!("unknown datatype `{v}`")))?,
                ),
            },
        };
        Ok(PropertyDef {
            label_zh: self.label(&fields, "zh")?,
            label_en: self.label(&fields, "en")?,
            iri,
            kind,
            domains,
            range,
        })
    }
}

impl OntologySchema {
    pub fn datatype_property_count(&self) -> usize {
        self.properties.values().filter(|p| p.kind == PropertyKind::Datatype).count()
    }

    pub fn object_property_count(&self) -> usize {
        self.properties.values().filter(|p| p.kind == PropertyKind::Object).count()
    }

    fn validate(&self) -> Result<(), OntologyError> {
        for c in self.classes.values() {
            if !c.iri.is_class() {
                return Err(OntologyError::OutsideNamespace(c.iri.clone()));
            }
            if c.parents.contains(&c.iri) {
                return Err(OntologyError::SelfParent(c.iri.clone()));
            }
            for p in &c.parents {
                if !self.classes.contains_key(p) {
                    return Err(OntologyError::Dangling { from: c.iri.clone(), iri: p.clone() });
                }
            }
        }
        for p in self.properties.values() {
            if p.domains.is_empty() {
                return Err(OntologyError::NoDomain(p.iri.clone()));
            }
            let range = match &p.range {
                PropertyRange::Class(c) => Some(c),
                PropertyRange::Datatype(_) => None,
            };
            for c in p.domains.iter().chain(range) {
                if !self.classes.contains_key(c) {
                    return Err(OntologyError::Dangling { from: p.iri.clone(), iri: c.clone() });
                }
            }
        }
        let parents: BTreeMap<&Iri, Vec<&Iri>> =
            self.classes.values().map(|c| (&c.iri, c.parents.iter().collect())).collect();
        if let Some(cycle) = find_cycle(&parents) {
            return Err(OntologyError::Cycle(cycle.into_iter().cloned().collect()));
        }
        Ok(())
    }

    /// Reflexive-transitive closure over parents.
    pub fn subclass_closure(&self, class: &Iri) -> Result<BTreeSet<Iri>, OntologyError> {
        if !self.classes.contains_key(class) {
            return Err(OntologyError::UnknownClass(class.clone()));
        }
        Ok(self.ancestors(class))
    }

    /// Same as `subclass_closure`, treating unknown classes as roots.
    pub fn ancestors(&self, class: &Iri) -> BTreeSet<Iri> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![class.clone()];
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            if let Some(def) = self.classes.get(&c) {
                stack.extend(def.parents.iter().cloned());
            }
        }
        seen
    }

    /// Classes whose closure contains `class`, including `class`.
    pub fn descendants(&self, class: &Iri) -> BTreeSet<Iri> {
        self.classes.keys().filter(|c| self.ancestors(c).contains(class)).cloned().collect()
    }

    pub fn hierarchy_depth(&self) -> usize {
        let mut memo: HashMap<&Iri, usize> = HashMap::new();
        self.classes.keys().map(|c| self.depth_of(c, &mut memo)).max().unwrap_or(0)
    }

    fn depth_of<'a>(&'a self, class: &'a Iri, memo: &mut HashMap<&'a Iri, usize>) -> usize {
        if let Some(&d) = memo.get(class) {
            return d;
        }
        let d = 1 + self.classes[class].parents.iter().map(|p| self.depth_of(p, memo)).max().unwrap_or(0);
        memo.insert(class, d);
        d
    }

    fn typed_as(&self, types: Option<&BTreeSet<Iri>>, targets: &BTreeSet<Iri>) -> bool {
        types.is_some_and(|ts| ts.iter().any(|t| self.ancestors(t).iter().any(|a| targets.contains(a))))
    }

    pub fn check_domain_range(&self, triple: &Triple, typing: &Typing) -> Result<Verdict, OntologyError> {
        if vocab::is_builtin(triple.p.as_str()) {
            return Ok(Verdict::Ok);
        }
        let prop = self.properties.get(&triple.p).ok_or_else(|| OntologyError::UndeclaredPredicate(triple.p.clone()))?;
        if !self.typed_as(typing.get(&triple.s), &prop.domains) {
            return Ok(Verdict::Violation(format!(
                "subject {} is not typed within the domain of {}",
                triple.s,
                prop.iri.local_name()
            )));
        }
        let verdict = match (&prop.range, &triple.o) {
            (PropertyRange::Class(range), Term::Iri(o)) => {
                if self.typed_as(typing.get(o), &BTreeSet::from([range.clone()])) {
                    Verdict::Ok
                } else {
                    Verdict::Violation(format!("object {o} is not an instance of {}", range.local_name()))
                }
            }
            (PropertyRange::Class(range), Term::Literal(_)) => Verdict::Violation(format!(
                "object property {} requires an IRI object of class {}",
                prop.iri.local_name(),
                range.local_name()
            )),
            (PropertyRange::Datatype(dt), Term::Literal(lit)) => {
                if dt.accepts(lit) {
                    Verdict::Ok
                } else {
                    Verdict::Violation(format!("literal `{}` is not a valid {}", lit.lexical(), dt.name()))
                }
            }
            (PropertyRange::Datatype(dt), Term::Iri(_)) => Verdict::Violation(format!(
                "datatype property {} requires a {} literal",
                prop.iri.local_name(),
                dt.name()
            )),
        };
        Ok(verdict)
    }

    /// Back to the line format; `load_ontology` of the result yields an equal schema.
    pub fn serialize(&self) -> String {
        let join = |iris: &mut dyn Iterator<Item = &Iri>| iris.map(|i| format!("<{i}>")).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        for c in self.classes.values() {
            let _ = write!(out, "CLASS <{}> | zh={} | en={} | parents={}", c.iri, c.label_zh, c.label_en, join(&mut c.parents.iter()));
            if let Some(comment) = &c.comment {
                let _ = write!(out, " | comment={comment}");
            }
            for (key, rel) in [("equivalentClass", ExternalRelation::EquivalentClass), ("externalSubClassOf", ExternalRelation::SubClassOf)] {
                let mut it = c.external_equivalents.iter().filter(|(_, r)| *r == rel).map(|(i, _)| i).peekable();
                if it.peek().is_some() {
                    let _ = write!(out, " | {key}={}", join(&mut it));
                }
            }
            out.push('\n');
        }
        for p in self.properties.values() {
            let kind = match p.kind {
                PropertyKind::Datatype => "datatype",
                PropertyKind::Object => "object",
            };
            let range = match &p.range {
                PropertyRange::Class(c) => format!("<{c}>"),
                PropertyRange::Datatype(dt) => dt.name().to_owned(),
            };
            let _ = writeln!(
                out,
                "PROP <{}> | kind={kind} | zh={} | en={} | domain={} | range={range}",
                p.iri,
                p.label_zh,
                p.label_en,
                join(&mut p.domains.iter())
            );
        }
        out
    }

    /// Schema-level triples (types, labels, hierarchy, domains and ranges).
    pub fn to_triples(&self) -> Vec<Triple> {
        let iri = |s: &str| Iri::new(s).expect("vocabulary IRI");
        let (ty, label, comment) = (iri(vocab::RDF_TYPE), iri(vocab::RDFS_LABEL), iri(vocab::RDFS_COMMENT));
        let (sub, eq) = (iri(vocab::RDFS_SUBCLASS_OF), iri(vocab::OWL_EQUIVALENT_CLASS));
        let (domain, range) = (iri(vocab::RDFS_DOMAIN), iri(vocab::RDFS_RANGE));
        let mut out = Vec::new();
        for c in self.classes.values() {
            out.push(Triple::new(c.iri.clone(), ty.clone(), iri(vocab::OWL_CLASS)));
            out.push(Triple::new(c.iri.clone(), label.clone(), Literal::zh(&c.label_zh)));
            out.push(Triple::new(c.iri.clone(), label.clone(), Literal::en(&c.label_en)));
            if let Some(text) = &c.comment {
                out.push(Triple::new(c.iri.clone(), comment.clone(), Literal::en(text)));
            }
            for p in &c.parents {
                out.push(Triple::new(c.iri.clone(), sub.clone(), p.clone()));
            }
            for (e, rel) in &c.external_equivalents {
                let p = match rel {
                    ExternalRelation::EquivalentClass => eq.clone(),
                    ExternalRelation::SubClassOf => sub.clone(),
                };
                out.push(Triple::new(c.iri.clone(), p, e.clone()));
            }
        }
        for p in self.properties.values() {
            let kind = match p.kind {
                PropertyKind::Datatype => vocab::OWL_DATATYPE_PROPERTY,
                PropertyKind::Object => vocab::OWL_OBJECT_PROPERTY,
            };
            out.push(Triple::new(p.iri.clone(), ty.clone(), iri(kind)));
            out.push(Triple::new(p.iri.clone(), label.clone(), Literal::zh(&p.label_zh)));
            out.push(Triple::new(p.iri.clone(), label.clone(), Literal::en(&p.label_en)));
            for d in &p.domains {
                out.push(Triple::new(p.iri.clone(), domain.clone(), d.clone()));
            }
            let r = match &p.range {
                PropertyRange::Class(c) => c.clone(),
                PropertyRange::Datatype(dt) => iri(dt.xsd_iri()),
            };
            out.push(Triple::new(p.iri.clone(), range.clone(), r));
        }
        out
    }

    /// Literal tag a datatype property's values are emitted with.
    pub fn literal_tag(&self, property: &Iri) -> Option<LiteralTag> {
        match self.properties.get(property)?.range {
            PropertyRange::Datatype(Datatype::Float) => Some(LiteralTag::TypedFloat),
            PropertyRange::Datatype(Datatype::Integer) => Some(LiteralTag::TypedInteger),
            PropertyRange::Datatype(Datatype::String) => Some(LiteralTag::Plain),
            PropertyRange::Class(_) => None,
        }
    }
}

/// First cycle found by depth-first search over a parent graph, as a closed path.
pub fn find_cycle<'a, K: Ord>(parents: &BTreeMap<&'a K, Vec<&'a K>>) -> Option<Vec<&'a K>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit<'a, K: Ord>(
        node: &'a K,
        parents: &BTreeMap<&'a K, Vec<&'a K>>,
        marks: &mut BTreeMap<&'a K, Mark>,
        path: &mut Vec<&'a K>,
    ) -> Option<Vec<&'a K>> {
        match marks.get(node) {
            Some(Mark::Done) => return None,
            Some(Mark::Open) => {
                let start = path.iter().position(|n| *n == node).expect("open node is on the path");
                let mut cycle = path[start..].to_vec();
                cycle.push(node);
                return Some(cycle);
            }
            None => {}
        }
        marks.insert(node, Mark::Open);
        path.push(node);
        for &p in parents.get(node).map(Vec::as_slice).unwrap_or(&[]) {
            if let Some(c) = visit(p, parents, marks, path) {
                return Some(c);
            }
        }
        path.pop();
        marks.insert(node, Mark::Done);
        None
    }
    let mut marks = BTreeMap::new();
    for &node in parents.keys() {
        let mut path = Vec::new();
        if let Some(c) = visit(node, parents, &mut marks, &mut path) {
            return Some(c);
        }
    }
    None
}

/// Collects `rdf:type` assertions from triples.
pub fn typing_of<'a>(triples: impl IntoIterator<Item = &'a Triple>) -> Typing {
    let mut typing = Typing::new();
    for t in triples {
        if t.p.as_str() == vocab::RDF_TYPE {
            if let Term::Iri(class) = &t.o {
                typing.entry(t.s.clone()).or_default().insert(class.clone());
            }
        }
    }
    typing
}
