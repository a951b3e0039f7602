use std::collections::HashMap;

use serde::Serialize;

use super::parser::{Filter, PatternTerm, QueryAst, TriplePattern};
use crate::store::{Pattern, Term, TripleStore};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResultTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl ResultTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Tab-separated rendering with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out = self.header.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Term::to_ntriples).collect::<Vec<_>>().join("\t"));
            out.push('\n');
        }
        out
    }

    /// Values of one column, in row order.
    pub fn column(&self, var: &str) -> Vec<&Term> {
        match self.header.iter().position(|h| h == var) {
            Some(i) => self.rows.iter().map(|r| &r[i]).collect(),
            None => Vec::new(),
        }
    }
}

type Row = Vec<Option<Term>>;

struct Slots<'a> {
    index: HashMap<&'a str, usize>,
}

impl<'a> Slots<'a> {
    fn new(ast: &'a QueryAst) -> Self {
        let mut index = HashMap::new();
        for p in &ast.patterns {
            for v in p.positions().into_iter().filter_map(PatternTerm::var) {
                let next = index.len();
                index.entry(v).or_insert(next);
            }
        }
        Slots { index }
    }

    fn slot(&self, v: &str) -> usize {
        self.index[v]
    }
}

/// Greedy join order: repeatedly take the pattern with the fewest unbound
/// positions, then the fewest matches on its constant positions.
pub fn join_order(ast: &QueryAst, store: &TripleStore) -> Vec<usize> {
    let mut bound: Vec<&str> = Vec::new();
    let mut remaining: Vec<usize> = (0..ast.patterns.len()).collect();
    let mut order = Vec::new();
    let estimates: Vec<usize> = ast.patterns.iter().map(|p| store.count(const_pattern(p))).collect();
    while !remaining.is_empty() {
        let (at, &best) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &i)| {
                let unbound = ast.patterns[i]
                    .positions()
                    .into_iter()
                    .filter(|t| t.var().is_some_and(|v| !bound.contains(&v)))
                    .count();
                (unbound, estimates[i], i)
            })
            .expect("remaining is non-empty");
        remaining.remove(at);
        order.push(best);
        bound.extend(ast.patterns[best].positions().into_iter().filter_map(PatternTerm::var));
    }
    order
}

fn constant(t: &PatternTerm) -> Option<&Term> {
    match t {
        PatternTerm::Const(term) => Some(term),
        PatternTerm::Var(_) => None,
    }
}

fn const_pattern(p: &TriplePattern) -> Pattern<'_> {
    let c = constant;
    Pattern { s: c(&p.s), p: c(&p.p), o: c(&p.o) }
}

pub fn execute(ast: &QueryAst, store: &TripleStore) -> ResultTable {
    let order = join_order(ast, store);
    execute_in_order(ast, store, &order)
}

/// Evaluates with an explicit join order; any permutation yields the same rows.
pub fn execute_in_order(ast: &QueryAst, store: &TripleStore, order: &[usize]) -> ResultTable {
    let slots = Slots::new(ast);
    let mut rows: Vec<Row> = vec![vec![None; slots.index.len()]];
    for &i in order {
        let pattern = &ast.patterns[i];
        let mut next = Vec::new();
        for row in &rows {
            extend_row(pattern, row, &slots, store, &mut next);
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }
    let mut projected: Vec<Vec<Term>> = rows
        .into_iter()
        .filter(|row| ast.filters.iter().all(|f| passes(f, row[slots.slot(&f.var)].as_ref().expect("filter var bound"))))
        .map(|row| ast.select_vars.iter().map(|v| row[slots.slot(v)].clone().expect("select var bound")).collect())
        .collect();
    sort_rows(&mut projected);
    if let Some(n) = ast.limit {
        projected.truncate(n);
    }
    ResultTable { header: ast.select_vars.clone(), rows: projected }
}

fn extend_row(pattern: &TriplePattern, row: &Row, slots: &Slots<'_>, store: &TripleStore, out: &mut Vec<Row>) {
    let resolve = |t: &PatternTerm| -> Option<Term> {
        match t {
            PatternTerm::Const(c) => Some(c.clone()),
            PatternTerm::Var(v) => row[slots.slot(v)].clone(),
        }
    };
    let (s, p, o) = (resolve(&pattern.s), resolve(&pattern.p), resolve(&pattern.o));
    let hits = store.lookup(Pattern { s: s.as_ref(), p: p.as_ref(), o: o.as_ref() });
    'triples: for t in hits {
        let mut new = row.clone();
        let values = [Term::Iri(t.s), Term::Iri(t.p), t.o];
        for (pos, value) in pattern.positions().into_iter().zip(values) {
            if let PatternTerm::Var(v) = pos {
                let slot = &mut new[slots.slot(v)];
                match slot {
                    Some(existing) if *existing != value => continue 'triples,
                    Some(_) => {}
                    None => *slot = Some(value),
                }
            }
        }
        out.push(new);
    }
}

/// Filter semantics: numeric constants compare only against typed numeric
/// literals, any other binding drops the row; other constants test term equality.
pub fn passes(filter: &Filter, value: &Term) -> bool {
    let constant = filter.value.as_literal().and_then(|l| l.as_number());
    match constant {
        Some(c) => match value.as_literal().and_then(|l| l.as_number()) {
            Some(v) => v.partial_cmp(&c).is_some_and(|ord| filter.op.holds(ord)),
            None => false,
        },
        None => {
            let ord = if *value == filter.value { std::cmp::Ordering::Equal } else { std::cmp::Ordering::Less };
            filter.op.holds(ord)
        }
    }
}

/// Deterministic order: binding tuples compared by serialized bytes.
pub fn sort_rows(rows: &mut [Vec<Term>]) {
    rows.sort_by_cached_key(|r| r.iter().map(Term::to_ntriples).collect::<Vec<_>>());
}
