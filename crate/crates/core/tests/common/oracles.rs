//! Reference implementations the library is checked against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use asdkb::query::{PatternTerm, QueryAst};
use asdkb::store::{Term, Triple};

/// Every combination of one triple per pattern, kept when variables agree and filters pass.
/// Each pattern's candidates come from a linear scan on its constant positions.
pub fn nested_loop(ast: &QueryAst, triples: &[Triple]) -> Vec<Vec<String>> {
    let mut vars: Vec<&str> = Vec::new();
    for p in &ast.patterns {
        for pos in [&p.s, &p.p, &p.o] {
            if let PatternTerm::Var(v) = pos {
                if !vars.contains(&v.as_str()) {
                    vars.push(v);
                }
            }
        }
    }
    let index = |v: &str| vars.iter().position(|x| *x == v).expect("variable is bound by a pattern");
    let rows: Vec<[Term; 3]> = triples.iter().map(|t| [Term::Iri(t.s.clone()), Term::Iri(t.p.clone()), t.o.clone()]).collect();
    let shapes: Vec<[Result<usize, &Term>; 3]> = ast
        .patterns
        .iter()
        .map(|p| {
            [&p.s, &p.p, &p.o].map(|pos| match pos {
                PatternTerm::Var(v) => Ok(index(v)),
                PatternTerm::Const(c) => Err(c),
            })
        })
        .collect();
    let candidates: Vec<Vec<&[Term; 3]>> = shapes
        .iter()
        .map(|shape| rows.iter().filter(|row| (0..3).all(|i| shape[i].map_or_else(|c| *c == row[i], |_| true))).collect())
        .collect();

    fn num(t: &Term) -> Option<f64> {
        t.as_literal().and_then(|l| l.as_number())
    }
    fn keep(f: &asdkb::query::Filter, v: &Term) -> bool {
        match (num(&f.value), num(v)) {
            (Some(c), Some(x)) => match f.op.symbol() {
                "=" => x == c,
                "!=" => x != c,
                "<" => x < c,
                "<=" => x <= c,
                ">" => x > c,
                ">=" => x >= c,
                _ => unreachable!(),
            },
            (Some(_), None) => false,
            (None, _) => match f.op.symbol() {
                "=" => *v == f.value,
                "!=" => *v != f.value,
                _ => unreachable!("ordering filters need numbers"),
            },
        }
    }
    struct Ctx<'a> {
        ast: &'a QueryAst,
        shapes: &'a [[Result<usize, &'a Term>; 3]],
        candidates: &'a [Vec<&'a [Term; 3]>],
        filters: Vec<usize>,
        select: Vec<usize>,
        out: Vec<Vec<String>>,
    }
    fn go<'a>(cx: &mut Ctx<'a>, i: usize, env: &mut Vec<Option<&'a Term>>) {
        if i == cx.shapes.len() {
            if cx.ast.filters.iter().zip(&cx.filters).all(|(f, s)| keep(f, env[*s].unwrap())) {
                cx.out.push(cx.select.iter().map(|s| env[*s].unwrap().to_ntriples()).collect());
            }
            return;
        }
        for row in cx.candidates[i].iter().copied() {
            let mut added = Vec::new();
            let mut ok = true;
            for (pos, value) in cx.shapes[i].iter().zip(row.iter()) {
                if let Ok(s) = pos {
                    match env[*s] {
                        Some(bound) => ok &= bound == value,
                        None => {
                            env[*s] = Some(value);
                            added.push(*s);
                        }
                    }
                }
                if !ok {
                    break;
                }
            }
            if ok {
                go(cx, i + 1, env);
            }
            for s in added {
                env[s] = None;
            }
        }
    }
    let mut cx = Ctx {
        ast,
        shapes: &shapes,
        candidates: &candidates,
        filters: ast.filters.iter().map(|f| index(&f.var)).collect(),
        select: ast.select_vars.iter().map(|v| index(v)).collect(),
        out: Vec::new(),
    };
    go(&mut cx, 0, &mut vec![None; vars.len()]);
    cx.out.sort();
    cx.out
}

/// Connected components of the pairwise relation, by repeated merging until nothing changes.
pub fn pairwise_closure<F: Fn(usize, usize) -> bool>(ids: &[String], related: F) -> Vec<Vec<String>> {
    let n = ids.len();
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            reach[i][j] = i == j || related(i, j) || related(j, i);
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut classes: BTreeSet<Vec<String>> = BTreeSet::new();
    for i in 0..n {
        let mut c: Vec<String> = (0..n).filter(|&j| reach[i][j]).map(|j| ids[j].clone()).collect();
        c.sort();
        classes.insert(c);
    }
    classes.into_iter().collect()
}

/// Central angle from the cross and dot products of unit vectors.
pub fn great_circle_km(a: (f64, f64), b: (f64, f64)) -> f64 {
    let v = |(lat, lng): (f64, f64)| {
        let (phi, lambda) = (lat.to_radians(), lng.to_radians());
        [phi.cos() * lambda.cos(), phi.cos() * lambda.sin(), phi.sin()]
    };
    let (p, q) = (v(a), v(b));
    let cross = [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    let norm = (cross[0].powi(2) + cross[1].powi(2) + cross[2].powi(2)).sqrt();
    let dot = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    6371.0 * norm.atan2(dot)
}

/// Wilson bounds from the closed-form quadratic roots, z from statrs.
pub fn wilson_bounds(successes: f64, trials: f64, alpha: f64) -> (f64, f64) {
    use statrs::distribution::{ContinuousCDF, Normal};
    let z = Normal::new(0.0, 1.0).unwrap().inverse_cdf(1.0 - alpha / 2.0);
    let p = successes / trials;
    let a = 2.0 * trials * p + z * z;
    let b = z * (z * z + 4.0 * trials * p * (1.0 - p)).sqrt();
    let c = 2.0 * (trials + z * z);
    ((a - b) / c, (a + b) / c)
}

/// tf·idf straight from the definition over 1-based documents.
pub fn tfidf(corpus: &[Vec<String>], doc: usize, term: &str) -> f64 {
    let d = &corpus[doc - 1];
    let tf = d.iter().filter(|t| *t == term).count() as f64 / d.len() as f64;
    let df = corpus.iter().filter(|d| d.contains(&term.to_owned())).count() as f64;
    tf * (corpus.len() as f64 / df).ln()
}
