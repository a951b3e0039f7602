use std::fmt::Write;

use asdkb::store::{Iri, LiteralTag, Term, Triple, TripleStore};
use asdkb::vocab;
use html_escape::encode_text;

fn label(store: &TripleStore, iri: &Iri, tag: LiteralTag) -> Option<String> {
    let p = Iri::new(vocab::RDFS_LABEL).expect("builtin IRI");
    store.objects(iri, &p).into_iter().find_map(|o| match o {
        Term::Literal(l) if l.tag() == tag => Some(l.lexical().to_owned()),
        _ => None,
    })
}

fn link(store: &TripleStore, iri: &Iri) -> String {
    let text = label(store, iri, LiteralTag::LangZh).unwrap_or_else(|| iri.local_name().to_owned());
    if iri.is_instance() {
        format!("<a href=\"/entity/{}\">{}</a>", encode_text(iri.local_name()), encode_text(&text))
    } else {
        format!("<span title=\"{}\">{}</span>", encode_text(iri.as_str()), encode_text(&text))
    }
}

/// Description page with both labels and every triple of the entity.
pub fn render(store: &TripleStore, iri: &Iri, triples: &[Triple]) -> String {
    let zh = label(store, iri, LiteralTag::LangZh).unwrap_or_else(|| iri.local_name().to_owned());
    let en = label(store, iri, LiteralTag::LangEn);
    let mut out = String::new();
    let _ = write!(out, "<!doctype html>\n<html lang=\"zh\"><head><meta charset=\"utf-8\"><title>{}</title></head><body>\n", encode_text(&zh));
    let _ = write!(out, "<h1>{}</h1>\n", encode_text(&zh));
    if let Some(en) = en {
        let _ = write!(out, "<h2 lang=\"en\">{}</h2>\n", encode_text(&en));
    }
    let _ = write!(out, "<p><code>{}</code></p>\n<table>\n", encode_text(iri.as_str()));
    for t in triples {
        let object = match &t.o {
            Term::Iri(o) => link(store, o),
            Term::Literal(l) => encode_text(l.lexical()).into_owned(),
        };
        let _ = write!(out, "<tr><th>{}</th><td>{}</td></tr>\n", link(store, &t.p), object);
    }
    out.push_str("</table>\n</body></html>\n");
    out
}
