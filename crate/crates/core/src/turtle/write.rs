use std::fmt::Write;

use crate::query::TripleStore;
use crate::rdf::{escape_string, vocab, Term};

/// Deterministic Turtle: the five prefixes in fixed order, then triples
/// sorted by (subject, predicate, object), grouped per subject with `;` and
/// per predicate with `,`.
pub fn write_turtle(store: &TripleStore) -> String {
    let mut out = String::new();
    for (prefix, ns) in vocab::PREFIXES {
        let _ = writeln!(out, "@prefix {prefix}: <{ns}> .");
    }

    let triples = store.to_sorted_triples();
    let mut i = 0;
    while i < triples.len() {
        let subject = &triples[i].subject;
        out.push('\n');
        out.push_str(&render(subject));
        let mut first_predicate = true;
        while i < triples.len() && &triples[i].subject == subject {
            let predicate = &triples[i].predicate;
            if !first_predicate {
                out.push_str(" ;\n   ");
            }
            first_predicate = false;
            out.push(' ');
            out.push_str(&render_predicate(predicate));
            let mut first_object = true;
            while i < triples.len()
                && &triples[i].subject == subject
                && &triples[i].predicate == predicate
            {
                out.push_str(if first_object { " " } else { ", " });
                first_object = false;
                out.push_str(&render(&triples[i].object));
                i += 1;
            }
        }
        out.push_str(" .\n");
    }
    out
}

fn render_predicate(term: &Term) -> String {
    match term {
        Term::Iri(iri) if iri == vocab::RDF_TYPE => "a".to_string(),
        other => render(other),
    }
}

fn render_iri(iri: &str) -> String {
    let compact = vocab::compact(iri);
    if compact != iri {
        return compact;
    }
    let mut out = String::with_capacity(iri.len() + 2);
    out.push('<');
    for c in iri.chars() {
        if c <= ' ' || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') {
            let _ = write!(out, "\\u{:04X}", c as u32);
        } else {
            out.push(c);
        }
    }
    out.push('>');
    out
}

fn render(term: &Term) -> String {
    match term {
        Term::Iri(iri) => render_iri(iri),
        Term::PlainLiteral(s) => format!("\"{}\"", escape_string(s)),
        Term::LangLiteral { lexical, lang } => format!("\"{}\"@{lang}", escape_string(lexical)),
        Term::TypedLiteral { lexical, datatype } => {
            format!("\"{}\"^^{}", escape_string(lexical), render_iri(datatype))
        }
    }
}
