//! Graphviz export of an OCED store. Events are boxes labeled with type and
//! time, objects are ellipses labeled with type and id. Edges come from
//! `ext:EventObject` nodes and from object-to-object `ext:` triples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::analyses::enumerate_event_objects;
use crate::model::EntityId;
use crate::query::FrozenStore;
use crate::rdf::{vocab, Term};
use crate::time::format_utc;

fn quote(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Raw entity id for IRIs minted by this crate, the compacted IRI otherwise.
fn short_id(iri: &str) -> String {
    let compact = vocab::compact(iri);
    compact
        .strip_prefix("ex:object_")
        .and_then(|local| EntityId::from_escaped(local).ok())
        .map(|id| id.raw())
        .unwrap_or(compact)
}

#[derive(Default)]
struct Node {
    kind_event: bool,
    kind: Option<String>,
    time: Option<String>,
}

pub fn export_dot(store: &FrozenStore) -> String {
    let mut nodes: BTreeMap<String, Node> = BTreeMap::new();
    for (s, p, o) in store.iter() {
        let Some(subject) = s.as_iri() else { continue };
        match p.lexical() {
            vocab::EVENT_TYPE => {
                let node = nodes.entry(subject.to_string()).or_default();
                node.kind_event = true;
                node.kind.get_or_insert_with(|| o.lexical().to_string());
            }
            vocab::OBSERVED_AT => {
                let node = nodes.entry(subject.to_string()).or_default();
                node.kind_event = true;
                node.time = o
                    .as_instant()
                    .map(|t| format_utc(&t))
                    .or(Some(o.lexical().to_string()));
            }
            vocab::OBJECT_TYPE => {
                let node = nodes.entry(subject.to_string()).or_default();
                node.kind.get_or_insert_with(|| o.lexical().to_string());
            }
            _ => {}
        }
    }
    let ids: BTreeMap<&str, String> = nodes
        .keys()
        .enumerate()
        .map(|(i, iri)| (iri.as_str(), format!("n{i}")))
        .collect();

    let mut edges: BTreeSet<(&str, &str, String)> = BTreeSet::new();
    let listing = enumerate_event_objects(store);
    for row in &listing.rows {
        if let (Some(from), Some(to)) = (ids.get(row.event.as_str()), ids.get(row.object.as_str()))
        {
            edges.insert((from, to, row.classifier.clone().unwrap_or_default()));
        }
    }
    for (s, p, o) in store.iter() {
        let (Some(s), Term::Iri(o)) = (s.as_iri(), o) else {
            continue;
        };
        let Some(name) = p.lexical().strip_prefix(vocab::EXT) else {
            continue;
        };
        let both_objects = [s, o.as_str()]
            .iter()
            .all(|iri| nodes.get(*iri).is_some_and(|n| !n.kind_event));
        if both_objects {
            edges.insert((&ids[s], &ids[o.as_str()], name.to_string()));
        }
    }

    let mut out = String::from("digraph oced {\n  rankdir=LR;\n");
    for (iri, node) in &nodes {
        let kind = node.kind.as_deref().unwrap_or("?");
        let (shape, label) = if node.kind_event {
            (
                "box",
                format!("{kind}\n{}", node.time.as_deref().unwrap_or("")),
            )
        } else {
            ("ellipse", format!("{kind}\n{}", short_id(iri)))
        };
        let _ = writeln!(
            out,
            "  {} [shape={shape}, label={}];",
            ids[iri.as_str()],
            quote(&label)
        );
    }
    for (from, to, label) in &edges {
        if label.is_empty() {
            let _ = writeln!(out, "  {from} -> {to};");
        } else {
            let _ = writeln!(out, "  {from} -> {to} [label={}];", quote(label));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EntityId, OcedEvent, OcedGraph, OcedObject};
    use crate::time::parse_instant;
    use crate::turtle::graph_to_triples;

    #[test]
    fn one_event_one_case() {
        let id = |s: &str| EntityId::new(s).unwrap();
        let mut g = OcedGraph::new();
        let at = parse_instant("2012-01-01T00:00:00Z").unwrap();
        g.add_event(OcedEvent::new(id("e1"), "Queued \"x\"", at).unwrap())
            .unwrap();
        g.add_object(OcedObject::new(id("case_1"), "case").unwrap())
            .unwrap();
        g.relate_event_object(&id("e1"), &id("case_1"), Some("event_case"))
            .unwrap();
        let dot = export_dot(&graph_to_triples(&g).unwrap().freeze());
        assert_eq!(
            dot,
            "digraph oced {\n  rankdir=LR;\n  n0 [shape=box, label=\"Queued \\\"x\\\"\\n2012-01-01T00:00:00.000Z\"];\n  n1 [shape=ellipse, label=\"case\\ncase_1\"];\n  n0 -> n1 [label=\"event_case\"];\n}\n"
        );
    }
}
