use std::collections::BTreeSet;

use chrono::{DateTime, Utc};

use crate::query::{iri, match_optional, match_pattern, var, FrozenStore, TriplePattern};
use crate::rdf::{vocab, Term};

/// One `ext:EventObject` node with whatever context the store holds for it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EventObjectRow {
    pub event: String,
    pub object: String,
    pub classifier: Option<String>,
    pub event_type: Option<String>,
    pub time: Option<DateTime<Utc>>,
    pub object_type: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EventObjectListing {
    pub rows: Vec<EventObjectRow>,
    /// Relation nodes lacking an `ext:event` or `ext:object` IRI.
    pub skipped: Vec<String>,
}

fn required() -> Vec<TriplePattern> {
    vec![
        TriplePattern::new(var("r"), iri(vocab::RDF_TYPE), iri(vocab::EVENT_OBJECT)),
        TriplePattern::new(var("r"), iri(vocab::EVENT), var("e")),
        TriplePattern::new(var("r"), iri(vocab::OBJECT), var("o")),
    ]
}

fn optional() -> Vec<Vec<TriplePattern>> {
    vec![
        vec![TriplePattern::new(
            var("r"),
            iri(vocab::CLASSIFIER),
            var("classifier"),
        )],
        vec![TriplePattern::new(
            var("e"),
            iri(vocab::EVENT_TYPE),
            var("event_type"),
        )],
        vec![TriplePattern::new(
            var("e"),
            iri(vocab::OBSERVED_AT),
            var("time"),
        )],
        vec![TriplePattern::new(
            var("o"),
            iri(vocab::OBJECT_TYPE),
            var("object_type"),
        )],
    ]
}

/// Every event-object link, with classifier, event type, time and object
/// type filled in when present. Rows are sorted.
pub fn enumerate_event_objects(store: &FrozenStore) -> EventObjectListing {
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for binding in match_optional(store, &required(), &optional()) {
        let (Some(event), Some(object)) = (binding["e"].as_iri(), binding["o"].as_iri()) else {
            continue;
        };
        seen.insert(binding["r"].clone());
        let text = |name: &str| binding.get(name).map(|t| t.lexical().to_string());
        rows.push(EventObjectRow {
            event: event.to_string(),
            object: object.to_string(),
            classifier: text("classifier"),
            event_type: text("event_type"),
            time: binding.get("time").and_then(Term::as_instant),
            object_type: text("object_type"),
        });
    }
    rows.sort();

    let all = TriplePattern::new(var("r"), iri(vocab::RDF_TYPE), iri(vocab::EVENT_OBJECT));
    let skipped: Vec<String> = match_pattern(store, &all)
        .into_iter()
        .map(|b| b["r"].clone())
        .filter(|node| !seen.contains(node))
        .map(|node| node.lexical().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for node in &skipped {
        log::warn!("event-object node {node} has no event or object IRI; skipped");
    }
    EventObjectListing { rows, skipped }
}
