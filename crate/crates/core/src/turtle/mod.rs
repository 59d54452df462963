//! Turtle output for OCED graphs and a reader for the Turtle subset this
//! crate writes (plus common hand-written forms).
//!
//! Each event-object relation is emitted twice: as an `ext:EventObject`
//! node carrying `ext:event`, `ext:object` and `ext:classifier`, and as a
//! direct `ext:<qualifier>` triple from the event to the object. The direct
//! form is what `?event ext:event_case ?case` style patterns match.

mod parse;
mod write;

pub use parse::{parse_turtle, parse_turtle_triples};
pub use write::write_turtle;

use crate::error::{Error, Result};
use crate::model::{is_escaped_local, EntityId, OcedGraph};
use crate::query::TripleStore;
use crate::rdf::{vocab, Term, Triple};
use crate::time::format_utc;
use crate::xes::AttributeValue;

pub fn attribute_literal(value: &AttributeValue) -> Term {
    match value {
        AttributeValue::String(s) | AttributeValue::Id(s) => Term::plain(s.clone()),
        AttributeValue::Date(d) => Term::typed(
            format_utc(&d.with_timezone(&chrono::Utc)),
            vocab::XSD_DATE_TIME,
        ),
        AttributeValue::Int(i) => Term::typed(i.to_string(), vocab::XSD_INTEGER),
        AttributeValue::Float(x) => {
            let lexical = if x.is_nan() {
                "NaN".to_string()
            } else if x.is_infinite() {
                if *x > 0.0 { "INF" } else { "-INF" }.to_string()
            } else {
                format!("{x:?}")
            };
            Term::typed(lexical, vocab::XSD_DOUBLE)
        }
        AttributeValue::Boolean(b) => Term::typed(b.to_string(), vocab::XSD_BOOLEAN),
    }
}

fn checked(id: &EntityId) -> Result<()> {
    if is_escaped_local(id.as_str()) {
        Ok(())
    } else {
        Err(Error::Serialization(format!(
            "id `{id}` cannot be written as an IRI"
        )))
    }
}

/// RDF view of a graph in the `ocedo:`/`ext:` vocabulary.
pub fn graph_to_triples(graph: &OcedGraph) -> Result<TripleStore> {
    let mut store = TripleStore::new();

    for event in graph.events() {
        checked(event.id())?;
        let subject = vocab::event(event.id());
        store.insert(Triple::new(
            subject.clone(),
            vocab::RDF_TYPE,
            Term::iri(vocab::event_type(event.event_type())),
        ));
        store.insert(Triple::new(
            subject.clone(),
            vocab::OBSERVED_AT,
            Term::date_time(&event.observed_at()),
        ));
        store.insert(Triple::new(
            subject.clone(),
            vocab::EVENT_TYPE,
            Term::plain(event.event_type()),
        ));
        for (key, value) in event.attributes() {
            store.insert(Triple::new(
                subject.clone(),
                vocab::attribute(key),
                attribute_literal(value),
            ));
        }
    }

    for object in graph.objects() {
        checked(object.id())?;
        let subject = vocab::object(object.id());
        store.insert(Triple::new(
            subject.clone(),
            vocab::RDF_TYPE,
            Term::iri(vocab::object_type(object.object_type())),
        ));
        store.insert(Triple::new(
            subject.clone(),
            vocab::OBJECT_TYPE,
            Term::plain(object.object_type()),
        ));
        for (key, value) in object.attributes() {
            store.insert(Triple::new(
                subject.clone(),
                vocab::attribute(key),
                attribute_literal(value),
            ));
        }
    }

    for relation in graph.event_object_relations() {
        checked(&relation.id)?;
        let node = vocab::relation(&relation.id);
        let event = vocab::event(&relation.event);
        let object = vocab::object(&relation.object);
        store.insert(Triple::new(
            node.clone(),
            vocab::RDF_TYPE,
            Term::iri(vocab::EVENT_OBJECT),
        ));
        store.insert(Triple::new(
            node.clone(),
            vocab::EVENT,
            Term::iri(event.clone()),
        ));
        store.insert(Triple::new(
            node.clone(),
            vocab::OBJECT,
            Term::iri(object.clone()),
        ));
        if let Some(qualifier) = &relation.qualifier {
            store.insert(Triple::new(
                node,
                vocab::CLASSIFIER,
                Term::plain(qualifier.clone()),
            ));
            store.insert(Triple::new(event, vocab::ext(qualifier), Term::iri(object)));
        }
    }

    for relation in graph.object_object_relations() {
        store.insert(Triple::new(
            vocab::object(&relation.source),
            vocab::ext(&relation.qualifier),
            Term::iri(vocab::object(&relation.target)),
        ));
    }

    Ok(store)
}
