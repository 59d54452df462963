//! Analyses over a frozen triple store: event-object enumeration, ping-pong
//! detection, team ranking, per-case timelines and summary statistics.

mod event_objects;
mod output;
mod ping_pong;

pub use event_objects::{enumerate_event_objects, EventObjectListing, EventObjectRow};
pub use output::{write_event_objects, write_ping_pong, write_teams, TableFormat};
pub use ping_pong::{
    build_case_timelines, case_handlings, case_has_ping_pong, detect_ping_pong, handling_pattern,
    team_involvement, CaseHandling, CaseTimeline, HandlingRecord, PingPongRow, TeamInvolvement,
    TimelineEntry,
};

use std::collections::{BTreeMap, BTreeSet};

use crate::model::GraphStats;
use crate::query::TripleStore;
use crate::rdf::{vocab, Term};

/// Counts recovered from RDF written in the `ocedo:`/`ext:` vocabulary.
///
/// Events are subjects with `ocedo:observed_at` or `ext:event_type`, objects
/// are subjects with `ext:object_type`. Object-object relations are triples
/// linking two objects under an `ext:` predicate.
pub fn store_stats(store: &TripleStore) -> GraphStats {
    let mut events: BTreeSet<&Term> = BTreeSet::new();
    let mut objects: BTreeSet<&Term> = BTreeSet::new();
    let mut event_types: BTreeMap<String, usize> = BTreeMap::new();
    let mut object_types: BTreeMap<String, usize> = BTreeMap::new();
    let mut eo_nodes: BTreeSet<&Term> = BTreeSet::new();
    for (s, p, o) in store.iter() {
        match p.lexical() {
            vocab::OBSERVED_AT => {
                events.insert(s);
            }
            vocab::EVENT_TYPE => {
                events.insert(s);
                *event_types.entry(o.lexical().to_string()).or_insert(0) += 1;
            }
            vocab::OBJECT_TYPE => {
                objects.insert(s);
                *object_types.entry(o.lexical().to_string()).or_insert(0) += 1;
            }
            vocab::RDF_TYPE if o.lexical() == vocab::EVENT_OBJECT && o.is_iri() => {
                eo_nodes.insert(s);
            }
            _ => {}
        }
    }
    let oo_relation_count = store
        .iter()
        .filter(|(s, p, o)| {
            p.lexical().starts_with(vocab::EXT) && objects.contains(s) && objects.contains(o)
        })
        .count();
    GraphStats {
        event_count: events.len(),
        object_count: objects.len(),
        eo_relation_count: eo_nodes.len(),
        oo_relation_count,
        event_type_histogram: event_types,
        object_type_histogram: object_types,
    }
}
