//! Object-centric event data: typed events and objects linked by qualified
//! event-object and object-object relations.
//!
//! Events and objects live in separate id namespaces. Every mutation keeps
//! the graph referentially intact, so a relation can never point at an
//! entity that does not exist.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use chrono::{DateTime, SubsecRound, Utc};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::xes::AttributeValue;

/// Identifier of an event, object or relation.
///
/// Raw strings are escaped on construction: every byte outside
/// `[A-Za-z0-9_-]` becomes `%XX`, which keeps ids usable as IRI local names
/// and lets [`EntityId::raw`] recover the original text.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId(String);

impl EntityId {
    pub fn new(raw: &str) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidEntityId("id must not be empty".into()));
        }
        Ok(EntityId(escape_local(raw)))
    }

    /// Accepts an already escaped id.
    pub fn from_escaped(escaped: &str) -> Result<Self> {
        if escaped.is_empty() || !is_escaped_local(escaped) {
            return Err(Error::InvalidEntityId(format!(
                "`{escaped}` is not a valid escaped id"
            )));
        }
        Ok(EntityId(escaped.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The unescaped original text.
    pub fn raw(&self) -> String {
        unescape_local(&self.0)
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_plain(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'-'
}

pub(crate) fn escape_local(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for &b in raw.as_bytes() {
        if is_plain(b) {
            out.push(b as char);
        } else {
            out.push_str(&format!("%{b:02X}"));
        }
    }
    out
}

pub(crate) fn is_escaped_local(s: &str) -> bool {
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'%' => {
                let hex = bytes.get(i + 1..i + 3);
                if !hex.is_some_and(|h| h.iter().all(u8::is_ascii_hexdigit)) {
                    return false;
                }
                i += 3;
            }
            b if is_plain(b) => i += 1,
            _ => return false,
        }
    }
    true
}

pub(crate) fn unescape_local(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let decoded = s
                .get(i + 1..i + 3)
                .and_then(|h| u8::from_str_radix(h, 16).ok());
            if let Some(b) = decoded {
                out.push(b);
                i += 3;
                continue;
            }
        }
        out.push(bytes[i]);
        i += 1;
    }
    String::from_utf8_lossy(&out).into_owned()
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcedEvent {
    id: EntityId,
    event_type: String,
    observed_at: DateTime<Utc>,
    attributes: BTreeMap<String, AttributeValue>,
}

impl OcedEvent {
    /// `observed_at` is truncated to milliseconds.
    pub fn new(id: EntityId, event_type: &str, observed_at: DateTime<Utc>) -> Result<Self> {
        if event_type.is_empty() {
            return Err(Error::InvalidEntityId(format!(
                "event `{id}` has an empty event type"
            )));
        }
        Ok(OcedEvent {
            id,
            event_type: event_type.to_string(),
            observed_at: observed_at.trunc_subsecs(3),
            attributes: BTreeMap::new(),
        })
    }

    pub fn with_attribute(mut self, key: impl Into<String>, value: AttributeValue) -> Self {
        self.attributes.insert(key.into(), value);
        self
    }

    pub fn id(&self) -> &EntityId {
        &self.id
    }

    pub fn event_type(&self) -> &str {
        &self.event_type
    }

    pub fn observed_at(&self) -> DateTime<Utc> {
        self.observed_at
    }

    pub fn attributes(&self) -> &BTreeMap<String, AttributeValue> {
        &self.attributes
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OcedObject {
    id: EntityId,
    object_type: String,
    attributes: BTreeMap<String, AttributeValue>,
}

impl OcedObject {
    pub fn new(id: EntityId, object_type: &str) -> Result<Self> {
        if object_type.is_empty() {
            return Err(Error::InvalidEntityId(format!(
                "object `{id}` has an empty object type"
            )));
        }
        Ok(OcedObject {
            id,
            object_type: object_type.to_string(),
            attributes: BTreeMap::new(),
        })
    }

    pub fn with_attribute(mut self, key: impl Into<String>, value: AttributeValue) -> Self {
        self.attributes.insert(key.into(), value);
        self
    }

    pub fn id(&self) -> &EntityId {
        &self.id
    }

    pub fn object_type(&self) -> &str {
        &self.object_type
    }

    pub fn attributes(&self) -> &BTreeMap<String, AttributeValue> {
        &self.attributes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventObjectRelation {
    pub id: EntityId,
    pub event: EntityId,
    pub object: EntityId,
    pub qualifier: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectObjectRelation {
    pub id: EntityId,
    pub source: EntityId,
    pub target: EntityId,
    pub qualifier: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub event_count: usize,
    pub object_count: usize,
    pub eo_relation_count: usize,
    pub oo_relation_count: usize,
    pub event_type_histogram: BTreeMap<String, usize>,
    pub object_type_histogram: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Default)]
pub struct OcedGraph {
    events: BTreeMap<EntityId, OcedEvent>,
    objects: BTreeMap<EntityId, OcedObject>,
    event_object_relations: Vec<EventObjectRelation>,
    object_object_relations: Vec<ObjectObjectRelation>,
    eo_keys: HashSet<(EntityId, EntityId, Option<String>)>,
    oo_keys: HashSet<(EntityId, EntityId, String)>,
    self_relation_qualifiers: BTreeSet<String>,
}

impl OcedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_event(&mut self, event: OcedEvent) -> Result<()> {
        if self.events.contains_key(&event.id) {
            return Err(Error::DuplicateId {
                namespace: "event",
                id: event.id.to_string(),
            });
        }
        self.events.insert(event.id.clone(), event);
        Ok(())
    }

    pub fn add_object(&mut self, object: OcedObject) -> Result<()> {
        if self.objects.contains_key(&object.id) {
            return Err(Error::DuplicateId {
                namespace: "object",
                id: object.id.to_string(),
            });
        }
        self.objects.insert(object.id.clone(), object);
        Ok(())
    }

    pub fn relate_event_object(
        &mut self,
        event: &EntityId,
        object: &EntityId,
        qualifier: Option<&str>,
    ) -> Result<&EventObjectRelation> {
        if !self.events.contains_key(event) {
            return Err(Error::DanglingReference {
                namespace: "event",
                id: event.to_string(),
            });
        }
        if !self.objects.contains_key(object) {
            return Err(Error::DanglingReference {
                namespace: "object",
                id: object.to_string(),
            });
        }
        let key = (event.clone(), object.clone(), qualifier.map(str::to_string));
        if self.eo_keys.contains(&key) {
            return Err(Error::DuplicateRelation {
                event: event.to_string(),
                object: object.to_string(),
                qualifier: key.2,
            });
        }
        self.eo_keys.insert(key);
        let id = EntityId(format!("eo_{}", self.event_object_relations.len() + 1));
        self.event_object_relations.push(EventObjectRelation {
            id,
            event: event.clone(),
            object: object.clone(),
            qualifier: qualifier.map(str::to_string),
        });
        Ok(self.event_object_relations.last().expect("just pushed"))
    }

    /// Allows `relate_objects(o, o, qualifier)` for this qualifier.
    pub fn permit_self_relation(&mut self, qualifier: &str) {
        self.self_relation_qualifiers.insert(qualifier.to_string());
    }

    pub fn relate_objects(
        &mut self,
        source: &EntityId,
        target: &EntityId,
        qualifier: &str,
    ) -> Result<&ObjectObjectRelation> {
        for id in [source, target] {
            if !self.objects.contains_key(id) {
                return Err(Error::DanglingReference {
                    namespace: "object",
                    id: id.to_string(),
                });
            }
        }
        if source == target && !self.self_relation_qualifiers.contains(qualifier) {
            return Err(Error::SelfRelation(source.to_string()));
        }
        let key = (source.clone(), target.clone(), qualifier.to_string());
        if self.oo_keys.contains(&key) {
            return Err(Error::DuplicateRelation {
                event: source.to_string(),
                object: target.to_string(),
                qualifier: Some(qualifier.to_string()),
            });
        }
        self.oo_keys.insert(key);
        let id = EntityId(format!("oo_{}", self.object_object_relations.len() + 1));
        self.object_object_relations.push(ObjectObjectRelation {
            id,
            source: source.clone(),
            target: target.clone(),
            qualifier: qualifier.to_string(),
        });
        Ok(self.object_object_relations.last().expect("just pushed"))
    }

    pub fn event(&self, id: &EntityId) -> Option<&OcedEvent> {
        self.events.get(id)
    }

    pub fn object(&self, id: &EntityId) -> Option<&OcedObject> {
        self.objects.get(id)
    }

    /// Events in id order.
    pub fn events(&self) -> impl Iterator<Item = &OcedEvent> {
        self.events.values()
    }

    /// Objects in id order.
    pub fn objects(&self) -> impl Iterator<Item = &OcedObject> {
        self.objects.values()
    }

    pub fn event_object_relations(&self) -> &[EventObjectRelation] {
        &self.event_object_relations
    }

    pub fn object_object_relations(&self) -> &[ObjectObjectRelation] {
        &self.object_object_relations
    }

    pub fn has_object_relation(
        &self,
        source: &EntityId,
        target: &EntityId,
        qualifier: &str,
    ) -> bool {
        self.oo_keys
            .contains(&(source.clone(), target.clone(), qualifier.to_string()))
    }

    pub fn stats(&self) -> GraphStats {
        let mut stats = GraphStats {
            event_count: self.events.len(),
            object_count: self.objects.len(),
            eo_relation_count: self.event_object_relations.len(),
            oo_relation_count: self.object_object_relations.len(),
            ..Default::default()
        };
        for event in self.events.values() {
            *stats
                .event_type_histogram
                .entry(event.event_type.clone())
                .or_default() += 1;
        }
        for object in self.objects.values() {
            *stats
                .object_type_histogram
                .entry(object.object_type.clone())
                .or_default() += 1;
        }
        stats
    }
}

/// Free-function form of [`OcedGraph::stats`].
pub fn graph_stats(graph: &OcedGraph) -> GraphStats {
    graph.stats()
}
