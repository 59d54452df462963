//! In-memory representation of XES event logs.
//!
//! The reader in [`parse`] keeps traces, events and attributes in document
//! order. Nested attributes are preserved; `<list>` and `<container>` values
//! are rejected.

mod parse;
mod write;

use std::fmt;

use chrono::{DateTime, FixedOffset};

pub use parse::{parse_xes, parse_xes_bytes, parse_xes_file, parse_xes_str};
pub use write::write_xes;

/// Typed value of an XES attribute.
#[derive(Debug, Clone, PartialEq)]
pub enum AttributeValue {
    String(String),
    Date(DateTime<FixedOffset>),
    Int(i64),
    Float(f64),
    Boolean(bool),
    Id(String),
}

impl AttributeValue {
    pub fn type_name(&self) -> &'static str {
        match self {
            AttributeValue::String(_) => "string",
            AttributeValue::Date(_) => "date",
            AttributeValue::Int(_) => "int",
            AttributeValue::Float(_) => "float",
            AttributeValue::Boolean(_) => "boolean",
            AttributeValue::Id(_) => "id",
        }
    }
}

impl fmt::Display for AttributeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttributeValue::String(s) | AttributeValue::Id(s) => f.write_str(s),
            AttributeValue::Date(d) => f.write_str(&crate::time::format_with_offset(d)),
            AttributeValue::Int(i) => write!(f, "{i}"),
            AttributeValue::Float(x) => write!(f, "{x}"),
            AttributeValue::Boolean(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct XesAttribute {
    pub key: String,
    pub value: AttributeValue,
    pub children: Vec<XesAttribute>,
}

impl XesAttribute {
    pub fn new(key: impl Into<String>, value: AttributeValue) -> Self {
        XesAttribute {
            key: key.into(),
            value,
            children: Vec::new(),
        }
    }
}

fn find<'a>(attributes: &'a [XesAttribute], key: &str) -> Option<&'a XesAttribute> {
    attributes.iter().find(|a| a.key == key)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesEvent {
    pub attributes: Vec<XesAttribute>,
}

impl XesEvent {
    pub fn get(&self, key: &str) -> Option<&AttributeValue> {
        find(&self.attributes, key).map(|a| &a.value)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesTrace {
    pub attributes: Vec<XesAttribute>,
    pub events: Vec<XesEvent>,
}

impl XesTrace {
    pub fn get(&self, key: &str) -> Option<&AttributeValue> {
        find(&self.attributes, key).map(|a| &a.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub name: String,
    pub prefix: String,
    pub uri: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Globals {
    pub trace: Vec<XesAttribute>,
    pub event: Vec<XesAttribute>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classifier {
    pub name: String,
    pub keys: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesLog {
    pub xes_version: String,
    pub extensions: Vec<Extension>,
    pub globals: Globals,
    pub classifiers: Vec<Classifier>,
    pub attributes: Vec<XesAttribute>,
    pub traces: Vec<XesTrace>,
    /// Unknown elements skipped while reading.
    pub warnings: Vec<String>,
}

impl XesLog {
    pub fn event_count(&self) -> usize {
        self.traces.iter().map(|t| t.events.len()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalScope {
    Trace,
    Event,
}

/// A declared global attribute missing from one trace or event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalViolation {
    pub scope: GlobalScope,
    pub trace_index: usize,
    /// Set when `scope` is [`GlobalScope::Event`].
    pub event_index: Option<usize>,
    pub key: String,
}

impl fmt::Display for GlobalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.event_index {
            Some(e) => write!(
                f,
                "trace {} event {} lacks global event attribute `{}`",
                self.trace_index, e, self.key
            ),
            None => write!(
                f,
                "trace {} lacks global trace attribute `{}`",
                self.trace_index, self.key
            ),
        }
    }
}

/// Reports every (trace or event, missing global key) pair.
///
/// Classifier keys that are declared neither as globals nor on any event are
/// also logged, but they do not count as violations.
pub fn validate_globals(log: &XesLog) -> Vec<GlobalViolation> {
    let mut violations = Vec::new();
    for (ti, trace) in log.traces.iter().enumerate() {
        for global in &log.globals.trace {
            if trace.get(&global.key).is_none() {
                violations.push(GlobalViolation {
                    scope: GlobalScope::Trace,
                    trace_index: ti,
                    event_index: None,
                    key: global.key.clone(),
                });
            }
        }
        for (ei, event) in trace.events.iter().enumerate() {
            for global in &log.globals.event {
                if event.get(&global.key).is_none() {
                    violations.push(GlobalViolation {
                        scope: GlobalScope::Event,
                        trace_index: ti,
                        event_index: Some(ei),
                        key: global.key.clone(),
                    });
                }
            }
        }
    }

    for classifier in &log.classifiers {
        for key in &classifier.keys {
            let declared = find(&log.globals.event, key).is_some()
                || log
                    .traces
                    .iter()
                    .flat_map(|t| &t.events)
                    .any(|e| e.get(key).is_some());
            if !declared {
                log::warn!(
                    "classifier `{}` references unknown attribute key `{}`",
                    classifier.name,
                    key
                );
            }
        }
    }
    violations
}
