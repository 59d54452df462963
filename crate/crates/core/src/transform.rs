//! Rule-driven conversion of XES logs into [`OcedGraph`]s.
//!
//! Every trace becomes a case object. Every event with a usable timestamp
//! becomes an OCED event linked to its case. Object rules lift attribute
//! values (for instance the support team in `org:group`) into shared objects.
//!
//! Mapping configurations are TOML files:
//!
//! ```toml
//! config_version = 1
//! case_object_type = "case"
//! case_id_key = "concept:name"
//! event_type_keys = ["concept:name", "lifecycle:transition"]
//! timestamp_key = "time:timestamp"
//! case_eo_qualifier = "event_case"
//! attribute_passthrough = ["org:resource"]
//!
//! [[object_rules]]
//! xes_key = "org:group"
//! object_type = "support_team"
//! eo_qualifier = "handled_by_support_team"
//! oo_qualifier = "involves_team"
//! ```
//!
//! Omitted fields take the BPIC 2013 defaults; `config_version` is required.

use std::collections::HashSet;
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EntityId, OcedEvent, OcedGraph, OcedObject};
use crate::time::parse_instant;
use crate::xes::{AttributeValue, XesEvent, XesLog};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectRule {
    pub xes_key: String,
    pub object_type: String,
    pub eo_qualifier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oo_qualifier: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MappingConfig {
    pub config_version: u32,
    pub case_object_type: String,
    pub case_id_key: String,
    pub event_type_keys: Vec<String>,
    pub timestamp_key: String,
    pub case_eo_qualifier: String,
    pub attribute_passthrough: Vec<String>,
    pub object_rules: Vec<ObjectRule>,
}

impl Default for MappingConfig {
    fn default() -> Self {
        default_bpic2013_config()
    }
}

/// Mapping that yields the `ext:event_case`, `ext:handled_by_support_team`
/// and `ocedo:observed_at` predicates the ping-pong analysis reads.
pub fn default_bpic2013_config() -> MappingConfig {
    MappingConfig {
        config_version: CONFIG_VERSION,
        case_object_type: "case".into(),
        case_id_key: "concept:name".into(),
        event_type_keys: vec!["concept:name".into(), "lifecycle:transition".into()],
        timestamp_key: "time:timestamp".into(),
        case_eo_qualifier: "event_case".into(),
        attribute_passthrough: vec![
            "org:resource".into(),
            "org:role".into(),
            "impact".into(),
            "product".into(),
            "organization involved".into(),
        ],
        object_rules: vec![ObjectRule {
            xes_key: "org:group".into(),
            object_type: "support_team".into(),
            eo_qualifier: "handled_by_support_team".into(),
            oo_qualifier: Some("involves_team".into()),
        }],
    }
}

impl MappingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.config_version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "unsupported config_version {} (expected {CONFIG_VERSION})",
                self.config_version
            )));
        }
        let required = [
            ("case_object_type", &self.case_object_type),
            ("case_id_key", &self.case_id_key),
            ("timestamp_key", &self.timestamp_key),
            ("case_eo_qualifier", &self.case_eo_qualifier),
        ];
        for (name, value) in required {
            if value.is_empty() {
                return Err(Error::Config(format!("`{name}` must not be empty")));
            }
        }
        let mut keys = HashSet::new();
        for rule in &self.object_rules {
            if rule.xes_key == self.timestamp_key {
                return Err(Error::Config(format!(
                    "timestamp key `{}` cannot also be an object rule key",
                    rule.xes_key
                )));
            }
            if !keys.insert(rule.xes_key.as_str()) {
                return Err(Error::Config(format!(
                    "object rule key `{}` appears more than once",
                    rule.xes_key
                )));
            }
            if rule.object_type.is_empty() || rule.eo_qualifier.is_empty() {
                return Err(Error::Config(format!(
                    "object rule `{}` needs an object_type and an eo_qualifier",
                    rule.xes_key
                )));
            }
            if rule.oo_qualifier.as_deref() == Some("") {
                return Err(Error::Config(format!(
                    "object rule `{}` has an empty oo_qualifier",
                    rule.xes_key
                )));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        if !table.contains_key("config_version") {
            return Err(Error::Config("missing `config_version`".into()));
        }
        let config: MappingConfig = table
            .try_into()
            .map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("mapping config is always serializable")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedEvent {
    pub trace_index: usize,
    pub event_index: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TransformReport {
    pub events_emitted: usize,
    pub objects_emitted: usize,
    pub events_skipped: Vec<SkippedEvent>,
    pub warnings: Vec<String>,
}

/// Values at `event_type_keys` joined with `+`; absent or empty values are
/// skipped and `"unknown"` stands in when nothing is left.
pub fn derive_event_type(event: &XesEvent, config: &MappingConfig) -> String {
    let parts: Vec<String> = config
        .event_type_keys
        .iter()
        .filter_map(|k| event.get(k))
        .map(|v| v.to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if parts.is_empty() {
        "unknown".to_string()
    } else {
        parts.join("+")
    }
}

fn event_timestamp(
    event: &XesEvent,
    key: &str,
) -> std::result::Result<DateTime<Utc>, &'static str> {
    match event.get(key) {
        None => Err("missing timestamp"),
        Some(AttributeValue::Date(d)) => Ok(d.with_timezone(&Utc)),
        Some(AttributeValue::String(s)) => parse_instant(s).ok_or("invalid timestamp"),
        Some(_) => Err("invalid timestamp"),
    }
}

/// Builds (or reuses) the object `<object_type>_<value>`. Returns `None` when
/// the id is already taken by an object of another type.
fn shared_object(
    graph: &mut OcedGraph,
    report: &mut TransformReport,
    object_type: &str,
    value: &str,
) -> Option<EntityId> {
    let id = EntityId::new(&format!("{object_type}_{value}")).expect("non-empty id");
    match graph.object(&id) {
        Some(existing) if existing.object_type() == object_type => Some(id),
        Some(existing) => {
            report.warnings.push(format!(
                "object id `{id}` already used by an object of type `{}`; `{object_type}` value `{value}` ignored",
                existing.object_type()
            ));
            None
        }
        None => {
            let object = OcedObject::new(id.clone(), object_type).expect("object type validated");
            graph.add_object(object).expect("id checked above");
            Some(id)
        }
    }
}

fn case_object(
    graph: &mut OcedGraph,
    report: &mut TransformReport,
    config: &MappingConfig,
    trace_index: usize,
    declared: Option<&AttributeValue>,
) -> Option<EntityId> {
    let fallback = format!("trace_{trace_index}");
    let mut candidates = Vec::new();
    match declared.map(|v| v.to_string()).filter(|s| !s.is_empty()) {
        Some(name) => candidates.push(name),
        None => report.warnings.push(format!(
            "trace {trace_index} has no `{}`; using `{fallback}`",
            config.case_id_key
        )),
    }
    candidates.push(fallback);

    for raw in candidates {
        let id = EntityId::new(&raw).expect("non-empty id");
        match graph.object(&id) {
            Some(existing) if existing.object_type() == config.case_object_type => {
                report
                    .warnings
                    .push(format!("trace {trace_index} reuses case object `{id}`"));
                return Some(id);
            }
            Some(existing) => report.warnings.push(format!(
                "case id `{id}` of trace {trace_index} collides with an object of type `{}`",
                existing.object_type()
            )),
            None => {
                let object =
                    OcedObject::new(id.clone(), &config.case_object_type).expect("validated type");
                graph.add_object(object).expect("id checked above");
                return Some(id);
            }
        }
    }
    None
}

pub fn transform_log(log: &XesLog, config: &MappingConfig) -> (OcedGraph, TransformReport) {
    let mut graph = OcedGraph::new();
    let mut report = TransformReport::default();

    for (ti, trace) in log.traces.iter().enumerate() {
        let case = case_object(
            &mut graph,
            &mut report,
            config,
            ti,
            trace.get(&config.case_id_key),
        );

        for (ei, xes_event) in trace.events.iter().enumerate() {
            let skip = |report: &mut TransformReport, reason: &str| {
                report.events_skipped.push(SkippedEvent {
                    trace_index: ti,
                    event_index: ei,
                    reason: reason.to_string(),
                });
            };
            let Some(case) = &case else {
                skip(&mut report, "no case object");
                continue;
            };
            let observed_at = match event_timestamp(xes_event, &config.timestamp_key) {
                Ok(t) => t,
                Err(reason) => {
                    skip(&mut report, reason);
                    continue;
                }
            };

            let event_id = EntityId::new(&format!("e{ti}_{ei}")).expect("non-empty id");
            let event_type = derive_event_type(xes_event, config);
            let mut event = OcedEvent::new(event_id.clone(), &event_type, observed_at)
                .expect("derived event type is never empty");
            for key in &config.attribute_passthrough {
                if let Some(value) = xes_event.get(key) {
                    event = event.with_attribute(key.clone(), value.clone());
                }
            }
            graph
                .add_event(event)
                .expect("event ids are unique per position");
            graph
                .relate_event_object(&event_id, case, Some(&config.case_eo_qualifier))
                .expect("fresh event");
            report.events_emitted += 1;

            for rule in &config.object_rules {
                let Some(value) = xes_event.get(&rule.xes_key) else {
                    continue;
                };
                let value = value.to_string();
                let Some(object) =
                    shared_object(&mut graph, &mut report, &rule.object_type, &value)
                else {
                    continue;
                };
                if let Err(e) =
                    graph.relate_event_object(&event_id, &object, Some(&rule.eo_qualifier))
                {
                    report.warnings.push(e.to_string());
                }
                if let Some(oo) = &rule.oo_qualifier {
                    if *case != object && !graph.has_object_relation(case, &object, oo) {
                        graph
                            .relate_objects(case, &object, oo)
                            .expect("endpoints exist and differ");
                    }
                }
            }
        }
    }

    report.objects_emitted = graph.stats().object_count;
    for warning in &report.warnings {
        log::warn!("{warning}");
    }
    (graph, report)
}
