use std::fmt::Write;

use quick_xml::escape::escape;

use super::{AttributeValue, XesAttribute, XesLog};
use crate::time::format_with_offset;

/// Canonical XES text for a log. Reading the output back yields an equal
/// [`XesLog`] (minus any warnings recorded on the original).
pub fn write_xes(log: &XesLog) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<log xes.version=\"{}\">", escape(&log.xes_version));
    for ext in &log.extensions {
        let _ = writeln!(
            out,
            "  <extension name=\"{}\" prefix=\"{}\" uri=\"{}\"/>",
            escape(&ext.name),
            escape(&ext.prefix),
            escape(&ext.uri)
        );
    }
    for (scope, attributes) in [("trace", &log.globals.trace), ("event", &log.globals.event)] {
        if attributes.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  <global scope=\"{scope}\">");
        write_attributes(&mut out, attributes, 2);
        out.push_str("  </global>\n");
    }
    for classifier in &log.classifiers {
        let keys: Vec<String> = classifier
            .keys
            .iter()
            .map(|k| {
                if k.contains(char::is_whitespace) {
                    format!("'{k}'")
                } else {
                    k.clone()
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "  <classifier name=\"{}\" keys=\"{}\"/>",
            escape(&classifier.name),
            escape(&keys.join(" "))
        );
    }
    write_attributes(&mut out, &log.attributes, 1);
    for trace in &log.traces {
        out.push_str("  <trace>\n");
        write_attributes(&mut out, &trace.attributes, 2);
        for event in &trace.events {
            out.push_str("    <event>\n");
            write_attributes(&mut out, &event.attributes, 3);
            out.push_str("    </event>\n");
        }
        out.push_str("  </trace>\n");
    }
    out.push_str("</log>\n");
    out
}

fn write_attributes(out: &mut String, attributes: &[XesAttribute], depth: usize) {
    for attribute in attributes {
        let indent = "  ".repeat(depth);
        let tag = attribute.value.type_name();
        let value = match &attribute.value {
            AttributeValue::Date(d) => format_with_offset(d),
            AttributeValue::Float(x) => format!("{x:?}"),
            other => other.to_string(),
        };
        let _ = write!(
            out,
            "{indent}<{tag} key=\"{}\" value=\"{}\"",
            escape(&attribute.key),
            escape(&value)
        );
        if attribute.children.is_empty() {
            out.push_str("/>\n");
        } else {
            out.push_str(">\n");
            write_attributes(out, &attribute.children, depth + 1);
            let _ = writeln!(out, "{indent}</{tag}>");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use proptest::prelude::*;

    fn value_strategy() -> impl Strategy<Value = AttributeValue> {
        prop_oneof![
            "[ -~]{0,12}".prop_map(AttributeValue::String),
            (0i64..4_000_000_000_000, -12i32..=14).prop_map(|(ms, h)| {
                let offset = chrono::FixedOffset::east_opt(h * 3600).unwrap();
                let utc = chrono::DateTime::from_timestamp_millis(ms).unwrap();
                AttributeValue::Date(utc.with_timezone(&offset))
            }),
            any::<i64>().prop_map(AttributeValue::Int),
            (-1e12f64..1e12).prop_map(AttributeValue::Float),
            any::<bool>().prop_map(AttributeValue::Boolean),
            "[0-9a-f]{8}".prop_map(AttributeValue::Id),
        ]
    }

    fn attributes_strategy() -> impl Strategy<Value = Vec<XesAttribute>> {
        proptest::collection::btree_map("[a-z]{1,4}(:[a-z]{1,4})?", value_strategy(), 0..4)
            .prop_map(|m| {
                m.into_iter()
                    .map(|(k, v)| XesAttribute::new(k, v))
                    .collect()
            })
    }

    fn log_strategy() -> impl Strategy<Value = XesLog> {
        let trace = (
            attributes_strategy(),
            proptest::collection::vec(attributes_strategy(), 0..4),
        )
            .prop_map(|(attributes, events)| XesTrace {
                attributes,
                events: events
                    .into_iter()
                    .map(|attributes| XesEvent { attributes })
                    .collect(),
            });
        (
            attributes_strategy(),
            proptest::collection::vec(trace, 0..4),
        )
            .prop_map(|(attributes, traces)| XesLog {
                xes_version: "1.0".into(),
                extensions: vec![Extension {
                    name: "Concept".into(),
                    prefix: "concept".into(),
                    uri: "http://www.xes-standard.org/concept.xesext".into(),
                }],
                classifiers: vec![Classifier {
                    name: "Activity".into(),
                    keys: vec!["concept:name".into(), "odd key".into()],
                }],
                attributes,
                traces,
                ..Default::default()
            })
    }

    proptest! {
        #[test]
        fn canonical_xes_round_trips(log in log_strategy()) {
            let text = write_xes(&log);
            let reparsed = parse_xes_str(&text).unwrap();
            prop_assert_eq!(reparsed.event_count(), text.matches("<event>").count());
            prop_assert_eq!(reparsed, log);
        }
    }

    #[test]
    fn nested_attributes_round_trip() {
        let mut parent = XesAttribute::new("a", AttributeValue::String("<&>\"".into()));
        parent
            .children
            .push(XesAttribute::new("b", AttributeValue::Int(1)));
        let log = XesLog {
            xes_version: "1.0".into(),
            attributes: vec![parent],
            ..Default::default()
        };
        assert_eq!(parse_xes_str(&write_xes(&log)).unwrap(), log);
    }
}
