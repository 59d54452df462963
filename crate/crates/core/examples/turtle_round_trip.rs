//! Writes a small graph as Turtle and reads it back.

use chrono::{TimeZone, Utc};
use oced_forge::model::{EntityId, OcedEvent, OcedGraph, OcedObject};
use oced_forge::turtle::{graph_to_triples, parse_turtle, write_turtle};
use oced_forge::xes::AttributeValue;

fn main() -> oced_forge::Result<()> {
    let id = |s: &str| EntityId::new(s);
    let mut graph = OcedGraph::new();
    let at = Utc.with_ymd_and_hms(2012, 5, 1, 8, 30, 0).unwrap();
    graph.add_event(
        OcedEvent::new(id("e1")?, "Accepted+In Progress", at)?
            .with_attribute("org:resource", AttributeValue::String("Anne Claire".into()))
            .with_attribute("impact", AttributeValue::String("High \"urgent\"".into())),
    )?;
    graph.add_object(OcedObject::new(id("1-506285448")?, "case")?)?;
    graph.add_object(OcedObject::new(
        id("support_team_G230 2nd")?,
        "support_team",
    )?)?;
    graph.relate_event_object(&id("e1")?, &id("1-506285448")?, Some("event_case"))?;
    graph.relate_event_object(
        &id("e1")?,
        &id("support_team_G230 2nd")?,
        Some("handled_by_support_team"),
    )?;
    graph.relate_objects(
        &id("1-506285448")?,
        &id("support_team_G230 2nd")?,
        "involves_team",
    )?;

    let store = graph_to_triples(&graph)?;
    let text = write_turtle(&store);
    print!("{text}");

    let reparsed = parse_turtle(&text)?;
    assert_eq!(reparsed.to_sorted_triples(), store.to_sorted_triples());
    println!("\n# {} triples survived the round trip", reparsed.len());
    Ok(())
}
