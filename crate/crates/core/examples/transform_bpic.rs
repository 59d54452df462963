//! Maps the BPIC 2013 sample to an OCED graph with the default mapping.

use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let log = parse_xes_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/bpic2013_sample.xes"
    ))?;
    let (graph, report) = transform_log(&log, &default_bpic2013_config());

    println!(
        "emitted {} events, {} objects",
        report.events_emitted, report.objects_emitted
    );
    for skipped in &report.events_skipped {
        println!(
            "skipped trace {} event {}: {}",
            skipped.trace_index, skipped.event_index, skipped.reason
        );
    }

    let stats = graph.stats();
    println!(
        "{}",
        serde_json::to_string_pretty(&stats).expect("stats serialize")
    );

    for relation in graph.object_object_relations().iter().take(5) {
        println!(
            "{} -[{}]-> {}",
            relation.source.raw(),
            relation.qualifier,
            relation.target.raw()
        );
    }
    Ok(())
}
