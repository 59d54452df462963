//! Reads an XES log (plain or gzipped) and reports its structure.
//!
//! cargo run --example parse_xes [path.xes]

use oced_forge::xes::{parse_xes_file, validate_globals};

fn main() -> oced_forge::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/bpic2013_sample.xes").into());
    let log = parse_xes_file(&path)?;

    println!("xes.version {}", log.xes_version);
    for ext in &log.extensions {
        println!("extension   {} ({}:) {}", ext.name, ext.prefix, ext.uri);
    }
    for classifier in &log.classifiers {
        println!(
            "classifier  {} = {}",
            classifier.name,
            classifier.keys.join(" + ")
        );
    }
    println!("{} traces, {} events", log.traces.len(), log.event_count());

    for trace in log.traces.iter().take(2) {
        let name = trace
            .get("concept:name")
            .map(|v| v.to_string())
            .unwrap_or_default();
        println!("trace {name}");
        for event in &trace.events {
            let field = |k: &str| {
                event
                    .get(k)
                    .map(|v| v.to_string())
                    .unwrap_or_else(|| "-".into())
            };
            println!(
                "  {:<10} {:<20} {:<10} {}",
                field("concept:name"),
                field("lifecycle:transition"),
                field("org:group"),
                field("time:timestamp")
            );
        }
    }

    let violations = validate_globals(&log);
    println!("{} global violations", violations.len());
    for v in violations.iter().take(5) {
        println!("  {v}");
    }
    Ok(())
}
