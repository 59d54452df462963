//! Flags cases that bounce from one support team to another and back.
//!
//! cargo run --example ping_pong [log.xes]

use oced_forge::analyses::{build_case_timelines, detect_ping_pong};
use oced_forge::rdf::vocab::compact;
use oced_forge::time::format_utc;
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/bpic2013_sample.xes").into());
    let (graph, _) = transform_log(&parse_xes_file(path)?, &default_bpic2013_config());
    let store = graph_to_triples(&graph)?.freeze();

    let rows = detect_ping_pong(&store);
    let bouncing = rows.iter().filter(|r| r.has_ping_pong).count();
    println!("{bouncing} of {} cases ping-pong", rows.len());
    for row in &rows {
        println!(
            "{:<26} {:<5} {} .. {}",
            compact(&row.case),
            row.has_ping_pong,
            format_utc(&row.min_time),
            format_utc(&row.max_time)
        );
    }

    for timeline in build_case_timelines(&store) {
        if !rows
            .iter()
            .any(|r| r.case == timeline.case && r.has_ping_pong)
        {
            continue;
        }
        println!("\n{}", compact(&timeline.case));
        for entry in timeline.entries {
            let teams: Vec<String> = entry.teams.iter().map(|t| compact(t)).collect();
            println!("  {}  {}", format_utc(&entry.time), teams.join(", "));
        }
    }
    Ok(())
}
