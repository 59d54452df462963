//! Lists every event-object link with its qualifier and context, as JSONL.

use oced_forge::analyses::{enumerate_event_objects, write_event_objects, TableFormat};
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let log = parse_xes_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/bpic2013_sample.xes"
    ))?;
    let (graph, _) = transform_log(&log, &default_bpic2013_config());
    let listing = enumerate_event_objects(&graph_to_triples(&graph)?.freeze());
    write_event_objects(
        &listing.rows[..8.min(listing.rows.len())],
        TableFormat::Jsonl,
        std::io::stdout(),
    )?;
    eprintln!(
        "{} rows, {} malformed nodes skipped",
        listing.rows.len(),
        listing.skipped.len()
    );
    Ok(())
}
