//! Graphviz rendering of one case and its teams.
//!
//! cargo run --example export_dot | dot -Tsvg > case.svg

use oced_forge::dot::export_dot;
use oced_forge::query::TripleStore;
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::{parse_xes_file, XesLog};

fn main() -> oced_forge::Result<()> {
    let full = parse_xes_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/bpic2013_sample.xes"
    ))?;
    let log = XesLog {
        traces: full.traces[..1].to_vec(),
        ..full
    };
    let (graph, _) = transform_log(&log, &default_bpic2013_config());
    let store: TripleStore = graph_to_triples(&graph)?;
    print!("{}", export_dot(&store.freeze()));
    Ok(())
}
