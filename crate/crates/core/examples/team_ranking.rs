//! Ranks support teams by how many cases they ping-pong in.

use oced_forge::analyses::{team_involvement, write_teams, TableFormat};
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let log = parse_xes_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/bpic2013_sample.xes"
    ))?;
    let (graph, _) = transform_log(&log, &default_bpic2013_config());
    let ranking = team_involvement(&graph_to_triples(&graph)?.freeze());
    write_teams(&ranking, TableFormat::Csv, std::io::stdout())
}
