//! Basic graph patterns and OPTIONAL groups over a converted log.

use oced_forge::query::{iri, match_bgp, match_optional, var, TriplePattern};
use oced_forge::rdf::vocab;
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let log = parse_xes_file(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/data/bpic2013_sample.xes"
    ))?;
    let (graph, _) = transform_log(&log, &default_bpic2013_config());
    let store = graph_to_triples(&graph)?.freeze();

    // which teams ever touched which case
    let bgp = [
        TriplePattern::new(var("event"), iri(vocab::EVENT_CASE), var("case")),
        TriplePattern::new(
            var("event"),
            iri(vocab::HANDLED_BY_SUPPORT_TEAM),
            var("team"),
        ),
    ];
    let mut pairs: Vec<(String, String)> = match_bgp(&store, &bgp)
        .into_iter()
        .map(|b| {
            (
                vocab::compact(b["case"].lexical()),
                vocab::compact(b["team"].lexical()),
            )
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    for (case, team) in &pairs {
        println!("{case:<24} {team}");
    }

    // events with their resource when one was recorded
    let required = [TriplePattern::new(
        var("event"),
        iri(vocab::EVENT_TYPE),
        var("type"),
    )];
    let optional = [vec![TriplePattern::new(
        var("event"),
        iri(&vocab::attribute("org:resource")),
        var("resource"),
    )]];
    let rows = match_optional(&store, &required, &optional);
    let without = rows.iter().filter(|b| !b.contains_key("resource")).count();
    println!("{} events, {} without org:resource", rows.len(), without);
    Ok(())
}
