//! A TOML mapping that lifts teams, employees and products into objects.

use oced_forge::transform::{transform_log, MappingConfig};
use oced_forge::turtle::graph_to_triples;
use oced_forge::xes::parse_xes_file;

fn main() -> oced_forge::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let config = MappingConfig::load(format!("{dir}/data/multi_object.toml"))?;
    let log = parse_xes_file(format!("{dir}/data/bpic2013_sample.xes"))?;
    let (graph, report) = transform_log(&log, &config);

    for (object_type, count) in &graph.stats().object_type_histogram {
        println!("{object_type:<14} {count}");
    }
    let employees: Vec<String> = graph
        .objects()
        .filter(|o| o.object_type() == "employee")
        .map(|o| o.id().raw())
        .collect();
    println!("employees: {}", employees.join(", "));
    println!(
        "{} triples, {} warnings",
        graph_to_triples(&graph)?.len(),
        report.warnings.len()
    );

    // inline configs work too; omitted fields keep the BPIC defaults
    let minimal = MappingConfig::from_toml_str("config_version = 1\nobject_rules = []\n")?;
    let (graph, _) = transform_log(&log, &minimal);
    println!("without rules: {} objects", graph.objects().count());
    Ok(())
}
