mod common;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

use common::*;
use flate2::write::GzEncoder;
use oced_forge::analyses::store_stats;
use oced_forge::transform::{default_bpic2013_config, transform_log};
use oced_forge::turtle::{graph_to_triples, parse_turtle};
use oced_forge::xes::parse_xes_file;

fn oced_forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oced-forge"))
        .args(args)
        .env_remove("OCED_FORGE_LOG")
        .output()
        .unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sample() -> String {
    data_path("bpic2013_sample.xes")
        .to_str()
        .unwrap()
        .to_string()
}

fn convert_sample(dir: &Path) -> std::path::PathBuf {
    let ttl = dir.join("sample.ttl");
    let out = oced_forge(&["convert", &sample(), "--output", path(&ttl)]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    ttl
}

#[test]
fn convert_output_matches_in_memory_triples() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = dir.path().join("sample.ttl");
    let out = oced_forge(&["convert", &sample(), "--output", path(&ttl)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("1 skipped"), "{stderr}");

    let log = parse_xes_file(data_path("bpic2013_sample.xes")).unwrap();
    let (graph, _) = transform_log(&log, &default_bpic2013_config());
    let expected = graph_to_triples(&graph).unwrap();
    let parsed = parse_turtle(&fs::read_to_string(&ttl).unwrap()).unwrap();
    assert_eq!(parsed.len(), expected.len());
    assert_eq!(parsed.to_sorted_triples(), expected.to_sorted_triples());
}

#[test]
fn convert_writes_to_stdout_by_default() {
    let out = oced_forge(&["convert", "--quiet", &sample()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("@prefix ocedo:"));
}

#[test]
fn gzipped_input_gives_same_output() {
    let dir = tempfile::tempdir().unwrap();
    let gz = dir.path().join("sample.xes.gz");
    let mut encoder = GzEncoder::new(Vec::new(), flate2::Compression::default());
    encoder
        .write_all(&fs::read(data_path("bpic2013_sample.xes")).unwrap())
        .unwrap();
    fs::write(&gz, encoder.finish().unwrap()).unwrap();
    let plain = oced_forge(&["convert", "-q", &sample()]);
    let zipped = oced_forge(&["convert", "-q", path(&gz)]);
    assert_eq!(zipped.status.code(), Some(0));
    assert_eq!(plain.stdout, zipped.stdout);
}

#[test]
fn missing_file_exits_2() {
    let out = oced_forge(&["convert", "/definitely/not/here.xes"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("cannot read"));
    assert_eq!(
        oced_forge(&["analyze", "/nope.ttl", "--analysis", "teams"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn malformed_xml_exits_3_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.xes");
    fs::write(&bad, "<log>\n  <trace>\n    <event></trace>\n</log>\n").unwrap();
    let out = oced_forge(&["convert", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn turtle_syntax_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ttl");
    fs::write(&bad, "@prefix ex: <http://x/> .\nex:a ex:b .\n").unwrap();
    let out = oced_forge(&["analyze", path(&bad), "--analysis", "ping-pong"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2"));
    assert_eq!(
        oced_forge(&["export-dot", path(&bad)]).status.code(),
        Some(3)
    );
}

#[test]
fn usage_errors_exit_64() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = convert_sample(dir.path());
    assert_eq!(
        oced_forge(&["analyze", path(&ttl), "--analysis", "wait-user"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(oced_forge(&["analyze", path(&ttl)]).status.code(), Some(64));
    assert_eq!(
        oced_forge(&[
            "analyze",
            path(&ttl),
            "--analysis",
            "teams",
            "--format",
            "dot"
        ])
        .status
        .code(),
        Some(64)
    );
    let help = oced_forge(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8(help.stdout)
        .unwrap()
        .contains("65  unrecognized input format"));
}

#[test]
fn ping_pong_csv_marks_planted_case() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = convert_sample(dir.path());
    let out = oced_forge(&[
        "analyze",
        "-q",
        path(&ttl),
        "--analysis",
        "ping-pong",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "case,has_ping_pong,min_time,max_time");
    assert!(lines
        .contains(&"ex:object_1-364285768,true,2010-03-31T14:59:42.000Z,2010-04-13T12:00:11.000Z"));
    // same instant for all three events: strict ordering never holds
    assert!(lines
        .iter()
        .any(|l| l.starts_with("ex:object_1-524308161,false,")));
    assert_eq!(lines.len(), 7);
}

#[test]
fn jsonl_records_parse() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = convert_sample(dir.path());
    let out = oced_forge(&[
        "analyze",
        "-q",
        path(&ttl),
        "--analysis",
        "event-objects",
        "--format",
        "jsonl",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 48);
    assert!(records
        .iter()
        .all(|r| r["classifier"].is_string() && r["time"].is_string()));
}

#[test]
fn empty_graph_gives_header_only_tables() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ttl");
    fs::write(&empty, "").unwrap();
    let eo = oced_forge(&["analyze", "-q", path(&empty), "--analysis", "event-objects"]);
    assert_eq!(
        String::from_utf8(eo.stdout).unwrap(),
        "event,object,classifier,event_type,time,object_type\n"
    );

    let no_bounce = dir.path().join("flat.ttl");
    fs::write(
        &no_bounce,
        "@prefix ext: <https://w3id.org/ocedo/ext#> .\n@prefix ocedo: <https://w3id.org/ocedo/core#> .\n\
         @prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n\
         <http://x/e1> ext:event_case <http://x/c> ; ext:handled_by_support_team <http://x/A> ;\n\
         ocedo:observed_at \"2012-01-01T00:00:00Z\"^^xsd:dateTime .\n",
    )
    .unwrap();
    let teams = oced_forge(&["analyze", "-q", path(&no_bounce), "--analysis", "teams"]);
    assert_eq!(
        String::from_utf8(teams.stdout).unwrap(),
        "team,cases_involved,witness_count\n"
    );
}

#[test]
fn stats_on_turtle_and_xes() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = convert_sample(dir.path());
    let out = String::from_utf8(oced_forge(&["stats", path(&ttl)]).stdout).unwrap();
    let value = |key: &str| -> usize {
        out.lines()
            .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with("  ")))
            .map(|rest| rest.trim().parse().unwrap())
            .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
    };
    let stats = store_stats(&parse_turtle(&fs::read_to_string(&ttl).unwrap()).unwrap());
    assert_eq!(value("events"), stats.event_count);
    assert_eq!(value("objects"), stats.object_count);
    assert_eq!(value("event-object relations"), stats.eo_relation_count);
    assert_eq!(value("object-object relations"), stats.oo_relation_count);
    assert_eq!(value("cases"), 6);

    let out = String::from_utf8(oced_forge(&["stats", &sample()]).stdout).unwrap();
    assert!(
        out.contains("format  xes")
            || out
                .lines()
                .any(|l| l.starts_with("format") && l.ends_with("xes"))
    );
    let log = parse_xes_file(data_path("bpic2013_sample.xes")).unwrap();
    assert!(out
        .lines()
        .any(|l| l.starts_with("traces") && l.ends_with(&log.traces.len().to_string())));
    assert!(out
        .lines()
        .any(|l| l.starts_with("events") && l.ends_with(&log.event_count().to_string())));
}

#[test]
fn binary_junk_exits_65() {
    let dir = tempfile::tempdir().unwrap();
    let junk = dir.path().join("junk.bin");
    fs::write(&junk, [0u8, 159, 146, 150, 0, 1, 2, 3, 255]).unwrap();
    let out = oced_forge(&["stats", path(&junk)]);
    assert_eq!(out.status.code(), Some(65));
    assert!(out.stdout.is_empty());
}

/// Statements are `node [attrs];` or `node -> node [attrs];` inside one
/// `digraph id { ... }` block, with quoted strings properly escaped.
fn well_formed_dot(text: &str) -> bool {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    if !(header.starts_with("digraph ") && header.ends_with(" {"))
        || text.lines().last() != Some("}")
    {
        return false;
    }
    let id = |s: &str| !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    let attrs = |s: &str| -> bool {
        let Some(inner) = s.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
            return false;
        };
        let mut rest = inner;
        loop {
            let Some(eq) = rest.find('=') else {
                return false;
            };
            if !id(rest[..eq].trim()) {
                return false;
            }
            rest = &rest[eq + 1..];
            if let Some(quoted) = rest.strip_prefix('"') {
                let mut escaped = false;
                let mut end = None;
                for (i, c) in quoted.char_indices() {
                    match (escaped, c) {
                        (true, _) => escaped = false,
                        (false, '\\') => escaped = true,
                        (false, '"') => {
                            end = Some(i);
                            break;
                        }
                        _ => {}
                    }
                }
                let Some(end) = end else { return false };
                rest = &quoted[end + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                if !id(rest[..end].trim()) {
                    return false;
                }
                rest = &rest[end..];
            }
            match rest.strip_prefix(", ") {
                Some(more) => rest = more,
                None => return rest.is_empty(),
            }
        }
    };
    let body: Vec<&str> = text.lines().skip(1).collect();
    body[..body.len() - 1].iter().all(|line| {
        let Some(stmt) = line.trim().strip_suffix(';') else {
            return false;
        };
        if stmt.starts_with("rankdir=") {
            return true;
        }
        let (head, tail) = match stmt.find(" [") {
            Some(i) => (&stmt[..i], Some(&stmt[i + 1..])),
            None => (stmt, None),
        };
        let nodes_ok = match head.split_once(" -> ") {
            Some((a, b)) => id(a) && id(b),
            None => id(head),
        };
        nodes_ok && tail.is_none_or(attrs)
    })
}

#[test]
fn export_dot_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = convert_sample(dir.path());
    let out = oced_forge(&["export-dot", path(&ttl)]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(well_formed_dot(&dot), "{dot}");
    assert_eq!(dot.matches("shape=box").count(), 24);
    assert_eq!(dot.matches("shape=ellipse").count(), 14);
    assert!(dot.contains("[label=\"handled_by_support_team\"]"));
    assert!(dot.contains("[label=\"involves_team\"]"));

    let empty = dir.path().join("empty.ttl");
    fs::write(&empty, "").unwrap();
    let dot = String::from_utf8(oced_forge(&["export-dot", path(&empty)]).stdout).unwrap();
    assert_eq!(dot, "digraph oced {\n  rankdir=LR;\n}\n");
    assert!(well_formed_dot(&dot));
}

#[test]
fn custom_mapping_config() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = dir.path().join("multi.ttl");
    let config = data_path("multi_object.toml");
    let out = oced_forge(&[
        "convert",
        &sample(),
        "--config",
        path(&config),
        "-o",
        path(&ttl),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&ttl).unwrap();
    assert!(text.contains("ext:performed_by ex:object_employee_Siebel"));
    assert!(text.contains("ext:about_product ex:object_product_PROD582"));

    let bad = dir.path().join("bad.toml");
    fs::write(&bad, "case_object_type = \"case\"\n").unwrap();
    let out = oced_forge(&["convert", &sample(), "--config", path(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("config_version"));
}

#[test]
fn convert_reads_standard_input() {
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_oced-forge"))
        .args(["convert", "-q", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&fs::read(data_path("bpic2013_sample.xes")).unwrap())
        .unwrap();
    let piped = child.wait_with_output().unwrap();
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(
        piped.stdout,
        oced_forge(&["convert", "-q", &sample()]).stdout
    );
}
