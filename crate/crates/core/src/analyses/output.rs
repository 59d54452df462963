use std::io::Write;

use serde::Serialize;

use super::{EventObjectRow, PingPongRow, TeamInvolvement};
use crate::error::{Error, Result};
use crate::rdf::vocab::compact;
use crate::time::format_utc;

/// Tabular output formats for analysis results. IRIs are written in
/// compacted `prefix:local` form where possible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(Serialize)]
struct PingPongRecord {
    case: String,
    has_ping_pong: bool,
    min_time: String,
    max_time: String,
}

#[derive(Serialize)]
struct EventObjectRecord {
    event: String,
    object: String,
    classifier: Option<String>,
    event_type: Option<String>,
    time: Option<String>,
    object_type: Option<String>,
}

#[derive(Serialize)]
struct TeamRecord {
    team: String,
    cases_involved: usize,
    witness_count: u64,
}

fn write_table<W: Write, R: Serialize>(
    out: W,
    format: TableFormat,
    header: &[&str],
    records: impl Iterator<Item = R>,
) -> Result<()> {
    let serialization = |e: &dyn std::fmt::Display| Error::Serialization(e.to_string());
    match format {
        TableFormat::Csv => {
            // explicit header so an empty table still has one
            let mut writer = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(out);
            writer.write_record(header).map_err(|e| serialization(&e))?;
            for record in records {
                writer.serialize(record).map_err(|e| serialization(&e))?;
            }
            writer.flush()?;
        }
        TableFormat::Jsonl => {
            let mut out = out;
            for record in records {
                serde_json::to_writer(&mut out, &record).map_err(|e| serialization(&e))?;
                out.write_all(b"\n")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}

pub fn write_ping_pong<W: Write>(rows: &[PingPongRow], format: TableFormat, out: W) -> Result<()> {
    write_table(
        out,
        format,
        &["case", "has_ping_pong", "min_time", "max_time"],
        rows.iter().map(|r| PingPongRecord {
            case: compact(&r.case),
            has_ping_pong: r.has_ping_pong,
            min_time: format_utc(&r.min_time),
            max_time: format_utc(&r.max_time),
        }),
    )
}

pub fn write_event_objects<W: Write>(
    rows: &[EventObjectRow],
    format: TableFormat,
    out: W,
) -> Result<()> {
    write_table(
        out,
        format,
        &[
            "event",
            "object",
            "classifier",
            "event_type",
            "time",
            "object_type",
        ],
        rows.iter().map(|r| EventObjectRecord {
            event: compact(&r.event),
            object: compact(&r.object),
            classifier: r.classifier.clone(),
            event_type: r.event_type.clone(),
            time: r.time.as_ref().map(format_utc),
            object_type: r.object_type.clone(),
        }),
    )
}

pub fn write_teams<W: Write>(rows: &[TeamInvolvement], format: TableFormat, out: W) -> Result<()> {
    write_table(
        out,
        format,
        &["team", "cases_involved", "witness_count"],
        rows.iter().map(|r| TeamRecord {
            team: compact(&r.team),
            cases_involved: r.cases_involved,
            witness_count: r.witness_count,
        }),
    )
}
