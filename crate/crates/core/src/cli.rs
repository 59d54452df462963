//! The `oced-forge` command line. Data goes to the output file or standard
//! output; diagnostics go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analyses::{
    detect_ping_pong, enumerate_event_objects, store_stats, team_involvement, write_event_objects,
    write_ping_pong, write_teams, TableFormat,
};
use crate::dot::export_dot;
use crate::error::Error;
use crate::query::{iri, match_pattern, var, FrozenStore, TriplePattern};
use crate::rdf::vocab;
use crate::transform::{default_bpic2013_config, transform_log, MappingConfig};
use crate::turtle::{graph_to_triples, parse_turtle, write_turtle};
use crate::xes::parse_xes_bytes;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNREADABLE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_UNRECOGNIZED: i32 = 65;

const EXIT_CODES: &str = "\
Exit codes:
  0   success (also when events were skipped)
  1   output could not be written
  2   input file unreadable
  3   parse error in input or mapping config
  64  usage error
  65  unrecognized input format

Set OCED_FORGE_LOG (error, warn, info, debug) to control log output.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Convert,
    Analyze,
    Stats,
    ExportDot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Ttl,
    Csv,
    Jsonl,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    PingPong,
    EventObjects,
    Teams,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub input_path: PathBuf,
    /// Standard output when absent.
    pub output_path: Option<PathBuf>,
    pub mapping_config_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub analysis: Option<Analysis>,
    pub quiet: bool,
}

impl CliConfig {
    /// `analysis` is required exactly for `analyze`, and the format must be
    /// one the command can produce.
    pub fn validate(&self) -> Result<(), String> {
        match (self.command, self.analysis) {
            (Command::Analyze, None) => return Err("analyze requires --analysis".into()),
            (Command::Analyze, Some(_)) => {}
            (_, Some(_)) => return Err("--analysis is only valid with analyze".into()),
            (_, None) => {}
        }
        let allowed: &[OutputFormat] = match self.command {
            Command::Convert => &[OutputFormat::Ttl],
            Command::Analyze => &[OutputFormat::Csv, OutputFormat::Jsonl],
            Command::ExportDot => &[OutputFormat::Dot],
            Command::Stats => &[],
        };
        if !allowed.is_empty() && !allowed.contains(&self.format) {
            return Err(format!(
                "--format {} is not valid for this command",
                self.format.to_possible_value().unwrap().get_name()
            ));
        }
        if self.mapping_config_path.is_some() && self.command != Command::Convert {
            return Err("--config is only valid with convert".into());
        }
        Ok(())
    }
}

#[derive(Parser, Debug)]
#[command(name = "oced-forge", version, about = "Convert XES event logs to object-centric RDF and analyze them", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file, `-` for standard input
    input: PathBuf,
    /// Write to this file instead of standard output
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Suppress the summary and warnings
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// XES (optionally gzipped) to Turtle
    Convert {
        #[command(flatten)]
        common: Common,
        /// TOML mapping configuration
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ttl")]
        format: OutputFormat,
    },
    /// Run an analysis over a Turtle file
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        analysis: Analysis,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Print counts for an XES or Turtle file
    Stats {
        #[command(flatten)]
        common: Common,
    },
    /// Turtle to a Graphviz digraph
    ExportDot {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "dot")]
        format: OutputFormat,
    },
}

impl From<Cli> for CliConfig {
    fn from(cli: Cli) -> Self {
        let (command, common, mapping, format, analysis) = match cli.command {
            Sub::Convert {
                common,
                config,
                format,
            } => (Command::Convert, common, config, format, None),
            Sub::Analyze {
                common,
                analysis,
                format,
            } => (Command::Analyze, common, None, format, Some(analysis)),
            Sub::Stats { common } => (Command::Stats, common, None, OutputFormat::Ttl, None),
            Sub::ExportDot { common, format } => (Command::ExportDot, common, None, format, None),
        };
        CliConfig {
            command,
            input_path: common.input,
            output_path: common.output,
            mapping_config_path: mapping,
            format,
            analysis,
            quiet: common.quiet,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let config = CliConfig::from(cli);
    let default_level = if config.quiet { "error" } else { "warn" };
    let _ = env_logger::Builder::from_env(
        env_logger::Env::new().filter_or("OCED_FORGE_LOG", default_level),
    )
    .format_timestamp(None)
    .try_init();
    run(&config)
}

pub fn run(config: &CliConfig) -> i32 {
    if let Err(message) = config.validate() {
        eprintln!("error: {message}");
        return EXIT_USAGE;
    }
    let input = &config.input_path;
    let output = config.output_path.as_deref();
    match config.command {
        Command::Convert => cmd_convert(
            input,
            config.mapping_config_path.as_deref(),
            output,
            config.quiet,
        ),
        Command::Analyze => {
            let format = match config.format {
                OutputFormat::Jsonl => TableFormat::Jsonl,
                _ => TableFormat::Csv,
            };
            cmd_analyze(
                input,
                config.analysis.expect("validated"),
                format,
                output,
                config.quiet,
            )
        }
        Command::Stats => cmd_stats(input, output),
        Command::ExportDot => cmd_export_dot(input, output),
    }
}

/// `-` reads standard input.
fn read_input(path: &Path) -> Result<Vec<u8>, i32> {
    let result = if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().lock().read_to_end(&mut buf).map(|_| buf)
    } else {
        fs::read(path)
    };
    result.map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_UNREADABLE
    })
}

fn emit(out_path: Option<&Path>, bytes: &[u8]) -> i32 {
    let result = match out_path {
        Some(path) => fs::write(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes).and_then(|_| stdout.flush())
        }
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            EXIT_FAILURE
        }
    }
}

fn load_turtle(path: &Path) -> Result<FrozenStore, i32> {
    let raw = read_input(path)?;
    let text = String::from_utf8(raw).map_err(|_| {
        eprintln!("error: {} is not UTF-8 text", path.display());
        EXIT_PARSE
    })?;
    parse_turtle(&text).map(|s| s.freeze()).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_PARSE
    })
}

pub fn cmd_convert(
    xes_path: &Path,
    config_path: Option<&Path>,
    out_path: Option<&Path>,
    quiet: bool,
) -> i32 {
    let mapping = match config_path {
        None => default_bpic2013_config(),
        Some(path) => {
            let raw = match read_input(path) {
                Ok(raw) => raw,
                Err(code) => return code,
            };
            match std::str::from_utf8(&raw)
                .map_err(|_| Error::Config("not UTF-8".into()))
                .and_then(MappingConfig::from_toml_str)
            {
                Ok(config) => config,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_PARSE;
                }
            }
        }
    };
    let raw = match read_input(xes_path) {
        Ok(raw) => raw,
        Err(code) => return code,
    };
    let log = match parse_xes_bytes(&raw) {
        Ok(log) => log,
        Err(e) => {
            eprintln!("error: {}: {e}", xes_path.display());
            return EXIT_PARSE;
        }
    };
    for warning in &log.warnings {
        log::warn!("{warning}");
    }
    let (graph, report) = transform_log(&log, &mapping);
    let store = match graph_to_triples(&graph) {
        Ok(store) => store,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAILURE;
        }
    };
    let turtle = write_turtle(&store);
    if !quiet {
        for skipped in &report.events_skipped {
            eprintln!(
                "warning: skipped event {} of trace {}: {}",
                skipped.event_index, skipped.trace_index, skipped.reason
            );
        }
        for warning in &report.warnings {
            eprintln!("warning: {warning}");
        }
        eprintln!(
            "converted {} events ({} skipped), {} objects, {} triples",
            report.events_emitted,
            report.events_skipped.len(),
            report.objects_emitted,
            store.len()
        );
    }
    emit(out_path, turtle.as_bytes())
}

pub fn cmd_analyze(
    ttl_path: &Path,
    analysis: Analysis,
    format: TableFormat,
    out_path: Option<&Path>,
    quiet: bool,
) -> i32 {
    let store = match load_turtle(ttl_path) {
        Ok(store) => store,
        Err(code) => return code,
    };
    let mut buf = Vec::new();
    let (rows, result) = match analysis {
        Analysis::PingPong => {
            let rows = detect_ping_pong(&store);
            (rows.len(), write_ping_pong(&rows, format, &mut buf))
        }
        Analysis::EventObjects => {
            let listing = enumerate_event_objects(&store);
            (
                listing.rows.len(),
                write_event_objects(&listing.rows, format, &mut buf),
            )
        }
        Analysis::Teams => {
            let rows = team_involvement(&store);
            (rows.len(), write_teams(&rows, format, &mut buf))
        }
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        return EXIT_FAILURE;
    }
    if !quiet {
        eprintln!("{rows} rows");
    }
    emit(out_path, &buf)
}

enum Sniffed {
    Xes,
    Turtle(String),
    Unknown,
}

fn sniff(raw: &[u8]) -> Sniffed {
    if raw.starts_with(&[0x1f, 0x8b]) {
        return Sniffed::Xes;
    }
    let Ok(text) = std::str::from_utf8(raw) else {
        return Sniffed::Unknown;
    };
    let body = text.trim_start_matches('\u{feff}').trim_start();
    if ["<?xml", "<log", "<!--"]
        .iter()
        .any(|p| body.starts_with(p))
    {
        return Sniffed::Xes;
    }
    let binary = text
        .chars()
        .any(|c| c.is_control() && !matches!(c, '\n' | '\r' | '\t'));
    if binary {
        Sniffed::Unknown
    } else {
        Sniffed::Turtle(text.to_string())
    }
}

fn line(out: &mut Vec<(String, String)>, key: &str, value: impl std::fmt::Display) {
    out.push((key.to_string(), value.to_string()));
}

fn aligned(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0)
        + 2;
    rows.iter()
        .map(|(key, value)| format!("{key:<width$}{value}\n"))
        .collect()
}

pub fn cmd_stats(path: &Path, out_path: Option<&Path>) -> i32 {
    let raw = match read_input(path) {
        Ok(raw) => raw,
        Err(code) => return code,
    };
    let mut out = Vec::new();
    match sniff(&raw) {
        Sniffed::Unknown => {
            eprintln!("error: {} is neither XES nor Turtle", path.display());
            return EXIT_UNRECOGNIZED;
        }
        Sniffed::Xes => {
            let log = match parse_xes_bytes(&raw) {
                Ok(log) => log,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_PARSE;
                }
            };
            line(&mut out, "format", "xes");
            line(&mut out, "traces", log.traces.len());
            line(&mut out, "events", log.event_count());
            line(&mut out, "extensions", log.extensions.len());
            line(&mut out, "classifiers", log.classifiers.len());
        }
        Sniffed::Turtle(text) => {
            let store = match parse_turtle(&text) {
                Ok(store) => store,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return EXIT_PARSE;
                }
            };
            let stats = store_stats(&store);
            let cases = match_pattern(
                &store,
                &TriplePattern::new(var("e"), iri(vocab::EVENT_CASE), var("c")),
            )
            .into_iter()
            .map(|b| b["c"].clone())
            .collect::<std::collections::BTreeSet<_>>()
            .len();
            line(&mut out, "format", "turtle");
            line(&mut out, "triples", store.len());
            line(&mut out, "events", stats.event_count);
            line(&mut out, "objects", stats.object_count);
            line(&mut out, "event-object relations", stats.eo_relation_count);
            line(&mut out, "object-object relations", stats.oo_relation_count);
            line(&mut out, "event types", stats.event_type_histogram.len());
            line(&mut out, "object types", stats.object_type_histogram.len());
            line(&mut out, "cases", cases);
            for (kind, count) in &stats.object_type_histogram {
                line(&mut out, &format!("  object type {kind}"), count);
            }
            for (kind, count) in &stats.event_type_histogram {
                line(&mut out, &format!("  event type {kind}"), count);
            }
        }
    }
    emit(out_path, aligned(&out).as_bytes())
}

pub fn cmd_export_dot(ttl_path: &Path, out_path: Option<&Path>) -> i32 {
    match load_turtle(ttl_path) {
        Ok(store) => emit(out_path, export_dot(&store).as_bytes()),
        Err(code) => code,
    }
}
