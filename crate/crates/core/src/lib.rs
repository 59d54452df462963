//! Object-centric event data from XES logs, as RDF.
//!
//! The pipeline: [`xes::parse_xes_file`] reads a log, [`transform::transform_log`]
//! maps it to an [`model::OcedGraph`] under a [`transform::MappingConfig`],
//! [`turtle::graph_to_triples`] produces a [`query::TripleStore`], which can be
//! written with [`turtle::write_turtle`], queried with [`query::match_bgp`] and
//! analyzed with the functions in [`analyses`].
//!
//! Runnable examples live in `examples/`:
//!
//! - `parse_xes`: read an XES file and check declared globals
//! - `transform_bpic`: map a BPIC-style log to an OCED graph
//! - `turtle_round_trip`: write and re-read Turtle
//! - `query_bgp`: basic graph patterns with OPTIONAL groups
//! - `ping_pong`: detect cases bounced between support teams
//! - `team_ranking`: rank teams by ping-pong involvement
//! - `event_objects`: list event-object links
//! - `export_dot`: Graphviz output
//! - `custom_mapping`: a TOML mapping with several object types
//!
//! ```
//! use oced_forge::{query::match_bgp, transform, turtle, xes};
//!
//! let log = xes::parse_xes_str(r#"<log xes.version="1.0">
//!   <trace><string key="concept:name" value="1-364285768"/>
//!     <event>
//!       <string key="concept:name" value="Accepted"/>
//!       <string key="lifecycle:transition" value="In Progress"/>
//!       <string key="org:group" value="V5 3rd"/>
//!       <date key="time:timestamp" value="2010-03-31T16:59:42+02:00"/>
//!     </event>
//!   </trace>
//! </log>"#).unwrap();
//! let (graph, report) = transform::transform_log(&log, &transform::default_bpic2013_config());
//! assert_eq!(report.events_emitted, 1);
//! let store = turtle::graph_to_triples(&graph).unwrap().freeze();
//! let rows = match_bgp(&store, &oced_forge::analyses::handling_pattern());
//! assert_eq!(rows.len(), 1);
//! ```

pub mod analyses;
pub mod cli;
pub mod dot;
pub mod error;
pub mod model;
pub mod query;
pub mod rdf;
pub mod time;
pub mod transform;
pub mod turtle;
pub mod xes;

pub use error::{Error, Result};
