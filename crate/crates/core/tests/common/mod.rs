//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use chrono::{DateTime, Utc};
use oced_forge::model::{EntityId, OcedEvent, OcedGraph, OcedObject};
use oced_forge::query::{BindingSet, PatternTerm, TriplePattern};
use oced_forge::rdf::{vocab, Term, Triple};
use oced_forge::xes::AttributeValue;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

pub fn id(raw: &str) -> EntityId {
    EntityId::new(raw).unwrap()
}

pub fn ms(t: i64) -> DateTime<Utc> {
    DateTime::from_timestamp_millis(1_330_000_000_000 + t).unwrap()
}

pub fn case_iri(case: usize) -> String {
    vocab::object(&id(&format!("case_{case}")))
}

pub fn team_iri(team: usize) -> String {
    vocab::object(&id(&format!("team_{team}")))
}

// ---------------------------------------------------------------------------
// ping-pong worlds

#[derive(Debug, Clone)]
pub struct HandledEvent {
    pub case: usize,
    /// Usually one team; zero or two now and then.
    pub teams: Vec<usize>,
    pub time: i64,
}

#[derive(Debug, Clone)]
pub struct World {
    pub cases: usize,
    pub teams: usize,
    pub events: Vec<HandledEvent>,
}

/// Up to 20 cases, 15 events per case and 5 teams. About a quarter of the
/// timestamps repeat an earlier one from the same case.
pub fn random_world(rng: &mut TestRng) -> World {
    let cases = rng.gen_range(1..=20);
    let teams = rng.gen_range(1..=5);
    let mut events = Vec::new();
    for case in 0..cases {
        let mut times: Vec<i64> = Vec::new();
        for _ in 0..rng.gen_range(0..=15) {
            let time = if !times.is_empty() && rng.gen_bool(0.25) {
                *times.choose(rng).unwrap()
            } else {
                rng.gen_range(0..40) * 1000
            };
            times.push(time);
            let team_count = match rng.gen_range(0..10) {
                0 => 0,
                1 => 2,
                _ => 1,
            };
            let mut chosen: Vec<usize> = (0..teams).collect();
            chosen.shuffle(rng);
            chosen.truncate(team_count.min(teams));
            events.push(HandledEvent {
                case,
                teams: chosen,
                time,
            });
        }
    }
    events.shuffle(rng);
    World {
        cases,
        teams,
        events,
    }
}

pub fn world_graph(world: &World) -> OcedGraph {
    let mut graph = OcedGraph::new();
    for c in 0..world.cases {
        graph
            .add_object(OcedObject::new(id(&format!("case_{c}")), "case").unwrap())
            .unwrap();
    }
    for t in 0..world.teams {
        graph
            .add_object(OcedObject::new(id(&format!("team_{t}")), "support_team").unwrap())
            .unwrap();
    }
    for (i, e) in world.events.iter().enumerate() {
        let event = id(&format!("ev{i}"));
        graph
            .add_event(OcedEvent::new(event.clone(), "Handled", ms(e.time)).unwrap())
            .unwrap();
        graph
            .relate_event_object(&event, &id(&format!("case_{}", e.case)), Some("event_case"))
            .unwrap();
        for team in &e.teams {
            graph
                .relate_event_object(
                    &event,
                    &id(&format!("team_{team}")),
                    Some("handled_by_support_team"),
                )
                .unwrap();
        }
    }
    graph
}

/// `(team, time)` handling rows per case IRI, one per (event, team) pair.
pub fn world_rows(world: &World) -> BTreeMap<String, Vec<(usize, i64)>> {
    let mut rows: BTreeMap<String, Vec<(usize, i64)>> = BTreeMap::new();
    for e in &world.events {
        for &team in &e.teams {
            rows.entry(case_iri(e.case))
                .or_default()
                .push((team, e.time));
        }
    }
    rows
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCase {
    pub has_ping_pong: bool,
    pub min_time: DateTime<Utc>,
    pub max_time: DateTime<Utc>,
}

/// Every ordered triple of rows is tried.
pub fn oracle_ping_pong(world: &World) -> BTreeMap<String, OracleCase> {
    let mut out = BTreeMap::new();
    for (case, rows) in world_rows(world) {
        let mut found = false;
        for &(ta, t1) in &rows {
            for &(tb, t2) in &rows {
                for &(tc, t3) in &rows {
                    if ta == tc && ta != tb && t1 < t2 && t2 < t3 {
                        found = true;
                    }
                }
            }
        }
        out.insert(
            case,
            OracleCase {
                has_ping_pong: found,
                min_time: ms(rows.iter().map(|r| r.1).min().unwrap()),
                max_time: ms(rows.iter().map(|r| r.1).max().unwrap()),
            },
        );
    }
    out
}

/// team IRI -> (distinct cases with a witness, witness count)
pub fn oracle_involvement(world: &World) -> BTreeMap<String, (usize, u64)> {
    let mut cases: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    let mut count: BTreeMap<usize, u64> = BTreeMap::new();
    for (case, rows) in world_rows(world) {
        for &(ta, t1) in &rows {
            for &(tb, t2) in &rows {
                for &(tc, t3) in &rows {
                    if ta == tc && ta != tb && t1 < t2 && t2 < t3 {
                        for team in [ta, tb] {
                            cases.entry(team).or_default().insert(case.clone());
                            *count.entry(team).or_default() += 1;
                        }
                    }
                }
            }
        }
    }
    cases
        .into_iter()
        .map(|(team, set)| (team_iri(team), (set.len(), count[&team])))
        .collect()
}

// ---------------------------------------------------------------------------
// random OCED graphs

const ID_PIECES: &[&str] = &[
    "a",
    "B",
    "7",
    "_",
    "-",
    " ",
    "é",
    "%",
    ":",
    "/",
    "#",
    "\"",
    "\\",
    "<",
    ">",
    "case",
    "1-364285768",
    "🚀",
    ".",
    "+",
];

fn random_text(rng: &mut TestRng, max_pieces: usize) -> String {
    let n = rng.gen_range(1..=max_pieces);
    (0..n).map(|_| *ID_PIECES.choose(rng).unwrap()).collect()
}

fn random_value(rng: &mut TestRng) -> AttributeValue {
    match rng.gen_range(0..6) {
        0 => AttributeValue::String(random_text(rng, 6)),
        1 => AttributeValue::Int(rng.gen_range(-1_000_000..1_000_000)),
        2 => AttributeValue::Float(match rng.gen_range(0..5) {
            0 => f64::INFINITY,
            1 => -0.5,
            2 => 1e-7,
            _ => rng.gen_range(-1e6..1e6),
        }),
        3 => AttributeValue::Boolean(rng.gen_bool(0.5)),
        4 => {
            AttributeValue::Date(ms(rng.gen_range(0..1_000_000_000)).with_timezone(
                &chrono::FixedOffset::east_opt(3600 * rng.gen_range(-5..6)).unwrap(),
            ))
        }
        _ => AttributeValue::Id(format!("{}-{}", rng.gen::<u32>(), rng.gen::<u16>())),
    }
}

const QUALIFIERS: &[&str] = &[
    "event_case",
    "handled_by_support_team",
    "has part",
    "ö",
    "x:y",
    "created",
];

pub fn random_graph(rng: &mut TestRng) -> OcedGraph {
    let mut graph = OcedGraph::new();
    let mut events = Vec::new();
    let mut objects = Vec::new();
    for _ in 0..rng.gen_range(0..8) {
        let eid = id(&random_text(rng, 4));
        let mut event = OcedEvent::new(
            eid.clone(),
            &random_text(rng, 3),
            ms(rng.gen_range(0..10_000_000)),
        )
        .unwrap();
        for _ in 0..rng.gen_range(0..3) {
            event = event.with_attribute(random_text(rng, 3), random_value(rng));
        }
        if graph.add_event(event).is_ok() {
            events.push(eid);
        }
    }
    for _ in 0..rng.gen_range(0..8) {
        let oid = id(&random_text(rng, 4));
        let mut object = OcedObject::new(oid.clone(), &random_text(rng, 3)).unwrap();
        for _ in 0..rng.gen_range(0..3) {
            object = object.with_attribute(random_text(rng, 3), random_value(rng));
        }
        if graph.add_object(object).is_ok() {
            objects.push(oid);
        }
    }
    if !events.is_empty() && !objects.is_empty() {
        for _ in 0..rng.gen_range(0..12) {
            let e = events.choose(rng).unwrap().clone();
            let o = objects.choose(rng).unwrap().clone();
            let q = if rng.gen_bool(0.2) {
                None
            } else {
                Some(*QUALIFIERS.choose(rng).unwrap())
            };
            let _ = graph.relate_event_object(&e, &o, q);
        }
    }
    if objects.len() > 1 {
        for _ in 0..rng.gen_range(0..6) {
            let a = objects.choose(rng).unwrap().clone();
            let b = objects.choose(rng).unwrap().clone();
            let _ = graph.relate_objects(&a, &b, QUALIFIERS.choose(rng).unwrap());
        }
    }
    graph
}

// ---------------------------------------------------------------------------
// random stores and BGPs

fn small_term(rng: &mut TestRng) -> Term {
    match rng.gen_range(0..5) {
        0 | 1 => Term::iri(format!("http://t/s{}", rng.gen_range(0..5))),
        2 => Term::plain(format!("v{}", rng.gen_range(0..3))),
        3 => Term::typed(rng.gen_range(0..3).to_string(), vocab::XSD_INTEGER),
        _ => Term::LangLiteral {
            lexical: "x".into(),
            lang: "en".into(),
        },
    }
}

pub fn random_triples(rng: &mut TestRng) -> Vec<Triple> {
    let set: BTreeSet<Triple> = (0..rng.gen_range(0..40))
        .map(|_| {
            Triple::new(
                format!("http://t/s{}", rng.gen_range(0..5)),
                format!("http://t/p{}", rng.gen_range(0..3)),
                small_term(rng),
            )
        })
        .collect();
    set.into_iter().collect()
}

const VARS: &[&str] = &["a", "b", "c", "d"];

/// Constants are usually lifted from an existing triple so that joins have
/// something to match.
pub fn random_bgp(rng: &mut TestRng, triples: &[Triple]) -> Vec<TriplePattern> {
    let n = match rng.gen_range(0..20) {
        0 => 0,
        1..=7 => 1,
        8..=13 => 2,
        14..=17 => 3,
        _ => 4,
    };
    let slot = |rng: &mut TestRng, position: usize| -> PatternTerm {
        if rng.gen_bool(0.55) {
            return PatternTerm::Var(VARS.choose(rng).unwrap().to_string());
        }
        match triples.choose(rng) {
            Some(t) if rng.gen_bool(0.8) => {
                PatternTerm::Const([&t.subject, &t.predicate, &t.object][position].clone())
            }
            _ => PatternTerm::Const(match position {
                0 => Term::iri(format!("http://t/s{}", rng.gen_range(0..6))),
                1 => Term::iri(format!("http://t/p{}", rng.gen_range(0..4))),
                _ => small_term(rng),
            }),
        }
    };
    (0..n)
        .map(|_| {
            let s = slot(rng, 0);
            let p = slot(rng, 1);
            let o = slot(rng, 2);
            TriplePattern::new(s, p, o)
        })
        .collect()
}

fn bind(solution: &mut BindingSet, pattern: &PatternTerm, value: &Term) -> bool {
    match pattern {
        PatternTerm::Const(c) => c == value,
        PatternTerm::Var(name) => match solution.get(name) {
            Some(bound) => bound == value,
            None => {
                solution.insert(name.clone(), value.clone());
                true
            }
        },
    }
}

/// Patterns joined left to right, each against every triple.
pub fn nested_loop_bgp(triples: &[Triple], patterns: &[TriplePattern]) -> Vec<BindingSet> {
    let mut solutions = vec![BindingSet::new()];
    for pattern in patterns {
        let mut next = Vec::new();
        for solution in &solutions {
            for t in triples {
                let mut extended = solution.clone();
                if bind(&mut extended, &pattern.subject, &t.subject)
                    && bind(&mut extended, &pattern.predicate, &t.predicate)
                    && bind(&mut extended, &pattern.object, &t.object)
                {
                    next.push(extended);
                }
            }
        }
        solutions = next;
    }
    solutions
}

pub fn as_bag(mut solutions: Vec<BindingSet>) -> Vec<BindingSet> {
    solutions.sort();
    solutions
}

// ---------------------------------------------------------------------------
// random XES text

/// A BPIC-shaped log with missing and malformed timestamps, missing groups
/// and repeated values.
pub fn random_xes(rng: &mut TestRng) -> String {
    let groups = ["V30", "V5 3rd", "G97", "N15 2nd", "S42", "D2"];
    let resources = ["Siebel", "Frederic", "Anne Claire", "Krzysztof"];
    let mut out =
        String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log xes.version=\"1.0\">\n");
    for t in 0..rng.gen_range(0..8) {
        out.push_str("  <trace>\n");
        if rng.gen_bool(0.9) {
            out.push_str(&format!(
                "    <string key=\"concept:name\" value=\"1-{}\"/>\n",
                500 + t
            ));
        }
        for _ in 0..rng.gen_range(0..10) {
            out.push_str("    <event>\n");
            out.push_str(&format!(
                "      <string key=\"concept:name\" value=\"{}\"/>\n",
                ["Accepted", "Queued", "Completed"].choose(rng).unwrap()
            ));
            if rng.gen_bool(0.85) {
                out.push_str(&format!(
                    "      <string key=\"org:group\" value=\"{}\"/>\n",
                    groups.choose(rng).unwrap()
                ));
            }
            if rng.gen_bool(0.7) {
                out.push_str(&format!(
                    "      <string key=\"org:resource\" value=\"{}\"/>\n",
                    resources.choose(rng).unwrap()
                ));
            }
            match rng.gen_range(0..10) {
                0 => {}
                1 => out.push_str("      <string key=\"time:timestamp\" value=\"yesterday\"/>\n"),
                _ => out.push_str(&format!(
                    "      <date key=\"time:timestamp\" value=\"2012-0{}-1{}T0{}:00:00.000+01:00\"/>\n",
                    rng.gen_range(1..10),
                    rng.gen_range(0..10),
                    rng.gen_range(0..10)
                )),
            }
            out.push_str("    </event>\n");
        }
        out.push_str("  </trace>\n");
    }
    out.push_str("</log>\n");
    out
}
