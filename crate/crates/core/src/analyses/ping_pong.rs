//! Ping-pong detection: a case is handled by team A, later by a different
//! team B, and later again by A, with strictly increasing timestamps. The
//! three handling events need not be consecutive.

use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, Utc};

use crate::query::{iri, match_bgp, var, FrozenStore, TriplePattern};
use crate::rdf::vocab;

/// One `(event, team, time)` solution of the handling pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct HandlingRecord {
    pub time: DateTime<Utc>,
    pub team: String,
    pub event: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseHandling {
    pub case: String,
    /// Sorted by time, then team, then event.
    pub records: Vec<HandlingRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PingPongRow {
    pub case: String,
    pub has_ping_pong: bool,
    pub min_time: DateTime<Utc>,
    pub max_time: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimelineEntry {
    pub time: DateTime<Utc>,
    pub teams: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseTimeline {
    pub case: String,
    pub entries: Vec<TimelineEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TeamInvolvement {
    pub team: String,
    pub cases_involved: usize,
    pub witness_count: u64,
}

/// `?event ext:event_case ?case ; ocedo:observed_at ?time ;
/// ext:handled_by_support_team ?team`
pub fn handling_pattern() -> Vec<TriplePattern> {
    vec![
        TriplePattern::new(var("event"), iri(vocab::EVENT_CASE), var("case")),
        TriplePattern::new(var("event"), iri(vocab::OBSERVED_AT), var("time")),
        TriplePattern::new(
            var("event"),
            iri(vocab::HANDLED_BY_SUPPORT_TEAM),
            var("team"),
        ),
    ]
}

/// Handling records grouped per case, cases in IRI order. Solutions whose
/// time is not a valid `xsd:dateTime` are dropped.
pub fn case_handlings(store: &FrozenStore) -> Vec<CaseHandling> {
    let mut by_case: BTreeMap<String, Vec<HandlingRecord>> = BTreeMap::new();
    let mut dropped = 0usize;
    for binding in match_bgp(store, &handling_pattern()) {
        let Some(time) = binding["time"].as_instant() else {
            dropped += 1;
            continue;
        };
        by_case
            .entry(binding["case"].lexical().to_string())
            .or_default()
            .push(HandlingRecord {
                time,
                team: binding["team"].lexical().to_string(),
                event: binding["event"].lexical().to_string(),
            });
    }
    if dropped > 0 {
        log::warn!("{dropped} handling solutions without a valid xsd:dateTime were ignored");
    }
    by_case
        .into_iter()
        .map(|(case, mut records)| {
            records.sort();
            CaseHandling { case, records }
        })
        .collect()
}

/// Per-team sorted handling times of one case.
fn team_times(records: &[HandlingRecord]) -> BTreeMap<&str, Vec<DateTime<Utc>>> {
    let mut times: BTreeMap<&str, Vec<DateTime<Utc>>> = BTreeMap::new();
    for r in records {
        times.entry(&r.team).or_default().push(r.time);
    }
    for list in times.values_mut() {
        list.sort();
    }
    times
}

/// Number of `(a_first, middle, a_last)` witnesses for every ordered team
/// pair `(a, b)`, keyed by `(a, b)`. Counts are products of the records of
/// team `a` strictly before and strictly after each record of team `b`.
fn witness_counts(records: &[HandlingRecord]) -> BTreeMap<(&str, &str), u64> {
    let times = team_times(records);
    let mut counts = BTreeMap::new();
    for middle in records {
        for (&team_a, a_times) in &times {
            if team_a == middle.team {
                continue;
            }
            let before = a_times.partition_point(|t| *t < middle.time) as u64;
            let after = (a_times.len() - a_times.partition_point(|t| *t <= middle.time)) as u64;
            if before > 0 && after > 0 {
                *counts.entry((team_a, middle.team.as_str())).or_insert(0) += before * after;
            }
        }
    }
    counts
}

/// True when some record of team B lies strictly between two records of a
/// different team A.
pub fn case_has_ping_pong(records: &[HandlingRecord]) -> bool {
    let bounds: Vec<(&str, DateTime<Utc>, DateTime<Utc>)> = team_times(records)
        .into_iter()
        .map(|(team, times)| (team, times[0], times[times.len() - 1]))
        .collect();
    records.iter().any(|middle| {
        bounds.iter().any(|&(team, first, last)| {
            team != middle.team && first < middle.time && middle.time < last
        })
    })
}

/// One row per case with at least one handling record, ordered by
/// `has_ping_pong` (false first) and then by case.
pub fn detect_ping_pong(store: &FrozenStore) -> Vec<PingPongRow> {
    let mut rows: Vec<PingPongRow> = case_handlings(store)
        .into_iter()
        .map(|handling| {
            let records = &handling.records;
            PingPongRow {
                has_ping_pong: case_has_ping_pong(records),
                min_time: records
                    .iter()
                    .map(|r| r.time)
                    .min()
                    .expect("non-empty case"),
                max_time: records
                    .iter()
                    .map(|r| r.time)
                    .max()
                    .expect("non-empty case"),
                case: handling.case,
            }
        })
        .collect();
    rows.sort_by(|a, b| (a.has_ping_pong, &a.case).cmp(&(b.has_ping_pong, &b.case)));
    rows
}

/// Teams that take part in at least one ping-pong witness, ranked by the
/// number of distinct cases they bounce in, then by team IRI.
pub fn team_involvement(store: &FrozenStore) -> Vec<TeamInvolvement> {
    let mut cases: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut witnesses: BTreeMap<String, u64> = BTreeMap::new();
    for handling in case_handlings(store) {
        for ((team_a, team_b), count) in witness_counts(&handling.records) {
            for team in [team_a, team_b] {
                cases
                    .entry(team.to_string())
                    .or_default()
                    .insert(handling.case.clone());
                *witnesses.entry(team.to_string()).or_insert(0) += count;
            }
        }
    }
    let mut ranking: Vec<TeamInvolvement> = cases
        .into_iter()
        .map(|(team, involved)| TeamInvolvement {
            witness_count: witnesses[&team],
            cases_involved: involved.len(),
            team,
        })
        .collect();
    ranking.sort_by(|a, b| {
        b.cases_involved
            .cmp(&a.cases_involved)
            .then_with(|| a.team.cmp(&b.team))
    });
    ranking
}

/// Per case, the set of teams active at each distinct instant, in time order.
pub fn build_case_timelines(store: &FrozenStore) -> Vec<CaseTimeline> {
    case_handlings(store)
        .into_iter()
        .map(|handling| {
            let mut at: BTreeMap<DateTime<Utc>, BTreeSet<String>> = BTreeMap::new();
            for r in handling.records {
                at.entry(r.time).or_default().insert(r.team);
            }
            CaseTimeline {
                case: handling.case,
                entries: at
                    .into_iter()
                    .map(|(time, teams)| TimelineEntry {
                        time,
                        teams: teams.into_iter().collect(),
                    })
                    .collect(),
            }
        })
        .collect()
}
