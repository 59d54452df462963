//! Timestamp parsing and formatting shared by the XES reader, the Turtle
//! layer and the analyses. All instants are kept at millisecond resolution.

use chrono::{DateTime, FixedOffset, NaiveDateTime, SecondsFormat, SubsecRound, TimeZone, Utc};

/// Parses an ISO-8601 / `xsd:dateTime` literal.
///
/// Literals without a zone designator are read as UTC. Sub-millisecond
/// digits are truncated.
pub fn parse_datetime(raw: &str) -> Option<DateTime<FixedOffset>> {
    let raw = raw.trim();
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Some(dt.trunc_subsecs(3));
    }
    // xsd:dateTime allows omitting the offset, RFC 3339 does not.
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%dT%H:%M:%S"] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(raw, fmt) {
            let utc = FixedOffset::east_opt(0).expect("zero offset");
            return Some(utc.from_utc_datetime(&naive).trunc_subsecs(3));
        }
    }
    None
}

pub fn parse_instant(raw: &str) -> Option<DateTime<Utc>> {
    parse_datetime(raw).map(|dt| dt.with_timezone(&Utc))
}

/// `2012-01-01T09:00:00.000Z`
pub fn format_utc(instant: &DateTime<Utc>) -> String {
    instant.to_rfc3339_opts(SecondsFormat::Millis, true)
}

/// Millisecond precision, original offset kept (`+01:00`).
pub fn format_with_offset(dt: &DateTime<FixedOffset>) -> String {
    dt.to_rfc3339_opts(SecondsFormat::Millis, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn offsets_denote_the_same_instant() {
        let a = parse_datetime("2012-01-01T10:00:00.000+01:00").unwrap();
        let b = parse_datetime("2012-01-01T09:00:00.000Z").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            format_utc(&a.with_timezone(&Utc)),
            "2012-01-01T09:00:00.000Z"
        );
    }

    #[test]
    fn missing_offset_is_utc_and_subseconds_truncate() {
        let a = parse_instant("2012-01-01T09:00:00.123456").unwrap();
        assert_eq!(format_utc(&a), "2012-01-01T09:00:00.123Z");
    }

    #[test]
    fn garbage_is_rejected() {
        assert!(parse_datetime("yesterday").is_none());
        assert!(parse_datetime("2012-13-01T00:00:00Z").is_none());
    }

    #[test]
    fn offset_is_preserved_when_formatting() {
        let a = parse_datetime("2012-01-01T10:00:00+01:00").unwrap();
        assert_eq!(format_with_offset(&a), "2012-01-01T10:00:00.000+01:00");
    }
}
