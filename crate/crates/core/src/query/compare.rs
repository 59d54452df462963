use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::rdf::{vocab, Term};

const INTEGER_TYPES: &[&str] = &[
    "integer",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "nonPositiveInteger",
    "positiveInteger",
    "negativeInteger",
    "unsignedLong",
    "unsignedInt",
    "unsignedShort",
    "unsignedByte",
];

enum Comparable<'a> {
    Instant(chrono::DateTime<chrono::Utc>),
    Integer(i128),
    Number(f64),
    Text(&'a str),
    Iri(&'a str),
}

fn classify(term: &Term) -> Result<Comparable<'_>> {
    match term {
        Term::Iri(iri) => Ok(Comparable::Iri(iri)),
        Term::PlainLiteral(s) => Ok(Comparable::Text(s)),
        Term::LangLiteral { .. } => Err(Error::Type(format!(
            "language-tagged literal {term} is not ordered"
        ))),
        Term::TypedLiteral { lexical, datatype } => {
            let invalid = || Error::Type(format!("invalid lexical form in {term}"));
            if vocab::is_date_time(datatype) {
                return term
                    .as_instant()
                    .map(Comparable::Instant)
                    .ok_or_else(invalid);
            }
            let Some(local) = datatype.strip_prefix(vocab::XSD) else {
                return Err(Error::Type(format!("unordered datatype <{datatype}>")));
            };
            if INTEGER_TYPES.contains(&local) {
                lexical
                    .trim()
                    .parse()
                    .map(Comparable::Integer)
                    .map_err(|_| invalid())
            } else if matches!(local, "decimal" | "double" | "float") {
                let value = match lexical.trim() {
                    "INF" | "+INF" => f64::INFINITY,
                    "-INF" => f64::NEG_INFINITY,
                    other => other.parse().map_err(|_| invalid())?,
                };
                Ok(Comparable::Number(value))
            } else {
                Err(Error::Type(format!("unordered datatype <{datatype}>")))
            }
        }
    }
}

/// Orders two terms of the same comparable class.
///
/// `xsd:dateTime` literals compare by instant, numeric literals by value and
/// plain literals by string. IRIs only compare equal to themselves; any
/// other pairing is a type error, which filters treat as false.
pub fn compare_terms(a: &Term, b: &Term) -> Result<Ordering> {
    use Comparable::*;
    let mismatch = || Error::Type(format!("cannot compare {a} with {b}"));
    match (classify(a)?, classify(b)?) {
        (Instant(x), Instant(y)) => Ok(x.cmp(&y)),
        (Integer(x), Integer(y)) => Ok(x.cmp(&y)),
        (Integer(x), Number(y)) => (x as f64).partial_cmp(&y).ok_or_else(mismatch),
        (Number(x), Integer(y)) => x.partial_cmp(&(y as f64)).ok_or_else(mismatch),
        (Number(x), Number(y)) => x.partial_cmp(&y).ok_or_else(mismatch),
        (Text(x), Text(y)) => Ok(x.cmp(y)),
        (Iri(x), Iri(y)) if x == y => Ok(Ordering::Equal),
        _ => Err(mismatch()),
    }
}
