//! RDF terms, triples and the OCEDO vocabulary.

use std::fmt;

use crate::model::EntityId;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    PlainLiteral(String),
    LangLiteral { lexical: String, lang: String },
    TypedLiteral { lexical: String, datatype: String },
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Self {
        Term::Iri(iri.into())
    }

    pub fn plain(lexical: impl Into<String>) -> Self {
        Term::PlainLiteral(lexical.into())
    }

    /// `xsd:string` typed literals collapse to plain literals.
    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        let datatype = datatype.into();
        if datatype == vocab::XSD_STRING {
            Term::PlainLiteral(lexical.into())
        } else {
            Term::TypedLiteral {
                lexical: lexical.into(),
                datatype,
            }
        }
    }

    pub fn date_time(instant: &chrono::DateTime<chrono::Utc>) -> Self {
        Term::typed(crate::time::format_utc(instant), vocab::XSD_DATE_TIME)
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    /// Lexical form of a literal, or the IRI text.
    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) | Term::PlainLiteral(s) => s,
            Term::LangLiteral { lexical, .. } | Term::TypedLiteral { lexical, .. } => lexical,
        }
    }

    /// The instant of an `xsd:dateTime` literal.
    pub fn as_instant(&self) -> Option<chrono::DateTime<chrono::Utc>> {
        match self {
            Term::TypedLiteral { lexical, datatype } if vocab::is_date_time(datatype) => {
                crate::time::parse_instant(lexical)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    /// N-Triples style rendering with full IRIs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::PlainLiteral(s) => write!(f, "\"{}\"", escape_string(s)),
            Term::LangLiteral { lexical, lang } => {
                write!(f, "\"{}\"@{lang}", escape_string(lexical))
            }
            Term::TypedLiteral { lexical, datatype } => {
                write!(f, "\"{}\"^^<{datatype}>", escape_string(lexical))
            }
        }
    }
}

/// Turtle short-string escaping.
pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// Subject and predicate are always IRIs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<String>, predicate: impl Into<String>, object: Term) -> Self {
        Triple {
            subject: Term::Iri(subject.into()),
            predicate: Term::Iri(predicate.into()),
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// Namespaces and fixed names of the OCEDO vocabulary, plus the IRI layout
/// used for entities in the `ex:` namespace.
pub mod vocab {
    use super::*;

    pub const OCEDO: &str = "https://w3id.org/ocedo/core#";
    pub const EXT: &str = "https://w3id.org/ocedo/ext#";
    pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const EX: &str = "http://example.org/oced#";

    /// Declaration order of prefixes in written Turtle.
    pub const PREFIXES: [(&str, &str); 5] = [
        ("ocedo", OCEDO),
        ("ext", EXT),
        ("xsd", XSD),
        ("rdf", RDF),
        ("ex", EX),
    ];

    pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";
    pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
    pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";

    pub const OBSERVED_AT: &str = "https://w3id.org/ocedo/core#observed_at";
    pub const EVENT: &str = "https://w3id.org/ocedo/ext#event";
    pub const OBJECT: &str = "https://w3id.org/ocedo/ext#object";
    pub const EVENT_CASE: &str = "https://w3id.org/ocedo/ext#event_case";
    pub const HANDLED_BY_SUPPORT_TEAM: &str = "https://w3id.org/ocedo/ext#handled_by_support_team";
    pub const EVENT_TYPE: &str = "https://w3id.org/ocedo/ext#event_type";
    pub const OBJECT_TYPE: &str = "https://w3id.org/ocedo/ext#object_type";
    pub const CLASSIFIER: &str = "https://w3id.org/ocedo/ext#classifier";
    pub const EVENT_OBJECT: &str = "https://w3id.org/ocedo/ext#EventObject";

    pub fn is_date_time(datatype: &str) -> bool {
        datatype == XSD_DATE_TIME || datatype == "http://www.w3.org/2001/XMLSchema#dateTimeStamp"
    }

    /// `ext:<name>` with `name` escaped like an entity id.
    pub fn ext(name: &str) -> String {
        format!("{EXT}{}", crate::model::escape_local(name))
    }

    /// Predicate carrying an event or object attribute.
    pub fn attribute(key: &str) -> String {
        format!("{EXT}attr_{}", crate::model::escape_local(key))
    }

    // Entities share the `ex:` namespace; the local-name prefixes keep the
    // event, object and relation id spaces apart.
    pub fn event(id: &EntityId) -> String {
        format!("{EX}event_{id}")
    }

    pub fn object(id: &EntityId) -> String {
        format!("{EX}object_{id}")
    }

    pub fn relation(id: &EntityId) -> String {
        format!("{EX}rel_{id}")
    }

    pub fn event_type(name: &str) -> String {
        format!("{EX}etype_{}", crate::model::escape_local(name))
    }

    pub fn object_type(name: &str) -> String {
        format!("{EX}otype_{}", crate::model::escape_local(name))
    }

    /// `prefix:local` when `iri` falls in a known namespace and the remainder
    /// is a safe local name; the full IRI otherwise.
    pub fn compact(iri: &str) -> String {
        for (prefix, ns) in PREFIXES {
            if let Some(local) = iri.strip_prefix(ns) {
                if is_safe_local(local) {
                    return format!("{prefix}:{local}");
                }
            }
        }
        iri.to_string()
    }

    /// Local names this crate emits in prefixed form: `[A-Za-z0-9_-]` and
    /// `%XX`, not starting with `-`.
    pub(crate) fn is_safe_local(local: &str) -> bool {
        !local.is_empty() && !local.starts_with('-') && crate::model::is_escaped_local(local)
    }
}
