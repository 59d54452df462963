use std::collections::{HashMap, HashSet};
use std::ops::Deref;
use std::sync::Arc;

use crate::rdf::{Term, Triple};

pub(crate) type TermId = u32;
pub(crate) type EncodedTriple = [TermId; 3];

/// Dictionary-encoded set of triples with subject, predicate, object and
/// (predicate, object) indexes.
#[derive(Debug, Clone, Default)]
pub struct TripleStore {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    triples: Vec<EncodedTriple>,
    present: HashSet<EncodedTriple>,
    by_subject: HashMap<TermId, Vec<u32>>,
    by_predicate: HashMap<TermId, Vec<u32>>,
    by_object: HashMap<TermId, Vec<u32>>,
    by_predicate_object: HashMap<(TermId, TermId), Vec<u32>>,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = TermId::try_from(self.terms.len()).expect("term dictionary overflow");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        debug_assert!(triple.subject.is_iri() && triple.predicate.is_iri());
        let encoded = [
            self.intern(triple.subject),
            self.intern(triple.predicate),
            self.intern(triple.object),
        ];
        if !self.present.insert(encoded) {
            return false;
        }
        let position = u32::try_from(self.triples.len()).expect("triple store overflow");
        self.triples.push(encoded);
        let [s, p, o] = encoded;
        self.by_subject.entry(s).or_default().push(position);
        self.by_predicate.entry(p).or_default().push(position);
        self.by_object.entry(o).or_default().push(position);
        self.by_predicate_object
            .entry((p, o))
            .or_default()
            .push(position);
        true
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        match (
            self.ids.get(&triple.subject),
            self.ids.get(&triple.predicate),
            self.ids.get(&triple.object),
        ) {
            (Some(&s), Some(&p), Some(&o)) => self.present.contains(&[s, p, o]),
            _ => false,
        }
    }

    /// Triples in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Term, &Term)> + '_ {
        self.triples
            .iter()
            .map(|[s, p, o]| (self.term(*s), self.term(*p), self.term(*o)))
    }

    /// All triples, sorted.
    pub fn to_sorted_triples(&self) -> Vec<Triple> {
        let mut triples: Vec<Triple> = self
            .iter()
            .map(|(s, p, o)| Triple {
                subject: s.clone(),
                predicate: p.clone(),
                object: o.clone(),
            })
            .collect();
        triples.sort();
        triples
    }

    pub fn freeze(self) -> FrozenStore {
        FrozenStore(Arc::new(self))
    }

    pub(crate) fn term(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub(crate) fn term_id(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub(crate) fn encoded(&self, position: u32) -> EncodedTriple {
        self.triples[position as usize]
    }

    /// Candidate triple positions for a pattern with the given constants,
    /// taken from the smallest applicable index. `None` means full scan.
    pub(crate) fn candidates(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
    ) -> Option<&[u32]> {
        fn slice(list: Option<&Vec<u32>>) -> &[u32] {
            list.map_or(&[], Vec::as_slice)
        }
        let mut options: [Option<&[u32]>; 2] = [None, None];
        if let Some(s) = s {
            options[0] = Some(slice(self.by_subject.get(&s)));
        }
        options[1] = match (p, o) {
            (Some(p), Some(o)) => Some(slice(self.by_predicate_object.get(&(p, o)))),
            (Some(p), None) => Some(slice(self.by_predicate.get(&p))),
            (None, Some(o)) => Some(slice(self.by_object.get(&o))),
            (None, None) => None,
        };
        options.into_iter().flatten().min_by_key(|list| list.len())
    }

    pub(crate) fn all_positions(&self) -> impl Iterator<Item = u32> {
        0..self.triples.len() as u32
    }
}

impl FromIterator<Triple> for TripleStore {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut store = TripleStore::new();
        for triple in iter {
            store.insert(triple);
        }
        store
    }
}

/// Immutable, cheaply cloneable store handle for concurrent readers.
#[derive(Debug, Clone)]
pub struct FrozenStore(Arc<TripleStore>);

impl Deref for FrozenStore {
    type Target = TripleStore;

    fn deref(&self) -> &TripleStore {
        &self.0
    }
}
