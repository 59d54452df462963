//! Basic graph pattern evaluation over a [`TripleStore`].
//!
//! Patterns are matched by an index nested-loop join. At every step the
//! remaining pattern with the fewest index candidates under the current
//! bindings is evaluated next.

mod compare;
mod store;

use std::collections::BTreeMap;
use std::fmt;

pub use compare::compare_terms;
pub use store::{FrozenStore, TripleStore};

use crate::rdf::Term;
use store::TermId;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Const(Term),
    Var(String),
}

/// `?name`
pub fn var(name: &str) -> PatternTerm {
    PatternTerm::Var(name.to_string())
}

/// IRI constant.
pub fn iri(iri: &str) -> PatternTerm {
    PatternTerm::Const(Term::iri(iri))
}

impl From<Term> for PatternTerm {
    fn from(term: Term) -> Self {
        PatternTerm::Const(term)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Const(t) => write!(f, "{t}"),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

/// One solution: variable name to bound term.
pub type BindingSet = BTreeMap<String, Term>;

#[derive(Debug, Clone, Copy)]
enum Slot {
    Const(TermId),
    Var(usize),
}

/// Patterns rewritten against the store dictionary and a shared variable table.
struct Compiled {
    patterns: Vec<[Slot; 3]>,
    /// A constant absent from the dictionary makes the group unsatisfiable.
    unsatisfiable: bool,
}

#[derive(Default)]
struct Variables {
    names: Vec<String>,
}

impl Variables {
    fn index(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }
}

type Solution = Vec<Option<TermId>>;

fn compile(store: &TripleStore, patterns: &[TriplePattern], vars: &mut Variables) -> Compiled {
    let mut unsatisfiable = false;
    let patterns = patterns
        .iter()
        .map(|pattern| {
            pattern.positions().map(|position| match position {
                PatternTerm::Var(name) => Slot::Var(vars.index(name)),
                PatternTerm::Const(term) => match store.term_id(term) {
                    Some(id) => Slot::Const(id),
                    None => {
                        unsatisfiable = true;
                        Slot::Const(TermId::MAX)
                    }
                },
            })
        })
        .collect();
    Compiled {
        patterns,
        unsatisfiable,
    }
}

fn resolve(slot: Slot, solution: &Solution) -> Option<TermId> {
    match slot {
        Slot::Const(id) => Some(id),
        Slot::Var(v) => solution[v],
    }
}

/// Bindings produced by matching one triple against a pattern, or `None`
/// when the triple is incompatible with the current solution.
fn unify(pattern: &[Slot; 3], triple: [TermId; 3], solution: &Solution) -> Option<Solution> {
    let mut next = solution.clone();
    for (slot, value) in pattern.iter().zip(triple) {
        match *slot {
            Slot::Const(id) if id != value => return None,
            Slot::Const(_) => {}
            Slot::Var(v) => match next[v] {
                Some(bound) if bound != value => return None,
                Some(_) => {}
                None => next[v] = Some(value),
            },
        }
    }
    Some(next)
}

fn candidate_count(store: &TripleStore, pattern: &[Slot; 3], solution: &Solution) -> usize {
    let [s, p, o] = pattern.map(|slot| resolve(slot, solution));
    store.candidates(s, p, o).map_or(store.len(), <[u32]>::len)
}

/// Depth-first extension of `solution` by every pattern in `remaining`.
fn extend(
    store: &TripleStore,
    patterns: &[[Slot; 3]],
    remaining: &mut Vec<usize>,
    solution: Solution,
    out: &mut Vec<Solution>,
) {
    if remaining.is_empty() {
        out.push(solution);
        return;
    }
    let (pick, _) = remaining
        .iter()
        .enumerate()
        .map(|(i, &p)| (i, candidate_count(store, &patterns[p], &solution)))
        .min_by_key(|&(i, count)| (count, i))
        .expect("non-empty");
    let chosen = remaining.remove(pick);
    let pattern = &patterns[chosen];
    let [s, p, o] = pattern.map(|slot| resolve(slot, &solution));

    let step = |position: u32, out: &mut Vec<Solution>, remaining: &mut Vec<usize>| {
        if let Some(next) = unify(pattern, store.encoded(position), &solution) {
            extend(store, patterns, remaining, next, out);
        }
    };
    match store.candidates(s, p, o) {
        Some(list) => {
            for &position in list {
                step(position, out, remaining);
            }
        }
        None => {
            for position in store.all_positions() {
                step(position, out, remaining);
            }
        }
    }
    remaining.insert(pick, chosen);
}

fn evaluate(store: &TripleStore, compiled: &Compiled, seed: Solution, out: &mut Vec<Solution>) {
    if compiled.unsatisfiable {
        return;
    }
    let mut remaining: Vec<usize> = (0..compiled.patterns.len()).collect();
    extend(store, &compiled.patterns, &mut remaining, seed, out);
}

fn decode(store: &TripleStore, vars: &Variables, solution: &Solution) -> BindingSet {
    vars.names
        .iter()
        .zip(solution)
        .filter_map(|(name, value)| value.map(|id| (name.clone(), store.term(id).clone())))
        .collect()
}

/// Matches a single pattern; one binding set per matching triple.
pub fn match_pattern(store: &TripleStore, pattern: &TriplePattern) -> Vec<BindingSet> {
    match_bgp(store, std::slice::from_ref(pattern))
}

/// Natural join of all patterns.
pub fn match_bgp(store: &TripleStore, patterns: &[TriplePattern]) -> Vec<BindingSet> {
    match_optional(store, patterns, &[])
}

/// `required` joined, then left-outer-joined with each optional group in
/// order. A solution with no compatible extension is kept as is.
pub fn match_optional(
    store: &TripleStore,
    required: &[TriplePattern],
    optional_groups: &[Vec<TriplePattern>],
) -> Vec<BindingSet> {
    let mut vars = Variables::default();
    let required = compile(store, required, &mut vars);
    let groups: Vec<Compiled> = optional_groups
        .iter()
        .map(|g| compile(store, g, &mut vars))
        .collect();
    let width = vars.names.len();

    let mut solutions = Vec::new();
    evaluate(store, &required, vec![None; width], &mut solutions);

    for group in &groups {
        let mut next = Vec::with_capacity(solutions.len());
        for solution in solutions {
            let before = next.len();
            evaluate(store, group, solution.clone(), &mut next);
            if next.len() == before {
                next.push(solution);
            }
        }
        solutions = next;
    }
    solutions.iter().map(|s| decode(store, &vars, s)).collect()
}
