use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::iri::Iri;
use crate::term::{BlankNodeId, Subject, Term, Triple};

/// A set of triples iterated in (subject, predicate, object) order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` when the triple was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn extend_from(&mut self, other: &Graph) {
        self.triples.extend(other.triples.iter().cloned());
    }

    /// All triples with the given subject, in order.
    pub fn about<'a>(&'a self, subject: &'a Subject) -> impl Iterator<Item = &'a Triple> + 'a {
        let start = Triple {
            subject: subject.clone(),
            predicate: Iri::new_unchecked(""),
            object: Term::min_value(),
        };
        self.triples
            .range(start..)
            .take_while(move |t| &t.subject == subject)
    }

    /// Objects of `(subject, predicate, ?)`, in value order.
    pub fn objects<'a>(
        &'a self,
        subject: &'a Subject,
        predicate: &'a Iri,
    ) -> impl Iterator<Item = &'a Term> + 'a {
        let start = Triple {
            subject: subject.clone(),
            predicate: predicate.clone(),
            object: Term::min_value(),
        };
        self.triples
            .range(start..)
            .take_while(move |t| &t.subject == subject && &t.predicate == predicate)
            .map(|t| &t.object)
    }

    /// IRI subjects whose text starts with `prefix`, in order.
    pub fn iri_subjects_with_prefix<'a>(&'a self, prefix: &'a str) -> Vec<&'a Iri> {
        let start = Triple {
            subject: Subject::Iri(Iri::new_unchecked(prefix)),
            predicate: Iri::new_unchecked(""),
            object: Term::min_value(),
        };
        let mut out: Vec<&Iri> = Vec::new();
        for t in self.triples.range(start..) {
            match &t.subject {
                Subject::Iri(i) if i.as_str().starts_with(prefix) => {
                    if out.last() != Some(&i) {
                        out.push(i);
                    }
                }
                _ => break,
            }
        }
        out
    }

    /// Objects grouped by predicate for one subject.
    pub fn properties_of<'a>(&'a self, subject: &'a Subject) -> BTreeMap<&'a Iri, Vec<&'a Term>> {
        let mut map: BTreeMap<&Iri, Vec<&Term>> = BTreeMap::new();
        for t in self.about(subject) {
            map.entry(&t.predicate).or_default().push(&t.object);
        }
        map
    }

    pub fn blank_nodes(&self) -> BTreeSet<&BlankNodeId> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            if let Subject::Blank(b) = &t.subject {
                out.insert(b);
            }
            if let Term::Blank(b) = &t.object {
                out.insert(b);
            }
        }
        out
    }

    /// Graph equality up to a bijective renaming of blank nodes.
    ///
    /// Backtracking search over candidate mappings, pruned by a per-node
    /// signature. Exponential in the worst case; intended for graphs with a
    /// few dozen blank nodes at most.
    pub fn is_isomorphic(&self, other: &Graph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let ground = |g: &Graph| -> BTreeSet<Triple> {
            g.iter().filter(|t| !has_blank(t)).cloned().collect()
        };
        if ground(self) != ground(other) {
            return false;
        }
        let left: Vec<&BlankNodeId> = self.blank_nodes().into_iter().collect();
        let right: Vec<&BlankNodeId> = other.blank_nodes().into_iter().collect();
        if left.len() != right.len() {
            return false;
        }
        let left_sig = signatures(self);
        let right_sig = signatures(other);
        let mut candidates: Vec<Vec<&BlankNodeId>> = Vec::with_capacity(left.len());
        for b in &left {
            let sig = &left_sig[*b];
            let c: Vec<&BlankNodeId> = right.iter().copied().filter(|r| &right_sig[*r] == sig).collect();
            if c.is_empty() {
                return false;
            }
            candidates.push(c);
        }
        // Most constrained nodes first.
        let mut order: Vec<usize> = (0..left.len()).collect();
        order.sort_by_key(|&i| candidates[i].len());

        let mut touching: HashMap<&BlankNodeId, Vec<&Triple>> = HashMap::new();
        for t in self.iter().filter(|t| has_blank(t)) {
            if let Subject::Blank(b) = &t.subject {
                touching.entry(b).or_default().push(t);
            }
            if let Term::Blank(b) = &t.object {
                touching.entry(b).or_default().push(t);
            }
        }
        let mut search = Search {
            left: &left,
            candidates: &candidates,
            order: &order,
            touching: &touching,
            target: other,
            mapping: HashMap::new(),
            used: HashSet::new(),
        };
        search.run(0)
    }
}

fn has_blank(t: &Triple) -> bool {
    matches!(t.subject, Subject::Blank(_)) || matches!(t.object, Term::Blank(_))
}

type Signature = Vec<(u8, String, String)>;

fn signatures(g: &Graph) -> HashMap<&BlankNodeId, Signature> {
    let mut sig: HashMap<&BlankNodeId, Signature> = HashMap::new();
    let show = |t: &Term| match t {
        Term::Blank(_) => "_".to_owned(),
        other => format!("{other:?}"),
    };
    for t in g.iter() {
        if let Subject::Blank(b) = &t.subject {
            sig.entry(b)
                .or_default()
                .push((0, t.predicate.to_string(), show(&t.object)));
        }
        if let Term::Blank(b) = &t.object {
            let s = match &t.subject {
                Subject::Blank(_) => "_".to_owned(),
                Subject::Iri(i) => i.to_string(),
            };
            sig.entry(b).or_default().push((1, t.predicate.to_string(), s));
        }
    }
    for v in sig.values_mut() {
        v.sort();
    }
    sig
}

struct Search<'a> {
    left: &'a [&'a BlankNodeId],
    candidates: &'a [Vec<&'a BlankNodeId>],
    order: &'a [usize],
    touching: &'a HashMap<&'a BlankNodeId, Vec<&'a Triple>>,
    target: &'a Graph,
    mapping: HashMap<&'a BlankNodeId, &'a BlankNodeId>,
    used: HashSet<&'a BlankNodeId>,
}

impl<'a> Search<'a> {
    fn run(&mut self, depth: usize) -> bool {
        let Some(&idx) = self.order.get(depth) else {
            return true;
        };
        let node = self.left[idx];
        for &cand in &self.candidates[idx] {
            if self.used.contains(cand) {
                continue;
            }
            self.mapping.insert(node, cand);
            self.used.insert(cand);
            if self.consistent(node) && self.run(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(cand);
        }
        false
    }

    fn consistent(&self, node: &BlankNodeId) -> bool {
        let Some(ts) = self.touching.get(node) else {
            return true;
        };
        for t in ts {
            let subject = match &t.subject {
                Subject::Blank(b) => match self.mapping.get(b) {
                    Some(m) => Subject::Blank((*m).clone()),
                    None => continue,
                },
                s => s.clone(),
            };
            let object = match &t.object {
                Term::Blank(b) => match self.mapping.get(b) {
                    Some(m) => Term::Blank((*m).clone()),
                    None => continue,
                },
                o => o.clone(),
            };
            let mapped = Triple {
                subject,
                predicate: t.predicate.clone(),
                object,
            };
            if !self.target.contains(&mapped) {
                return false;
            }
        }
        true
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}

impl<'a> IntoIterator for &'a Graph {
    type Item = &'a Triple;
    type IntoIter = std::collections::btree_set::Iter<'a, Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

impl IntoIterator for Graph {
    type Item = Triple;
    type IntoIter = std::collections::btree_set::IntoIter<Triple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.into_iter()
    }
}
