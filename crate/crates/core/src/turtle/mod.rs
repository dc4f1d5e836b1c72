//! Turtle and N-Triples.
//!
//! Turtle output keeps IRIs in decoded form so Cyrillic and other scripts stay
//! readable; N-Triples output uses the percent-encoded ASCII form.

mod parser;
mod serializer;

pub use parser::{parse_turtle, parse_turtle_into, TurtleError};
pub use serializer::{serialize_ntriples, serialize_turtle, SerializeOptions};

use crate::graph::Graph;
use crate::iri::Iri;
use crate::term::{Subject, Term};
use crate::vocab;

pub const TURTLE_MEDIA_TYPE: &str = "text/turtle";
pub const NTRIPLES_MEDIA_TYPE: &str = "application/n-triples";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("prefix {0:?} is already bound")]
pub struct DuplicatePrefix(pub String);

/// Ordered prefix declarations with unique labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, Iri)>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Prefixes for the vocabularies lexical datasets commonly use.
    pub fn common() -> Self {
        let mut map = PrefixMap::new();
        for (label, ns) in [
            ("rdf", vocab::rdf::NS),
            ("rdfs", vocab::rdfs::NS),
            ("xsd", vocab::xsd::NS),
            ("owl", vocab::OWL),
            ("skos", vocab::skos::NS),
            ("ontolex", vocab::ontolex::NS),
            ("lime", vocab::LIME),
            ("lexinfo", vocab::LEXINFO),
            ("wn", vocab::wn::NS),
            ("dct", vocab::DCT),
            ("foaf", vocab::FOAF),
        ] {
            map.entries.push((label.to_owned(), Iri::new_unchecked(ns)));
        }
        map
    }

    pub fn insert(&mut self, label: impl Into<String>, namespace: Iri) -> Result<(), DuplicatePrefix> {
        let label = label.into();
        if self.entries.iter().any(|(l, _)| *l == label) {
            return Err(DuplicatePrefix(label));
        }
        self.entries.push((label, namespace));
        Ok(())
    }

    /// Binds `label`, replacing an earlier binding of the same label.
    pub fn set(&mut self, label: impl Into<String>, namespace: Iri) {
        let label = label.into();
        match self.entries.iter_mut().find(|(l, _)| *l == label) {
            Some(entry) => entry.1 = namespace,
            None => self.entries.push((label, namespace)),
        }
    }

    pub fn get(&self, label: &str) -> Option<&Iri> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, ns)| ns)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(l, ns)| (l.as_str(), ns))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The longest namespace that `iri` starts with, with the local part.
    pub fn split<'a>(&'a self, iri: &'a Iri) -> Option<(&'a str, &'a str)> {
        self.entries
            .iter()
            .filter(|(_, ns)| iri.as_str().starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.as_str().len())
            .map(|(label, ns)| (label.as_str(), &iri.as_str()[ns.as_str().len()..]))
    }

    /// `prefix:local` when the local part is a plain Turtle local name.
    pub fn compact(&self, iri: &Iri) -> Option<String> {
        let (label, local) = self.split(iri)?;
        serializer::is_plain_local_name(local).then(|| format!("{label}:{local}"))
    }

    /// The subset of this map that serializing `graph` would use.
    pub fn used_by(&self, graph: &Graph) -> PrefixMap {
        let mut used = vec![false; self.entries.len()];
        let mut mark = |iri: &Iri| {
            if let Some((label, local)) = self.split(iri) {
                if !serializer::is_plain_local_name(local) {
                    return;
                }
                if let Some(i) = self.entries.iter().position(|(l, _)| l == label) {
                    used[i] = true;
                }
            }
        };
        for t in graph {
            if let Subject::Iri(i) = &t.subject {
                mark(i);
            }
            if t.predicate.as_str() != vocab::rdf::TYPE {
                mark(&t.predicate);
            }
            match &t.object {
                Term::Iri(i) => mark(i),
                Term::Literal(l) => {
                    if let Some(dt) = l.datatype() {
                        mark(dt);
                    }
                }
                Term::Blank(_) => {}
            }
        }
        PrefixMap {
            entries: self
                .entries
                .iter()
                .zip(used)
                .filter(|&(_, u)| u)
                .map(|(e, _)| e.clone())
                .collect(),
        }
    }
}
