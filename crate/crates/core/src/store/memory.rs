use std::collections::{BTreeMap, HashMap, VecDeque};

use async_trait::async_trait;

use crate::graph::Graph;
use crate::iri::Iri;
use crate::store::{
    is_rest, DescriptionBundle, Direction, Gateway, StoreError, ValueKey, ValuePage,
    DEFAULT_CLOSURE_DEPTH,
};
use crate::term::{BlankNodeId, Subject, Term, Triple};
use crate::turtle::{parse_turtle, TurtleError};

/// An immutable in-memory dataset.
///
/// Blank node labels are assigned once at load time and stay stable, so blank
/// nodes can be described directly (unlike through a remote endpoint).
#[derive(Debug, Clone)]
pub struct MemoryStore {
    graph: Graph,
    by_object: BTreeMap<Term, BTreeMap<Iri, Vec<Subject>>>,
    closure_depth: usize,
}

impl MemoryStore {
    pub fn new(graph: Graph) -> Self {
        let mut by_object: BTreeMap<Term, BTreeMap<Iri, Vec<Subject>>> = BTreeMap::new();
        for t in &graph {
            by_object
                .entry(t.object.clone())
                .or_default()
                .entry(t.predicate.clone())
                .or_default()
                .push(t.subject.clone());
        }
        MemoryStore {
            graph,
            by_object,
            closure_depth: DEFAULT_CLOSURE_DEPTH,
        }
    }

    pub fn from_turtle(text: &str, base: Option<&Iri>) -> Result<Self, TurtleError> {
        parse_turtle(text, base).map(Self::new)
    }

    /// Sets how many non-`rdf:rest` hops of blank nodes are followed.
    pub fn with_closure_depth(mut self, depth: usize) -> Self {
        self.closure_depth = depth;
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    fn describe(&self, resource: &Subject, page_size: usize) -> DescriptionBundle {
        let mut bundle = DescriptionBundle::default();
        let mut subjects = vec![resource.clone()];
        if let Subject::Iri(r) = resource {
            let prefix = format!("{r}#");
            bundle.siblings = self
                .graph
                .iri_subjects_with_prefix(&prefix)
                .into_iter()
                .cloned()
                .collect();
            subjects.extend(bundle.siblings.iter().cloned().map(Subject::Iri));
        }

        let mut frontier = Vec::new();
        for subject in &subjects {
            for (property, values) in self.graph.properties_of(subject) {
                if values.len() > page_size {
                    bundle.truncation.insert(
                        ValueKey::new(subject.clone(), property.clone(), Direction::Direct),
                        values.len(),
                    );
                }
                for value in values.into_iter().take(page_size) {
                    if let Term::Blank(b) = value {
                        frontier.push(b.clone());
                    }
                    bundle
                        .direct
                        .insert(Triple::new(subject.clone(), property.clone(), value.clone()));
                }
            }
        }
        self.add_closure(frontier, &mut bundle.direct);

        let object = Term::from(resource.clone());
        if let Some(by_property) = self.by_object.get(&object) {
            for (property, subjects) in by_property {
                if subjects.len() > page_size {
                    bundle.truncation.insert(
                        ValueKey::new(resource.clone(), property.clone(), Direction::Inverse),
                        subjects.len(),
                    );
                }
                for s in subjects.iter().take(page_size) {
                    bundle
                        .inverse
                        .insert(Triple::new(s.clone(), property.clone(), object.clone()));
                }
            }
        }
        bundle
    }

    /// Adds the triples of every blank node reachable from `roots` within the
    /// closure depth. `rdf:rest` hops are free so whole lists come along.
    fn add_closure(&self, roots: Vec<BlankNodeId>, out: &mut Graph) {
        let mut best: HashMap<BlankNodeId, usize> = HashMap::new();
        let mut queue: VecDeque<(BlankNodeId, usize)> = VecDeque::new();
        for root in roots {
            if self.closure_depth >= 1 && !best.contains_key(&root) {
                best.insert(root.clone(), 1);
                queue.push_back((root, 1));
            }
        }
        while let Some((node, depth)) = queue.pop_front() {
            if best.get(&node).is_some_and(|&d| d < depth) {
                continue;
            }
            let subject = Subject::Blank(node);
            for t in self.graph.about(&subject) {
                out.insert(t.clone());
                let Term::Blank(next) = &t.object else { continue };
                let next_depth = if is_rest(&t.predicate) { depth } else { depth + 1 };
                if next_depth > self.closure_depth {
                    continue;
                }
                if best.get(next).is_none_or(|&d| next_depth < d) {
                    best.insert(next.clone(), next_depth);
                    if next_depth == depth {
                        queue.push_front((next.clone(), next_depth));
                    } else {
                        queue.push_back((next.clone(), next_depth));
                    }
                }
            }
        }
    }

    fn values(&self, resource: &Subject, property: &Iri, direction: Direction) -> Vec<Term> {
        match direction {
            Direction::Direct => self.graph.objects(resource, property).cloned().collect(),
            Direction::Inverse => self
                .by_object
                .get(&Term::from(resource.clone()))
                .and_then(|m| m.get(property))
                .map(|subjects| subjects.iter().cloned().map(Term::from).collect())
                .unwrap_or_default(),
        }
    }

    fn exists(&self, resource: &Iri) -> bool {
        let subject = Subject::Iri(resource.clone());
        if self.graph.about(&subject).next().is_some() {
            return true;
        }
        let prefix = format!("{resource}#");
        if !self.graph.iri_subjects_with_prefix(&prefix).is_empty() {
            return true;
        }
        if self.by_object.contains_key(&Term::Iri(resource.clone())) {
            return true;
        }
        self.by_object
            .range(Term::Iri(Iri::new_unchecked(prefix.clone()))..)
            .next()
            .is_some_and(|(t, _)| matches!(t, Term::Iri(i) if i.as_str().starts_with(&prefix)))
    }
}

#[async_trait]
impl Gateway for MemoryStore {
    async fn fetch_description(
        &self,
        resource: &Subject,
        page_size: usize,
    ) -> Result<DescriptionBundle, StoreError> {
        Ok(self.describe(resource, page_size))
    }

    async fn fetch_property_page(
        &self,
        resource: &Subject,
        property: &Iri,
        direction: Direction,
        offset: usize,
        limit: usize,
    ) -> Result<ValuePage, StoreError> {
        let all = self.values(resource, property, direction);
        let total = all.len();
        let values = all.into_iter().skip(offset).take(limit).collect();
        Ok(ValuePage { values, total })
    }

    async fn ask_exists(&self, resource: &Iri) -> Result<bool, StoreError> {
        Ok(self.exists(resource))
    }
}
