//! Display-ready resource descriptions.
//!
//! All presentation decisions (grouping, ordering, nesting, collection
//! flattening, labels, math marking) happen here so the HTML layer only
//! iterates and escapes.

mod collection;
mod text;

pub use collection::flatten_collection;
pub use text::{mark_math, resolve_label};

use std::collections::BTreeMap;

use crate::graph::Graph;
use crate::iri::Iri;
use crate::store::{DescriptionBundle, Direction, ValueKey};
use crate::term::{BlankNodeId, Literal, Subject, Term, Triple};
use crate::vocab::{ontolex, rdf, rdfs, skos, wn};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuilderConfig {
    /// Blank nodes nested deeper than this render as stubs.
    pub max_nesting_depth: usize,
    /// Label properties in priority order.
    pub label_properties: Vec<Iri>,
    /// Properties shown right after labels.
    pub definition_properties: Vec<Iri>,
    pub preferred_languages: Vec<String>,
    /// (opening, closing) pairs.
    pub math_delimiters: Vec<(String, String)>,
    pub math_datatype: Option<Iri>,
    /// IRIs under this prefix get an expand control.
    pub local_namespace: Option<String>,
}

impl Default for BuilderConfig {
    fn default() -> Self {
        let iri = |s: &str| Iri::new_unchecked(s.to_owned());
        BuilderConfig {
            max_nesting_depth: 3,
            label_properties: vec![
                iri(rdfs::LABEL),
                iri(skos::PREF_LABEL),
                iri(ontolex::WRITTEN_REP),
            ],
            definition_properties: vec![iri(skos::DEFINITION), iri(wn::DEFINITION)],
            preferred_languages: Vec::new(),
            math_delimiters: [("$", "$"), ("\\(", "\\)"), ("\\[", "\\]")]
                .iter()
                .map(|(o, c)| (o.to_string(), c.to_string()))
                .collect(),
            math_datatype: None,
            local_namespace: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisplayValue {
    LinkedResource {
        iri: Iri,
        label: Option<String>,
        expandable: bool,
    },
    LiteralValue {
        literal: Literal,
        is_math: bool,
    },
    NestedDescription {
        node: Subject,
        groups: Vec<PropertyGroup>,
    },
    /// A flattened RDF collection. `nodes` are the list cells, head first.
    CollectionValue {
        nodes: Vec<BlankNodeId>,
        members: Vec<DisplayValue>,
    },
    /// A blank node past the nesting limit, or an inverse blank subject.
    BlankStub { node: BlankNodeId },
}

impl DisplayValue {
    /// The RDF term this value stands for.
    pub fn term(&self) -> Term {
        match self {
            DisplayValue::LinkedResource { iri, .. } => Term::Iri(iri.clone()),
            DisplayValue::LiteralValue { literal, .. } => Term::Literal(literal.clone()),
            DisplayValue::NestedDescription { node, .. } => Term::from(node.clone()),
            DisplayValue::CollectionValue { nodes, .. } => match nodes.first() {
                Some(head) => Term::Blank(head.clone()),
                None => Term::Iri(Iri::new_unchecked(rdf::NIL.to_owned())),
            },
            DisplayValue::BlankStub { node } => Term::Blank(node.clone()),
        }
    }

    fn collect_triples(&self, out: &mut Graph) {
        match self {
            DisplayValue::NestedDescription { node, groups } => {
                for g in groups {
                    g.collect_triples(node, out);
                }
            }
            DisplayValue::CollectionValue { nodes, members } => {
                let first = Iri::new_unchecked(rdf::FIRST.to_owned());
                let rest = Iri::new_unchecked(rdf::REST.to_owned());
                for (i, (cell, member)) in nodes.iter().zip(members).enumerate() {
                    out.insert(Triple::new(cell.clone(), first.clone(), member.term()));
                    let next = match nodes.get(i + 1) {
                        Some(n) => Term::Blank(n.clone()),
                        None => Term::Iri(Iri::new_unchecked(rdf::NIL.to_owned())),
                    };
                    out.insert(Triple::new(cell.clone(), rest.clone(), next));
                    member.collect_triples(out);
                }
            }
            _ => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyGroup {
    pub property: Iri,
    pub property_label: Option<String>,
    pub direction: Direction,
    pub values: Vec<DisplayValue>,
    pub shown: usize,
    pub total: usize,
}

impl PropertyGroup {
    fn collect_triples(&self, subject: &Subject, out: &mut Graph) {
        for v in &self.values {
            match self.direction {
                Direction::Direct => {
                    out.insert(Triple::new(subject.clone(), self.property.clone(), v.term()));
                }
                Direction::Inverse => {
                    if let Some(s) = v.term().to_subject() {
                        out.insert(Triple::new(s, self.property.clone(), subject.clone()));
                    }
                }
            }
            v.collect_triples(out);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceDescription {
    pub resource: Subject,
    pub label: Option<String>,
    pub groups: Vec<PropertyGroup>,
    /// Hash siblings keyed by fragment text, in IRI order.
    pub siblings: Vec<(String, ResourceDescription)>,
}

impl ResourceDescription {
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty() && self.siblings.is_empty()
    }

    /// Every triple the description shows, including siblings.
    pub fn triples(&self) -> Graph {
        let mut out = Graph::new();
        self.collect_triples(&mut out);
        out
    }

    fn collect_triples(&self, out: &mut Graph) {
        for g in &self.groups {
            g.collect_triples(&self.resource, out);
        }
        for (_, s) in &self.siblings {
            s.collect_triples(out);
        }
    }
}

/// Builds the description of `resource` from a bundle fetched for it.
pub fn build_description(
    bundle: &DescriptionBundle,
    resource: &Subject,
    cfg: &BuilderConfig,
) -> ResourceDescription {
    let builder = Builder {
        graph: &bundle.direct,
        truncation: &bundle.truncation,
        cfg,
    };
    let mut description = builder.describe(resource);
    description.groups.extend(builder.inverse_groups(&bundle.inverse, resource));
    let is_base = resource.as_iri().is_some_and(|i| i.fragment().is_none());
    if is_base {
        for sibling in &bundle.siblings {
            let Some(fragment) = sibling.fragment() else { continue };
            let d = builder.describe(&Subject::Iri(sibling.clone()));
            description.siblings.push((fragment.to_owned(), d));
        }
    }
    description
}

struct Builder<'a> {
    graph: &'a Graph,
    truncation: &'a BTreeMap<ValueKey, usize>,
    cfg: &'a BuilderConfig,
}

impl Builder<'_> {
    fn describe(&self, subject: &Subject) -> ResourceDescription {
        ResourceDescription {
            resource: subject.clone(),
            label: text::label_of(self.graph, subject, self.cfg),
            groups: self.direct_groups(subject, 1),
            siblings: Vec::new(),
        }
    }

    /// Groups of `subject`, whose values sit at nesting `level`.
    fn direct_groups(&self, subject: &Subject, level: usize) -> Vec<PropertyGroup> {
        let mut groups: Vec<PropertyGroup> = self
            .graph
            .properties_of(subject)
            .into_iter()
            .map(|(property, values)| {
                let values: Vec<DisplayValue> =
                    values.into_iter().map(|v| self.value(v, level)).collect();
                let key = ValueKey::new(subject.clone(), property.clone(), Direction::Direct);
                self.group(property, Direction::Direct, values, &key)
            })
            .collect();
        groups.sort_by(|a, b| {
            self.rank(&a.property)
                .cmp(&self.rank(&b.property))
                .then_with(|| a.property.cmp(&b.property))
        });
        groups
    }

    fn inverse_groups(&self, inverse: &Graph, resource: &Subject) -> Vec<PropertyGroup> {
        let object = Term::from(resource.clone());
        let mut by_property: BTreeMap<&Iri, Vec<&Subject>> = BTreeMap::new();
        for t in inverse.iter().filter(|t| t.object == object) {
            by_property.entry(&t.predicate).or_default().push(&t.subject);
        }
        by_property
            .into_iter()
            .map(|(property, mut subjects)| {
                subjects.sort_by_key(|s| Term::from((*s).clone()));
                let values = subjects
                    .into_iter()
                    .map(|s| match s {
                        Subject::Iri(i) => self.link(i),
                        Subject::Blank(b) => DisplayValue::BlankStub { node: b.clone() },
                    })
                    .collect();
                let key = ValueKey::new(resource.clone(), property.clone(), Direction::Inverse);
                self.group(property, Direction::Inverse, values, &key)
            })
            .collect()
    }

    fn group(
        &self,
        property: &Iri,
        direction: Direction,
        values: Vec<DisplayValue>,
        key: &ValueKey,
    ) -> PropertyGroup {
        let shown = values.len();
        let total = self.truncation.get(key).copied().unwrap_or(shown).max(shown);
        PropertyGroup {
            property: property.clone(),
            property_label: resolve_label(self.graph, property, self.cfg),
            direction,
            values,
            shown,
            total,
        }
    }

    fn rank(&self, property: &Iri) -> (u8, usize) {
        if property.as_str() == rdf::TYPE {
            return (0, 0);
        }
        if let Some(i) = self.cfg.label_properties.iter().position(|p| p == property) {
            return (1, i);
        }
        if let Some(i) = self.cfg.definition_properties.iter().position(|p| p == property) {
            return (2, i);
        }
        (3, 0)
    }

    fn link(&self, iri: &Iri) -> DisplayValue {
        let expandable = self
            .cfg
            .local_namespace
            .as_deref()
            .is_some_and(|ns| iri.as_str().starts_with(ns));
        DisplayValue::LinkedResource {
            iri: iri.clone(),
            label: resolve_label(self.graph, iri, self.cfg),
            expandable,
        }
    }

    fn value(&self, term: &Term, level: usize) -> DisplayValue {
        match term {
            Term::Literal(l) => DisplayValue::LiteralValue {
                literal: l.clone(),
                is_math: mark_math(l, self.cfg),
            },
            Term::Iri(i) => self.link(i),
            Term::Blank(b) if level > self.cfg.max_nesting_depth => {
                DisplayValue::BlankStub { node: b.clone() }
            }
            Term::Blank(b) => {
                if let Some(cells) = self.plain_collection(term) {
                    let (nodes, members) = cells
                        .into_iter()
                        .map(|(node, member)| (node, self.value(&member, level + 1)))
                        .unzip();
                    return DisplayValue::CollectionValue { nodes, members };
                }
                let node = Subject::Blank(b.clone());
                let groups = self.direct_groups(&node, level + 1);
                DisplayValue::NestedDescription { node, groups }
            }
        }
    }

    /// A well-formed list whose cells are blank nodes carrying nothing but
    /// `rdf:first` and `rdf:rest`; anything else is shown raw so no triple is
    /// hidden.
    fn plain_collection(&self, head: &Term) -> Option<Vec<(BlankNodeId, Term)>> {
        let cells = collection::cells(self.graph, head)?;
        cells
            .into_iter()
            .map(|(cell, member)| {
                let bare = self.graph.about(&cell).count() == 2;
                match cell {
                    Subject::Blank(b) if bare => Some((b, member)),
                    _ => None,
                }
            })
            .collect()
    }
}
