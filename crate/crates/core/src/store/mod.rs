//! Access to the dataset behind one contract.
//!
//! [`MemoryStore`] holds a parsed fixture; [`SparqlClient`] talks to a remote
//! endpoint over the SPARQL 1.1 protocol. Both return the same
//! [`DescriptionBundle`]s and value pages for the same data.
//!
//! Values of one property are always ordered literals first, then IRIs, then
//! blank nodes; within a kind by lexical form (IRI text, blank label), then
//! language tag, then datatype IRI, compared by code point. The order is
//! expressible as a SPARQL `ORDER BY`, which keeps remote pagination stable.

mod memory;
mod results;
mod sparql;

pub use memory::MemoryStore;
pub use results::{parse_results_json, QueryResults, ResultsError};
pub use sparql::{EndpointConfig, SparqlClient};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use async_trait::async_trait;
use thiserror::Error;

use crate::graph::Graph;
use crate::iri::Iri;
use crate::term::{Subject, Term};
use crate::vocab::rdf;

/// Page size meaning "no truncation".
pub const UNLIMITED: usize = usize::MAX;

/// Blank-node closure depth used when the caller does not choose one.
pub const DEFAULT_CLOSURE_DEPTH: usize = 3;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("SPARQL endpoint unreachable: {0}")]
    Unreachable(String),
    #[error("SPARQL endpoint returned {status}: {message}")]
    Endpoint { status: u16, message: String },
    #[error("SPARQL endpoint timed out")]
    Timeout,
    #[error("malformed endpoint response: {0}")]
    MalformedResponse(String),
    #[error("{0}")]
    Unsupported(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Direct,
    Inverse,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Direct => "direct",
            Direction::Inverse => "inverse",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown direction {0:?}")]
pub struct UnknownDirection(String);

impl FromStr for Direction {
    type Err = UnknownDirection;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Direction::Direct),
            "inverse" => Ok(Direction::Inverse),
            other => Err(UnknownDirection(other.to_owned())),
        }
    }
}

/// Identifies the values of one property of one node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueKey {
    pub subject: Subject,
    pub property: Iri,
    pub direction: Direction,
}

impl ValueKey {
    pub fn new(subject: Subject, property: Iri, direction: Direction) -> Self {
        ValueKey {
            subject,
            property,
            direction,
        }
    }
}

/// Everything fetched to describe one resource.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DescriptionBundle {
    /// Triples about the resource and its hash siblings, plus the closure of
    /// blank-node objects.
    pub direct: Graph,
    /// Triples whose object is the resource.
    pub inverse: Graph,
    /// Hash IRIs sharing the resource's base, sorted.
    pub siblings: Vec<Iri>,
    /// Full value counts for keys whose values were cut at the page size.
    pub truncation: BTreeMap<ValueKey, usize>,
}

impl DescriptionBundle {
    pub fn is_empty(&self) -> bool {
        self.direct.is_empty() && self.inverse.is_empty()
    }

    /// Direct and inverse triples together.
    pub fn all_triples(&self) -> Graph {
        let mut g = self.direct.clone();
        g.extend_from(&self.inverse);
        g
    }
}

/// One page of values plus the exact total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuePage {
    pub values: Vec<Term>,
    pub total: usize,
}

#[async_trait]
pub trait Gateway: Send + Sync {
    /// Describes `resource`: its own triples and those of every `resource#…`
    /// sibling (IRI resources only), with at most `page_size` values per
    /// (subject, property), the closure of blank-node objects, and up to
    /// `page_size` inverse values per property.
    ///
    /// The resource must not carry a fragment; pass the base IRI.
    async fn fetch_description(
        &self,
        resource: &Subject,
        page_size: usize,
    ) -> Result<DescriptionBundle, StoreError>;

    /// Values `[offset, offset + limit)` of one property in value order.
    async fn fetch_property_page(
        &self,
        resource: &Subject,
        property: &Iri,
        direction: Direction,
        offset: usize,
        limit: usize,
    ) -> Result<ValuePage, StoreError>;

    /// Whether the resource or a hash sibling occurs in any triple.
    async fn ask_exists(&self, resource: &Iri) -> Result<bool, StoreError>;
}

pub(crate) fn is_rest(iri: &Iri) -> bool {
    iri.as_str() == rdf::REST
}
