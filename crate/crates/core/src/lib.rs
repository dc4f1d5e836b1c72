//! Core of the lodlens Linked Data server.
//!
//! * [`iri`], [`term`], [`graph`]: the RDF data model, with IRIs held in
//!   decoded Unicode form.
//! * [`turtle`]: Turtle and N-Triples parsing and serialization.
//! * [`store`]: the dataset gateway, backed by an in-memory store or a remote
//!   SPARQL endpoint.
//! * [`describe`]: turns fetched triples into a display-ready description.
//! * [`html`]: server-side rendering of resource pages and fragments.

pub mod describe;
pub mod graph;
pub mod html;
pub mod iri;
pub mod site;
pub mod store;
pub mod term;
pub mod turtle;
pub mod vocab;

pub use graph::Graph;
pub use iri::{iri_to_ascii, parse_iri, split_hash, Iri, IriError};
pub use term::{BlankNodeAllocator, BlankNodeId, Literal, Subject, Term, Triple};
