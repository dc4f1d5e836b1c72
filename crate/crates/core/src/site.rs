//! Mapping between resource IRIs and the paths this server answers on.
//!
//! A resource IRI is the namespace origin followed by the request path, so
//! `http://lod.ruthes.org/resource/entry/x` is served at `/resource/entry/x`
//! whatever host the server actually listens on.

use thiserror::Error;

use crate::iri::{encode_component, encode_non_ascii, Iri};
use crate::term::Subject;

pub const FRAGMENT_API: &str = "/api/fragment";
pub const VALUES_API: &str = "/api/values";
pub const ASSETS_PREFIX: &str = "/assets/";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("base namespace {0:?} must be an absolute http(s) IRI with a path")]
pub struct InvalidNamespace(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    base_namespace: Iri,
    /// `scheme://authority`, no trailing slash.
    origin: String,
}

impl Site {
    pub fn new(base_namespace: Iri) -> Result<Self, InvalidNamespace> {
        let text = base_namespace.as_str();
        let invalid = || InvalidNamespace(text.to_owned());
        let scheme_end = text.find("://").ok_or_else(invalid)?;
        if !matches!(&text[..scheme_end], "http" | "https") || base_namespace.fragment().is_some() {
            return Err(invalid());
        }
        let authority_start = scheme_end + 3;
        let path_start = text[authority_start..]
            .find(['/', '?'])
            .map_or(text.len(), |i| authority_start + i);
        if path_start == authority_start || !text[path_start..].starts_with('/') {
            return Err(invalid());
        }
        Ok(Site {
            origin: text[..path_start].to_owned(),
            base_namespace,
        })
    }

    pub fn base_namespace(&self) -> &Iri {
        &self.base_namespace
    }

    pub fn origin(&self) -> &str {
        &self.origin
    }

    pub fn is_local(&self, iri: &Iri) -> bool {
        iri.as_str().starts_with(self.base_namespace.as_str())
    }

    /// The resource named by a decoded request path, if it lies in the
    /// namespace.
    pub fn resource_for_path(&self, path: &str) -> Option<Iri> {
        if !path.starts_with('/') || path.contains('#') {
            return None;
        }
        let iri = Iri::parse(&format!("{}{}", self.origin, path)).ok()?;
        self.is_local(&iri).then_some(iri)
    }

    /// Same-origin ASCII path for a local IRI, fragment included.
    pub fn path_of(&self, iri: &Iri) -> Option<String> {
        if !self.is_local(iri) {
            return None;
        }
        let rest = &iri.as_str()[self.origin.len()..];
        let path = if rest.starts_with('/') {
            encode_non_ascii(rest)
        } else {
            format!("/{}", encode_non_ascii(rest))
        };
        Some(path)
    }

    /// Link target: a same-origin path for local IRIs, the ASCII IRI otherwise.
    pub fn href(&self, iri: &Iri) -> String {
        self.path_of(iri).unwrap_or_else(|| iri.to_ascii())
    }

    /// Path of a representation of a local resource, e.g. `.ttl`.
    pub fn document_path(&self, iri: &Iri, suffix: &str) -> Option<String> {
        let (base, _) = iri.split_hash();
        self.path_of(&base).map(|p| format!("{p}{suffix}"))
    }

    pub fn fragment_url(&self, node: &Subject) -> String {
        format!("{FRAGMENT_API}?uri={}", encode_component(&subject_param(node)))
    }

    pub fn values_url(
        &self,
        node: &Subject,
        property: &Iri,
        direction: &str,
        offset: usize,
        limit: usize,
    ) -> String {
        format!(
            "{VALUES_API}?uri={}&property={}&direction={direction}&offset={offset}&limit={limit}",
            encode_component(&subject_param(node)),
            encode_component(property.as_str()),
        )
    }
}

/// Query-parameter form of a node: the IRI text or `_:label`.
pub fn subject_param(node: &Subject) -> String {
    match node {
        Subject::Iri(i) => i.as_str().to_owned(),
        Subject::Blank(b) => b.to_string(),
    }
}
