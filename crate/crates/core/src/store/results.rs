//! SPARQL 1.1 query results in JSON.

use std::collections::HashMap;

use serde::Deserialize;
use thiserror::Error;

use crate::iri::{Iri, IriError};
use crate::term::{BlankNodeAllocator, BlankNodeId, Literal, Term};

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error("invalid results JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("results document has neither bindings nor a boolean")]
    Empty,
    #[error("invalid IRI in results: {0}")]
    Iri(#[from] IriError),
    #[error("invalid term in results: {0}")]
    Term(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryResults {
    Boolean(bool),
    Solutions {
        variables: Vec<String>,
        rows: Vec<HashMap<String, Term>>,
    },
}

#[derive(Deserialize)]
struct Document {
    head: Option<Head>,
    results: Option<Bindings>,
    boolean: Option<bool>,
}

#[derive(Deserialize)]
struct Head {
    #[serde(default)]
    vars: Vec<String>,
}

#[derive(Deserialize)]
struct Bindings {
    bindings: Vec<HashMap<String, JsonTerm>>,
}

#[derive(Deserialize)]
struct JsonTerm {
    #[serde(rename = "type")]
    kind: String,
    value: String,
    #[serde(rename = "xml:lang")]
    lang: Option<String>,
    datatype: Option<String>,
}

/// Parses a results document. Blank node labels are replaced by fresh ones
/// from `blanks`, consistently within the document.
pub fn parse_results_json(
    body: &str,
    blanks: &mut BlankNodeAllocator,
) -> Result<QueryResults, ResultsError> {
    let doc: Document = serde_json::from_str(body)?;
    if let Some(b) = doc.boolean {
        return Ok(QueryResults::Boolean(b));
    }
    let Some(results) = doc.results else {
        return Err(ResultsError::Empty);
    };
    let variables = doc.head.map(|h| h.vars).unwrap_or_default();
    let mut labels: HashMap<String, BlankNodeId> = HashMap::new();
    let mut rows = Vec::with_capacity(results.bindings.len());
    for binding in results.bindings {
        let mut row = HashMap::with_capacity(binding.len());
        for (var, t) in binding {
            let term = match t.kind.as_str() {
                "uri" => Term::Iri(Iri::parse(&t.value)?),
                "bnode" => Term::Blank(
                    labels
                        .entry(t.value)
                        .or_insert_with(|| blanks.fresh())
                        .clone(),
                ),
                "literal" | "typed-literal" => match (t.lang, t.datatype) {
                    (Some(lang), _) => Term::Literal(
                        Literal::with_language(t.value, &lang)
                            .map_err(|e| ResultsError::Term(e.to_string()))?,
                    ),
                    (None, Some(dt)) => Term::Literal(Literal::typed(t.value, Iri::parse(&dt)?)),
                    (None, None) => Term::Literal(Literal::simple(t.value)),
                },
                other => return Err(ResultsError::Term(format!("unknown term type {other:?}"))),
            };
            row.insert(var, term);
        }
        rows.push(row);
    }
    Ok(QueryResults::Solutions { variables, rows })
}
