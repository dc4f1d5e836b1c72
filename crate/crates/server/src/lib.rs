//! HTTP front end of the lodlens Linked Data server.
//!
//! Resource paths under the configured namespace are dereferenced with 303
//! redirects to `.html`, `.ttl` (or `.n3`) and `.nt` documents. Two JSON/HTML
//! APIs back the in-page browsing controls:
//!
//! * `GET /api/fragment?uri=…` renders one resource or blank node as an HTML
//!   fragment with nesting depth 1.
//! * `GET /api/values?uri=…&property=…&direction=…&offset=…&limit=…` returns
//!   one page of a property's values.
//!
//! Static files are served under `/assets/`.

mod app;
pub mod config;
pub mod negotiate;

pub use app::{decode_path, parse_node, App, ValueObject, ValuesPage};
pub use config::{Backend, ConfigError, Overrides, ServerConfig};

use std::path::PathBuf;
use std::sync::Arc;

use lodlens_core::store::{Gateway, MemoryStore, SparqlClient, StoreError};
use lodlens_core::turtle::TurtleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StartupError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Fixtures { path: PathBuf, source: TurtleError },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Opens the configured backend. Blank-node closures follow the nesting depth.
pub fn open_gateway(config: &ServerConfig) -> Result<Arc<dyn Gateway>, StartupError> {
    let depth = config.builder.max_nesting_depth;
    Ok(match &config.backend {
        Backend::Fixtures(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| StartupError::Read {
                path: path.clone(),
                source,
            })?;
            let store = MemoryStore::from_turtle(&text, None).map_err(|source| StartupError::Fixtures {
                path: path.clone(),
                source,
            })?;
            Arc::new(store.with_closure_depth(depth))
        }
        Backend::Endpoint(cfg) => Arc::new(SparqlClient::new(cfg.clone())?.with_closure_depth(depth)),
    })
}
