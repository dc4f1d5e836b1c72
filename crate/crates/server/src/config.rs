//! Server configuration: a flat `key = value` file overridden by CLI flags.
//!
//! ```text
//! # comment
//! base_namespace = http://lod.ruthes.org/resource/
//! fixtures = fixtures/ruthes.ttl
//! page_size = 50
//! preferred_languages = ru, en
//! prefix.ruthes = http://lod.ruthes.org/resource/
//! ```

use std::collections::BTreeMap;
use std::net::IpAddr;
use std::path::PathBuf;
use std::time::Duration;

use lodlens_core::describe::BuilderConfig;
use lodlens_core::site::Site;
use lodlens_core::store::EndpointConfig;
use lodlens_core::turtle::PrefixMap;
use lodlens_core::Iri;
use thiserror::Error;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_PAGE_SIZE: usize = 50;

const KEYS: &[&str] = &[
    "listen",
    "port",
    "base_namespace",
    "endpoint",
    "default_graph",
    "timeout_secs",
    "max_retries",
    "page_size",
    "site_title",
    "fixtures",
    "assets_dir",
    "max_nesting_depth",
    "preferred_languages",
    "label_properties",
    "math_datatype",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("invalid value for {key}: {reason}")]
    Invalid { key: String, reason: String },
    #[error("missing required key {0}")]
    Missing(&'static str),
    #[error("exactly one of `endpoint` and `fixtures` must be set")]
    Backend,
}

fn invalid(key: &str, reason: impl ToString) -> ConfigError {
    ConfigError::Invalid {
        key: key.to_owned(),
        reason: reason.to_string(),
    }
}

/// Parses the configuration file format into raw key/value pairs.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = key.trim();
        let known = KEYS.contains(&key)
            || key
                .strip_prefix("prefix.")
                .is_some_and(|l| !l.is_empty() && l.chars().all(|c| c.is_alphanumeric() || "-_".contains(c)));
        if !known {
            return Err(ConfigError::UnknownKey {
                line,
                key: key.to_owned(),
            });
        }
        if map.insert(key.to_owned(), value.trim().to_owned()).is_some() {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_owned(),
            });
        }
    }
    Ok(map)
}

/// Values given on the command line; each replaces the file value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub port: Option<u16>,
    pub endpoint: Option<String>,
    pub base_namespace: Option<String>,
    pub page_size: Option<usize>,
    pub fixtures: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    /// A Turtle file loaded into memory.
    Fixtures(PathBuf),
    Endpoint(EndpointConfig),
}

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub listen: IpAddr,
    pub port: u16,
    pub site: Site,
    pub backend: Backend,
    pub builder: BuilderConfig,
    pub page_size: usize,
    pub site_title: String,
    pub assets_dir: Option<PathBuf>,
    pub prefixes: PrefixMap,
}

impl ServerConfig {
    pub fn base_namespace(&self) -> &Iri {
        self.site.base_namespace()
    }

    /// Builds the configuration from file pairs and CLI overrides.
    pub fn from_pairs(
        mut pairs: BTreeMap<String, String>,
        overrides: Overrides,
    ) -> Result<Self, ConfigError> {
        if let Some(p) = overrides.port {
            pairs.insert("port".into(), p.to_string());
        }
        if let Some(s) = overrides.page_size {
            pairs.insert("page_size".into(), s.to_string());
        }
        if let Some(b) = overrides.base_namespace {
            pairs.insert("base_namespace".into(), b);
        }
        // A backend flag replaces whichever backend the file chose.
        if let Some(e) = overrides.endpoint {
            pairs.remove("fixtures");
            pairs.insert("endpoint".into(), e);
        }
        if let Some(f) = overrides.fixtures {
            pairs.remove("endpoint");
            pairs.insert("fixtures".into(), f.to_string_lossy().into_owned());
        }
        let get = |k: &str| pairs.get(k).map(String::as_str);

        let base = get("base_namespace").ok_or(ConfigError::Missing("base_namespace"))?;
        let base = Iri::parse(base).map_err(|e| invalid("base_namespace", e))?;
        let site = Site::new(base).map_err(|e| invalid("base_namespace", e))?;

        let backend = match (get("endpoint"), get("fixtures")) {
            (Some(url), None) => {
                let url = Iri::parse(url).map_err(|e| invalid("endpoint", e))?;
                let mut cfg = EndpointConfig::new(url);
                if let Some(g) = get("default_graph") {
                    cfg.default_graph = Some(Iri::parse(g).map_err(|e| invalid("default_graph", e))?);
                }
                if let Some(t) = get("timeout_secs") {
                    let secs: u64 = number(t, "timeout_secs")?;
                    if secs == 0 {
                        return Err(invalid("timeout_secs", "must be positive"));
                    }
                    cfg.request_timeout = Duration::from_secs(secs);
                }
                if let Some(r) = get("max_retries") {
                    cfg.max_retries = number(r, "max_retries")?;
                }
                Backend::Endpoint(cfg)
            }
            (None, Some(path)) if !path.is_empty() => Backend::Fixtures(PathBuf::from(path)),
            _ => return Err(ConfigError::Backend),
        };

        let page_size = match get("page_size") {
            Some(s) => number(s, "page_size")?,
            None => DEFAULT_PAGE_SIZE,
        };
        if page_size == 0 {
            return Err(invalid("page_size", "must be positive"));
        }

        let mut builder = BuilderConfig {
            local_namespace: Some(site.base_namespace().as_str().to_owned()),
            ..BuilderConfig::default()
        };
        if let Some(d) = get("max_nesting_depth") {
            builder.max_nesting_depth = number(d, "max_nesting_depth")?;
        }
        if let Some(l) = get("preferred_languages") {
            builder.preferred_languages = list(l).map(str::to_owned).collect();
        }
        if let Some(l) = get("label_properties") {
            builder.label_properties = list(l)
                .map(Iri::parse)
                .collect::<Result<_, _>>()
                .map_err(|e| invalid("label_properties", e))?;
        }
        if let Some(d) = get("math_datatype") {
            builder.math_datatype = Some(Iri::parse(d).map_err(|e| invalid("math_datatype", e))?);
        }

        let mut prefixes = PrefixMap::common();
        for (key, value) in &pairs {
            if let Some(label) = key.strip_prefix("prefix.") {
                prefixes.set(label, Iri::parse(value).map_err(|e| invalid(key, e))?);
            }
        }

        Ok(ServerConfig {
            listen: match get("listen") {
                Some(a) => a.parse().map_err(|e| invalid("listen", e))?,
                None => IpAddr::from([127, 0, 0, 1]),
            },
            port: match get("port") {
                Some(p) => number(p, "port")?,
                None => DEFAULT_PORT,
            },
            site,
            backend,
            builder,
            page_size,
            site_title: get("site_title").unwrap_or("lodlens").to_owned(),
            assets_dir: get("assets_dir").map(PathBuf::from),
            prefixes,
        })
    }
}

fn number<T: std::str::FromStr>(text: &str, key: &str) -> Result<T, ConfigError>
where
    T::Err: ToString,
{
    text.parse().map_err(|e: T::Err| invalid(key, e))
}

fn list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}
