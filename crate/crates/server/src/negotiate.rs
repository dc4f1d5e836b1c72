//! Suffix routing and Accept-header negotiation.

use std::fmt;

/// A representation of a resource that has its own URL.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Html,
    Turtle,
    NTriples,
}

impl Format {
    pub fn suffix(self) -> &'static str {
        match self {
            Format::Html => ".html",
            Format::Turtle => ".ttl",
            Format::NTriples => ".nt",
        }
    }

    pub fn content_type(self) -> &'static str {
        match self {
            Format::Html => "text/html; charset=utf-8",
            Format::Turtle => "text/turtle; charset=utf-8",
            Format::NTriples => "application/n-triples; charset=utf-8",
        }
    }

    fn media_types(self) -> &'static [&'static str] {
        match self {
            Format::Html => &["text/html", "application/xhtml+xml"],
            Format::Turtle => &["text/turtle", "application/x-turtle", "text/n3", "text/rdf+n3"],
            Format::NTriples => &["application/n-triples"],
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Html => "html",
            Format::Turtle => "turtle",
            Format::NTriples => "ntriples",
        })
    }
}

/// Recognized suffixes; `.n3` is served as Turtle.
const SUFFIXES: [(&str, Format); 4] = [
    (".html", Format::Html),
    (".ttl", Format::Turtle),
    (".n3", Format::Turtle),
    (".nt", Format::NTriples),
];

/// Format chosen when nothing in Accept decides.
pub const DEFAULT_FORMAT: Format = Format::Turtle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RouteDecision {
    /// Redirect to the decoded same-origin path.
    Redirect303(String),
    /// Serve `format` for the resource at the decoded path `resource`.
    Serve { format: Format, resource: String },
    NotFound,
    BadRequest(String),
}

/// Decides what to do with a decoded resource path.
///
/// Existence is not checked here; the caller turns a missing resource into
/// [`RouteDecision::NotFound`].
pub fn negotiate(path: &str, accept: Option<&str>) -> RouteDecision {
    if !path.starts_with('/') {
        return RouteDecision::BadRequest(format!("not an absolute path: {path:?}"));
    }
    if let Some((resource, format)) = split_suffix(path) {
        return RouteDecision::Serve {
            format,
            resource: resource.to_owned(),
        };
    }
    let format = accept.map_or(DEFAULT_FORMAT, preferred_format);
    RouteDecision::Redirect303(format!("{path}{}", format.suffix()))
}

/// Splits a representation suffix off the last path segment.
pub fn split_suffix(path: &str) -> Option<(&str, Format)> {
    let last = &path[path.rfind('/').map_or(0, |i| i + 1)..];
    SUFFIXES.iter().find_map(|&(suffix, format)| {
        (last.len() > suffix.len() && last.ends_with(suffix))
            .then(|| (&path[..path.len() - suffix.len()], format))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MediaRange<'a> {
    pub kind: &'a str,
    pub subtype: &'a str,
    pub q: f32,
}

impl MediaRange<'_> {
    /// 3 for an exact match, 2 for `type/*`, 1 for `*/*`, 0 for none.
    fn specificity(&self, media_type: &str) -> u8 {
        let (kind, subtype) = media_type.split_once('/').unwrap_or((media_type, ""));
        match (self.kind, self.subtype) {
            ("*", "*") => 1,
            (k, "*") if k.eq_ignore_ascii_case(kind) => 2,
            (k, s) if k.eq_ignore_ascii_case(kind) && s.eq_ignore_ascii_case(subtype) => 3,
            _ => 0,
        }
    }
}

/// Parses an Accept header, skipping malformed entries.
pub fn parse_accept(header: &str) -> Vec<MediaRange<'_>> {
    header
        .split(',')
        .filter_map(|entry| {
            let mut parts = entry.split(';');
            let (kind, subtype) = parts.next()?.trim().split_once('/')?;
            let (kind, subtype) = (kind.trim(), subtype.trim());
            if kind.is_empty() || subtype.is_empty() || (kind == "*" && subtype != "*") {
                return None;
            }
            let mut q = 1.0;
            for param in parts {
                let Some((name, value)) = param.split_once('=') else { continue };
                if name.trim().eq_ignore_ascii_case("q") {
                    q = value.trim().parse::<f32>().ok().filter(|q| (0.0..=1.0).contains(q))?;
                }
            }
            Some(MediaRange { kind, subtype, q })
        })
        .collect()
}

/// The format the client prefers.
///
/// Each format takes the q-value of its most specific matching range. The
/// highest q wins, then the more specific match; remaining ties and headers
/// that accept none of the formats fall back to [`DEFAULT_FORMAT`].
pub fn preferred_format(accept: &str) -> Format {
    let ranges = parse_accept(accept);
    let score = |format: Format| -> Option<(f32, u8)> {
        let (spec, q) = ranges
            .iter()
            .flat_map(|r| format.media_types().iter().map(move |m| (r.specificity(m), r.q)))
            .filter(|&(spec, _)| spec > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))?;
        (q > 0.0).then_some((q, spec))
    };
    let mut best: Option<(Format, (f32, u8))> = None;
    for format in [DEFAULT_FORMAT, Format::Html, Format::NTriples] {
        let Some(s) = score(format) else { continue };
        let better = match best {
            None => true,
            Some((_, b)) => s.0 > b.0 || (s.0 == b.0 && s.1 > b.1),
        };
        if better {
            best = Some((format, s));
        }
    }
    best.map_or(DEFAULT_FORMAT, |(f, _)| f)
}
