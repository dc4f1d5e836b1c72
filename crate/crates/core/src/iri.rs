//! Internationalized resource identifiers.
//!
//! An [`Iri`] is always held in its canonical *decoded* form: percent-escapes
//! that encode characters which may appear literally in an IRI (unreserved
//! ASCII and the Unicode `ucschar` ranges) are decoded, all other escapes are
//! kept with uppercase hex digits, and the scheme and host are lowercased.
//! The percent-encoded ASCII form is produced on demand by [`Iri::to_ascii`]
//! and is only meant for HTTP boundaries.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IriError {
    #[error("empty IRI")]
    Empty,
    #[error("IRI has no scheme")]
    MissingScheme,
    #[error("illegal character {ch:?} at byte {position}")]
    IllegalCharacter { ch: char, position: usize },
    #[error("malformed percent-escape at byte {position}")]
    MalformedEscape { position: usize },
    #[error("percent-escape at byte {position} is not valid UTF-8")]
    NonUtf8Escape { position: usize },
}

/// An absolute IRI in canonical decoded form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Iri(String);

impl Iri {
    /// Parses and canonicalizes an absolute IRI.
    pub fn parse(text: &str) -> Result<Self, IriError> {
        canonicalize(text).map(Iri)
    }

    /// Wraps text that is already known to be a canonical IRI.
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        Iri(value.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Percent-encodes every non-ASCII character as UTF-8 bytes.
    pub fn to_ascii(&self) -> String {
        encode_non_ascii(&self.0)
    }

    /// Splits off the fragment identifier, if any.
    ///
    /// `x#` yields an empty fragment, which is distinct from no fragment.
    pub fn split_hash(&self) -> (Iri, Option<&str>) {
        match self.0.find('#') {
            Some(at) => (Iri(self.0[..at].to_owned()), Some(&self.0[at + 1..])),
            None => (self.clone(), None),
        }
    }

    pub fn fragment(&self) -> Option<&str> {
        self.0.find('#').map(|at| &self.0[at + 1..])
    }

    /// Resolves a reference (absolute or relative) against this IRI.
    pub fn resolve(&self, reference: &str) -> Result<Iri, IriError> {
        if has_scheme(reference) {
            return Iri::parse(reference);
        }
        let base = Components::split(&self.0);
        let r = Components::split(reference);
        let (authority, path, query);
        if r.authority.is_some() {
            authority = r.authority;
            path = remove_dot_segments(r.path);
            query = r.query;
        } else if r.path.is_empty() {
            authority = base.authority;
            path = base.path.to_owned();
            query = r.query.or(base.query);
        } else {
            authority = base.authority;
            path = if r.path.starts_with('/') {
                remove_dot_segments(r.path)
            } else {
                remove_dot_segments(&merge_paths(&base, r.path))
            };
            query = r.query;
        }
        let mut out = String::with_capacity(self.0.len() + reference.len());
        out.push_str(base.scheme.unwrap_or_default());
        out.push(':');
        if let Some(a) = authority {
            out.push_str("//");
            out.push_str(a);
        }
        out.push_str(&path);
        if let Some(q) = query {
            out.push('?');
            out.push_str(q);
        }
        if let Some(f) = r.fragment {
            out.push('#');
            out.push_str(f);
        }
        Iri::parse(&out)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Iri {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Iri::parse(s)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Parses `text` as an IRI. See [`Iri::parse`].
pub fn parse_iri(text: &str) -> Result<Iri, IriError> {
    Iri::parse(text)
}

/// Renders the percent-encoded ASCII form of `iri`.
pub fn iri_to_ascii(iri: &Iri) -> String {
    iri.to_ascii()
}

/// Splits `iri` into its base part and optional fragment.
pub fn split_hash(iri: &Iri) -> (Iri, Option<String>) {
    let (base, fragment) = iri.split_hash();
    (base, fragment.map(str::to_owned))
}

/// Percent-encodes a string for use as a single query-string component.
pub fn encode_component(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for b in text.bytes() {
        if b.is_ascii_alphanumeric() || matches!(b, b'-' | b'.' | b'_' | b'~') {
            out.push(b as char);
        } else {
            push_escape(&mut out, b);
        }
    }
    out
}

pub(crate) fn encode_non_ascii(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut buf = [0u8; 4];
    for c in text.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            for b in c.encode_utf8(&mut buf).bytes() {
                push_escape(&mut out, b);
            }
        }
    }
    out
}

fn push_escape(out: &mut String, b: u8) {
    const HEX: &[u8; 16] = b"0123456789ABCDEF";
    out.push('%');
    out.push(HEX[usize::from(b >> 4)] as char);
    out.push(HEX[usize::from(b & 0xF)] as char);
}

fn has_scheme(text: &str) -> bool {
    let mut chars = text.char_indices();
    match chars.next() {
        Some((_, c)) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for (_, c) in chars {
        match c {
            ':' => return true,
            c if c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.') => {}
            _ => return false,
        }
    }
    false
}

fn is_ucschar(c: char) -> bool {
    let c = u32::from(c);
    matches!(c, 0xA0..=0xD7FF | 0xF900..=0xFDCF | 0xFDF0..=0xFFEF)
        || (0x10000..=0xEFFFD).contains(&c) && (c & 0xFFFF) <= 0xFFFD
}

fn is_iprivate(c: char) -> bool {
    matches!(u32::from(c), 0xE000..=0xF8FF | 0xF0000..=0xFFFFD | 0x100000..=0x10FFFD)
}

fn is_iunreserved(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '-' | '.' | '_' | '~') || is_ucschar(c)
}

fn is_sub_delim(c: char) -> bool {
    matches!(c, '!' | '$' | '&' | '\'' | '(' | ')' | '*' | '+' | ',' | ';' | '=')
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Authority,
    Path,
    Query,
    Fragment,
}

impl Part {
    fn allows(self, c: char) -> bool {
        if is_iunreserved(c) || is_sub_delim(c) || matches!(c, ':' | '@' | '/' | '?') {
            return true;
        }
        match self {
            Part::Authority => matches!(c, '[' | ']'),
            Part::Query => is_iprivate(c),
            Part::Path | Part::Fragment => false,
        }
    }

    /// Whether an escaped `c` may be written literally in this part.
    fn decodes(self, c: char) -> bool {
        is_iunreserved(c) || (self == Part::Query && is_iprivate(c))
    }
}

fn hex_value(b: u8) -> Option<u8> {
    match b {
        b'0'..=b'9' => Some(b - b'0'),
        b'a'..=b'f' => Some(b - b'a' + 10),
        b'A'..=b'F' => Some(b - b'A' + 10),
        _ => None,
    }
}

fn canonicalize(text: &str) -> Result<String, IriError> {
    if text.is_empty() {
        return Err(IriError::Empty);
    }
    if !has_scheme(text) {
        return Err(IriError::MissingScheme);
    }
    let colon = text.find(':').expect("scheme checked");
    let mut out = String::with_capacity(text.len());
    out.push_str(&text[..colon].to_ascii_lowercase());
    out.push(':');

    let rest_start = colon + 1;
    let rest = &text[rest_start..];
    let (authority_end, host) = if let Some(after) = rest.strip_prefix("//") {
        let end = after
            .find(['/', '?', '#'])
            .map_or(rest.len(), |i| i + 2);
        (end, Some(host_span(&rest[2..end], rest_start + 2)))
    } else {
        (0, None)
    };

    let bytes = text.as_bytes();
    let mut part = if host.is_some() { Part::Authority } else { Part::Path };
    let mut i = rest_start;
    while i < text.len() {
        if part == Part::Authority && i >= rest_start + authority_end {
            part = Part::Path;
        }
        let in_host = host.is_some_and(|(s, e)| i >= s && i < e);
        if bytes[i] == b'%' {
            i = decode_escapes(text, i, part, in_host, &mut out)?;
            continue;
        }
        let c = text[i..].chars().next().expect("char boundary");
        match c {
            '?' if matches!(part, Part::Authority | Part::Path) => part = Part::Query,
            '#' if part != Part::Fragment => part = Part::Fragment,
            c if part.allows(c) => {}
            c => return Err(IriError::IllegalCharacter { ch: c, position: i }),
        }
        if in_host {
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
        i += c.len_utf8();
    }
    Ok(out)
}

/// Byte range of the host inside an authority starting at `offset`.
fn host_span(authority: &str, offset: usize) -> (usize, usize) {
    let start = authority.rfind('@').map_or(0, |i| i + 1);
    let host = &authority[start..];
    let len = if host.starts_with('[') {
        host.find(']').map_or(host.len(), |i| i + 1)
    } else {
        host.find(':').unwrap_or(host.len())
    };
    (offset + start, offset + start + len)
}

/// Decodes a run of consecutive percent-escapes starting at `start`.
fn decode_escapes(
    text: &str,
    start: usize,
    part: Part,
    in_host: bool,
    out: &mut String,
) -> Result<usize, IriError> {
    let bytes = text.as_bytes();
    let mut raw = Vec::new();
    let mut positions = Vec::new();
    let mut i = start;
    while i < bytes.len() && bytes[i] == b'%' {
        let hi = bytes.get(i + 1).copied().and_then(hex_value);
        let lo = bytes.get(i + 2).copied().and_then(hex_value);
        match (hi, lo) {
            (Some(hi), Some(lo)) => raw.push(hi << 4 | lo),
            _ => return Err(IriError::MalformedEscape { position: i }),
        }
        positions.push(i);
        i += 3;
    }
    let decoded = match std::str::from_utf8(&raw) {
        Ok(s) => s,
        Err(e) => {
            return Err(IriError::NonUtf8Escape {
                position: positions[e.valid_up_to()],
            })
        }
    };
    for c in decoded.chars() {
        if part.decodes(c) {
            if in_host {
                out.extend(c.to_lowercase());
            } else {
                out.push(c);
            }
        } else {
            let mut buf = [0u8; 4];
            for b in c.encode_utf8(&mut buf).bytes() {
                push_escape(out, b);
            }
        }
    }
    Ok(i)
}

struct Components<'a> {
    scheme: Option<&'a str>,
    authority: Option<&'a str>,
    path: &'a str,
    query: Option<&'a str>,
    fragment: Option<&'a str>,
}

impl<'a> Components<'a> {
    fn split(text: &'a str) -> Self {
        let (rest, fragment) = match text.find('#') {
            Some(i) => (&text[..i], Some(&text[i + 1..])),
            None => (text, None),
        };
        let (rest, query) = match rest.find('?') {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let (scheme, rest) = if has_scheme(rest) {
            let i = rest.find(':').expect("scheme checked");
            (Some(&rest[..i]), &rest[i + 1..])
        } else {
            (None, rest)
        };
        let (authority, path) = match rest.strip_prefix("//") {
            Some(r) => {
                let end = r.find('/').unwrap_or(r.len());
                (Some(&r[..end]), &r[end..])
            }
            None => (None, rest),
        };
        Components {
            scheme,
            authority,
            path,
            query,
            fragment,
        }
    }
}

fn merge_paths(base: &Components<'_>, reference: &str) -> String {
    if base.authority.is_some() && base.path.is_empty() {
        format!("/{reference}")
    } else {
        match base.path.rfind('/') {
            Some(i) => format!("{}{}", &base.path[..=i], reference),
            None => reference.to_owned(),
        }
    }
}

fn remove_dot_segments(path: &str) -> String {
    let mut input = path;
    let mut output: Vec<&str> = Vec::new();
    while !input.is_empty() {
        if let Some(r) = input.strip_prefix("../") {
            input = r;
        } else if let Some(r) = input.strip_prefix("./") {
            input = r;
        } else if input.starts_with("/./") {
            input = &input[2..];
        } else if input == "/." {
            input = "/";
        } else if input.starts_with("/../") || input == "/.." {
            input = if input == "/.." { "/" } else { &input[3..] };
            output.pop();
        } else if input == "." || input == ".." {
            input = "";
        } else {
            let skip = usize::from(input.starts_with('/'));
            let end = input[skip..].find('/').map_or(input.len(), |i| i + skip);
            output.push(&input[..end]);
            input = &input[end..];
        }
    }
    output.concat()
}
