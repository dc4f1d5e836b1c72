use std::fmt::Write;

use crate::graph::Graph;
use crate::iri::Iri;
use crate::term::{Literal, Subject, Term};
use crate::turtle::parser::{is_pn_chars, is_pn_chars_u};
use crate::turtle::PrefixMap;
use crate::vocab::rdf;

#[derive(Debug, Clone)]
pub struct SerializeOptions {
    /// Write IRIs in decoded Unicode form (otherwise percent-encoded ASCII).
    pub decode_iris: bool,
    /// Emit `@prefix` lines and use prefixed names.
    pub emit_prefixes: bool,
    /// Emit `@base` and write IRIs under it relative to it.
    pub base: Option<Iri>,
}

impl Default for SerializeOptions {
    fn default() -> Self {
        SerializeOptions {
            decode_iris: true,
            emit_prefixes: true,
            base: None,
        }
    }
}

/// Writes `graph` as Turtle, one subject block per subject.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixMap, opts: &SerializeOptions) -> String {
    let mut out = String::new();
    let empty = PrefixMap::new();
    let prefixes = if opts.emit_prefixes { prefixes } else { &empty };
    let writer = IriWriter { prefixes, opts };

    if let Some(base) = &opts.base {
        let _ = writeln!(out, "@base <{}> .", writer.full(base));
    }
    for (label, ns) in prefixes.iter() {
        let _ = writeln!(out, "@prefix {label}: <{}> .", writer.full(ns));
    }

    let mut current: Option<&Subject> = None;
    let mut current_predicate: Option<&Iri> = None;
    for t in graph {
        if current != Some(&t.subject) {
            if current.is_some() {
                out.push_str(" .\n");
            }
            if !out.is_empty() {
                out.push('\n');
            }
            match &t.subject {
                Subject::Iri(i) => out.push_str(&writer.term_iri(i)),
                Subject::Blank(b) => out.push_str(&b.to_string()),
            }
            out.push(' ');
            out.push_str(&writer.predicate(&t.predicate));
            out.push(' ');
            current = Some(&t.subject);
            current_predicate = Some(&t.predicate);
        } else if current_predicate != Some(&t.predicate) {
            out.push_str(" ;\n    ");
            out.push_str(&writer.predicate(&t.predicate));
            out.push(' ');
            current_predicate = Some(&t.predicate);
        } else {
            out.push_str(" ,\n        ");
        }
        writer.object(&mut out, &t.object);
    }
    if current.is_some() {
        out.push_str(" .\n");
    }
    out
}

/// Writes `graph` as N-Triples with percent-encoded ASCII IRIs.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph {
        match &t.subject {
            Subject::Iri(i) => {
                let _ = write!(out, "<{}>", i.to_ascii());
            }
            Subject::Blank(b) => {
                let _ = write!(out, "{b}");
            }
        }
        let _ = write!(out, " <{}> ", t.predicate.to_ascii());
        match &t.object {
            Term::Iri(i) => {
                let _ = write!(out, "<{}>", i.to_ascii());
            }
            Term::Blank(b) => {
                let _ = write!(out, "{b}");
            }
            Term::Literal(l) => {
                write_quoted(&mut out, l.lexical());
                if let Some(lang) = l.language() {
                    let _ = write!(out, "@{lang}");
                } else if let Some(dt) = l.datatype() {
                    let _ = write!(out, "^^<{}>", dt.to_ascii());
                }
            }
        }
        out.push_str(" .\n");
    }
    out
}

struct IriWriter<'a> {
    prefixes: &'a PrefixMap,
    opts: &'a SerializeOptions,
}

impl IriWriter<'_> {
    fn full(&self, iri: &Iri) -> String {
        if self.opts.decode_iris {
            iri.as_str().to_owned()
        } else {
            iri.to_ascii()
        }
    }

    fn term_iri(&self, iri: &Iri) -> String {
        if let Some(name) = self.prefixed(iri) {
            return name;
        }
        if let Some(base) = &self.opts.base {
            if let Some(rel) = relativize(base, iri) {
                let rel = if self.opts.decode_iris {
                    rel.to_owned()
                } else {
                    crate::iri::encode_non_ascii(rel)
                };
                return format!("<{rel}>");
            }
        }
        format!("<{}>", self.full(iri))
    }

    fn prefixed(&self, iri: &Iri) -> Option<String> {
        let name = self.prefixes.compact(iri)?;
        (self.opts.decode_iris || name.is_ascii()).then_some(name)
    }

    fn predicate(&self, iri: &Iri) -> String {
        if iri.as_str() == rdf::TYPE {
            "a".to_owned()
        } else {
            self.term_iri(iri)
        }
    }

    fn object(&self, out: &mut String, term: &Term) {
        match term {
            Term::Iri(i) => out.push_str(&self.term_iri(i)),
            Term::Blank(b) => {
                let _ = write!(out, "{b}");
            }
            Term::Literal(l) => self.literal(out, l),
        }
    }

    fn literal(&self, out: &mut String, l: &Literal) {
        write_quoted(out, l.lexical());
        if let Some(lang) = l.language() {
            let _ = write!(out, "@{lang}");
        } else if let Some(dt) = l.datatype() {
            out.push_str("^^");
            out.push_str(&self.term_iri(dt));
        }
    }
}

/// Relative reference for `iri` under `base`, only when resolving it back
/// yields `iri` exactly.
fn relativize<'a>(base: &Iri, iri: &'a Iri) -> Option<&'a str> {
    let rest = iri.as_str().strip_prefix(base.as_str())?;
    if rest.is_empty() || rest.starts_with('/') || rest.starts_with("//") {
        return None;
    }
    if rest.split(['/', '?', '#']).next().is_some_and(|seg| seg.contains(':')) {
        return None;
    }
    (base.resolve(rest).ok()? == *iri).then_some(rest)
}

fn write_quoted(out: &mut String, text: &str) {
    out.push('"');
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => {
                let _ = write!(out, "\\u{:04X}", u32::from(c));
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// A local name that needs no escaping in a prefixed name.
pub(crate) fn is_plain_local_name(local: &str) -> bool {
    let mut chars = local.chars();
    let Some(first) = chars.next() else {
        return true;
    };
    if !(is_pn_chars_u(first) || first.is_ascii_digit()) {
        return false;
    }
    !local.ends_with('.') && local.chars().skip(1).all(|c| is_pn_chars(c) || c == '.')
}
