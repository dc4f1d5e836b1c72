use crate::graph::Graph;
use crate::iri::Iri;
use crate::term::{Literal, Subject};

use super::BuilderConfig;

/// Human-readable label of `iri` from the triples at hand.
pub fn resolve_label(graph: &Graph, iri: &Iri, cfg: &BuilderConfig) -> Option<String> {
    label_of(graph, &Subject::Iri(iri.clone()), cfg)
}

/// The first label property carrying any literal wins; within it the best
/// preferred language, else the first literal in value order.
pub(crate) fn label_of(graph: &Graph, subject: &Subject, cfg: &BuilderConfig) -> Option<String> {
    for property in &cfg.label_properties {
        let literals: Vec<&Literal> = graph
            .objects(subject, property)
            .filter_map(|t| t.as_literal())
            .collect();
        if literals.is_empty() {
            continue;
        }
        let preferred = cfg.preferred_languages.iter().find_map(|want| {
            literals
                .iter()
                .find(|l| l.language().is_some_and(|tag| language_matches(tag, want)))
        });
        return Some(preferred.unwrap_or(&literals[0]).lexical().to_owned());
    }
    None
}

fn language_matches(tag: &str, want: &str) -> bool {
    tag.eq_ignore_ascii_case(want)
        || (tag.len() > want.len()
            && tag.as_bytes()[want.len()] == b'-'
            && tag[..want.len()].eq_ignore_ascii_case(want))
}

/// Whether a literal should be handed to the client-side math renderer.
pub fn mark_math(literal: &Literal, cfg: &BuilderConfig) -> bool {
    if let (Some(want), Some(dt)) = (&cfg.math_datatype, literal.datatype()) {
        if want == dt {
            return true;
        }
    }
    let text = literal.lexical();
    cfg.math_delimiters
        .iter()
        .any(|(open, close)| has_pair(text, open, close))
}

/// A delimiter occurrence preceded by a backslash does not count.
fn occurrences<'a>(text: &'a str, delim: &'a str) -> impl Iterator<Item = usize> + 'a {
    text.match_indices(delim)
        .map(|(i, _)| i)
        .filter(move |&i| i == 0 || text.as_bytes()[i - 1] != b'\\')
}

/// Some opening delimiter is followed by a closing one with non-blank text
/// between. The earliest opener and latest closer give the widest span, so
/// checking that pair suffices.
fn has_pair(text: &str, open: &str, close: &str) -> bool {
    if open.is_empty() || close.is_empty() {
        return false;
    }
    let Some(start) = occurrences(text, open).next() else {
        return false;
    };
    let inner = start + open.len();
    occurrences(text, close)
        .filter(|&j| j >= inner)
        .last()
        .is_some_and(|end| text[inner..end].chars().any(|c| !c.is_whitespace()))
}
