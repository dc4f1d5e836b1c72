use std::fmt;

use thiserror::Error;

use crate::iri::Iri;
use crate::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid language tag {0:?}")]
    InvalidLanguageTag(String),
    #[error("invalid blank node label {0:?}")]
    InvalidBlankLabel(String),
}

/// A blank node label, unique within one graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlankNodeId(String);

impl BlankNodeId {
    pub fn new(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        let valid = !label.is_empty()
            && label
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-'))
            && label.as_bytes()[0] != b'-';
        if valid {
            Ok(BlankNodeId(label))
        } else {
            Err(TermError::InvalidBlankLabel(label))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BlankNodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// Hands out fresh blank node labels (`b0`, `b1`, ...).
#[derive(Debug, Default, Clone)]
pub struct BlankNodeAllocator {
    next: u64,
}

impl BlankNodeAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn fresh(&mut self) -> BlankNodeId {
        let id = BlankNodeId(format!("b{}", self.next));
        self.next += 1;
        id
    }
}

/// An RDF literal. The lexical form is kept verbatim.
///
/// Language tags are lowercased. A literal never carries both a language tag
/// and an explicit datatype, and `xsd:string` is folded into the plain form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    lexical: String,
    lang: Option<String>,
    datatype: Option<Iri>,
}

impl Literal {
    pub fn simple(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype: None,
        }
    }

    pub fn with_language(lexical: impl Into<String>, lang: &str) -> Result<Self, TermError> {
        if !is_language_tag(lang) {
            return Err(TermError::InvalidLanguageTag(lang.to_owned()));
        }
        Ok(Literal {
            lexical: lexical.into(),
            lang: Some(lang.to_ascii_lowercase()),
            datatype: None,
        })
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        let datatype = (datatype.as_str() != xsd::STRING).then_some(datatype);
        Literal {
            lexical: lexical.into(),
            lang: None,
            datatype,
        }
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn language(&self) -> Option<&str> {
        self.lang.as_deref()
    }

    /// The explicit datatype; `None` for plain and language-tagged literals.
    pub fn datatype(&self) -> Option<&Iri> {
        self.datatype.as_ref()
    }

    /// The effective datatype IRI as text.
    pub fn datatype_str(&self) -> &str {
        match (&self.datatype, &self.lang) {
            (Some(dt), _) => dt.as_str(),
            (None, Some(_)) => rdf::LANG_STRING,
            (None, None) => xsd::STRING,
        }
    }
}

pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or_default();
    !first.is_empty()
        && first.bytes().all(|b| b.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_alphanumeric()))
}

/// An RDF term.
///
/// Variant order defines the total value order used throughout:
/// literals, then IRIs, then blank nodes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Literal(Literal),
    Iri(Iri),
    Blank(BlankNodeId),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNodeId> {
        match self {
            Term::Blank(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    /// The subject view of this term, if it can be one.
    pub fn to_subject(&self) -> Option<Subject> {
        match self {
            Term::Iri(i) => Some(Subject::Iri(i.clone())),
            Term::Blank(b) => Some(Subject::Blank(b.clone())),
            Term::Literal(_) => None,
        }
    }

    pub(crate) fn min_value() -> Term {
        Term::Literal(Literal::simple(""))
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl From<BlankNodeId> for Term {
    fn from(b: BlankNodeId) -> Self {
        Term::Blank(b)
    }
}

impl From<Subject> for Term {
    fn from(s: Subject) -> Self {
        match s {
            Subject::Iri(i) => Term::Iri(i),
            Subject::Blank(b) => Term::Blank(b),
        }
    }
}

/// A triple subject: an IRI or a blank node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subject {
    Iri(Iri),
    Blank(BlankNodeId),
}

impl Subject {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Subject::Iri(i) => Some(i),
            Subject::Blank(_) => None,
        }
    }

    pub fn as_blank(&self) -> Option<&BlankNodeId> {
        match self {
            Subject::Blank(b) => Some(b),
            Subject::Iri(_) => None,
        }
    }
}

impl From<Iri> for Subject {
    fn from(i: Iri) -> Self {
        Subject::Iri(i)
    }
}

impl From<BlankNodeId> for Subject {
    fn from(b: BlankNodeId) -> Self {
        Subject::Blank(b)
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Iri(i) => write!(f, "<{i}>"),
            Subject::Blank(b) => b.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Subject,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Subject>, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}
