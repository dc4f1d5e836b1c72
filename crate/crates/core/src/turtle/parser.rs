use std::collections::HashMap;

use thiserror::Error;

use crate::graph::Graph;
use crate::iri::{Iri, IriError};
use crate::term::{BlankNodeAllocator, BlankNodeId, Literal, Subject, Term, Triple};
use crate::turtle::PrefixMap;
use crate::vocab::{rdf, xsd};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurtleError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relative IRI <{iri}> at {line}:{column} but no base IRI is set")]
    UnresolvedRelativeIri {
        line: usize,
        column: usize,
        iri: String,
    },
    #[error("invalid IRI <{iri}> at {line}:{column}: {source}")]
    InvalidIri {
        line: usize,
        column: usize,
        iri: String,
        source: IriError,
    },
}

/// Parses a Turtle (or N-Triples) document into a fresh graph.
pub fn parse_turtle(text: &str, base: Option<&Iri>) -> Result<Graph, TurtleError> {
    let mut graph = Graph::new();
    let mut blanks = BlankNodeAllocator::new();
    parse_turtle_into(text, base, &mut graph, &mut blanks)?;
    Ok(graph)
}

/// Parses into an existing graph, drawing blank node labels from `blanks` so
/// several documents can be merged without label clashes.
pub fn parse_turtle_into(
    text: &str,
    base: Option<&Iri>,
    graph: &mut Graph,
    blanks: &mut BlankNodeAllocator,
) -> Result<(), TurtleError> {
    let mut parser = Parser {
        src: text,
        pos: 0,
        line: 1,
        column: 1,
        base: base.cloned(),
        prefixes: PrefixMap::new(),
        labels: HashMap::new(),
        blanks,
        graph,
    };
    parser.document()
}

struct Parser<'a, 'g> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
    base: Option<Iri>,
    prefixes: PrefixMap,
    labels: HashMap<String, BlankNodeId>,
    blanks: &'g mut BlankNodeAllocator,
    graph: &'g mut Graph,
}

type PResult<T> = Result<T, TurtleError>;

impl Parser<'_, '_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(TurtleError::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' | '\n' => {
                    self.bump();
                }
                '#' => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        rest.len() >= kw.len()
            && rest.is_char_boundary(kw.len())
            && rest[..kw.len()].eq_ignore_ascii_case(kw)
            && !rest[kw.len()..]
                .chars()
                .next()
                .is_some_and(|c| is_pn_chars(c) || c == ':')
    }

    fn document(&mut self) -> PResult<()> {
        loop {
            self.skip_ws();
            if self.peek().is_none() {
                return Ok(());
            }
            self.statement()?;
        }
    }

    fn statement(&mut self) -> PResult<()> {
        if self.rest().starts_with("@prefix") {
            self.advance(7);
            self.prefix_decl()?;
            return self.expect('.');
        }
        if self.rest().starts_with("@base") {
            self.advance(5);
            self.base_decl()?;
            return self.expect('.');
        }
        if self.starts_with_keyword("PREFIX") {
            self.advance(6);
            return self.prefix_decl();
        }
        if self.starts_with_keyword("BASE") {
            self.advance(4);
            return self.base_decl();
        }
        self.triples()?;
        self.expect('.')
    }

    fn advance(&mut self, n: usize) {
        for _ in 0..n {
            self.bump();
        }
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let label = self.pn_prefix()?;
        if self.peek() != Some(':') {
            return self.error("expected ':' after prefix label");
        }
        self.bump();
        self.skip_ws();
        let ns = self.iriref()?;
        self.prefixes.set(label, ns);
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        self.skip_ws();
        let iri = self.iriref()?;
        self.base = Some(iri);
        Ok(())
    }

    fn triples(&mut self) -> PResult<()> {
        self.skip_ws();
        if self.peek() == Some('[') {
            let subject = self.blank_node_property_list()?;
            self.skip_ws();
            if self.peek() != Some('.') {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> PResult<Subject> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Subject::Iri(self.iriref()?)),
            Some('_') => Ok(Subject::Blank(self.blank_label()?)),
            Some('(') => match self.collection()? {
                Term::Iri(i) => Ok(Subject::Iri(i)),
                Term::Blank(b) => Ok(Subject::Blank(b)),
                Term::Literal(_) => unreachable!("collections are nodes"),
            },
            Some(c) if is_pn_chars_base(c) || c == ':' => Ok(Subject::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected '{c}' where a subject was expected")),
            None => self.error("unexpected end of input where a subject was expected"),
        }
    }

    fn predicate_object_list(&mut self, subject: &Subject) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | Some(']') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        self.skip_ws();
        if self.peek() == Some('a')
            && !self
                .peek_at(1)
                .is_some_and(|c| is_pn_chars(c) || c == ':' || c == '.')
        {
            self.bump();
            return Ok(Iri::new_unchecked(rdf::TYPE));
        }
        match self.peek() {
            Some('<') => self.iriref(),
            Some(c) if is_pn_chars_base(c) || c == ':' => self.prefixed_name(),
            Some(c) => self.error(format!("unexpected '{c}' where a predicate was expected")),
            None => self.error("unexpected end of input where a predicate was expected"),
        }
    }

    fn object_list(&mut self, subject: &Subject, predicate: &Iri) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.graph
                .insert(Triple::new(subject.clone(), predicate.clone(), object));
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> PResult<Term> {
        self.skip_ws();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') => Ok(Term::Blank(self.blank_label()?)),
            Some('(') => self.collection(),
            Some('[') => Ok(self.blank_node_property_list()?.into()),
            Some('"') | Some('\'') => self.rdf_literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-' | '.') => self.numeric_literal(),
            Some(_) if self.starts_with_keyword("true") => {
                self.advance(4);
                Ok(boolean("true"))
            }
            Some(_) if self.starts_with_keyword("false") => {
                self.advance(5);
                Ok(boolean("false"))
            }
            Some(c) if is_pn_chars_base(c) || c == ':' => Ok(Term::Iri(self.prefixed_name()?)),
            Some(c) => self.error(format!("unexpected '{c}' where an object was expected")),
            None => self.error("unexpected end of input where an object was expected"),
        }
    }

    fn blank_node_property_list(&mut self) -> PResult<Subject> {
        self.expect('[')?;
        let node = Subject::Blank(self.blanks.fresh());
        self.skip_ws();
        if self.peek() == Some(']') {
            self.bump();
            return Ok(node);
        }
        self.predicate_object_list(&node)?;
        self.expect(']')?;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.expect('(')?;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    break;
                }
                None => return self.error("unterminated collection"),
                _ => items.push(self.object()?),
            }
        }
        let nil = Term::Iri(Iri::new_unchecked(rdf::NIL));
        let first = Iri::new_unchecked(rdf::FIRST);
        let rest = Iri::new_unchecked(rdf::REST);
        let mut head = nil;
        for item in items.into_iter().rev() {
            let cell = self.blanks.fresh();
            self.graph.insert(Triple::new(cell.clone(), first.clone(), item));
            self.graph.insert(Triple::new(cell.clone(), rest.clone(), head));
            head = Term::Blank(cell);
        }
        Ok(head)
    }

    fn blank_label(&mut self) -> PResult<BlankNodeId> {
        if !self.rest().starts_with("_:") {
            return self.error("expected blank node label");
        }
        self.advance(2);
        let start = self.pos;
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                self.bump();
            }
            _ => return self.error("empty blank node label"),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == '.')) {
                self.bump();
            } else {
                break;
            }
        }
        let label = self.src[start..self.pos].to_owned();
        let blanks = &mut *self.blanks;
        Ok(self
            .labels
            .entry(label)
            .or_insert_with(|| blanks.fresh())
            .clone())
    }

    fn iriref(&mut self) -> PResult<Iri> {
        let (line, column) = (self.line, self.column);
        if self.peek() != Some('<') {
            return self.error("expected '<'");
        }
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => text.push(self.uchar()?),
                Some(c) if matches!(c, '<' | '"' | '{' | '}' | '|' | '^' | '`' | '\n' | '\r') || c <= ' ' => {
                    return self.error(format!("character {c:?} is not allowed in an IRI"));
                }
                Some(c) => text.push(c),
                None => return self.error("unterminated IRI"),
            }
        }
        self.resolve(&text, line, column)
    }

    fn resolve(&self, text: &str, line: usize, column: usize) -> PResult<Iri> {
        let result = match &self.base {
            Some(base) => base.resolve(text),
            None => match Iri::parse(text) {
                Err(IriError::MissingScheme | IriError::Empty) => {
                    return Err(TurtleError::UnresolvedRelativeIri {
                        line,
                        column,
                        iri: text.to_owned(),
                    })
                }
                other => other,
            },
        };
        result.map_err(|source| TurtleError::InvalidIri {
            line,
            column,
            iri: text.to_owned(),
            source,
        })
    }

    fn uchar(&mut self) -> PResult<char> {
        let len = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return self.error("invalid escape in IRI"),
        };
        self.hex_char(len)
    }

    fn hex_char(&mut self, len: usize) -> PResult<char> {
        let mut value = 0u32;
        for _ in 0..len {
            match self.peek().and_then(|c| c.to_digit(16)) {
                Some(d) => {
                    self.bump();
                    value = value * 16 + d;
                }
                None => return self.error("invalid hex digit in \\u escape"),
            }
        }
        match char::from_u32(value) {
            Some(c) => Ok(c),
            None => self.error(format!("\\u escape {value:#X} is not a Unicode scalar value")),
        }
    }

    fn pn_prefix(&mut self) -> PResult<String> {
        let start = self.pos;
        if let Some(c) = self.peek() {
            if is_pn_chars_base(c) {
                self.bump();
                while let Some(c) = self.peek() {
                    if is_pn_chars(c) || (c == '.' && self.peek_at(1).is_some_and(|n| is_pn_chars(n) || n == '.')) {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
        }
        Ok(self.src[start..self.pos].to_owned())
    }

    fn prefixed_name(&mut self) -> PResult<Iri> {
        let (line, column) = (self.line, self.column);
        let label = self.pn_prefix()?;
        if self.peek() != Some(':') {
            return self.error(format!("unknown keyword {label:?}"));
        }
        self.bump();
        let Some(ns) = self.prefixes.get(&label).cloned() else {
            return Err(TurtleError::Syntax {
                line,
                column,
                message: format!("undefined prefix {label:?}"),
            });
        };
        let mut local = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            let accept = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit()
            } else {
                is_pn_chars(c) || c == ':' || (c == '.' && self.local_continues_after_dot())
            };
            if accept {
                self.bump();
                local.push(c);
            } else if c == '%' {
                self.bump();
                local.push('%');
                for _ in 0..2 {
                    match self.peek() {
                        Some(h) if h.is_ascii_hexdigit() => {
                            self.bump();
                            local.push(h);
                        }
                        _ => return self.error("malformed %-escape in local name"),
                    }
                }
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if "_~.-!$&'()*+,;=/?#@%".contains(e) => local.push(e),
                    _ => return self.error("invalid escape in local name"),
                }
            } else {
                break;
            }
            first = false;
        }
        let full = format!("{}{}", ns.as_str(), local);
        Iri::parse(&full).map_err(|source| TurtleError::InvalidIri {
            line,
            column,
            iri: full,
            source,
        })
    }

    fn local_continues_after_dot(&self) -> bool {
        let mut chars = self.rest().chars().skip(1);
        loop {
            match chars.next() {
                Some('.') => continue,
                Some(c) => return is_pn_chars(c) || matches!(c, ':' | '%' | '\\'),
                None => return false,
            }
        }
    }

    fn rdf_literal(&mut self) -> PResult<Term> {
        let lexical = self.string()?;
        match self.peek() {
            Some('@') => {
                self.bump();
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        self.bump();
                    } else {
                        break;
                    }
                }
                let tag = &self.src[start..self.pos];
                match Literal::with_language(lexical, tag) {
                    Ok(l) => Ok(Term::Literal(l)),
                    Err(_) => self.error(format!("invalid language tag {tag:?}")),
                }
            }
            Some('^') => {
                if !self.rest().starts_with("^^") {
                    return self.error("expected '^^'");
                }
                self.advance(2);
                let dt = match self.peek() {
                    Some('<') => self.iriref()?,
                    _ => self.prefixed_name()?,
                };
                Ok(Term::Literal(Literal::typed(lexical, dt)))
            }
            _ => Ok(Term::Literal(Literal::simple(lexical))),
        }
    }

    fn string(&mut self) -> PResult<String> {
        let quote = self.bump().expect("caller checked quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.advance(2);
        }
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.error("unterminated string literal"),
                Some(c) if c == quote => {
                    if !long {
                        return Ok(out);
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        // Up to two extra quotes may precede the closing delimiter.
                        if self.peek_at(2) == Some(quote) {
                            out.push(c);
                            continue;
                        }
                        self.advance(2);
                        return Ok(out);
                    }
                    out.push(c);
                }
                Some('\\') => out.push(self.echar()?),
                Some('\n' | '\r') if !long => {
                    return self.error("line break in single-quoted string");
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn echar(&mut self) -> PResult<char> {
        match self.bump() {
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{8}'),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('f') => Ok('\u{C}'),
            Some('"') => Ok('"'),
            Some('\'') => Ok('\''),
            Some('\\') => Ok('\\'),
            Some('u') => self.hex_char(4),
            Some('U') => self.hex_char(8),
            _ => self.error("invalid escape sequence in string"),
        }
    }

    fn numeric_literal(&mut self) -> PResult<Term> {
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.bump();
        }
        let digits = |p: &mut Self| {
            let mut n = 0;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.bump();
                n += 1;
            }
            n
        };
        let int_digits = digits(self);
        let mut datatype = xsd::INTEGER;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            digits(self);
            datatype = xsd::DECIMAL;
        } else if int_digits == 0 && !matches!(self.peek(), Some('e' | 'E')) {
            return self.error("malformed number");
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.bump();
            if matches!(self.peek(), Some('+' | '-')) {
                self.bump();
            }
            if digits(self) == 0 {
                return self.error("malformed exponent");
            }
            datatype = xsd::DOUBLE;
        } else if int_digits == 0 && datatype == xsd::INTEGER {
            return self.error("malformed number");
        }
        let lexical = &self.src[start..self.pos];
        Ok(Term::Literal(Literal::typed(lexical, Iri::new_unchecked(datatype))))
    }
}

fn boolean(value: &str) -> Term {
    Term::Literal(Literal::typed(value, Iri::new_unchecked(xsd::BOOLEAN)))
}

pub(crate) fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z' | 'a'..='z'
        | '\u{C0}'..='\u{D6}' | '\u{D8}'..='\u{F6}' | '\u{F8}'..='\u{2FF}'
        | '\u{370}'..='\u{37D}' | '\u{37F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}' | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}' | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

pub(crate) fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

pub(crate) fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || ('\u{300}'..='\u{36F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
}
