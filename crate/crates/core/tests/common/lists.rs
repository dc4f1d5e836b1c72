//! Random list-shaped graphs and a brute-force reading of them.

use proptest::prelude::*;

use lodlens_core::vocab::rdf;
use lodlens_core::{BlankNodeId, Graph, Iri, Literal, Term, Triple};

fn nil() -> Term {
    Term::Iri(Iri::parse(rdf::NIL).unwrap())
}

fn node(i: usize) -> Term {
    // A mix of blank and IRI cells.
    if i % 3 == 2 {
        Term::Iri(Iri::parse(&format!("http://e.org/узел{i}")).unwrap())
    } else {
        Term::Blank(BlankNodeId::new(format!("c{i}")).unwrap())
    }
}

fn count(g: &Graph, s: &Term, p: &str) -> usize {
    let Some(s) = s.to_subject() else { return 0 };
    g.iter()
        .filter(|t| t.subject == s && t.predicate.as_str() == p)
        .count()
}

fn rest_targets(g: &Graph, s: &Term) -> Vec<Term> {
    let Some(s) = s.to_subject() else { return vec![] };
    g.iter()
        .filter(|t| t.subject == s && t.predicate.as_str() == rdf::REST)
        .map(|t| t.object.clone())
        .collect()
}

/// Enumerates every `rdf:rest` path from `head`. The list is well formed
/// iff there is exactly one maximal path, it is simple, it ends at `rdf:nil`,
/// and every node on it has exactly one `rdf:first` and one `rdf:rest`.
pub fn oracle(g: &Graph, head: &Term) -> Option<Vec<Term>> {
    let mut complete: Vec<Vec<Term>> = Vec::new();
    let mut cyclic = false;
    let mut stack = vec![vec![head.clone()]];
    while let Some(path) = stack.pop() {
        let last = path.last().unwrap();
        if *last == nil() {
            complete.push(path);
            continue;
        }
        let next = rest_targets(g, last);
        if next.is_empty() {
            complete.push(path);
            continue;
        }
        for n in next {
            if path.contains(&n) {
                cyclic = true;
                continue;
            }
            let mut p = path.clone();
            p.push(n);
            stack.push(p);
        }
    }
    if cyclic || complete.len() != 1 {
        return None;
    }
    let path = &complete[0];
    if *path.last().unwrap() != nil() {
        return None;
    }
    let cells = &path[..path.len() - 1];
    let mut members = Vec::new();
    for c in cells {
        if count(g, c, rdf::FIRST) != 1 || count(g, c, rdf::REST) != 1 {
            return None;
        }
        let s = c.to_subject().unwrap();
        members.push(
            g.iter()
                .find(|t| t.subject == s && t.predicate.as_str() == rdf::FIRST)
                .unwrap()
                .object
                .clone(),
        );
    }
    Some(members)
}

#[derive(Debug, Clone)]
enum Edge {
    First(usize, usize),
    Rest(usize, Option<usize>),
    Noise(usize),
}

/// Random list-like graphs: mostly chains, with branches, cycles, missing
/// links and extra `rdf:first` triples mixed in.
pub fn list_graph() -> impl Strategy<Value = (Graph, Term)> {
    (1usize..30).prop_flat_map(|n| {
        let edge = prop_oneof![
            (0..n, 0..n).prop_map(|(a, b)| Edge::First(a, b)),
            (0..n, prop::option::of(0..n)).prop_map(|(a, b)| Edge::Rest(a, b)),
            (0..n).prop_map(Edge::Noise),
        ];
        (
            Just(n),
            prop::collection::vec(edge, 0..6),
            prop::collection::btree_set(0..n, 0..3),
            0..n + 1,
        )
            .prop_map(|(n, extra, drop, head)| {
                let first = Iri::parse(rdf::FIRST).unwrap();
                let rest = Iri::parse(rdf::REST).unwrap();
                let mut g = Graph::new();
                // A clean chain 0 -> 1 -> ... -> nil, then perturbations.
                for i in 0..n {
                    let s = node(i).to_subject().unwrap();
                    g.insert(Triple::new(s.clone(), first.clone(), Literal::simple(format!("m{i}"))));
                    if !drop.contains(&i) {
                        let next = if i + 1 < n { node(i + 1) } else { nil() };
                        g.insert(Triple::new(s, rest.clone(), next));
                    }
                }
                for e in extra {
                    match e {
                        Edge::First(a, b) => {
                            g.insert(Triple::new(node(a).to_subject().unwrap(), first.clone(), node(b)));
                        }
                        Edge::Rest(a, b) => {
                            let o = b.map(node).unwrap_or_else(nil);
                            g.insert(Triple::new(node(a).to_subject().unwrap(), rest.clone(), o));
                        }
                        Edge::Noise(a) => {
                            g.insert(Triple::new(
                                node(a).to_subject().unwrap(),
                                Iri::parse("http://e.org/note").unwrap(),
                                Literal::simple("x"),
                            ));
                        }
                    }
                }
                let head = if head == n { nil() } else { node(head) };
                (g, head)
            })
    })
}
