use std::collections::HashSet;

use crate::graph::Graph;
use crate::term::{Subject, Term};
use crate::vocab::rdf;

/// Members of the RDF collection anchored at `head`, in list order.
///
/// `None` unless every cell has exactly one `rdf:first` and one `rdf:rest`,
/// no cell repeats, and the chain ends at `rdf:nil`.
pub fn flatten_collection(graph: &Graph, head: &Term) -> Option<Vec<Term>> {
    cells(graph, head).map(|cells| cells.into_iter().map(|(_, m)| m).collect())
}

/// Like [`flatten_collection`], also returning the cell nodes.
pub(crate) fn cells(graph: &Graph, head: &Term) -> Option<Vec<(Subject, Term)>> {
    let first = crate::iri::Iri::new_unchecked(rdf::FIRST.to_owned());
    let rest = crate::iri::Iri::new_unchecked(rdf::REST.to_owned());
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut node = head.clone();
    loop {
        if matches!(&node, Term::Iri(i) if i.as_str() == rdf::NIL) {
            return Some(out);
        }
        let cell = node.to_subject()?;
        if !seen.insert(cell.clone()) {
            return None;
        }
        let member = single(graph.objects(&cell, &first))?;
        let next = single(graph.objects(&cell, &rest))?;
        out.push((cell, member));
        node = next;
    }
}

fn single<'a>(mut it: impl Iterator<Item = &'a Term>) -> Option<Term> {
    let first = it.next()?;
    it.next().is_none().then(|| first.clone())
}
