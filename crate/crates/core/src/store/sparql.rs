use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;
use std::time::Duration;

use async_trait::async_trait;
use log::debug;

use crate::graph::Graph;
use crate::iri::Iri;
use crate::store::results::{parse_results_json, QueryResults};
use crate::store::{
    DescriptionBundle, Direction, Gateway, StoreError, ValueKey, ValuePage, DEFAULT_CLOSURE_DEPTH,
    UNLIMITED,
};
use crate::term::{BlankNodeAllocator, Subject, Term, Triple};
use crate::turtle::parse_turtle_into;
use crate::vocab::{rdf, xsd};

const RESULTS_JSON: &str = "application/sparql-results+json";
const TURTLE: &str = "text/turtle";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointConfig {
    pub endpoint_url: Iri,
    pub default_graph: Option<Iri>,
    pub request_timeout: Duration,
    pub max_retries: u32,
}

impl EndpointConfig {
    pub fn new(endpoint_url: Iri) -> Self {
        EndpointConfig {
            endpoint_url,
            default_graph: None,
            request_timeout: Duration::from_secs(30),
            max_retries: 2,
        }
    }
}

/// A SPARQL 1.1 protocol client.
///
/// Resource IRIs are matched in both their decoded and percent-encoded forms,
/// and every IRI coming back is canonicalized, so datasets that store either
/// form resolve the same way.
#[derive(Debug, Clone)]
pub struct SparqlClient {
    config: EndpointConfig,
    http: reqwest::Client,
    closure_depth: usize,
}

impl SparqlClient {
    pub fn new(config: EndpointConfig) -> Result<Self, StoreError> {
        if config.request_timeout.is_zero() {
            return Err(StoreError::Unsupported("request timeout must be positive"));
        }
        let http = reqwest::Client::builder()
            .timeout(config.request_timeout)
            .build()
            .map_err(|e| StoreError::Unreachable(e.to_string()))?;
        Ok(SparqlClient {
            config,
            http,
            closure_depth: DEFAULT_CLOSURE_DEPTH,
        })
    }

    pub fn with_closure_depth(mut self, depth: usize) -> Self {
        self.closure_depth = depth;
        self
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }

    async fn post(&self, query: &str, accept: &str) -> Result<String, StoreError> {
        debug!("SPARQL query: {query}");
        let mut params = vec![("query", query.to_owned())];
        if let Some(g) = &self.config.default_graph {
            params.push(("default-graph-uri", g.to_ascii()));
        }
        let url = self.config.endpoint_url.to_ascii();
        let mut attempt = 0;
        loop {
            let sent = self
                .http
                .post(&url)
                .header(reqwest::header::ACCEPT, accept)
                .form(&params)
                .send()
                .await;
            match sent {
                Ok(resp) => {
                    let status = resp.status();
                    let body = resp.text().await.map_err(transport_error)?;
                    if !status.is_success() {
                        let message: String = body.chars().take(500).collect();
                        return Err(StoreError::Endpoint {
                            status: status.as_u16(),
                            message,
                        });
                    }
                    return Ok(body);
                }
                Err(e) if e.is_connect() && attempt < self.config.max_retries => {
                    let backoff = Duration::from_millis(100 << attempt.min(6));
                    debug!("connect failed ({e}), retrying in {backoff:?}");
                    tokio::time::sleep(backoff).await;
                    attempt += 1;
                }
                Err(e) => return Err(transport_error(e)),
            }
        }
    }

    async fn select(
        &self,
        query: &str,
        blanks: &mut BlankNodeAllocator,
    ) -> Result<Vec<HashMap<String, Term>>, StoreError> {
        let body = self.post(query, RESULTS_JSON).await?;
        match parse_results_json(&body, blanks) {
            Ok(QueryResults::Solutions { rows, .. }) => Ok(rows),
            Ok(QueryResults::Boolean(_)) => Err(StoreError::MalformedResponse(
                "expected solutions, got a boolean".into(),
            )),
            Err(e) => Err(StoreError::MalformedResponse(e.to_string())),
        }
    }

    async fn ask(&self, query: &str) -> Result<bool, StoreError> {
        let body = self.post(query, RESULTS_JSON).await?;
        match parse_results_json(&body, &mut BlankNodeAllocator::new()) {
            Ok(QueryResults::Boolean(b)) => Ok(b),
            Ok(_) => Err(StoreError::MalformedResponse("expected a boolean".into())),
            Err(e) => Err(StoreError::MalformedResponse(e.to_string())),
        }
    }

    async fn construct(
        &self,
        query: &str,
        graph: &mut Graph,
        blanks: &mut BlankNodeAllocator,
    ) -> Result<(), StoreError> {
        let body = self.post(query, TURTLE).await?;
        parse_turtle_into(&body, None, graph, blanks)
            .map_err(|e| StoreError::MalformedResponse(e.to_string()))
    }
}

fn transport_error(e: reqwest::Error) -> StoreError {
    if e.is_timeout() {
        StoreError::Timeout
    } else {
        StoreError::Unreachable(e.to_string())
    }
}

fn require_iri(subject: &Subject) -> Result<&Iri, StoreError> {
    subject.as_iri().ok_or(StoreError::Unsupported(
        "blank nodes cannot be addressed through a SPARQL endpoint",
    ))
}

fn count(row: &HashMap<String, Term>, var: &str) -> Result<usize, StoreError> {
    row.get(var)
        .and_then(Term::as_literal)
        .and_then(|l| l.lexical().parse().ok())
        .ok_or_else(|| StoreError::MalformedResponse(format!("missing count ?{var}")))
}

fn bound<'a>(row: &'a HashMap<String, Term>, var: &str) -> Result<&'a Term, StoreError> {
    row.get(var)
        .ok_or_else(|| StoreError::MalformedResponse(format!("unbound ?{var}")))
}

fn bound_iri(row: &HashMap<String, Term>, var: &str) -> Result<Iri, StoreError> {
    bound(row, var)?
        .as_iri()
        .cloned()
        .ok_or_else(|| StoreError::MalformedResponse(format!("?{var} is not an IRI")))
}

#[async_trait]
impl Gateway for SparqlClient {
    async fn fetch_description(
        &self,
        resource: &Subject,
        page_size: usize,
    ) -> Result<DescriptionBundle, StoreError> {
        let r = require_iri(resource)?;
        let mut blanks = BlankNodeAllocator::new();
        let mut bundle = DescriptionBundle::default();

        let mut counts: BTreeMap<(Iri, Iri), usize> = BTreeMap::new();
        for row in self.select(&query::direct_counts(r), &mut blanks).await? {
            let key = (bound_iri(&row, "s")?, bound_iri(&row, "p")?);
            *counts.entry(key).or_default() += count(&row, "n")?;
        }
        let mut siblings: Vec<Iri> = counts
            .keys()
            .map(|(s, _)| s.clone())
            .filter(|s| s != r)
            .collect();
        siblings.dedup();
        bundle.siblings = siblings;

        let truncated: Vec<(&Iri, &Iri)> = counts
            .iter()
            .filter(|(_, &n)| n > page_size)
            .map(|((s, p), _)| (s, p))
            .collect();
        if !counts.is_empty() {
            let q = query::direct_construct(r, &truncated, self.closure_depth);
            self.construct(&q, &mut bundle.direct, &mut blanks).await?;
        }
        for (s, p) in &truncated {
            let q = query::direct_page_construct(s, p, page_size, self.closure_depth);
            self.construct(&q, &mut bundle.direct, &mut blanks).await?;
            bundle.truncation.insert(
                ValueKey::new(Subject::Iri((*s).clone()), (*p).clone(), Direction::Direct),
                counts[&((*s).clone(), (*p).clone())],
            );
        }

        let mut inverse_counts: BTreeMap<Iri, usize> = BTreeMap::new();
        for row in self.select(&query::inverse_counts(r), &mut blanks).await? {
            *inverse_counts.entry(bound_iri(&row, "p")?).or_default() += count(&row, "n")?;
        }
        for (p, n) in inverse_counts {
            let q = query::values_page(r, &p, Direction::Inverse, 0, page_size);
            for row in self.select(&q, &mut blanks).await? {
                let subject = bound(&row, "v")?.to_subject().ok_or_else(|| {
                    StoreError::MalformedResponse("literal in subject position".into())
                })?;
                bundle
                    .inverse
                    .insert(Triple::new(subject, p.clone(), r.clone()));
            }
            if n > page_size {
                bundle
                    .truncation
                    .insert(ValueKey::new(resource.clone(), p, Direction::Inverse), n);
            }
        }
        Ok(bundle)
    }

    async fn fetch_property_page(
        &self,
        resource: &Subject,
        property: &Iri,
        direction: Direction,
        offset: usize,
        limit: usize,
    ) -> Result<ValuePage, StoreError> {
        let r = require_iri(resource)?;
        let mut blanks = BlankNodeAllocator::new();
        let rows = self
            .select(&query::values_count(r, property, direction), &mut blanks)
            .await?;
        let total = match rows.first() {
            Some(row) => count(row, "n")?,
            None => 0,
        };
        let mut values = Vec::new();
        if offset < total {
            let q = query::values_page(r, property, direction, offset, limit);
            for row in self.select(&q, &mut blanks).await? {
                values.push(bound(&row, "v")?.clone());
            }
        }
        Ok(ValuePage { values, total })
    }

    async fn ask_exists(&self, resource: &Iri) -> Result<bool, StoreError> {
        self.ask(&query::exists(resource)).await
    }
}

/// Query text builders.
pub(crate) mod query {
    use super::*;

    fn iri_ref(iri: &str) -> String {
        format!("<{iri}>")
    }

    fn string_literal(text: &str) -> String {
        let mut out = String::with_capacity(text.len() + 2);
        out.push('"');
        for c in text.chars() {
            match c {
                '"' => out.push_str("\\\""),
                '\\' => out.push_str("\\\\"),
                '\n' => out.push_str("\\n"),
                '\r' => out.push_str("\\r"),
                c => out.push(c),
            }
        }
        out.push('"');
        out
    }

    /// The decoded form and, when different, the percent-encoded form.
    fn forms(iri: &Iri) -> Vec<String> {
        let mut v = vec![iri.as_str().to_owned()];
        let ascii = iri.to_ascii();
        if ascii != v[0] {
            v.push(ascii);
        }
        v
    }

    fn values(var: &str, iri: &Iri) -> String {
        let terms: Vec<String> = forms(iri).iter().map(|f| iri_ref(f)).collect();
        format!("VALUES ?{var} {{ {} }}", terms.join(" "))
    }

    fn one_of(var: &str, iri: &Iri) -> String {
        let terms: Vec<String> = forms(iri).iter().map(|f| iri_ref(f)).collect();
        format!("?{var} IN ({})", terms.join(", "))
    }

    fn sibling_filter(var: &str, iri: &Iri) -> String {
        let tests: Vec<String> = forms(iri)
            .iter()
            .map(|f| format!("STRSTARTS(STR(?{var}), {})", string_literal(&format!("{f}#"))))
            .collect();
        format!("isIRI(?{var}) && ({})", tests.join(" || "))
    }

    fn subject_pattern(r: &Iri) -> String {
        format!(
            "{{ {} ?s ?p ?o }} UNION {{ ?s ?p ?o FILTER({}) }}",
            values("s", r),
            sibling_filter("s", r)
        )
    }

    /// BIND clauses and ORDER BY conditions realizing the value order on `var`.
    fn ordering(var: &str) -> (String, String) {
        let binds = format!(
            "BIND(IF(isLiteral(?{var}), 0, IF(isIRI(?{var}), 1, 2)) AS ?{var}_rank) \
             BIND(IF(isLiteral(?{var}) && LANG(?{var}) = \"\" && DATATYPE(?{var}) != <{}>, STR(DATATYPE(?{var})), \"\") AS ?{var}_dt)",
            xsd::STRING
        );
        let order = format!(
            "ORDER BY ?{var}_rank STR(?{var}) LCASE(LANG(?{var})) ?{var}_dt ?{var}"
        );
        (binds, order)
    }

    fn limit_clause(offset: usize, limit: usize) -> String {
        let mut s = String::new();
        if offset > 0 {
            let _ = write!(s, " OFFSET {offset}");
        }
        if limit != UNLIMITED {
            let _ = write!(s, " LIMIT {limit}");
        }
        s
    }

    /// CONSTRUCT template and OPTIONAL pattern adding the triples of blank
    /// nodes reachable from `start` within `depth` non-`rdf:rest` hops.
    fn closure(start: &str, depth: usize) -> (String, String) {
        let mut template = String::new();
        let mut pattern = String::new();
        let mut prev = start.to_owned();
        for level in 1..=depth {
            let _ = write!(template, " ?n{level} ?p{level} ?o{level} .");
            let _ = write!(
                pattern,
                " OPTIONAL {{ ?{prev} <{rest}>* ?n{level} . FILTER(isBlank(?{prev}) && isBlank(?n{level})) ?n{level} ?p{level} ?o{level} .",
                rest = rdf::REST
            );
            prev = format!("o{level}");
        }
        pattern.push_str(&" }".repeat(depth));
        (template, pattern)
    }

    pub(crate) fn direct_counts(r: &Iri) -> String {
        format!(
            "SELECT ?s ?p (COUNT(DISTINCT ?o) AS ?n) WHERE {{ {} }} GROUP BY ?s ?p",
            subject_pattern(r)
        )
    }

    pub(crate) fn direct_construct(r: &Iri, excluded: &[(&Iri, &Iri)], depth: usize) -> String {
        let (template, optional) = closure("o", depth);
        let mut filter = String::new();
        if !excluded.is_empty() {
            let keys: Vec<String> = excluded
                .iter()
                .map(|(s, p)| format!("({} && {})", one_of("s", s), one_of("p", p)))
                .collect();
            let _ = write!(filter, " FILTER(!({}))", keys.join(" || "));
        }
        format!(
            "CONSTRUCT {{ ?s ?p ?o .{template} }} WHERE {{ {{ {}{filter} }}{optional} }}",
            subject_pattern(r)
        )
    }

    pub(crate) fn direct_page_construct(s: &Iri, p: &Iri, limit: usize, depth: usize) -> String {
        let (template, optional) = closure("o", depth);
        let (binds, order) = ordering("o");
        format!(
            "CONSTRUCT {{ ?s ?p ?o .{template} }} WHERE {{ {{ SELECT DISTINCT ?s ?p ?o WHERE {{ {} {} ?s ?p ?o . {binds} }} {order}{} }}{optional} }}",
            values("s", s),
            values("p", p),
            limit_clause(0, limit)
        )
    }

    pub(crate) fn inverse_counts(r: &Iri) -> String {
        format!(
            "SELECT ?p (COUNT(DISTINCT ?s) AS ?n) WHERE {{ {} ?s ?p ?o }} GROUP BY ?p",
            values("o", r)
        )
    }

    fn value_pattern(r: &Iri, p: &Iri, direction: Direction) -> String {
        match direction {
            Direction::Direct => format!("{} {} ?r ?p ?v .", values("r", r), values("p", p)),
            Direction::Inverse => format!("{} {} ?v ?p ?r .", values("r", r), values("p", p)),
        }
    }

    pub(crate) fn values_count(r: &Iri, p: &Iri, direction: Direction) -> String {
        format!(
            "SELECT (COUNT(DISTINCT ?v) AS ?n) WHERE {{ {} }}",
            value_pattern(r, p, direction)
        )
    }

    pub(crate) fn values_page(
        r: &Iri,
        p: &Iri,
        direction: Direction,
        offset: usize,
        limit: usize,
    ) -> String {
        let (binds, order) = ordering("v");
        format!(
            "SELECT DISTINCT ?v WHERE {{ {} {binds} }} {order}{}",
            value_pattern(r, p, direction),
            limit_clause(offset, limit)
        )
    }

    pub(crate) fn exists(r: &Iri) -> String {
        format!(
            "ASK {{ {{ {vs} ?s ?p ?o }} UNION {{ {vo} ?s ?p ?o }} UNION {{ ?s ?p ?o FILTER(({fs}) || ({fo})) }} }}",
            vs = values("s", r),
            vo = values("o", r),
            fs = sibling_filter("s", r),
            fo = sibling_filter("o", r)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::query;
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::parse(s).unwrap()
    }

    #[test]
    fn queries_match_both_iri_forms() {
        let r = iri("http://lod.ruthes.org/resource/entry/RU-машина-n");
        let q = query::direct_counts(&r);
        assert!(q.contains("<http://lod.ruthes.org/resource/entry/RU-машина-n>"));
        assert!(q.contains("RU-%D0%BC%D0%B0%D1%88%D0%B8%D0%BD%D0%B0-n>"));
        assert!(q.contains("STRSTARTS(STR(?s), \"http://lod.ruthes.org/resource/entry/RU-машина-n#\")"));
        let ascii = iri("http://e.org/x");
        assert_eq!(query::values_count(&ascii, &ascii, Direction::Direct).matches("<http://e.org/x>").count(), 2);
    }

    #[test]
    fn closure_nesting_is_balanced() {
        let q = query::direct_construct(&iri("http://e.org/x"), &[], 3);
        assert_eq!(q.matches('{').count(), q.matches('}').count());
        assert_eq!(q.matches("OPTIONAL").count(), 3);
        assert!(q.contains("?n3 ?p3 ?o3"));
        let flat = query::direct_construct(&iri("http://e.org/x"), &[], 0);
        assert!(!flat.contains("OPTIONAL"));
    }

    #[test]
    fn paging_clauses() {
        let r = iri("http://e.org/x");
        let q = query::values_page(&r, &r, Direction::Inverse, 100, 50);
        assert!(q.ends_with("OFFSET 100 LIMIT 50"));
        assert!(q.contains("?v ?p ?r"));
        let q = query::values_page(&r, &r, Direction::Direct, 0, UNLIMITED);
        assert!(!q.contains("LIMIT") && !q.contains("OFFSET"));
    }

    #[test]
    fn zero_timeout_is_rejected() {
        let mut cfg = EndpointConfig::new(iri("http://localhost:1/sparql"));
        cfg.request_timeout = Duration::ZERO;
        assert!(SparqlClient::new(cfg).is_err());
    }

    #[tokio::test]
    async fn unreachable_endpoint_after_retries() {
        let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
        let port = listener.local_addr().unwrap().port();
        drop(listener);
        let mut cfg = EndpointConfig::new(iri(&format!("http://127.0.0.1:{port}/sparql")));
        cfg.max_retries = 1;
        let client = SparqlClient::new(cfg).unwrap();
        let err = client.ask_exists(&iri("http://e.org/x")).await.unwrap_err();
        assert!(matches!(err, StoreError::Unreachable(_)), "{err:?}");
    }
}
