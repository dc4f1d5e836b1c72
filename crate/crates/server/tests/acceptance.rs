//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Everything runs against the in-memory store.

#[path = "../../core/tests/common/mod.rs"]
mod core_common;
mod common;

use std::cell::{Cell, RefCell};
use std::collections::{BTreeMap, BTreeSet};
use std::future::Future;
use std::pin::Pin;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::*;
use core_common::{gen, lists};
use lodlens_core::describe::flatten_collection;
use lodlens_core::store::{Direction, Gateway, MemoryStore, UNLIMITED};
use lodlens_core::turtle::{parse_turtle, serialize_ntriples, serialize_turtle, PrefixMap, SerializeOptions};
use lodlens_core::{Graph, Iri, Literal, Subject, Term, Triple};
use lodlens_server::ValuesPage;

type Outcome = Result<String, String>;
type Criterion = fn() -> Pin<Box<dyn Future<Output = Outcome> + Send>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const MASHINA: &str = "http://lod.ruthes.org/resource/entry/RU-машина-n";
const MASHINA_RAW: &str = "/resource/entry/RU-машина-n";
const MASHINA_PCT: &str = "/resource/entry/RU-%D0%BC%D0%B0%D1%88%D0%B8%D0%BD%D0%B0-n";

fn parse_html(body: &str) -> Result<roxmltree::Document<'_>, String> {
    let opts = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    roxmltree::Document::parse_with_options(body, opts).map_err(|e| format!("malformed HTML: {e}"))
}

async fn get(url: String, accept: Option<&str>) -> Result<reqwest::Response, String> {
    let mut req = client().get(&url);
    if let Some(a) = accept {
        req = req.header("accept", a);
    }
    req.send().await.map_err(|e| format!("GET {url}: {e}"))
}

async fn text(r: reqwest::Response) -> Result<String, String> {
    r.text().await.map_err(|e| e.to_string())
}

fn header(r: &reqwest::Response, name: &str) -> String {
    r.headers()
        .get(name)
        .and_then(|v| v.to_str().ok())
        .unwrap_or_default()
        .to_owned()
}

/// IRI references and prefixed names of a Turtle document, skipping string
/// literals and comments.
fn iri_tokens(ttl: &str) -> Vec<&str> {
    let b = ttl.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            q @ (b'"' | b'\'') => {
                let long = b[i..].starts_with(&[q, q, q]);
                i += if long { 3 } else { 1 };
                while i < b.len() {
                    if b[i] == b'\\' {
                        i += 2;
                    } else if long && b[i..].starts_with(&[q, q, q]) {
                        i += 3;
                        break;
                    } else if !long && b[i] == q {
                        i += 1;
                        break;
                    } else {
                        i += 1;
                    }
                }
            }
            b'#' => {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            }
            b'<' => {
                let end = i + ttl[i..].find('>').map_or(ttl.len() - i, |e| e + 1);
                out.push(&ttl[i..end]);
                i = end;
            }
            c if c.is_ascii_whitespace() || b";,()[]".contains(&c) => i += 1,
            _ => {
                let start = i;
                while i < b.len()
                    && !b[i].is_ascii_whitespace()
                    && !b";,()[]\"'<".contains(&b[i])
                {
                    i += 1;
                }
                let word = ttl[start..i].trim_end_matches('.');
                if word.contains(':') {
                    out.push(word);
                }
            }
        }
    }
    out
}

/// The triples a description of `r` must contain: everything about `r` and
/// its `#` siblings, the blank nodes they reach, and triples pointing at `r`.
fn expected_description(g: &Graph, r: &Iri) -> Graph {
    let hash = format!("{}#", r.as_str());
    let mut out = Graph::new();
    let mut pending: Vec<Subject> = g
        .iter()
        .filter_map(|t| t.subject.as_iri())
        .filter(|i| *i == r || i.as_str().starts_with(&hash))
        .map(|i| Subject::Iri(i.clone()))
        .collect();
    let mut seen = BTreeSet::new();
    while let Some(s) = pending.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for t in g.iter().filter(|t| t.subject == s) {
            out.insert(t.clone());
            if let Term::Blank(b) = &t.object {
                pending.push(Subject::Blank(b.clone()));
            }
        }
    }
    for t in g.iter().filter(|t| t.object == Term::Iri(r.clone())) {
        out.insert(t.clone());
    }
    out
}

fn cyrillic_dereferencing() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let start = Instant::now();
        let s = spawn(RUTHES).await;
        let mut bodies = Vec::new();
        for (form, target) in [("raw UTF-8", MASHINA_RAW), ("percent-encoded", MASHINA_PCT)] {
            let r = raw_get(s.addr, target.as_bytes(), Some("text/html")).await;
            ensure!(r.status == 303, "{form}: status {} instead of 303", r.status);
            let location = r.header("location").unwrap_or_default().to_owned();
            ensure!(location == format!("{MASHINA_PCT}.html"), "{form}: Location {location}");
            let page = raw_get(s.addr, location.as_bytes(), None).await;
            ensure!(page.status == 200, "{form}: document status {}", page.status);
            ensure!(
                page.header("content-type") == Some("text/html; charset=utf-8"),
                "{form}: content type {:?}",
                page.header("content-type")
            );
            let body = String::from_utf8(page.body).map_err(|e| format!("{form}: {e}"))?;
            bodies.push(body);
        }
        ensure!(bodies[0] == bodies[1], "raw and encoded bodies differ");
        for suffix in [".ttl", ".nt"] {
            let r = raw_get(s.addr, format!("{MASHINA_RAW}{suffix}").as_bytes(), None).await;
            ensure!(r.status == 200, "{suffix}: status {}", r.status);
            bodies.push(String::from_utf8(r.body).map_err(|e| e.to_string())?);
        }
        ensure!(
            bodies.iter().all(|b| !b.contains('\u{FFFD}')),
            "replacement character in a body"
        );
        let elapsed = start.elapsed();
        ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
        Ok(format!("303 -> 200 for both forms, identical {} byte bodies, no U+FFFD", bodies[0].len()))
    })
}

fn decoded_turtle() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let s = spawn(RUTHES).await;
        let fixture = fixture_graph(RUTHES.0);
        let mut resources: Vec<Iri> = fixture
            .iter()
            .filter_map(|t| t.subject.as_iri().map(|i| i.split_hash().0))
            .filter(|i| s.config.site.is_local(i) && !i.as_str().is_ascii())
            .collect();
        resources.sort();
        resources.dedup();
        ensure!(resources.iter().any(|r| r.as_str() == MASHINA), "fixture lacks {MASHINA}");
        let mut tokens = 0;
        for r in &resources {
            let path = s.config.site.document_path(r, ".ttl").unwrap();
            let body = text(get(s.url(&path), None).await?).await?;
            ensure!(body.contains(r.as_str()), "{path}: decoded IRI {r} not in body");
            for token in iri_tokens(&body) {
                tokens += 1;
                ensure!(
                    !token.contains("%D0") && !token.contains("%D1"),
                    "{path}: encoded IRI token {token}"
                );
            }
            let served = parse_turtle(&body, None).map_err(|e| format!("{path}: {e}"))?;
            let expected = expected_description(&fixture, r);
            ensure!(
                served.is_isomorphic(&expected),
                "{path}: served {} triples, fixture subgraph has {}",
                served.len(),
                expected.len()
            );
        }
        Ok(format!(
            "{} Cyrillic resources, {tokens} IRI tokens scanned, all reparse isomorphic",
            resources.len()
        ))
    })
}

fn same_literal(a: &Literal, b: &Literal) -> bool {
    a.lexical().as_bytes() == b.lexical().as_bytes()
        && a.language() == b.language()
        && a.datatype() == b.datatype()
}

fn literal_fidelity() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        // Store -> serialize -> parse in process, collecting every literal.
        let r = iri(MASHINA);
        let p = iri("http://www.w3.org/ns/lemon/ontolex#writtenRep");
        let all: RefCell<Vec<Literal>> = RefCell::new(Vec::new());
        let mut runner = TestRunner::new(Config {
            cases: 500,
            failure_persistence: None,
            ..Config::default()
        });
        let strategy = proptest::collection::vec(gen::literal(), 1..8);
        let rt = tokio::runtime::Handle::current();
        let result = tokio::task::block_in_place(|| {
            runner.run(&strategy, |literals| {
                all.borrow_mut().extend(literals.iter().cloned());
                let g: Graph = literals
                    .iter()
                    .map(|l| Triple::new(r.clone(), p.clone(), l.clone()))
                    .collect();
                let store = MemoryStore::new(g);
                let bundle = rt
                    .block_on(store.fetch_description(&Subject::Iri(r.clone()), UNLIMITED))
                    .map_err(|e| TestCaseError::fail(e.to_string()))?;
                for text in [
                    serialize_turtle(&bundle.direct, &PrefixMap::common(), &SerializeOptions::default()),
                    serialize_ntriples(&bundle.direct),
                ] {
                    let back = parse_turtle(&text, None).map_err(|e| TestCaseError::fail(e.to_string()))?;
                    for l in &literals {
                        let found = back
                            .objects(&Subject::Iri(r.clone()), &p)
                            .any(|o| o.as_literal().is_some_and(|b| same_literal(b, l)));
                        if !found {
                            return Err(TestCaseError::fail(format!("{l:?} lost")));
                        }
                    }
                }
                Ok(())
            })
        });
        result.map_err(|e| e.to_string())?;
        let all = all.into_inner();
        ensure!(all.len() >= 500, "only {} literals generated", all.len());

        // The same literals through the HTTP documents.
        let g: Graph = all
            .iter()
            .enumerate()
            .map(|(i, l)| Triple::new(iri(&format!("http://lod.ruthes.org/resource/lit/{i}")), p.clone(), l.clone()))
            .collect();
        let s = spawn_app(config(RUTHES, ""), Arc::new(MemoryStore::new(g))).await;
        for (i, l) in all.iter().enumerate() {
            for suffix in [".ttl", ".nt"] {
                let body = text(get(s.url(&format!("/resource/lit/{i}{suffix}")), None).await?).await?;
                let back = parse_turtle(&body, None).map_err(|e| format!("{i}{suffix}: {e}"))?;
                ensure!(
                    back.iter().any(|t| t.object.as_literal().is_some_and(|b| same_literal(b, l))),
                    "{l:?} lost over HTTP {suffix}"
                );
            }
        }

        // Every fixture literal reachable from a served document.
        let mut checked = 0;
        for fixture in [RUTHES, WORDNET] {
            let s = spawn(fixture).await;
            let g = fixture_graph(fixture.0);
            let mut served = Graph::new();
            let mut bases: Vec<Iri> = g
                .iter()
                .filter_map(|t| t.subject.as_iri().map(|i| i.split_hash().0))
                .filter(|i| s.config.site.is_local(i))
                .collect();
            bases.dedup();
            for b in bases {
                let path = s.config.site.document_path(&b, ".ttl").unwrap();
                let body = text(get(s.url(&path), None).await?).await?;
                served.extend_from(&parse_turtle(&body, None).map_err(|e| format!("{path}: {e}"))?);
            }
            let lits = |g: &Graph| -> BTreeSet<Literal> {
                g.iter().filter_map(|t| t.object.as_literal().cloned()).collect()
            };
            let missing: Vec<_> = lits(&g).difference(&lits(&served)).cloned().collect();
            ensure!(missing.is_empty(), "{}: literals not served: {missing:?}", fixture.0);
            checked += lits(&g).len();
        }
        Ok(format!(
            "{} random literals over 500 cases byte-exact in process and over HTTP; {checked} fixture literals served",
            all.len()
        ))
    })
}

fn suffix_negotiation() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let s = spawn(RUTHES).await;
        let html = "text/html; charset=utf-8";
        let ttl = "text/turtle; charset=utf-8";
        let nt = "application/n-triples; charset=utf-8";
        let loc = |suffix: &str| format!("{MASHINA_PCT}{suffix}");
        // (suffix, Accept) -> (status, Location or Content-Type)
        let table: [(&str, &str, u16, String); 12] = [
            ("", "text/html", 303, loc(".html")),
            ("", "text/turtle", 303, loc(".ttl")),
            ("", "*/*", 303, loc(".ttl")),
            (".html", "text/html", 200, html.into()),
            (".html", "text/turtle", 200, html.into()),
            (".html", "*/*", 200, html.into()),
            (".ttl", "text/html", 200, ttl.into()),
            (".ttl", "text/turtle", 200, ttl.into()),
            (".ttl", "*/*", 200, ttl.into()),
            (".nt", "text/html", 200, nt.into()),
            (".nt", "text/turtle", 200, nt.into()),
            (".nt", "*/*", 200, nt.into()),
        ];
        for (suffix, accept, status, expected) in &table {
            let r = get(s.url(&loc(suffix)), Some(accept)).await?;
            let got = r.status().as_u16();
            ensure!(got == *status, "{suffix:?} x {accept}: status {got}");
            let value = if *status == 303 {
                ensure!(header(&r, "vary") == "Accept", "{suffix:?} x {accept}: no Vary");
                header(&r, "location")
            } else {
                header(&r, "content-type")
            };
            ensure!(value == *expected, "{suffix:?} x {accept}: {value} != {expected}");
        }
        Ok("12/12 combinations match".into())
    })
}

fn hash_uris() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let s = spawn(WORDNET).await;
        let base = "http://wordnet-rdf.princeton.edu/wn31/cat-n";
        let fixture = fixture_graph(WORDNET.0);
        // Brute-force prefix scan of every triple in the store.
        let oracle: BTreeSet<Triple> = fixture
            .iter()
            .filter(|t| match &t.subject {
                Subject::Iri(i) => i.as_str() == base || i.as_str().starts_with(&format!("{base}#")),
                Subject::Blank(_) => false,
            })
            .cloned()
            .collect();
        let siblings: BTreeSet<&str> = oracle
            .iter()
            .filter_map(|t| t.subject.as_iri().and_then(Iri::fragment))
            .collect();
        ensure!(siblings.len() == 3, "fixture has siblings {siblings:?}");
        let inverse = fixture.iter().filter(|t| t.object == Term::Iri(iri(base))).count();
        ensure!(inverse == 0, "cat-n fixture unexpectedly has inverse triples");

        for suffix in [".ttl", ".nt"] {
            let body = text(get(s.url(&format!("/wn31/cat-n{suffix}")), None).await?).await?;
            let served: BTreeSet<Triple> = parse_turtle(&body, None)
                .map_err(|e| e.to_string())?
                .iter()
                .cloned()
                .collect();
            ensure!(
                served == oracle,
                "{suffix}: missing {:?}, extra {:?}",
                oracle.difference(&served).collect::<Vec<_>>(),
                served.difference(&oracle).collect::<Vec<_>>()
            );
        }
        let page = text(get(s.url("/wn31/cat-n.html"), None).await?).await?;
        let doc = parse_html(&page)?;
        let sections: BTreeSet<&str> = doc
            .descendants()
            .filter(|n| n.has_tag_name("section"))
            .filter_map(|n| n.attribute("id"))
            .collect();
        ensure!(sections == siblings, "HTML sections {sections:?}");
        Ok(format!("{} triples, base + {} siblings, exact set equality", oracle.len(), siblings.len()))
    })
}

fn collections() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let mut runner = TestRunner::new(Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        });
        let outcomes = [Cell::new(0usize), Cell::new(0)];
        runner
            .run(&lists::list_graph(), |(g, head)| {
                let expected = lists::oracle(&g, &head);
                let slot = &outcomes[expected.is_some() as usize];
                slot.set(slot.get() + 1);
                let got = flatten_collection(&g, &head);
                if got != expected {
                    return Err(TestCaseError::fail(format!("{got:?} != {expected:?}")));
                }
                Ok(())
            })
            .map_err(|e| e.to_string())?;
        let outcomes = outcomes.map(Cell::into_inner);
        ensure!(outcomes.iter().all(|&n| n > 0), "generator produced only one outcome: {outcomes:?}");

        // The fixture list renders in source order.
        let s = spawn(RUTHES).await;
        let fixture = fixture_graph(RUTHES.0);
        let entry = iri("http://lod.ruthes.org/resource/entry/RU-объект_культурного_наследия-n");
        let head = fixture
            .iter()
            .find(|t| t.subject == Subject::Iri(entry.clone()) && t.predicate.as_str().ends_with("#constituent"))
            .map(|t| t.object.clone())
            .ok_or("fixture list missing")?;
        let members: Vec<String> = lists::oracle(&fixture, &head)
            .ok_or("fixture list is not well formed")?
            .iter()
            .map(|m| m.as_iri().unwrap().as_str().to_owned())
            .collect();
        let path = s.config.site.document_path(&entry, ".html").unwrap();
        let page = text(get(s.url(&path), None).await?).await?;
        let doc = parse_html(&page)?;
        let ol = doc
            .descendants()
            .find(|n| n.attribute("class") == Some("lodlens-collection"))
            .ok_or("no collection element")?;
        let shown: Vec<String> = ol
            .children()
            .filter(|n| n.has_tag_name("li"))
            .filter_map(|li| li.descendants().find(|a| a.has_tag_name("a")))
            .filter_map(|a| a.attribute("title").map(str::to_owned))
            .collect();
        ensure!(shown == members, "rendered {shown:?}, list is {members:?}");
        Ok(format!(
            "1000 graphs agree ({} well formed, {} not); fixture list rendered in order",
            outcomes[1], outcomes[0]
        ))
    })
}

fn pagination() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let fixture = fixture_graph(PAGING.0);
        let r = Subject::Iri(iri("http://lod.ruthes.org/resource/lexicon/large"));
        let p = iri("http://www.w3.org/ns/lemon/lime#entry");
        let oracle: BTreeSet<String> = fixture
            .iter()
            .filter(|t| t.subject == r && t.predicate == p)
            .map(|t| t.object.as_iri().unwrap().as_str().to_owned())
            .collect();
        ensure!(oracle.len() == 120, "fixture has {} values", oracle.len());

        let store = MemoryStore::new(fixture.clone());
        let s = spawn(PAGING).await;
        let mut via_store = BTreeSet::new();
        let mut via_http = BTreeSet::new();
        let mut sizes = Vec::new();
        for offset in [0usize, 50, 100] {
            let page = store
                .fetch_property_page(&r, &p, Direction::Direct, offset, 50)
                .await
                .map_err(|e| e.to_string())?;
            ensure!(page.total == 120, "store total {}", page.total);
            for v in &page.values {
                ensure!(via_store.insert(v.as_iri().unwrap().as_str().to_owned()), "store pages overlap at {v:?}");
            }
            let url = format!(
                "{}?uri={}&property={}&direction=direct&offset={offset}&limit=50",
                s.url("/api/values"),
                "http%3A%2F%2Flod.ruthes.org%2Fresource%2Flexicon%2Flarge",
                "http%3A%2F%2Fwww.w3.org%2Fns%2Flemon%2Flime%23entry"
            );
            let page: ValuesPage = get(url, None).await?.json().await.map_err(|e| e.to_string())?;
            ensure!(page.total == 120, "HTTP total {}", page.total);
            sizes.push(page.values.len());
            for v in page.values {
                ensure!(via_http.insert(v.text.clone()), "HTTP pages overlap at {}", v.text);
            }
        }
        ensure!(sizes == [50, 50, 20], "page sizes {sizes:?}");
        ensure!(via_store == oracle, "store union differs from the fixture");
        ensure!(via_http == oracle, "HTTP union differs from the fixture");
        let oversize = get(
            format!(
                "{}?uri=http%3A%2F%2Flod.ruthes.org%2Fresource%2Flexicon%2Flarge&property=http%3A%2F%2Fwww.w3.org%2Fns%2Flemon%2Flime%23entry&limit=10000",
                s.url("/api/values")
            ),
            None,
        )
        .await?;
        ensure!(oversize.status() == 400, "limit 10000 gave {}", oversize.status());
        Ok("pages 50+50+20 disjoint, union = 120 fixture values, store and HTTP".into())
    })
}

fn round_trip() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let mut prefixes = PrefixMap::common();
        prefixes.set("entry", iri("http://lod.ruthes.org/resource/entry/"));
        prefixes.set("wn31", iri("http://wordnet-rdf.princeton.edu/wn31/"));
        let options = [
            SerializeOptions::default(),
            SerializeOptions {
                decode_iris: false,
                ..Default::default()
            },
            SerializeOptions {
                emit_prefixes: false,
                ..Default::default()
            },
            SerializeOptions {
                base: Some(iri("http://lod.ruthes.org/resource/entry/")),
                ..Default::default()
            },
        ];
        let mut runner = TestRunner::new(Config {
            cases: 500,
            failure_persistence: None,
            ..Config::default()
        });
        let triples = Cell::new(0);
        runner
            .run(&gen::graph(12), |g| {
                triples.set(triples.get() + g.len());
                let mut texts: Vec<String> = options.iter().map(|o| serialize_turtle(&g, &prefixes, o)).collect();
                texts.push(serialize_ntriples(&g));
                for text in texts {
                    let back = parse_turtle(&text, None).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
                    if !back.is_isomorphic(&g) {
                        return Err(TestCaseError::fail(format!("not isomorphic:\n{text}")));
                    }
                }
                Ok(())
            })
            .map_err(|e| e.to_string())?;
        Ok(format!("500 graphs ({} triples) x 5 serializations", triples.get()))
    })
}

fn navigation() -> Pin<Box<dyn Future<Output = Outcome> + Send>> {
    Box::pin(async {
        let start = Instant::now();
        let mut summary = Vec::new();
        for (fixture, entry) in [(RUTHES, "/resource/lexicon/ru"), (WORDNET, "/wn31/cat-n")] {
            let s = spawn(fixture).await;
            let mut queue = vec![entry.to_owned()];
            let mut visited = BTreeSet::new();
            let mut documents = BTreeMap::new();
            while let Some(link) = queue.pop() {
                let path = link.split('#').next().unwrap().to_owned();
                if !visited.insert(path.clone()) {
                    continue;
                }
                let mut r = get(s.url(&path), Some("text/html")).await?;
                if r.status() == 303 {
                    let location = header(&r, "location");
                    r = get(s.url(&location), Some("text/html")).await?;
                }
                let status = r.status().as_u16();
                ensure!(status == 200, "{path}: status {status}");
                let content_type = header(&r, "content-type");
                let body = text(r).await?;
                ensure!(!body.contains('\u{FFFD}'), "{path}: replacement character");
                if content_type.starts_with("text/html") {
                    let doc = parse_html(&body).map_err(|e| format!("{path}: {e}"))?;
                    for href in doc.descendants().filter_map(|n| n.attribute("href")) {
                        if href.starts_with('/') && !href.starts_with("/assets/") {
                            queue.push(href.to_owned());
                        }
                    }
                }
                documents.insert(path, content_type);
            }
            let pages = documents.values().filter(|c| c.starts_with("text/html")).count();
            ensure!(pages < 100, "{}: closure of {pages} pages", fixture.0);
            summary.push(format!("{}: {pages} pages, {} documents", fixture.0, documents.len()));
        }
        let elapsed = start.elapsed();
        ensure!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
        Ok(summary.join("; "))
    })
}

const CRITERIA: [(&str, Criterion); 9] = [
    ("cyrillic dereferencing", cyrillic_dereferencing),
    ("decoded turtle", decoded_turtle),
    ("literal fidelity", literal_fidelity),
    ("suffix URLs and content negotiation", suffix_negotiation),
    ("hash URIs", hash_uris),
    ("collections", collections),
    ("pagination", pagination),
    ("round-trip serialization", round_trip),
    ("end-to-end navigation", navigation),
];

fn main() -> ExitCode {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .unwrap();
    let mut failed = 0;
    for (i, (name, criterion)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = rt
            .block_on(async { tokio::spawn(criterion()).await })
            .unwrap_or_else(|e| Err(format!("panicked: {e}")));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({ms} ms): {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {} {name} ({ms} ms): {reason}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", CRITERIA.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
