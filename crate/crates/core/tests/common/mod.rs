#![allow(dead_code)]

use std::path::PathBuf;

use lodlens_core::store::MemoryStore;
use lodlens_core::{Graph, Iri};

pub mod lists;

pub const FIXTURES: [&str; 3] = ["ruthes.ttl", "wordnet.ttl", "paging.ttl"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn fixture_graph(name: &str) -> Graph {
    lodlens_core::turtle::parse_turtle(&fixture_text(name), None).unwrap()
}

pub fn fixture_store(name: &str) -> MemoryStore {
    MemoryStore::new(fixture_graph(name))
}

pub fn iri(s: &str) -> Iri {
    Iri::parse(s).unwrap()
}

pub mod gen {
    use proptest::prelude::*;

    use lodlens_core::{BlankNodeId, Graph, Iri, Literal, Subject, Term, Triple};

    const LETTERS_TATAR: &[char] = &['ә', 'ө', 'ү', 'җ', 'ң', 'һ'];

    pub fn non_ascii_char() -> impl Strategy<Value = char> {
        prop_oneof![
            proptest::char::range('\u{0410}', '\u{044F}'),
            proptest::char::range('\u{0391}', '\u{03C9}'),
            proptest::char::range('\u{4E00}', '\u{4FFF}'),
            proptest::char::range('\u{0627}', '\u{064A}'),
            proptest::char::range('\u{1F600}', '\u{1F64F}'),
            prop::sample::select(LETTERS_TATAR),
        ]
    }

    fn pct(bytes: &[u8], lower: bool) -> String {
        bytes
            .iter()
            .map(|b| {
                if lower {
                    format!("%{b:02x}")
                } else {
                    format!("%{b:02X}")
                }
            })
            .collect()
    }

    /// One character position of an IRI component: (raw text, canonical text).
    fn atom() -> impl Strategy<Value = (String, String)> {
        let same = |c: char| (c.to_string(), c.to_string());
        prop_oneof![
            4 => proptest::char::ranges(vec!['a'..='z', 'A'..='Z', '0'..='9'].into()).prop_map(same),
            2 => prop::sample::select(vec!['-', '.', '_', '~', '!', '$', '&', '\'', '(', ')', '*', '+', ',', ';', '=', ':', '@'])
                .prop_map(same),
            4 => (non_ascii_char(), any::<bool>(), any::<bool>()).prop_map(|(c, encode, lower)| {
                let mut buf = [0u8; 4];
                let raw = if encode {
                    pct(c.encode_utf8(&mut buf).as_bytes(), lower)
                } else {
                    c.to_string()
                };
                (raw, c.to_string())
            }),
            1 => (prop::sample::select(b" \"#%/<>?[\\]^`{|}".to_vec()), any::<bool>())
                .prop_map(|(b, lower)| (pct(&[b], lower), pct(&[b], false))),
            // Escaped unreserved ASCII is decoded.
            1 => (prop::sample::select(b"aZ9-._~".to_vec()), any::<bool>())
                .prop_map(|(b, lower)| (pct(&[b], lower), (b as char).to_string())),
        ]
    }

    fn component(max: usize) -> impl Strategy<Value = (String, String)> {
        // A leading letter keeps segments clear of "." and "..".
        (
            proptest::char::range('a', 'z'),
            prop::collection::vec(atom(), 0..max),
        )
            .prop_map(|(first, atoms)| {
                let mut raw = first.to_string();
                let mut canon = first.to_string();
                for (r, c) in atoms {
                    raw.push_str(&r);
                    canon.push_str(&c);
                }
                (raw, canon)
            })
    }

    /// (raw text, canonical text) of a mixed-script http(s) IRI.
    pub fn iri_text() -> impl Strategy<Value = (String, String)> {
        (
            prop::sample::select(vec!["http", "HTTP", "https", "Https"]),
            prop::sample::select(vec!["lod.ruthes.org", "Example.ORG", "wordnet-rdf.princeton.edu"]),
            prop::collection::vec(component(8), 0..4),
            prop::option::of(component(6)),
            prop::option::of(component(6)),
        )
            .prop_map(|(scheme, host, segments, query, fragment)| {
                let mut raw = format!("{scheme}://{host}/");
                let mut canon = format!("{}://{}/", scheme.to_lowercase(), host.to_lowercase());
                for (i, (r, c)) in segments.iter().enumerate() {
                    if i > 0 {
                        raw.push('/');
                        canon.push('/');
                    }
                    raw.push_str(r);
                    canon.push_str(c);
                }
                if let Some((r, c)) = query {
                    raw.push_str(&format!("?{r}"));
                    canon.push_str(&format!("?{c}"));
                }
                if let Some((r, c)) = fragment {
                    raw.push_str(&format!("#{r}"));
                    canon.push_str(&format!("#{c}"));
                }
                (raw, canon)
            })
    }

    pub fn iri() -> impl Strategy<Value = Iri> {
        iri_text().prop_map(|(raw, _)| Iri::parse(&raw).unwrap())
    }

    /// Text mixing scripts with characters that need escaping somewhere.
    pub fn literal_text() -> impl Strategy<Value = String> {
        let ch = prop_oneof![
            4 => proptest::char::range(' ', '~'),
            4 => non_ascii_char(),
            1 => prop::sample::select(vec![
                '"', '\'', '\\', '\n', '\r', '\t', '\u{0}', '\u{1}', '\u{1f}', '\u{7f}', '<', '>', '&',
                '\u{301}', '\u{200f}', '\u{feff}', '\u{2028}', '\u{fffd}', '$',
            ]),
        ];
        prop::collection::vec(ch, 0..40).prop_map(|cs| cs.into_iter().collect())
    }

    pub fn literal() -> impl Strategy<Value = Literal> {
        let tag = prop::sample::select(vec!["ru", "en", "tt", "ru-Cyrl", "EN-gb", "zh-Hans"]);
        let datatype = prop::sample::select(vec![
            "http://www.w3.org/2001/XMLSchema#string",
            "http://www.w3.org/2001/XMLSchema#integer",
            "http://www.w3.org/2001/XMLSchema#date",
            "http://lod.ruthes.org/ontology#формула",
        ]);
        prop_oneof![
            literal_text().prop_map(Literal::simple),
            (literal_text(), tag).prop_map(|(t, l)| Literal::with_language(t, l).unwrap()),
            (literal_text(), datatype).prop_map(|(t, d)| Literal::typed(t, Iri::parse(d).unwrap())),
        ]
    }

    fn blank() -> impl Strategy<Value = BlankNodeId> {
        (0..5u8).prop_map(|i| BlankNodeId::new(format!("n{i}")).unwrap())
    }

    fn resource() -> impl Strategy<Value = Iri> {
        prop_oneof![
            2 => prop::sample::select(vec![
                "http://lod.ruthes.org/resource/entry/RU-машина-n",
                "http://lod.ruthes.org/resource/entry/RU-машина-n#CanonicalForm",
                "http://wordnet-rdf.princeton.edu/wn31/cat-n",
                "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil",
                "http://example.org/a%20b",
            ])
            .prop_map(|s| Iri::parse(s).unwrap()),
            1 => iri(),
        ]
    }

    fn predicate() -> impl Strategy<Value = Iri> {
        prop_oneof![
            3 => prop::sample::select(vec![
                "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
                "http://www.w3.org/2000/01/rdf-schema#label",
                "http://www.w3.org/1999/02/22-rdf-syntax-ns#first",
                "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest",
                "http://lod.ruthes.org/ontology#синоним",
                "http://www.w3.org/ns/lemon/ontolex#writtenRep",
            ])
            .prop_map(|s| Iri::parse(s).unwrap()),
            1 => iri(),
        ]
    }

    pub fn subject() -> impl Strategy<Value = Subject> {
        prop_oneof![
            resource().prop_map(Subject::Iri),
            blank().prop_map(Subject::Blank),
        ]
    }

    pub fn object() -> impl Strategy<Value = Term> {
        prop_oneof![
            2 => literal().prop_map(Term::Literal),
            1 => resource().prop_map(Term::Iri),
            1 => blank().prop_map(Term::Blank),
        ]
    }

    pub fn graph(max_triples: usize) -> impl Strategy<Value = Graph> {
        prop::collection::vec((subject(), predicate(), object()), 0..max_triples)
            .prop_map(|ts| ts.into_iter().map(|(s, p, o)| Triple::new(s, p, o)).collect())
    }
}
