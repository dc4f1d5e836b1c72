#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_core::turtle::{parse_turtle, serialize_ntriples, serialize_turtle, PrefixMap, SerializeOptions};
use lodlens_core::Iri;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let base = Iri::parse("http://lod.ruthes.org/resource/").unwrap();
    let Ok(graph) = parse_turtle(text, Some(&base)) else { return };
    if graph.len() > 64 {
        return;
    }
    let ttl = serialize_turtle(&graph, &PrefixMap::common(), &SerializeOptions::default());
    let back = parse_turtle(&ttl, None).expect("serialized Turtle parses");
    assert!(back.is_isomorphic(&graph), "{ttl}");
    let nt = serialize_ntriples(&graph);
    assert!(parse_turtle(&nt, None).expect("N-Triples parses").is_isomorphic(&graph));
});
