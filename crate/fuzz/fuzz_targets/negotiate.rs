#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_server::negotiate::{negotiate, parse_accept, RouteDecision};

// Input: path, a NUL byte, then the Accept header.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let (path, accept) = text.split_once('\0').unwrap_or((text, ""));
    for range in parse_accept(accept) {
        assert!((0.0..=1.0).contains(&range.q));
    }
    match negotiate(path, Some(accept)) {
        RouteDecision::Redirect303(target) => assert!(target.starts_with(path)),
        RouteDecision::Serve { resource, .. } => assert!(path.starts_with(&resource)),
        _ => {}
    }
});
