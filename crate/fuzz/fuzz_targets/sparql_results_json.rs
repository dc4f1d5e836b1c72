#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_core::store::parse_results_json;
use lodlens_core::BlankNodeAllocator;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_results_json(text, &mut BlankNodeAllocator::new());
});
