#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_core::Iri;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(iri) = Iri::parse(text) {
        // Canonical form is a fixed point, and the ASCII form maps back to it.
        assert_eq!(Iri::parse(iri.as_str()).as_ref(), Ok(&iri));
        let ascii = iri.to_ascii();
        assert!(ascii.is_ascii());
        assert_eq!(Iri::parse(&ascii), Ok(iri));
    }
});
