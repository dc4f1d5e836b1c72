#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_core::site::Site;
use lodlens_core::Iri;
use lodlens_server::decode_path;

fuzz_target!(|data: &[u8]| {
    let Ok(raw) = std::str::from_utf8(data) else { return };
    let site = Site::new(Iri::parse("http://lod.ruthes.org/resource/").unwrap()).unwrap();
    let Ok(path) = decode_path(&site, raw) else { return };
    if let Some(iri) = site.resource_for_path(&path) {
        // The link this server would print for the resource leads back to it.
        let link = site.path_of(&iri).unwrap();
        assert_eq!(decode_path(&site, &link).as_deref(), Ok(path.as_str()));
    }
});
