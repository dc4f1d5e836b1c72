#![no_main]
use libfuzzer_sys::fuzz_target;
use lodlens_server::config::parse_config_text;
use lodlens_server::{Overrides, ServerConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_config_text(text) {
        if let Ok(cfg) = ServerConfig::from_pairs(pairs, Overrides::default()) {
            assert!(cfg.page_size > 0);
        }
    }
});
