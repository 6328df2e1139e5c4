//! Fuzzes the scenario-config JSON parser: must never panic, and any
//! accepted config must survive a serialize → parse round trip exactly.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qexciton_cli::config::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = parse_config(text) {
        let json = serde_json::to_string(&config).expect("accepted config serializes");
        let back = parse_config(&json).expect("serialized config parses back");
        assert_eq!(back, config, "round trip changed the config");
    }
});
