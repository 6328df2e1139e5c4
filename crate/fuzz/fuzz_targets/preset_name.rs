//! Fuzzes the preset-name lookup: must never panic, and any accepted name
//! must expand to a non-empty batch of valid scenario configs.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qexciton_cli::preset::preset;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(plan) = preset(text) {
        assert!(!plan.members.is_empty(), "preset {text:?} expanded to nothing");
        for member in &plan.members {
            member.config.validate().expect("preset members are valid scenarios");
        }
    }
});
