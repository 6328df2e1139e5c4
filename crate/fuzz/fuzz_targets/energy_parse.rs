//! Fuzzes the energy-with-unit-suffix parser: must never panic, and any
//! accepted value must be finite and survive an eV round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use qexciton_cli::units::Energy;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(energy) = Energy::parse(text) {
        assert!(energy.ev().is_finite(), "accepted non-finite energy from {text:?}");
        let back = Energy::from_ev(energy.ev());
        assert_eq!(back.ev().to_bits(), energy.ev().to_bits());
    }
});
