//! Energy values with unit-suffix parsing.
//!
//! Configs state energies either as bare numbers (taken as eV) or as
//! strings with an explicit suffix: `"1.75eV"`, `"1574meV"`, `"200ueV"`
//! (micro also as `µeV`/`μeV`). Internally everything is normalized to
//! eV, and serialization always emits the bare eV number, so a config
//! round-trips to the same value.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// An energy in eV.
#[derive(Debug, Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Energy(pub f64);

impl Energy {
    /// The value in eV.
    pub fn ev(self) -> f64 {
        self.0
    }

    /// Wraps a value already expressed in eV.
    pub fn from_ev(value: f64) -> Self {
        Energy(value)
    }

    /// Parses a suffixed energy string. Accepted suffixes: `eV`, `meV`,
    /// and the micro spellings `ueV`, `µeV`, `μeV`. Whitespace between
    /// number and suffix is allowed; the suffix itself is required.
    pub fn parse(text: &str) -> Result<Self, UnitError> {
        let trimmed = text.trim();
        // Longest suffixes first so "meV" is not read as "eV".
        const SUFFIXES: [(&str, f64); 5] = [
            ("ueV", 1e-6),
            ("\u{00b5}eV", 1e-6),
            ("\u{03bc}eV", 1e-6),
            ("meV", 1e-3),
            ("eV", 1.0),
        ];
        for (suffix, factor) in SUFFIXES {
            if let Some(number) = trimmed.strip_suffix(suffix) {
                let value: f64 = number
                    .trim()
                    .parse()
                    .map_err(|_| UnitError::BadNumber { text: text.to_string() })?;
                if !value.is_finite() {
                    return Err(UnitError::BadNumber { text: text.to_string() });
                }
                return Ok(Energy(value * factor));
            }
        }
        Err(UnitError::MissingSuffix { text: text.to_string() })
    }
}

/// Errors from parsing suffixed energy strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UnitError {
    /// The numeric part did not parse as a finite float.
    #[error("bad energy number in {text:?}")]
    BadNumber {
        /// Offending input.
        text: String,
    },
    /// No recognized unit suffix (eV/meV/ueV) was present.
    #[error("energy string {text:?} lacks an eV/meV/ueV suffix")]
    MissingSuffix {
        /// Offending input.
        text: String,
    },
}

impl Serialize for Energy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Energy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EnergyVisitor;

        impl Visitor<'_> for EnergyVisitor {
            type Value = Energy;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number in eV or a string with an eV/meV/ueV suffix")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Energy, E> {
                if v.is_finite() {
                    Ok(Energy(v))
                } else {
                    Err(E::custom("energy must be finite"))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Energy, E> {
                Ok(Energy(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Energy, E> {
                Ok(Energy(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Energy, E> {
                Energy::parse(v).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(EnergyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_suffixes() {
        assert_eq!(Energy::parse("1.75eV").unwrap().ev(), 1.75);
        assert_eq!(Energy::parse("1574meV").unwrap().ev(), 1574.0 * 1e-3);
        assert_eq!(Energy::parse("200ueV").unwrap().ev(), 200.0 * 1e-6);
        assert_eq!(Energy::parse("200\u{00b5}eV").unwrap().ev(), 200.0 * 1e-6);
        assert_eq!(Energy::parse("200\u{03bc}eV").unwrap().ev(), 200.0 * 1e-6);
        assert_eq!(Energy::parse("  45 ueV ").unwrap().ev(), 45.0 * 1e-6);
        assert_eq!(Energy::parse("-3meV").unwrap().ev(), -3.0e-3);
    }

    #[test]
    fn rejects_suffixless_and_garbage_strings() {
        assert!(matches!(Energy::parse("1.75"), Err(UnitError::MissingSuffix { .. })));
        assert!(matches!(Energy::parse("fneV"), Err(UnitError::BadNumber { .. })));
        // "keV" still ends in "eV", so the leftover "1.75k" is a bad number.
        assert!(matches!(Energy::parse("1.75keV"), Err(UnitError::BadNumber { .. })));
        assert!(matches!(Energy::parse("infeV"), Err(UnitError::BadNumber { .. })));
    }

    #[test]
    fn json_number_and_string_forms_agree() {
        let a: Energy = serde_json::from_str("0.0002").unwrap();
        let b: Energy = serde_json::from_str("\"200ueV\"").unwrap();
        assert_eq!(a.ev(), 2e-4);
        assert_eq!(b.ev(), 200.0 * 1e-6);
    }

    #[test]
    fn serializes_to_bare_ev_number_and_round_trips() {
        let e = Energy::parse("200ueV").unwrap();
        let json = serde_json::to_string(&e).unwrap();
        let back: Energy = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        assert!(!json.contains('"'), "serialized form should be a number: {json}");
    }
}
