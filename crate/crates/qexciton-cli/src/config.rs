//! JSON scenario configurations.
//!
//! A scenario file is one JSON object whose `kind` field selects the
//! calculation: `single`, `qpol`, `two_mode`, `absorption_linear`, or
//! `absorption_third`. The remaining fields are the parameter block, the
//! probe `grid` `{start, stop, points}` (energies in eV or suffixed
//! strings), and the `output` CSV file name. Unknown fields are rejected.

use crate::error::CliError;
use crate::units::Energy;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::path::Path;

/// Evenly spaced probe grid; `points ≥ 2`, `start < stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// First probe energy.
    pub start: Energy,
    /// Last probe energy.
    pub stop: Energy,
    /// Number of samples, endpoints included.
    pub points: usize,
}

impl GridSpec {
    /// Checks the grid invariants.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.points < 2 {
            return Err(CliError::config(format!(
                "grid.points must be at least 2, got {}",
                self.points
            )));
        }
        let (a, b) = (self.start.ev(), self.stop.ev());
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(CliError::config(format!(
                "grid requires finite start < stop, got start={a} stop={b}"
            )));
        }
        Ok(())
    }

    /// The sampled energies in eV.
    pub fn energies(&self) -> Vec<f64> {
        qexciton::spectrum::linspace(self.start.ev(), self.stop.ev(), self.points)
    }
}

fn default_unity() -> f64 {
    1.0
}

fn default_eta() -> Energy {
    Energy::from_ev(50e-6)
}

/// Parameters of a single exciton mode coupled to the cavity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleParams {
    /// Cavity mode energy.
    pub omega: Energy,
    /// Exciton energy.
    pub omega_ex: Energy,
    /// Exciton–photon coupling.
    pub g: Energy,
    /// Exciton damping rate.
    pub gamma_ex: Energy,
    /// Photon damping rate.
    pub gamma_ph: Energy,
    /// Deformation parameter.
    pub q: f64,
    /// Exciton occupation entering the structure function.
    pub n: u32,
    /// Mean photon number |α|² of the emitting coherent state.
    #[serde(default = "default_unity")]
    pub alpha_sq: f64,
    /// Overall spectrum scale factor.
    #[serde(default = "default_unity")]
    pub scale: f64,
}

impl SingleParams {
    /// Conversion to the library parameter struct.
    pub fn to_system(&self) -> qexciton::polariton::SystemParams {
        qexciton::polariton::SystemParams {
            omega: self.omega.ev(),
            omega_ex: self.omega_ex.ev(),
            g: self.g.ev(),
            gamma_ex: self.gamma_ex.ev(),
            gamma_ph: self.gamma_ph.ev(),
            alpha_sq: self.alpha_sq,
            scale: self.scale,
        }
    }
}

/// Parameters of the s-deformed-polariton variant: the single-mode block
/// plus the polariton deformation (s, n_k).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpolParams {
    /// Cavity mode energy.
    pub omega: Energy,
    /// Exciton energy.
    pub omega_ex: Energy,
    /// Exciton–photon coupling.
    pub g: Energy,
    /// Exciton damping rate.
    pub gamma_ex: Energy,
    /// Photon damping rate.
    pub gamma_ph: Energy,
    /// Exciton deformation parameter.
    pub q: f64,
    /// Exciton occupation entering the structure function.
    pub n: u32,
    /// Polariton deformation parameter.
    pub s: f64,
    /// Polariton branch occupation entering M(s, n_k).
    pub n_k: u32,
    /// Mean photon number |α|² of the emitting coherent state.
    #[serde(default = "default_unity")]
    pub alpha_sq: f64,
    /// Overall spectrum scale factor.
    #[serde(default = "default_unity")]
    pub scale: f64,
}

impl QpolParams {
    /// Conversion to the library parameter struct (the exciton–cavity
    /// block; s and n_k are passed alongside).
    pub fn to_system(&self) -> qexciton::polariton::SystemParams {
        qexciton::polariton::SystemParams {
            omega: self.omega.ev(),
            omega_ex: self.omega_ex.ev(),
            g: self.g.ev(),
            gamma_ex: self.gamma_ex.ev(),
            gamma_ph: self.gamma_ph.ev(),
            alpha_sq: self.alpha_sq,
            scale: self.scale,
        }
    }
}

/// Parameters of two exciton modes sharing one cavity mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoModeParamsCfg {
    /// Cavity mode energy.
    pub omega: Energy,
    /// First exciton energy.
    pub omega_ex1: Energy,
    /// Second exciton energy.
    pub omega_ex2: Energy,
    /// Common coupling of both excitons to the cavity.
    pub g: Energy,
    /// First exciton damping rate.
    pub gamma_ex1: Energy,
    /// Second exciton damping rate.
    pub gamma_ex2: Energy,
    /// Photon damping rate.
    pub gamma_ph: Energy,
    /// Deformation parameter of the first exciton mode.
    pub q1: f64,
    /// Deformation parameter of the second exciton mode.
    pub q2: f64,
    /// Occupation of the first exciton mode.
    pub n1: u32,
    /// Occupation of the second exciton mode.
    pub n2: u32,
    /// Mean photon number |α|².
    #[serde(default = "default_unity")]
    pub alpha_sq: f64,
    /// Overall spectrum scale factor.
    #[serde(default = "default_unity")]
    pub scale: f64,
}

impl TwoModeParamsCfg {
    /// Conversion to the library parameter struct.
    pub fn to_two_mode(&self) -> qexciton::multimode::TwoModeParams {
        qexciton::multimode::TwoModeParams {
            omega: self.omega.ev(),
            omega_ex1: self.omega_ex1.ev(),
            omega_ex2: self.omega_ex2.ev(),
            g: self.g.ev(),
            gamma_ex1: self.gamma_ex1.ev(),
            gamma_ex2: self.gamma_ex2.ev(),
            gamma_ph: self.gamma_ph.ev(),
            q1: self.q1,
            q2: self.q2,
            n1: self.n1,
            n2: self.n2,
            alpha_sq: self.alpha_sq,
            scale: self.scale,
        }
    }
}

/// Series truncation: `"auto"` or a fixed positive order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TruncationCfg {
    /// Add orders until they stop contributing.
    #[default]
    Auto,
    /// Sum orders 0..=n.
    Fixed(u32),
}

impl TruncationCfg {
    /// Conversion to the library truncation enum.
    pub fn to_lib(self) -> qexciton::response::Truncation {
        match self {
            TruncationCfg::Auto => qexciton::response::Truncation::Auto,
            TruncationCfg::Fixed(n) => qexciton::response::Truncation::Fixed(n),
        }
    }
}

impl Serialize for TruncationCfg {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            TruncationCfg::Auto => serializer.serialize_str("auto"),
            TruncationCfg::Fixed(n) => serializer.serialize_u32(*n),
        }
    }
}

impl<'de> Deserialize<'de> for TruncationCfg {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct TruncationVisitor;

        impl Visitor<'_> for TruncationVisitor {
            type Value = TruncationCfg;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "\"auto\" or a positive integer order")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<TruncationCfg, E> {
                if v == 0 || v > u64::from(u32::MAX) {
                    Err(E::custom("n_max must be a positive order or \"auto\""))
                } else {
                    Ok(TruncationCfg::Fixed(v as u32))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<TruncationCfg, E> {
                if v <= 0 {
                    Err(E::custom("n_max must be a positive order or \"auto\""))
                } else {
                    self.visit_u64(v as u64)
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<TruncationCfg, E> {
                if v == "auto" {
                    Ok(TruncationCfg::Auto)
                } else {
                    Err(E::custom(format!("n_max must be a positive order or \"auto\", got {v:?}")))
                }
            }
        }

        deserializer.deserialize_any(TruncationVisitor)
    }
}

/// Parameters of the probe-absorption calculations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorptionParams {
    /// Cavity mode energy entering the dressing weights.
    pub omega: Energy,
    /// Bare exciton energy.
    pub omega_ex: Energy,
    /// Exciton–cavity coupling; must stay below the exciton energy.
    pub g: Energy,
    /// Deformation parameter.
    pub q: f64,
    /// Drive strength product; absorptions scale as even powers of it.
    #[serde(default = "default_unity")]
    pub dipole: f64,
    /// Phenomenological line half-width (default 50 ueV).
    #[serde(default = "default_eta")]
    pub eta: Energy,
    /// Dressing-series truncation (default "auto").
    #[serde(default)]
    pub n_max: TruncationCfg,
}

impl AbsorptionParams {
    /// Conversion to the library parameter struct.
    pub fn to_response(&self) -> qexciton::response::ResponseParams {
        qexciton::response::ResponseParams {
            omega: self.omega.ev(),
            omega_ex: self.omega_ex.ev(),
            g: self.g.ev(),
            q: self.q,
            dipole: self.dipole,
            eta: self.eta.ev(),
            n_max: self.n_max.to_lib(),
        }
    }
}

/// One emission-spectrum scenario (single exciton mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingleScenario {
    /// Physical parameters.
    pub params: SingleParams,
    /// Probe grid.
    pub grid: GridSpec,
    /// Output CSV file name (resolved under the --out directory).
    pub output: String,
}

/// One deformed-polariton scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpolScenario {
    /// Physical parameters.
    pub params: QpolParams,
    /// Probe grid.
    pub grid: GridSpec,
    /// Output CSV file name.
    pub output: String,
}

/// One two-exciton-mode scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoModeScenario {
    /// Physical parameters.
    pub params: TwoModeParamsCfg,
    /// Probe grid.
    pub grid: GridSpec,
    /// Output CSV file name.
    pub output: String,
}

/// One absorption scenario (shared by the linear and third-order kinds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbsorptionScenario {
    /// Physical parameters.
    pub params: AbsorptionParams,
    /// Probe grid.
    pub grid: GridSpec,
    /// Output CSV file name.
    pub output: String,
}

/// A complete scenario file, dispatched on its `kind` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioConfig {
    /// Emission spectrum of one exciton mode + cavity.
    Single(SingleScenario),
    /// Emission spectrum with s-deformed polariton branches.
    Qpol(QpolScenario),
    /// Emission spectrum of two exciton modes + cavity.
    TwoMode(TwoModeScenario),
    /// Linear probe absorption α₁.
    AbsorptionLinear(AbsorptionScenario),
    /// Third-order probe absorption α₃.
    AbsorptionThird(AbsorptionScenario),
}

impl ScenarioConfig {
    /// The `kind` tag as it appears in JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            ScenarioConfig::Single(_) => "single",
            ScenarioConfig::Qpol(_) => "qpol",
            ScenarioConfig::TwoMode(_) => "two_mode",
            ScenarioConfig::AbsorptionLinear(_) => "absorption_linear",
            ScenarioConfig::AbsorptionThird(_) => "absorption_third",
        }
    }

    /// The grid block.
    pub fn grid(&self) -> &GridSpec {
        match self {
            ScenarioConfig::Single(s) => &s.grid,
            ScenarioConfig::Qpol(s) => &s.grid,
            ScenarioConfig::TwoMode(s) => &s.grid,
            ScenarioConfig::AbsorptionLinear(s) => &s.grid,
            ScenarioConfig::AbsorptionThird(s) => &s.grid,
        }
    }

    /// The output file name.
    pub fn output(&self) -> &str {
        match self {
            ScenarioConfig::Single(s) => &s.output,
            ScenarioConfig::Qpol(s) => &s.output,
            ScenarioConfig::TwoMode(s) => &s.output,
            ScenarioConfig::AbsorptionLinear(s) => &s.output,
            ScenarioConfig::AbsorptionThird(s) => &s.output,
        }
    }

    /// Structural checks that do not need the physics modules: grid shape
    /// and a non-empty output name. Parameter-level validation happens in
    /// the target module when the scenario runs.
    pub fn validate(&self) -> Result<(), CliError> {
        self.grid().validate()?;
        if self.output().is_empty() {
            return Err(CliError::config("output file name is empty".to_string()));
        }
        Ok(())
    }
}

/// Parses a scenario from JSON text and validates its structure.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, CliError> {
    let config: ScenarioConfig =
        serde_json::from_str(text).map_err(|e| CliError::config(format!("bad config: {e}")))?;
    config.validate()?;
    Ok(config)
}

/// Loads a scenario config file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::config(format!("cannot read config {}: {e}", path.display()))
    })?;
    parse_config(&text)
}
