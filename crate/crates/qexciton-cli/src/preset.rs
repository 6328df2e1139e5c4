//! Built-in figure presets: named batches of scenario configs.
//!
//! Each preset expands to one scenario per curve with deterministic file
//! names like `fig1_q1.000.csv`. The absorption presets (fig4–fig6) are
//! normalized after computation so that the undeformed (q = 1) member has
//! maximum |value| = 1; emission presets are written as computed.

use crate::config::{
    AbsorptionParams, AbsorptionScenario, GridSpec, QpolParams, QpolScenario, ScenarioConfig,
    SingleParams, SingleScenario, TruncationCfg, TwoModeParamsCfg, TwoModeScenario,
};
use crate::error::CliError;
use crate::units::Energy;

/// One curve of a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetMember {
    /// Curve label, e.g. `q1.015` or `s1.007`; part of the file name.
    pub label: String,
    /// The expanded scenario.
    pub config: ScenarioConfig,
}

/// A named batch of scenarios plus its post-processing rule.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetPlan {
    /// Preset name (`fig1`..`fig6`).
    pub name: &'static str,
    /// Member scenarios in curve order.
    pub members: Vec<PresetMember>,
    /// When set, all member values are divided by the maximum |value| of
    /// the member with this label before writing.
    pub normalize_to_max_of: Option<String>,
}

/// All preset names, in figure order.
pub const PRESET_NAMES: [&str; 6] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6"];

fn micro_ev(value: f64) -> Energy {
    Energy::from_ev(value * 1e-6)
}

/// Exact thousandths: `from_millis(1015)` is the f64 nearest 1.015, and
/// `from_millis(1000)` is exactly 1.0 so the reference member of the
/// normalized presets is exactly undeformed.
fn from_millis(millis: u32) -> f64 {
    f64::from(millis) / 1000.0
}

fn label(prefix: char, millis: u32) -> String {
    format!("{prefix}{:.3}", from_millis(millis))
}

/// Strong-coupling emission example: degenerate cavity and exciton at
/// 1.75 eV with a 200 ueV coupling.
fn emission_single(q_millis: u32, output: String) -> ScenarioConfig {
    ScenarioConfig::Single(SingleScenario {
        params: SingleParams {
            omega: Energy::from_ev(1.75),
            omega_ex: Energy::from_ev(1.75),
            g: micro_ev(200.0),
            gamma_ex: micro_ev(20.0),
            gamma_ph: micro_ev(40.0),
            q: from_millis(q_millis),
            n: 1,
            alpha_sq: 9.0,
            scale: 1.0,
        },
        grid: emission_grid(),
        output,
    })
}

fn emission_grid() -> GridSpec {
    GridSpec { start: Energy::from_ev(1.7485), stop: Energy::from_ev(1.7515), points: 6001 }
}

fn absorption_member(q_millis: u32, fig: &str, third: bool) -> PresetMember {
    let label = label('q', q_millis);
    let output = format!("{fig}_{label}.csv");
    let params = AbsorptionParams {
        omega: Energy::from_ev(1.5),
        omega_ex: Energy::from_ev(1.574),
        g: micro_ev(200.0),
        q: from_millis(q_millis),
        dipole: 1.0,
        eta: micro_ev(50.0),
        n_max: TruncationCfg::Auto,
    };
    let grid =
        GridSpec { start: Energy::from_ev(1.5720), stop: Energy::from_ev(1.5770), points: 5001 };
    let scenario = AbsorptionScenario { params, grid, output };
    let config = if third {
        ScenarioConfig::AbsorptionThird(scenario)
    } else {
        ScenarioConfig::AbsorptionLinear(scenario)
    };
    PresetMember { label, config }
}

/// Expands a preset name into its scenario batch.
pub fn preset(name: &str) -> Result<PresetPlan, CliError> {
    match name {
        "fig1" => Ok(PresetPlan {
            name: "fig1",
            members: [1000u32, 1010, 1015]
                .into_iter()
                .map(|qm| {
                    let label = label('q', qm);
                    let config = emission_single(qm, format!("fig1_{label}.csv"));
                    PresetMember { label, config }
                })
                .collect(),
            normalize_to_max_of: None,
        }),
        "fig2" => Ok(PresetPlan {
            name: "fig2",
            members: [1000u32, 1007, 1010]
                .into_iter()
                .map(|sm| {
                    let label = label('s', sm);
                    let config = ScenarioConfig::Qpol(QpolScenario {
                        params: QpolParams {
                            omega: Energy::from_ev(1.75),
                            omega_ex: Energy::from_ev(1.75),
                            g: micro_ev(200.0),
                            gamma_ex: micro_ev(20.0),
                            gamma_ph: micro_ev(40.0),
                            q: 1.0,
                            n: 1,
                            s: from_millis(sm),
                            n_k: 1,
                            alpha_sq: 9.0,
                            scale: 1.0,
                        },
                        grid: emission_grid(),
                        output: format!("fig2_{label}.csv"),
                    });
                    PresetMember { label, config }
                })
                .collect(),
            normalize_to_max_of: None,
        }),
        "fig3" => Ok(PresetPlan {
            name: "fig3",
            members: [1000u32, 1040, 1080]
                .into_iter()
                .map(|qm| {
                    let label = label('q', qm);
                    let q = from_millis(qm);
                    let config = ScenarioConfig::TwoMode(TwoModeScenario {
                        params: TwoModeParamsCfg {
                            omega: Energy::from_ev(1.75),
                            omega_ex1: Energy::from_ev(1.75),
                            omega_ex2: Energy::from_ev(1.77),
                            g: micro_ev(200.0),
                            gamma_ex1: micro_ev(200.0),
                            gamma_ex2: micro_ev(200.0),
                            gamma_ph: micro_ev(45.0),
                            q1: q,
                            q2: q,
                            n1: 1,
                            n2: 1,
                            alpha_sq: 9.0,
                            scale: 1.0,
                        },
                        grid: GridSpec {
                            start: Energy::from_ev(1.745),
                            stop: Energy::from_ev(1.775),
                            points: 4001,
                        },
                        output: format!("fig3_{label}.csv"),
                    });
                    PresetMember { label, config }
                })
                .collect(),
            normalize_to_max_of: None,
        }),
        "fig4" => Ok(PresetPlan {
            name: "fig4",
            members: [990u32, 1000, 1010]
                .into_iter()
                .map(|qm| absorption_member(qm, "fig4", false))
                .collect(),
            normalize_to_max_of: Some("q1.000".to_string()),
        }),
        "fig5" => Ok(PresetPlan {
            name: "fig5",
            members: (0..11u32)
                .map(|i| absorption_member(990 + 2 * i, "fig5", false))
                .collect(),
            normalize_to_max_of: Some("q1.000".to_string()),
        }),
        "fig6" => Ok(PresetPlan {
            name: "fig6",
            members: [990u32, 1000, 1010]
                .into_iter()
                .map(|qm| absorption_member(qm, "fig6", true))
                .collect(),
            normalize_to_max_of: Some("q1.000".to_string()),
        }),
        other => Err(CliError::config(format!(
            "unknown preset {other:?}; available: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_expand_and_unknown_names_fail() {
        for name in PRESET_NAMES {
            let plan = preset(name).unwrap();
            assert!(!plan.members.is_empty());
            for member in &plan.members {
                member.config.validate().unwrap();
                assert!(member.config.output().starts_with(name));
                assert!(member.config.output().ends_with(".csv"));
            }
        }
        assert!(preset("fig9").is_err());
        assert!(preset("").is_err());
    }

    #[test]
    fn fig1_member_names_and_deformations() {
        let plan = preset("fig1").unwrap();
        let labels: Vec<&str> = plan.members.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["q1.000", "q1.010", "q1.015"]);
        assert_eq!(plan.members[0].config.output(), "fig1_q1.000.csv");
        let ScenarioConfig::Single(s) = &plan.members[2].config else { panic!() };
        assert_eq!(s.params.q, 1.015);
        assert_eq!(s.params.alpha_sq, 9.0);
        assert_eq!(s.params.g.ev(), 200.0 * 1e-6);
        assert!(plan.normalize_to_max_of.is_none());
    }

    #[test]
    fn fig2_sweeps_s_at_fixed_q() {
        let plan = preset("fig2").unwrap();
        for member in &plan.members {
            let ScenarioConfig::Qpol(s) = &member.config else { panic!() };
            assert_eq!(s.params.q, 1.0);
            assert_eq!(s.params.n_k, 1);
        }
        let labels: Vec<&str> = plan.members.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["s1.000", "s1.007", "s1.010"]);
    }

    #[test]
    fn fig3_uses_the_two_mode_kind_with_caption_rates() {
        let plan = preset("fig3").unwrap();
        let ScenarioConfig::TwoMode(s) = &plan.members[0].config else {
            panic!("fig3 must expand to two_mode scenarios")
        };
        assert_eq!(s.params.omega_ex2.ev(), 1.77);
        assert_eq!(s.params.gamma_ex1.ev(), 200.0 * 1e-6);
        assert_eq!(s.params.gamma_ph.ev(), 45.0 * 1e-6);
        assert!(s.grid.points >= 4000);
    }

    #[test]
    fn fig5_sweep_contains_the_exact_reference_member() {
        let plan = preset("fig5").unwrap();
        assert_eq!(plan.members.len(), 11);
        let reference = plan
            .members
            .iter()
            .find(|m| m.label == "q1.000")
            .expect("fig5 must contain the undeformed member");
        let ScenarioConfig::AbsorptionLinear(s) = &reference.config else { panic!() };
        assert_eq!(s.params.q, 1.0, "reference deformation must be exactly one");
        assert_eq!(plan.normalize_to_max_of.as_deref(), Some("q1.000"));
    }

    #[test]
    fn fig6_is_third_order_with_fig4_parameters() {
        let fig4 = preset("fig4").unwrap();
        let fig6 = preset("fig6").unwrap();
        for (a, b) in fig4.members.iter().zip(fig6.members.iter()) {
            let ScenarioConfig::AbsorptionLinear(l) = &a.config else { panic!() };
            let ScenarioConfig::AbsorptionThird(t) = &b.config else { panic!() };
            assert_eq!(l.params, t.params);
            assert_eq!(l.grid, t.grid);
        }
    }
}
