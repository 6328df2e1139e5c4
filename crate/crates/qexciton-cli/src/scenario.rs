//! Scenario execution: config in, CSV rows out.

use crate::config::ScenarioConfig;
use crate::error::CliError;

/// The computed table for one scenario, ready to be written.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioProduct {
    /// Output file name (as stated in the config; resolved by the caller).
    pub output: String,
    /// CSV header line.
    pub header: &'static str,
    /// (probe energy in eV, value) rows in grid order.
    pub rows: Vec<(f64, f64)>,
}

impl ScenarioProduct {
    /// Renders the deterministic CSV body: header plus one
    /// `energy,value` row per grid point, 17 significant digits, LF
    /// line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * 48 + 32);
        out.push_str(self.header);
        out.push('\n');
        for &(omega, value) in &self.rows {
            out.push_str(&format!("{omega:.16e},{value:.16e}\n"));
        }
        out
    }
}

fn zip_rows(grid: Vec<f64>, values: &[f64]) -> Vec<(f64, f64)> {
    grid.into_iter().zip(values.iter().copied()).collect()
}

/// Runs one scenario to completion in memory.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioProduct, CliError> {
    config.validate()?;
    let grid = config.grid().energies();
    let output = config.output().to_string();
    match config {
        ScenarioConfig::Single(s) => {
            let series =
                qexciton::polariton::emission_spectrum(&s.params.to_system(), s.params.q, s.params.n, &grid)?;
            Ok(ScenarioProduct { output, header: "omega_eV,S", rows: zip_rows(grid, &series.values) })
        }
        ScenarioConfig::Qpol(s) => {
            let series = qexciton::qpolariton::deformed_emission_spectrum(
                &s.params.to_system(),
                s.params.q,
                s.params.n,
                s.params.s,
                s.params.n_k,
                &grid,
            )?;
            Ok(ScenarioProduct { output, header: "omega_eV,S", rows: zip_rows(grid, &series.values) })
        }
        ScenarioConfig::TwoMode(s) => {
            let series =
                qexciton::multimode::two_exciton_spectrum(&s.params.to_two_mode(), &grid)?;
            Ok(ScenarioProduct { output, header: "omega_eV,S", rows: zip_rows(grid, &series.values) })
        }
        ScenarioConfig::AbsorptionLinear(s) => {
            let series =
                qexciton::response::linear_susceptibility(&s.params.to_response(), &grid)?;
            Ok(ScenarioProduct {
                output,
                header: "omega_eV,alpha1",
                rows: zip_rows(grid, &series.alpha1),
            })
        }
        ScenarioConfig::AbsorptionThird(s) => {
            let series =
                qexciton::response::third_order_absorption(&s.params.to_response(), &grid)?;
            Ok(ScenarioProduct {
                output,
                header: "omega_eV,alpha3",
                rows: zip_rows(grid, &series.alpha3),
            })
        }
    }
}
