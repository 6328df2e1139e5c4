//! Batch execution: scenario sets, optional worker threads, file output,
//! and the validation sweep glue.
//!
//! Determinism contract: outputs depend only on the configs — results are
//! computed per scenario (round-robin across workers), merged back in
//! member order, normalized in one pass, and written sequentially, so the
//! bytes never depend on the thread count.

use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::preset::PresetPlan;
use crate::scenario::{run_scenario, ScenarioProduct};
use crate::svg::render_svg;
use std::path::{Path, PathBuf};

/// Output options shared by the run commands.
#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Directory that output file names are resolved under.
    pub out_dir: PathBuf,
    /// Also write an SVG line plot next to each CSV.
    pub svg: bool,
    /// Worker threads for batch runs (1 = in-place sequential).
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { out_dir: PathBuf::from("."), svg: false, threads: 1 }
    }
}

/// Runs a set of scenarios, optionally across worker threads, returning
/// products in input order.
pub fn run_configs(
    configs: &[ScenarioConfig],
    threads: usize,
) -> Vec<Result<ScenarioProduct, CliError>> {
    let workers = threads.max(1).min(configs.len().max(1));
    if workers <= 1 {
        return configs.iter().map(run_scenario).collect();
    }
    let mut slots: Vec<Option<Result<ScenarioProduct, CliError>>> = Vec::new();
    slots.resize_with(configs.len(), || None);
    let mut chunks: Vec<Vec<(usize, Result<ScenarioProduct, CliError>)>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        configs
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(workers)
                            .map(|(i, cfg)| (i, run_scenario(cfg)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
    for chunk in chunks.drain(..) {
        for (i, result) in chunk {
            slots[i] = Some(result);
        }
    }
    slots.into_iter().map(|s| s.expect("every index computed")).collect()
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| {
                CliError::config(format!("cannot create {}: {e}", parent.display()))
            })?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))
}

/// Writes one product (CSV, plus SVG when requested); returns the paths
/// written.
pub fn write_product(
    product: &ScenarioProduct,
    opts: &RunOptions,
) -> Result<Vec<PathBuf>, CliError> {
    let csv_path = opts.out_dir.join(&product.output);
    write_file(&csv_path, &product.to_csv())?;
    let mut written = vec![csv_path];
    if opts.svg {
        let svg_path = opts.out_dir.join(Path::new(&product.output).with_extension("svg"));
        write_file(&svg_path, &render_svg(product))?;
        written.push(svg_path);
    }
    Ok(written)
}

/// Runs one scenario and writes its outputs.
pub fn execute_scenario(
    config: &ScenarioConfig,
    opts: &RunOptions,
) -> Result<Vec<PathBuf>, CliError> {
    let product = run_scenario(config)?;
    write_product(&product, opts)
}

/// Runs a whole preset: compute every member, apply the preset's
/// normalization rule, write all outputs in member order.
pub fn execute_preset(plan: &PresetPlan, opts: &RunOptions) -> Result<Vec<PathBuf>, CliError> {
    let configs: Vec<ScenarioConfig> =
        plan.members.iter().map(|m| m.config.clone()).collect();
    let mut products = Vec::with_capacity(configs.len());
    for result in run_configs(&configs, opts.threads) {
        products.push(result?);
    }
    if let Some(reference) = &plan.normalize_to_max_of {
        let idx = plan
            .members
            .iter()
            .position(|m| &m.label == reference)
            .ok_or_else(|| {
                CliError::config(format!("preset {} lacks reference member {reference}", plan.name))
            })?;
        let peak = products[idx]
            .rows
            .iter()
            .map(|r| r.1.abs())
            .fold(0.0f64, f64::max);
        if !(peak > 0.0 && peak.is_finite()) {
            return Err(CliError::numerical(format!(
                "reference member {reference} has no finite nonzero peak to normalize by"
            )));
        }
        for product in &mut products {
            for row in &mut product.rows {
                row.1 /= peak;
            }
        }
    }
    let mut written = Vec::new();
    for product in &products {
        written.extend(write_product(product, opts)?);
    }
    Ok(written)
}

/// Options of the `validate` subcommand.
#[derive(Debug, Clone)]
pub struct ValidateOptions {
    /// Sweep seed.
    pub seed: u64,
    /// Number of random draws.
    pub draws: usize,
    /// Injected structure-factor bias; zero for an honest run. A nonzero
    /// value deliberately corrupts the closed-form inputs so the sweep's
    /// sensitivity can be demonstrated end to end.
    pub inject_k_bias: f64,
    /// Where to write the report (besides stdout).
    pub report: Option<PathBuf>,
}

/// Runs the cross-validation sweep; returns (all checks passed, report
/// text).
pub fn run_validate(opts: &ValidateOptions) -> Result<(bool, String), CliError> {
    let report = qexciton::oracle::validate_closed_forms_with(
        opts.seed,
        opts.draws,
        &qexciton::oracle::SweepOptions { k_bias: opts.inject_k_bias },
    )?;
    let text = report.to_text();
    if let Some(path) = &opts.report {
        write_file(path, &text)?;
    }
    Ok((report.pass(), text))
}
