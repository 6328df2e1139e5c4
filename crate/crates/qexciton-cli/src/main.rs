//! `qexciton` — deterministic spectra and absorption tables for the
//! deformed-exciton cavity model.

use clap::{Args, Parser, Subcommand};
use qexciton_cli::config::load_config;
use qexciton_cli::error::{CliError, EXIT_OK, EXIT_VALIDATION_FAILED};
use qexciton_cli::preset::preset;
use qexciton_cli::runner::{
    execute_preset, execute_scenario, run_validate, RunOptions, ValidateOptions,
};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "qexciton",
    version,
    about = "Spectra and probe absorption of cavity-coupled deformed excitons",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emission spectra from scenario configs
    Spectrum {
        #[command(subcommand)]
        which: SpectrumKind,
    },
    /// Probe absorption from scenario configs
    Absorb {
        #[command(subcommand)]
        which: AbsorbKind,
    },
    /// Run a built-in figure preset (fig1..fig6)
    Preset {
        /// Preset name.
        name: String,
        #[command(flatten)]
        io: OutputArgs,
        /// Worker threads for the batch.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Cross-validate closed forms against the matrix oracles
    Validate {
        /// Sweep seed (fixed seed ⇒ byte-identical report).
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Number of random parameter draws.
        #[arg(long, default_value_t = 1000)]
        draws: usize,
        /// Report file (written in addition to stdout).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Corrupt the closed-form structure factors by this relative
        /// bias; for sensitivity demonstrations only.
        #[arg(long, hide = true, default_value_t = 0.0)]
        inject_k_bias: f64,
    },
}

#[derive(Subcommand)]
enum SpectrumKind {
    /// One exciton mode + cavity (config kind "single")
    Single(ScenarioArgs),
    /// Deformed polariton branches (config kind "qpol")
    Qpol(ScenarioArgs),
    /// Two exciton modes + cavity (config kind "two_mode")
    TwoMode(ScenarioArgs),
}

#[derive(Subcommand)]
enum AbsorbKind {
    /// Linear absorption (config kind "absorption_linear")
    Linear(ScenarioArgs),
    /// Third-order absorption (config kind "absorption_third")
    Third(ScenarioArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output directory for the produced files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Also write an SVG line plot per CSV.
    #[arg(long)]
    svg: bool,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario JSON file.
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    io: OutputArgs,
}

fn run_config_command(args: &ScenarioArgs, expected_kind: &str) -> Result<(), CliError> {
    let config = load_config(&args.config)?;
    if config.kind() != expected_kind {
        return Err(CliError::config(format!(
            "config kind {:?} does not match this subcommand (expected {:?})",
            config.kind(),
            expected_kind
        )));
    }
    let opts = RunOptions { out_dir: args.io.out.clone(), svg: args.io.svg, threads: 1 };
    for path in execute_scenario(&config, &opts)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn real_main() -> Result<i32, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Spectrum { which } => {
            let (args, kind) = match &which {
                SpectrumKind::Single(a) => (a, "single"),
                SpectrumKind::Qpol(a) => (a, "qpol"),
                SpectrumKind::TwoMode(a) => (a, "two_mode"),
            };
            run_config_command(args, kind)?;
            Ok(EXIT_OK)
        }
        Command::Absorb { which } => {
            let (args, kind) = match &which {
                AbsorbKind::Linear(a) => (a, "absorption_linear"),
                AbsorbKind::Third(a) => (a, "absorption_third"),
            };
            run_config_command(args, kind)?;
            Ok(EXIT_OK)
        }
        Command::Preset { name, io, threads } => {
            let plan = preset(&name)?;
            let opts = RunOptions { out_dir: io.out, svg: io.svg, threads };
            for path in execute_preset(&plan, &opts)? {
                println!("{}", path.display());
            }
            Ok(EXIT_OK)
        }
        Command::Validate { seed, draws, report, inject_k_bias } => {
            if draws == 0 {
                return Err(CliError::config("--draws must be at least 1".to_string()));
            }
            let (pass, text) =
                run_validate(&ValidateOptions { seed, draws, inject_k_bias, report })?;
            print!("{text}");
            Ok(if pass { EXIT_OK } else { EXIT_VALIDATION_FAILED })
        }
    }
}

fn main() {
    match real_main() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
