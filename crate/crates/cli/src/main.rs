use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ncwave_cli::verify::{DEFAULT_DELTA, DEFAULT_EPSILONS};
use ncwave_cli::{cmd_classical, cmd_compare, cmd_run, run_verify, CliError, CliResult, RunConfig, VerifyOptions};
use ncwave_core::PhysicsParams;

#[derive(Debug, Parser)]
#[command(
    name = "ncwave",
    version,
    about = "Damped wave-packet dynamics, short-time propagator checks and classical trajectories"
)]
struct Cli {
    /// Directory that receives every output file (overrides the directories in the config).
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve the configured wave packet and write observables.
    Run { config: PathBuf },
    /// Check kernel moments, generator defect, kernel norm and quartic term.
    Verify {
        /// Time steps for the moment checks (repeat or comma-separate).
        #[arg(long, value_delimiter = ',', num_args = 1.., default_values_t = DEFAULT_EPSILONS)]
        eps: Vec<f64>,
        /// Quadrature regularization.
        #[arg(long, default_value_t = DEFAULT_DELTA)]
        delta: f64,
        /// Friction coefficient used by the checks.
        #[arg(long, default_value_t = 0.05)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, hide = true, default_value_t = 1.0)]
        inject_fourth_moment_factor: f64,
    },
    /// Integrate the classical damped trajectory.
    Classical { config: PathBuf },
    /// Compare the quantum mean position with the classical trajectory.
    Compare { config: PathBuf },
}

fn execute(cli: Cli) -> CliResult<()> {
    let out = cli.output_dir.as_deref();
    match cli.command {
        Command::Run { config } => {
            let report = cmd_run(&RunConfig::load(&config)?, out)?;
            println!("wrote {} ({} records)", report.csv_path.display(), report.observables.rows().len());
            for (path, _) in &report.snapshots {
                println!("wrote {}", path.display());
            }
            if let Some(path) = &report.svg_path {
                println!("wrote {}", path.display());
            }
        }
        Command::Verify { eps, delta, k, mass, inject_fourth_moment_factor } => {
            let physics = PhysicsParams::new(1.0, mass, k, 1)?;
            let opts =
                VerifyOptions { epsilons: eps, delta, physics, fourth_moment_factor: inject_fourth_moment_factor };
            let report = run_verify(&opts)?;
            print!("{}", report.render());
            if report.failures() > 0 {
                return Err(CliError::VerifyFailed { failed: report.failures() });
            }
        }
        Command::Classical { config } => {
            let (path, table) = cmd_classical(&RunConfig::load(&config)?, out)?;
            println!("wrote {} ({} samples)", path.display(), table.rows().len());
        }
        Command::Compare { config } => {
            let report = cmd_compare(&RunConfig::load(&config)?, out)?;
            for (d, axis) in report.deviations.iter().zip(ncwave_cli::output::AXIS_NAMES) {
                println!("axis {axis}: max deviation {:.6e}, rms deviation {:.6e}", d.max, d.rms);
            }
            println!("wrote {} and {}", report.csv_path.display(), report.summary_path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
