//! JSON run configuration.

use std::path::{Path, PathBuf};

use ncwave_core::solver::{EvolutionPlan, IntegratorChoice};
use ncwave_core::{Axis, Grid, PhysicsParams, PotentialSpec};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub physics: PhysicsConfig,
    pub grid: GridConfig,
    pub initial: InitialConfig,
    #[serde(default)]
    pub potential: PotentialConfig,
    pub plan: PlanConfig,
    #[serde(default)]
    pub classical: Option<ClassicalConfig>,
    #[serde(default)]
    pub outputs: OutputsConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default)]
    pub k: f64,
    pub dim: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub axes: Vec<AxisConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    pub center: Vec<f64>,
    pub sigma: f64,
    #[serde(default)]
    pub momentum: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    #[default]
    Free,
    Harmonic {
        omega: f64,
        #[serde(default)]
        center: f64,
    },
    Barrier {
        height: f64,
        half_width: f64,
        #[serde(default)]
        center: f64,
    },
    /// Values on the run grid, row-major.
    Sampled { values: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntegratorName {
    CrankNicolson,
    #[serde(alias = "split_step_strang")]
    SplitStep,
    ExactFactored,
}

impl From<IntegratorName> for IntegratorChoice {
    fn from(name: IntegratorName) -> Self {
        match name {
            IntegratorName::CrankNicolson => IntegratorChoice::CrankNicolson,
            IntegratorName::SplitStep => IntegratorChoice::SplitStepStrang,
            IntegratorName::ExactFactored => IntegratorChoice::ExactFactored,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanConfig {
    pub dt: f64,
    pub n_steps: usize,
    #[serde(default = "one_usize")]
    pub record_every: usize,
    #[serde(default = "default_integrator")]
    pub integrator: IntegratorName,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalConfig {
    pub q0: Option<Vec<f64>>,
    pub v0: Option<Vec<f64>>,
    pub dt: Option<f64>,
    pub n_steps: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    #[serde(default = "default_csv")]
    pub csv_path: PathBuf,
    /// Write a density snapshot every this many records; 0 disables snapshots.
    #[serde(default)]
    pub snapshot_every: usize,
    #[serde(default)]
    pub svg_path: Option<PathBuf>,
    #[serde(default = "default_classical_csv")]
    pub classical_csv_path: PathBuf,
    #[serde(default = "default_compare_csv")]
    pub compare_csv_path: PathBuf,
}

impl Default for OutputsConfig {
    fn default() -> Self {
        Self {
            csv_path: default_csv(),
            snapshot_every: 0,
            svg_path: None,
            classical_csv_path: default_classical_csv(),
            compare_csv_path: default_compare_csv(),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn one_usize() -> usize {
    1
}

fn default_integrator() -> IntegratorName {
    IntegratorName::SplitStep
}

fn default_csv() -> PathBuf {
    "observables.csv".into()
}

fn default_classical_csv() -> PathBuf {
    "classical.csv".into()
}

fn default_compare_csv() -> PathBuf {
    "compare.csv".into()
}

/// Classical run settings with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSetup {
    pub q0: Vec<f64>,
    pub v0: Vec<f64>,
    pub dt: f64,
    pub n_steps: usize,
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn physics(&self) -> CliResult<PhysicsParams> {
        let p = &self.physics;
        Ok(PhysicsParams::new(p.hbar, p.mass, p.k, p.dim)?)
    }

    pub fn grid(&self) -> CliResult<Grid> {
        let axes = self
            .grid
            .axes
            .iter()
            .map(|a| Axis::new(a.x_min, a.x_max, a.n_points))
            .collect::<ncwave_core::Result<Vec<_>>>()?;
        Ok(Grid::new(axes)?)
    }

    pub fn potential(&self, grid: &Grid) -> CliResult<PotentialSpec> {
        let spec = match &self.potential {
            PotentialConfig::Free => PotentialSpec::Free,
            PotentialConfig::Harmonic { omega, center } => PotentialSpec::harmonic(*omega, *center)?,
            PotentialConfig::Barrier { height, half_width, center } => {
                PotentialSpec::barrier(*height, *half_width, *center)?
            }
            PotentialConfig::Sampled { values } => PotentialSpec::sampled(grid.clone(), values.clone())?,
        };
        Ok(spec)
    }

    pub fn momentum(&self) -> Vec<f64> {
        self.initial.momentum.clone().unwrap_or_else(|| vec![0.0; self.initial.center.len()])
    }

    pub fn plan(&self) -> EvolutionPlan {
        let p = &self.plan;
        EvolutionPlan::new(p.dt, p.n_steps, p.record_every, p.integrator.into())
    }

    /// Missing classical fields fall back to the packet center, `p0/m`, and the quantum plan.
    pub fn classical_setup(&self) -> ClassicalSetup {
        let c = self.classical.clone().unwrap_or_default();
        let mass = self.physics.mass;
        ClassicalSetup {
            q0: c.q0.unwrap_or_else(|| self.initial.center.clone()),
            v0: c.v0.unwrap_or_else(|| self.momentum().iter().map(|p| p / mass).collect()),
            dt: c.dt.unwrap_or(self.plan.dt),
            n_steps: c.n_steps.unwrap_or(self.plan.n_steps),
        }
    }
}

/// Resolves an output path, placing its file name under `output_dir` when one is given.
pub fn resolve_output(path: &Path, output_dir: Option<&Path>) -> PathBuf {
    match (output_dir, path.file_name()) {
        (Some(dir), Some(name)) => dir.join(name),
        _ => path.to_path_buf(),
    }
}
