//! The `run`, `classical` and `compare` commands.

use std::path::{Path, PathBuf};

use ncwave_core::classical::{compare_ehrenfest, integrate, ClassicalState, DeviationReport, Trajectory};
use ncwave_core::solver::evolve;
use ncwave_core::{init_gaussian, Complex64, Grid, ObservableRecord, Wavefunction};
use serde_json::json;

use crate::config::{resolve_output, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{axis_columns, svg_plot, write_text, Table, AXIS_NAMES};

/// Tables produced by `run`, in the order they were written.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub observables: Table,
    pub csv_path: PathBuf,
    pub snapshots: Vec<(PathBuf, Table)>,
    pub svg_path: Option<PathBuf>,
}

pub fn observables_table(records: &[ObservableRecord], ndim: usize) -> CliResult<Table> {
    let mut header = vec!["time".to_string(), "norm".to_string()];
    header.extend(axis_columns("mean", ndim));
    header.extend(AXIS_NAMES[..ndim].iter().map(|a| format!("mean_p{a}")));
    header.push("energy_h0".into());
    let mut table = Table::new(header);
    for r in records {
        let mut row = vec![r.time, r.norm];
        row.extend(&r.mean_position);
        row.extend(&r.mean_momentum);
        row.push(r.mean_energy_h0);
        table.push(row, r.time)?;
    }
    Ok(table)
}

pub fn snapshot_table(grid: &Grid, time: f64, amplitudes: &[Complex64]) -> CliResult<Table> {
    let ndim = grid.ndim();
    let mut header: Vec<String> = AXIS_NAMES[..ndim].iter().map(|s| s.to_string()).collect();
    header.extend(["density", "re_psi", "im_psi"].map(String::from));
    let mut table = Table::new(header);
    for (flat, z) in amplitudes.iter().enumerate() {
        let point = grid.point(flat);
        let mut row = point[..ndim].to_vec();
        row.extend([z.norm_sqr(), z.re, z.im]);
        table.push(row, time)?;
    }
    Ok(table)
}

fn initial_state(cfg: &RunConfig) -> CliResult<Wavefunction> {
    let grid = cfg.grid()?;
    let physics = cfg.physics()?;
    Ok(init_gaussian(&grid, &physics, &cfg.initial.center, cfg.initial.sigma, &cfg.momentum())?)
}

fn sibling(path: &Path, suffix: &str, extension: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("output");
    path.with_file_name(format!("{stem}{suffix}.{extension}"))
}

/// `(record index, time, amplitudes)` of one density snapshot.
type Snapshot = (usize, f64, Vec<Complex64>);

/// Quantum evolution records plus any density snapshots requested by `outputs.snapshot_every`.
fn evolve_config(cfg: &RunConfig, snapshot_every: usize) -> CliResult<(Vec<ObservableRecord>, Vec<Snapshot>)> {
    let physics = cfg.physics()?;
    let psi0 = initial_state(cfg)?;
    let potential = cfg.potential(psi0.grid())?;
    let plan = cfg.plan();
    let mut snapshots = Vec::new();
    let mut index = 0usize;
    let mut observer = |record: &ObservableRecord, state: &Wavefunction| -> ncwave_core::Result<()> {
        if snapshot_every > 0 && index.is_multiple_of(snapshot_every) {
            snapshots.push((index, record.time, state.amplitudes().to_vec()));
        }
        index += 1;
        Ok(())
    };
    let evolution = evolve(&psi0, &potential, &physics, &plan, &mut observer)?;
    Ok((evolution.records, snapshots))
}

pub fn cmd_run(cfg: &RunConfig, output_dir: Option<&Path>) -> CliResult<RunReport> {
    let grid = cfg.grid()?;
    let (records, raw_snapshots) = evolve_config(cfg, cfg.outputs.snapshot_every)?;
    let observables = observables_table(&records, grid.ndim())?;
    let csv_path = resolve_output(&cfg.outputs.csv_path, output_dir);
    let mut snapshots = Vec::with_capacity(raw_snapshots.len());
    for (index, time, amps) in &raw_snapshots {
        let path = sibling(&csv_path, &format!("_snapshot_{index:05}"), "csv");
        snapshots.push((path, snapshot_table(&grid, *time, amps)?));
    }
    observables.write(&csv_path)?;
    for (path, table) in &snapshots {
        table.write(path)?;
    }
    let svg_path = cfg.outputs.svg_path.as_ref().map(|p| resolve_output(p, output_dir));
    if let Some(path) = &svg_path {
        let times = observables.column("time").unwrap_or_default();
        let norm = observables.column("norm").unwrap_or_default();
        let mean_x = observables.column("mean_x").unwrap_or_default();
        write_text(path, &svg_plot(&times, &[("norm", &norm), ("<x>", &mean_x)]))?;
    }
    Ok(RunReport { observables, csv_path, snapshots, svg_path })
}

fn classical_trajectory(cfg: &RunConfig) -> CliResult<Trajectory> {
    let physics = cfg.physics()?;
    let setup = cfg.classical_setup();
    if setup.q0.len() != physics.dim || setup.v0.len() != physics.dim {
        return Err(CliError::Config(format!(
            "classical q0/v0 must have {} components, got {} and {}",
            physics.dim,
            setup.q0.len(),
            setup.v0.len()
        )));
    }
    let grid = cfg.grid()?;
    let potential = cfg.potential(&grid)?;
    let start = ClassicalState::new(setup.q0, setup.v0, 0.0)?;
    Ok(integrate(&start, &potential, &physics, setup.dt, setup.n_steps)?)
}

pub fn trajectory_table(trajectory: &Trajectory) -> CliResult<Table> {
    let ndim = trajectory.samples.first().map_or(1, |s| s.state.q.len());
    let mut header = vec!["time".to_string()];
    if ndim == 1 {
        header.extend(["q".to_string(), "v".to_string()]);
    } else {
        header.extend(axis_columns("q", ndim));
        header.extend(axis_columns("v", ndim));
    }
    header.extend(["T", "V", "L", "S", "w_nc"].map(String::from));
    let mut table = Table::new(header);
    for s in &trajectory.samples {
        let mut row = vec![s.state.t];
        row.extend(&s.state.q);
        row.extend(&s.state.v);
        row.extend([s.kinetic, s.potential, s.lagrangian, s.action, s.state.w_nc]);
        table.push(row, s.state.t)?;
    }
    Ok(table)
}

pub fn cmd_classical(cfg: &RunConfig, output_dir: Option<&Path>) -> CliResult<(PathBuf, Table)> {
    let table = trajectory_table(&classical_trajectory(cfg)?)?;
    let path = resolve_output(&cfg.outputs.classical_csv_path, output_dir);
    table.write(&path)?;
    Ok((path, table))
}

#[derive(Debug, Clone)]
pub struct CompareReport {
    pub table: Table,
    pub csv_path: PathBuf,
    pub summary_path: PathBuf,
    /// One report per axis.
    pub deviations: Vec<DeviationReport>,
}

impl CompareReport {
    pub fn max_deviation(&self) -> f64 {
        self.deviations.iter().map(|d| d.max).fold(0.0, f64::max)
    }
}

pub fn cmd_compare(cfg: &RunConfig, output_dir: Option<&Path>) -> CliResult<CompareReport> {
    let setup = cfg.classical_setup();
    let dt = cfg.plan.dt;
    if (setup.dt - dt).abs() > 1e-12 * dt.abs() {
        return Err(CliError::Config(format!("classical dt {} differs from quantum dt {}", setup.dt, dt)));
    }
    let (records, _) = evolve_config(cfg, 0)?;
    let trajectory = classical_trajectory(cfg)?;
    let ndim = cfg.physics.dim;
    let mut deviations = Vec::with_capacity(ndim);
    for axis in 0..ndim {
        let quantum: Vec<(f64, f64)> = records.iter().map(|r| (r.time, r.mean_position[axis])).collect();
        deviations.push(compare_ehrenfest(&quantum, &trajectory, axis)?);
    }
    let mut header = vec!["time".to_string()];
    for name in &AXIS_NAMES[..ndim] {
        header.extend([format!("mean_{name}"), format!("q_{name}"), format!("deviation_{name}")]);
    }
    let mut table = Table::new(header);
    for i in 0..records.len() {
        let t = deviations[0].samples[i].0;
        let mut row = vec![t];
        for report in &deviations {
            let (_, x, q) = report.samples[i];
            row.extend([x, q, (x - q).abs()]);
        }
        table.push(row, t)?;
    }
    let csv_path = resolve_output(&cfg.outputs.compare_csv_path, output_dir);
    let summary_path = sibling(&csv_path, "_summary", "json");
    let summary = json!({
        "axes": deviations
            .iter()
            .zip(AXIS_NAMES)
            .map(|(d, name)| json!({"axis": name, "max_deviation": d.max, "rms_deviation": d.rms, "samples": d.samples.len()}))
            .collect::<Vec<_>>(),
    });
    table.write(&csv_path)?;
    let text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Config(e.to_string()))?;
    write_text(&summary_path, &(text + "\n"))?;
    Ok(CompareReport { table, csv_path, summary_path, deviations })
}
