//! Numerical verification suite: kernel moments, generator defect, kernel norm
//! and the size of the discarded quartic term.

use std::fmt::Write as _;

use ncwave_core::pathintegral::{
    discarded_quartic_term, generator_defect, kernel_moment_closed, kernel_moment_closed_complex,
    kernel_moment_quadrature, kernel_moment_richardson, step_short_time, ShortTimeParams,
};
use ncwave_core::{init_gaussian, Complex64, Grid, PhysicsParams, PotentialSpec, Wavefunction};

use crate::error::CliResult;

pub const DEFAULT_EPSILONS: [f64; 3] = [1e-1, 1e-2, 1e-3];
pub const DEFAULT_DELTA: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub epsilons: Vec<f64>,
    pub delta: f64,
    pub physics: PhysicsParams,
    /// Multiplies the closed-form fourth moment; anything but 1 must make the suite fail.
    pub fourth_moment_factor: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            epsilons: DEFAULT_EPSILONS.to_vec(),
            delta: DEFAULT_DELTA,
            physics: PhysicsParams { friction_k: 0.05, ..PhysicsParams::default() },
            fourth_moment_factor: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub criterion: String,
    pub pass: bool,
}

impl Check {
    fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self { name: name.into(), value, criterion: format!("<= {tol:.0e}"), pass: value <= tol }
    }

    fn within(name: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self { name: name.into(), value, criterion: format!("in [{lo}, {hi}]"), pass: (lo..=hi).contains(&value) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn render(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {:<width$}  {:>12.4e}  {}", c.name, c.value, c.criterion);
        }
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), self.failures());
        out
    }
}

fn closed(order: u32, eps: Complex64, opts: &VerifyOptions) -> CliResult<Complex64> {
    let value = kernel_moment_closed_complex(order, eps, &opts.physics)?;
    Ok(if order == 4 { value * opts.fourth_moment_factor } else { value })
}

fn moment_checks(eps: f64, opts: &VerifyOptions) -> CliResult<Vec<Check>> {
    let physics = &opts.physics;
    let eps_reg = Complex64::new(eps, -eps * opts.delta);
    let mut checks = Vec::new();
    for order in [0u32, 2, 4] {
        let quad = kernel_moment_quadrature(order, eps, physics, opts.delta)?;
        let reference = closed(order, eps_reg, opts)?;
        checks.push(Check::at_most(
            format!("moment {order} quadrature vs closed form, eps={eps:.0e}"),
            (quad - reference).norm() / reference.norm(),
            1e-8,
        ));
        let limit = kernel_moment_richardson(order, eps, physics, opts.delta)?;
        let mut real = kernel_moment_closed(order, eps, physics)?;
        if order == 4 {
            real *= opts.fourth_moment_factor;
        }
        checks.push(Check::at_most(
            format!("moment {order} delta->0 limit vs closed form, eps={eps:.0e}"),
            (limit - real).norm() / real.norm(),
            1e-4,
        ));
    }
    checks.push(Check::at_most(
        format!("moment 1 vanishes, eps={eps:.0e}"),
        kernel_moment_quadrature(1, eps, physics, opts.delta)?.norm(),
        1e-10,
    ));
    Ok(checks)
}

fn reference_packet(physics: &PhysicsParams) -> CliResult<Wavefunction> {
    let grid = Grid::uniform_1d(-20.0, 20.0, 512)?;
    Ok(init_gaussian(&grid, physics, &[0.0], 2.0, &[0.0])?)
}

fn defect_checks(physics: &PhysicsParams) -> CliResult<Vec<Check>> {
    let psi = reference_packet(physics)?;
    let pot = PotentialSpec::harmonic(1.0, 0.0)?;
    let mut checks = Vec::new();
    for eps in [1e-2, 5e-3, 2.5e-3] {
        let ratio = generator_defect(&psi, &pot, physics, eps)? / generator_defect(&psi, &pot, physics, eps / 2.0)?;
        checks.push(Check::within(format!("generator defect halving ratio, eps={eps:.1e}"), ratio, 1.7, 2.3));
    }
    checks.push(Check::at_most("generator defect at eps=1e-3", generator_defect(&psi, &pot, physics, 1e-3)?, 1e-2));
    Ok(checks)
}

fn kernel_norm_check() -> CliResult<Vec<Check>> {
    let eps = 1e-3;
    let physics = PhysicsParams { friction_k: 0.2, dim: 3, ..PhysicsParams::default() };
    let grid = Grid::cube(-4.0, 4.0, 8, 3)?;
    let psi = Wavefunction::new(grid.clone(), vec![Complex64::new(0.5, -0.25); grid.len()], 0.0)?;
    let out = step_short_time(&psi, &PotentialSpec::Free, &physics, eps)?;
    let factor = (physics.mass / (physics.mass + 2.0 * physics.friction_k * eps)).powf(1.5);
    let scale_err =
        out.amplitudes().iter().zip(psi.amplitudes()).map(|(o, i)| (o / i - factor).norm()).fold(0.0, f64::max);
    let linear = ((out.amplitudes()[0] / psi.amplitudes()[0]).re - 1.0) / eps;
    let expected = -(physics.dim as f64) * physics.friction_k / physics.mass;
    Ok(vec![
        Check::at_most("kernel norm factor on a constant state", scale_err, 1e-12),
        Check::at_most("kernel norm linear coefficient vs -d k/m", (linear / expected - 1.0).abs(), 1e-2),
    ])
}

fn quartic_check(physics: &PhysicsParams) -> CliResult<Vec<Check>> {
    let psi = reference_packet(physics)?;
    let ratio = discarded_quartic_term(&psi, physics, 1e-2)? / discarded_quartic_term(&psi, physics, 1e-3)?;
    Ok(vec![Check::within("discarded quartic term ratio eps=1e-2 / 1e-3", ratio, 90.0, 110.0)])
}

/// Runs every check. Invalid `ε` or `δ` values are rejected before any work is done.
pub fn run_verify(opts: &VerifyOptions) -> CliResult<VerifyReport> {
    for &eps in &opts.epsilons {
        ShortTimeParams::new(eps, opts.delta, opts.physics)?;
    }
    let per_eps: Vec<CliResult<Vec<Check>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = opts.epsilons.iter().map(|&eps| scope.spawn(move || moment_checks(eps, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("verification worker panicked")).collect()
    });
    let mut checks = Vec::new();
    for result in per_eps {
        checks.extend(result?);
    }
    checks.extend(defect_checks(&opts.physics)?);
    checks.extend(kernel_norm_check()?);
    checks.extend(quartic_check(&opts.physics)?);
    Ok(VerifyReport { checks })
}
