//! How closely the short-time step reproduces the wave equation's generator.

use num_complex::Complex64;

use super::moments::kernel_moment_closed;
use super::propagator::step_short_time;
use crate::error::Result;
use crate::hamiltonian::{laplacian, Hamiltonian};
use crate::params::PhysicsParams;
use crate::potential::PotentialSpec;
use crate::wavefunction::Wavefunction;

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt()
}

/// `‖(U_ε ψ − ψ)/ε − Rψ‖ / ‖Rψ‖` with `Rψ = −(i/ħ)Vψ + (iħ/2m)∇²ψ − (d k/m)ψ`,
/// i.e. `R = −(i/ħ)H`. Tends to zero linearly in `ε` for smooth `ψ`.
pub fn generator_defect(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    physics: &PhysicsParams,
    epsilon: f64,
) -> Result<f64> {
    let stepped = step_short_time(psi, potential, physics, epsilon)?;
    let h = Hamiltonian::new(psi.grid(), potential, physics)?;
    let factor = -Complex64::i() / physics.hbar;
    let generator: Vec<Complex64> = h.apply(psi.amplitudes())?.into_iter().map(|z| factor * z).collect();
    let residual: Vec<Complex64> = stepped
        .amplitudes()
        .iter()
        .zip(psi.amplitudes())
        .zip(&generator)
        .map(|((s, p), r)| (s - p) / epsilon - r)
        .collect();
    Ok(l2(&residual) / l2(&generator))
}

/// Size of the quartic terms dropped when the kernel's friction factor is
/// expanded: `|(ik/2ħ) [M₄/A + (d − 1)(M₂/A)²]| · ‖∂²ψ/∂x²‖`, with `Mₙ` the
/// closed-form kernel moments. For `d = 3` the bracket is `5 (iħε/m)²`.
pub fn discarded_quartic_term(psi: &Wavefunction, physics: &PhysicsParams, epsilon: f64) -> Result<f64> {
    let a = kernel_moment_closed(0, epsilon, physics)?;
    let m2 = kernel_moment_closed(2, epsilon, physics)? / a;
    let m4 = kernel_moment_closed(4, epsilon, physics)? / a;
    let bracket = m4 + (physics.dim as f64 - 1.0) * m2 * m2;
    let coeff = Complex64::i() * physics.friction_k / (2.0 * physics.hbar) * bracket;
    let second = axis_second_derivative(psi, 0);
    let norm = (psi.grid().cell_volume()).sqrt() * l2(&second);
    Ok(coeff.norm() * norm)
}

/// Spectral `∂²ψ/∂x_a²`.
fn axis_second_derivative(psi: &Wavefunction, axis: usize) -> Vec<Complex64> {
    let grid = psi.grid();
    if grid.ndim() == 1 {
        return laplacian(grid, psi.amplitudes());
    }
    let q = grid.axes()[axis].wavenumbers();
    let symbol: Vec<f64> = (0..grid.len()).map(|f| -q[grid.unravel(f)[axis]].powi(2)).collect();
    let mut out = psi.amplitudes().to_vec();
    crate::spectral::Spectral::new(grid).apply_real_multiplier(&mut out, &symbol);
    out
}
