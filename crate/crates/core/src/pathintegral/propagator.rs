//! One step of the short-time path integral with friction `F = -k v`.
//!
//! The kernel `(1/A^d) exp(i α |η|²)`, `α = (m + 2kε)/(2ħε)`, is a pure chirp;
//! its periodic convolution is applied through the exact Fourier multiplier
//! `M(q) = (m/(m + 2kε))^{d/2} exp(-i ħ ε |q|² / 2(m + 2kε))`
//! followed by the endpoint potential phase `exp(-i ε V(r)/ħ)`.

use num_complex::Complex64;

use super::moments::{check_delta, check_epsilon, normalization, quadrature_half_width};
use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::spectral::Spectral;
use crate::wavefunction::Wavefunction;

/// Fourier multiplier of the short-time kernel at `|q|²`, for real or complex `ε`.
pub fn kernel_multiplier(q2: f64, epsilon: Complex64, physics: &PhysicsParams) -> Complex64 {
    let m = physics.mass;
    let stiff = m + 2.0 * physics.friction_k * epsilon;
    let amplitude = (m / stiff).sqrt().powi(physics.dim as i32);
    let phase = -Complex64::i() * physics.hbar * epsilon * q2 / (2.0 * stiff);
    amplitude * phase.exp()
}

/// Cached multiplier and potential phase for repeated steps of length `ε`.
#[derive(Debug)]
pub struct ShortTimePropagator {
    spectral: Spectral,
    multiplier: Vec<Complex64>,
    potential_phase: Vec<Complex64>,
    epsilon: f64,
}

impl ShortTimePropagator {
    pub fn new(grid: &Grid, potential: &PotentialSpec, physics: &PhysicsParams, epsilon: f64) -> Result<Self> {
        physics.validate()?;
        grid.check_matches(physics)?;
        check_epsilon(epsilon, physics)?;
        let eps = Complex64::new(epsilon, 0.0);
        let multiplier = grid.wavenumber_squared().into_iter().map(|q2| kernel_multiplier(q2, eps, physics)).collect();
        let potential_phase = potential
            .sample(grid, physics)?
            .into_iter()
            .map(|v| Complex64::from_polar(1.0, -epsilon * v / physics.hbar))
            .collect();
        Ok(Self { spectral: Spectral::new(grid), multiplier, potential_phase, epsilon })
    }

    pub fn step(&self, psi: &Wavefunction) -> Wavefunction {
        let mut amps = psi.amplitudes().to_vec();
        self.spectral.apply_multiplier(&mut amps, &self.multiplier);
        amps.iter_mut().zip(&self.potential_phase).for_each(|(z, p)| *z *= p);
        psi.with_amplitudes(amps, psi.time() + self.epsilon)
    }
}

/// Advance `psi` by one short-time path-integral step of length `ε`.
pub fn step_short_time(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    physics: &PhysicsParams,
    epsilon: f64,
) -> Result<Wavefunction> {
    Ok(ShortTimePropagator::new(psi.grid(), potential, physics, epsilon)?.step(psi))
}

/// Kernel convolution evaluated in real space at the regularized step
/// `ε(1 − iδ)`: `(1/A^d)∫ exp(i α |η|²) ψ(x + η) dη` over the whole line, with
/// `ψ` continued off-grid by its trigonometric interpolant. 1-D grids only.
///
/// The quadrature step is a divisor of `Δx`, so `x_j + η` always lands on a
/// refined periodic lattice on which the interpolant is tabulated once.
pub fn convolve_regularized(
    psi: &Wavefunction,
    physics: &PhysicsParams,
    epsilon: f64,
    delta: f64,
) -> Result<Vec<Complex64>> {
    physics.validate()?;
    check_epsilon(epsilon, physics)?;
    check_delta(delta)?;
    let grid = psi.grid();
    if grid.ndim() != 1 || physics.dim != 1 {
        return Err(Error::Dimension { expected: 1, got: grid.ndim() });
    }
    let axis = grid.axes()[0];
    let n = axis.n_points;
    let dx = axis.spacing();
    let eps_c = Complex64::new(epsilon, -epsilon * delta);
    let alpha = (physics.mass + 2.0 * physics.friction_k * eps_c) / (2.0 * physics.hbar * eps_c);
    let inv_a = 1.0 / normalization(eps_c, physics);
    let half = quadrature_half_width(epsilon, delta, physics);
    let coefficients = naive_dft(psi.amplitudes());
    let q = axis.wavenumbers();
    let scale = psi.amplitudes().iter().map(|z| z.norm()).fold(0.0, f64::max);

    // refine until every output node is converged
    let mut sub = 8usize;
    let mut previous: Option<Vec<Complex64>> = None;
    loop {
        let h = dx / sub as f64;
        let fine_len = n * sub;
        let fine: Vec<Complex64> = (0..fine_len)
            .map(|i| {
                let y = i as f64 * h;
                coefficients.iter().zip(&q).map(|(c, qk)| c * Complex64::from_polar(1.0, qk * y)).sum::<Complex64>()
                    / n as f64
            })
            .collect();
        let steps = (half / h).ceil() as i64;
        let kernel: Vec<Complex64> = (-steps..=steps)
            .map(|i| {
                let eta = i as f64 * h;
                let w = if i.abs() == steps { 0.5 } else { 1.0 };
                w * h * inv_a * (Complex64::i() * alpha * eta * eta).exp()
            })
            .collect();
        let out: Vec<Complex64> = (0..n)
            .map(|j| {
                let base = (j * sub) as i64;
                kernel
                    .iter()
                    .enumerate()
                    .map(|(i, kv)| {
                        let idx = (base + i as i64 - steps).rem_euclid(fine_len as i64) as usize;
                        kv * fine[idx]
                    })
                    .sum()
            })
            .collect();
        if let Some(prev) = &previous {
            let change = out.iter().zip(prev).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
            if change <= 1e-10 {
                return Ok(out);
            }
            if sub >= 1 << 12 {
                return Err(Error::QuadratureFailure { rel_change: change });
            }
        }
        previous = Some(out);
        sub *= 2;
    }
}

/// Spectral kernel application at the regularized step `ε(1 − iδ)`: the
/// counterpart of [`convolve_regularized`] through the Fourier multiplier.
pub fn convolve_spectral_regularized(
    psi: &Wavefunction,
    physics: &PhysicsParams,
    epsilon: f64,
    delta: f64,
) -> Result<Vec<Complex64>> {
    physics.validate()?;
    psi.grid().check_matches(physics)?;
    let eps_c = Complex64::new(epsilon, -epsilon * delta);
    let multiplier: Vec<Complex64> =
        psi.grid().wavenumber_squared().into_iter().map(|q2| kernel_multiplier(q2, eps_c, physics)).collect();
    let mut amps = psi.amplitudes().to_vec();
    Spectral::new(psi.grid()).apply_multiplier(&mut amps, &multiplier);
    Ok(amps)
}

fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, v)| {
                    v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64)
                })
                .sum()
        })
        .collect()
}
