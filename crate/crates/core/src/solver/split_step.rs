use num_complex::Complex64;

use crate::error::Result;
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::spectral::Spectral;
use crate::wavefunction::Wavefunction;

/// Strang splitting `e^{-iVdt/2ħ} e^{-iTdt/ħ} e^{-iVdt/2ħ}` with the friction
/// factor `e^{-d k dt/m}` folded into the kinetic multiplier.
#[derive(Debug)]
pub struct SplitStepper {
    spectral: Spectral,
    half_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
}

impl SplitStepper {
    pub fn new(grid: &Grid, potential: &PotentialSpec, params: &PhysicsParams, dt: f64) -> Result<Self> {
        params.validate()?;
        grid.check_matches(params)?;
        let hbar = params.hbar;
        let half_potential = potential
            .sample(grid, params)?
            .into_iter()
            .map(|v| Complex64::from_polar(1.0, -v * dt / (2.0 * hbar)))
            .collect();
        let decay = -params.damping_rate() * dt;
        let c = hbar * dt / (2.0 * params.mass);
        let kinetic = grid.wavenumber_squared().into_iter().map(|q2| Complex64::new(decay, -c * q2).exp()).collect();
        Ok(Self { spectral: Spectral::new(grid), half_potential, kinetic })
    }

    pub fn step_in_place(&self, psi: &mut [Complex64]) {
        psi.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
        self.spectral.apply_multiplier(psi, &self.kinetic);
        psi.iter_mut().zip(&self.half_potential).for_each(|(z, p)| *z *= p);
    }
}

/// One Strang split-step of length `dt`.
pub fn step_split_fourier(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    params: &PhysicsParams,
    dt: f64,
) -> Result<Wavefunction> {
    let stepper = SplitStepper::new(psi.grid(), potential, params, dt)?;
    let mut amps = psi.amplitudes().to_vec();
    stepper.step_in_place(&mut amps);
    Ok(psi.with_amplitudes(amps, psi.time() + dt))
}

/// One step of the factorized solution `Ψ(t) = e^{-d k t/m} Ψ₀(t)`: the
/// frictionless state is advanced by split-step and the scalar decay applied separately.
pub fn step_exact_factored(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    params: &PhysicsParams,
    dt: f64,
) -> Result<Wavefunction> {
    params.validate()?;
    if dt == 0.0 {
        return Ok(psi.clone());
    }
    let base = step_split_fourier(psi, potential, &params.conservative(), dt)?;
    let decay = (-params.damping_rate() * dt).exp();
    let amps = base.amplitudes().iter().map(|z| z * decay).collect();
    Ok(psi.with_amplitudes(amps, psi.time() + dt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefunction::init_gaussian;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn random_state(grid: &Grid, seed: u64) -> Wavefunction {
        let mut rng = StdRng::seed_from_u64(seed);
        let amps =
            (0..grid.len()).map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        Wavefunction::new(grid.clone(), amps, 0.0).unwrap()
    }

    fn naive_free_evolution(psi: &Wavefunction, params: &PhysicsParams, dt: f64) -> Vec<Complex64> {
        // direct DFT sums, independent of the FFT path
        let axis = psi.grid().axes()[0];
        let n = axis.n_points;
        let q = axis.wavenumbers();
        let x = axis.coordinates();
        let a = psi.amplitudes();
        let hat: Vec<Complex64> = (0..n)
            .map(|k| (0..n).map(|j| a[j] * Complex64::from_polar(1.0, -q[k] * (x[j] - axis.x_min))).sum())
            .collect();
        (0..n)
            .map(|j| {
                let s: Complex64 = (0..n)
                    .map(|k| {
                        let phase = -params.hbar * dt * q[k] * q[k] / (2.0 * params.mass) + q[k] * (x[j] - axis.x_min);
                        hat[k] * Complex64::from_polar(1.0, phase)
                    })
                    .sum();
                s / n as f64
            })
            .collect()
    }

    #[test]
    fn free_step_is_the_exact_spectral_propagator() {
        let grid = Grid::uniform_1d(-4.0, 4.0, 32).unwrap();
        let params = PhysicsParams::default();
        let psi = random_state(&grid, 3);
        let out = step_split_fourier(&psi, &PotentialSpec::Free, &params, 0.37).unwrap();
        for (o, e) in out.amplitudes().iter().zip(naive_free_evolution(&psi, &params, 0.37)) {
            assert!((o - e).norm() < 1e-13);
        }
        assert!((out.norm() - psi.norm()).abs() < 1e-14);
    }

    #[test]
    fn friction_scales_free_evolution() {
        let grid = Grid::uniform_1d(-4.0, 4.0, 32).unwrap();
        let params = PhysicsParams { friction_k: 0.05, ..Default::default() };
        let psi = random_state(&grid, 5);
        let dt = 0.4;
        let out = step_split_fourier(&psi, &PotentialSpec::Free, &params, dt).unwrap();
        let decay = (-0.05 * dt).exp();
        for (o, e) in out.amplitudes().iter().zip(naive_free_evolution(&psi, &params, dt)) {
            assert!((o - decay * e).norm() < 1e-14);
        }
    }

    #[test]
    fn norm_ratio_in_three_dimensions() {
        let grid = Grid::cube(-4.0, 4.0, 8, 3).unwrap();
        let params = PhysicsParams { friction_k: 0.1, dim: 3, ..Default::default() };
        let psi = random_state(&grid, 9);
        let pot = PotentialSpec::harmonic(0.8, 0.0).unwrap();
        let out = step_split_fourier(&psi, &pot, &params, 1.0).unwrap();
        let expected = (-0.6f64).exp();
        assert!((expected - 0.548812).abs() < 1e-6);
        assert!((out.norm() / psi.norm() - expected).abs() < 1e-12);
    }

    #[test]
    fn exact_factored_matches_split_step() {
        let grid = Grid::uniform_1d(-10.0, 10.0, 128).unwrap();
        let params = PhysicsParams { friction_k: 0.2, ..Default::default() };
        let pot = PotentialSpec::harmonic(1.0, 0.5).unwrap();
        let psi = init_gaussian(&grid, &params, &[1.0], 0.8, &[0.5]).unwrap();
        let a = step_split_fourier(&psi, &pot, &params, 0.01).unwrap();
        let b = step_exact_factored(&psi, &pot, &params, 0.01).unwrap();
        assert!(a.max_abs_difference(&b) < 1e-14);
        assert_eq!(a.time(), b.time());

        let k0 = params.conservative();
        let c = step_exact_factored(&psi, &pot, &k0, 0.01).unwrap();
        let d = step_split_fourier(&psi, &pot, &k0, 0.01).unwrap();
        assert!(c.max_abs_difference(&d) < 1e-15);

        assert_eq!(step_exact_factored(&psi, &pot, &params, 0.0).unwrap(), psi);
    }
}
