//! The non-Hermitian generator `H = -ħ²∇²/2m + V - iħ d k / m`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::spectral::Spectral;
use crate::wavefunction::Wavefunction;

/// `H` assembled for one grid, with the kinetic symbol and potential samples cached.
#[derive(Debug)]
pub struct Hamiltonian {
    grid: Grid,
    params: PhysicsParams,
    spectral: Spectral,
    /// `ħ²|q|²/2m` in FFT order.
    kinetic: Vec<f64>,
    potential: Vec<f64>,
}

impl Hamiltonian {
    pub fn new(grid: &Grid, potential: &PotentialSpec, params: &PhysicsParams) -> Result<Self> {
        params.validate()?;
        grid.check_matches(params)?;
        let c = params.hbar * params.hbar / (2.0 * params.mass);
        let kinetic = grid.wavenumber_squared().into_iter().map(|q2| c * q2).collect();
        Ok(Self {
            grid: grid.clone(),
            params: *params,
            spectral: Spectral::new(grid),
            kinetic,
            potential: potential.sample(grid, params)?,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn potential_samples(&self) -> &[f64] {
        &self.potential
    }

    /// Hermitian part `H₀ψ = -ħ²∇²ψ/2m + Vψ`, with a spectral Laplacian.
    pub fn apply_hermitian(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        if psi.len() != self.grid.len() {
            return Err(Error::ShapeMismatch { expected: self.grid.len(), got: psi.len() });
        }
        let mut out = psi.to_vec();
        self.spectral.apply_real_multiplier(&mut out, &self.kinetic);
        out.iter_mut().zip(psi).zip(&self.potential).for_each(|((o, p), v)| *o += p * v);
        Ok(out)
    }

    /// Full generator including the anti-Hermitian friction shift.
    pub fn apply(&self, psi: &[Complex64]) -> Result<Vec<Complex64>> {
        let shift = Complex64::new(0.0, -self.params.hbar * self.params.damping_rate());
        let mut out = self.apply_hermitian(psi)?;
        out.iter_mut().zip(psi).for_each(|(o, p)| *o += shift * p);
        Ok(out)
    }
}

/// `Hψ` for the damped wave equation.
pub fn apply_hamiltonian(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    params: &PhysicsParams,
) -> Result<Vec<Complex64>> {
    Hamiltonian::new(psi.grid(), potential, params)?.apply(psi.amplitudes())
}

/// Spectral `∇²ψ`.
pub fn laplacian(grid: &Grid, psi: &[Complex64]) -> Vec<Complex64> {
    let symbol: Vec<f64> = grid.wavenumber_squared().into_iter().map(|q2| -q2).collect();
    let mut out = psi.to_vec();
    Spectral::new(grid).apply_real_multiplier(&mut out, &symbol);
    out
}
