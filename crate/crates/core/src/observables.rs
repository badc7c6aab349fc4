use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::spectral::Spectral;
use crate::wavefunction::Wavefunction;

/// Below this the state is treated as empty.
pub const ZERO_NORM: f64 = 1e-300;

/// One row of the observable time series. Expectations are normalized by
/// the current (decaying) norm; `norm` itself is raw.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableRecord {
    pub time: f64,
    pub norm: f64,
    pub mean_position: Vec<f64>,
    pub mean_momentum: Vec<f64>,
    /// Expectation of the Hermitian part `-ħ²∇²/2m + V`.
    pub mean_energy_h0: f64,
}

impl ObservableRecord {
    pub fn is_finite(&self) -> bool {
        self.time.is_finite()
            && self.norm.is_finite()
            && self.mean_energy_h0.is_finite()
            && self.mean_position.iter().chain(&self.mean_momentum).all(|v| v.is_finite())
    }
}

/// Reusable evaluator: FFT plans, wavenumbers and potential samples for one grid.
#[derive(Debug)]
pub struct ObservableCalculator {
    grid: Grid,
    params: PhysicsParams,
    spectral: Spectral,
    derivative_q: Vec<Vec<f64>>,
    q2: Vec<f64>,
    potential: Vec<f64>,
}

impl ObservableCalculator {
    pub fn new(grid: &Grid, params: &PhysicsParams, potential: &PotentialSpec) -> Result<Self> {
        params.validate()?;
        Ok(Self {
            grid: grid.clone(),
            params: *params,
            spectral: Spectral::new(grid),
            derivative_q: grid.axes().iter().map(|a| a.derivative_wavenumbers()).collect(),
            q2: grid.wavenumber_squared(),
            potential: potential.sample(grid, params)?,
        })
    }

    pub fn evaluate(&self, psi: &Wavefunction) -> Result<ObservableRecord> {
        if psi.grid() != &self.grid {
            return Err(Error::InvalidParameter("wavefunction grid differs from observable grid".into()));
        }
        let amps = psi.amplitudes();
        let density: Vec<f64> = amps.iter().map(Complex64::norm_sqr).collect();
        let total: f64 = density.iter().sum();
        let norm = total * self.grid.cell_volume();
        if norm.is_nan() || norm < ZERO_NORM {
            return Err(Error::ZeroNorm(norm));
        }
        let nd = self.grid.ndim();
        let mut mean_position = vec![0.0; nd];
        let mut potential_energy = 0.0;
        for (f, rho) in density.iter().enumerate() {
            let x = self.grid.point(f);
            for a in 0..nd {
                mean_position[a] += x[a] * rho;
            }
            potential_energy += self.potential[f] * rho;
        }
        mean_position.iter_mut().for_each(|m| *m /= total);
        potential_energy /= total;

        // Parseval: spectral weights carry the same normalization in k-space
        let mut hat = amps.to_vec();
        self.spectral.forward(&mut hat);
        let spectral_density: Vec<f64> = hat.iter().map(Complex64::norm_sqr).collect();
        let spectral_total: f64 = spectral_density.iter().sum();
        let mut mean_momentum = vec![0.0; nd];
        let mut kinetic = 0.0;
        for (f, w) in spectral_density.iter().enumerate() {
            let idx = self.grid.unravel(f);
            for a in 0..nd {
                mean_momentum[a] += self.derivative_q[a][idx[a]] * w;
            }
            kinetic += self.q2[f] * w;
        }
        let hbar = self.params.hbar;
        mean_momentum.iter_mut().for_each(|p| *p *= hbar / spectral_total);
        kinetic *= hbar * hbar / (2.0 * self.params.mass) / spectral_total;

        Ok(ObservableRecord {
            time: psi.time(),
            norm,
            mean_position,
            mean_momentum,
            mean_energy_h0: kinetic + potential_energy,
        })
    }

    /// Position variance per axis, `⟨x²⟩ − ⟨x⟩²` of the normalized density.
    pub fn position_variance(&self, psi: &Wavefunction) -> Result<Vec<f64>> {
        let rec = self.evaluate(psi)?;
        let nd = self.grid.ndim();
        let mut second = vec![0.0; nd];
        let mut total = 0.0;
        for (f, z) in psi.amplitudes().iter().enumerate() {
            let rho = z.norm_sqr();
            let x = self.grid.point(f);
            for a in 0..nd {
                second[a] += x[a] * x[a] * rho;
            }
            total += rho;
        }
        Ok(second.iter().zip(&rec.mean_position).map(|(s, m)| s / total - m * m).collect())
    }
}

/// Norm, mean position, mean momentum and `⟨H₀⟩` of `psi`.
pub fn observables(psi: &Wavefunction, params: &PhysicsParams, potential: &PotentialSpec) -> Result<ObservableRecord> {
    ObservableCalculator::new(psi.grid(), params, potential)?.evaluate(psi)
}
