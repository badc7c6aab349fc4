use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};

/// Complex amplitudes of `Ψ(r, t)` on a periodic grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction {
    grid: Grid,
    amplitudes: Vec<Complex64>,
    time: f64,
}

impl Wavefunction {
    pub fn new(grid: Grid, amplitudes: Vec<Complex64>, time: f64) -> Result<Self> {
        if amplitudes.len() != grid.len() {
            return Err(Error::ShapeMismatch { expected: grid.len(), got: amplitudes.len() });
        }
        if amplitudes.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::NonFinite { time });
        }
        Ok(Self { grid, amplitudes, time })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: Grid, time: f64, f: impl Fn(&[f64]) -> Complex64) -> Result<Self> {
        let nd = grid.ndim();
        let amps = (0..grid.len()).map(|i| f(&grid.point(i)[..nd])).collect();
        Self::new(grid, amps, time)
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.len();
        Self { grid, amplitudes: vec![Complex64::new(0.0, 0.0); n], time: 0.0 }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    /// Replace the amplitudes, keeping the grid. Used by the steppers.
    pub(crate) fn with_amplitudes(&self, amplitudes: Vec<Complex64>, time: f64) -> Self {
        debug_assert_eq!(amplitudes.len(), self.grid.len());
        Self { grid: self.grid.clone(), amplitudes, time }
    }

    pub fn is_finite(&self) -> bool {
        self.amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `Δx^d Σ |ψ|²`.
    pub fn norm(&self) -> f64 {
        self.grid.cell_volume() * self.amplitudes.iter().map(Complex64::norm_sqr).sum::<f64>()
    }

    /// Discrete inner product `Δx^d Σ conj(self) other`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        inner(&self.grid, &self.amplitudes, &other.amplitudes)
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        self.with_amplitudes(self.amplitudes.iter().map(|z| z * factor).collect(), self.time)
    }

    /// Relative L² distance `‖self − other‖ / ‖other‖`.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let diff: f64 = self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm_sqr()).sum();
        let base: f64 = other.amplitudes.iter().map(Complex64::norm_sqr).sum();
        (diff / base).sqrt()
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn inner(grid: &Grid, a: &[Complex64], b: &[Complex64]) -> Complex64 {
    let s: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    s * grid.cell_volume()
}

/// Gaussian packet `exp(-(x - x0)²/(4σ²) + i p0·x/ħ)` normalized to unit
/// discrete norm. `center` and `momentum` carry one entry per grid axis.
pub fn init_gaussian(
    grid: &Grid,
    params: &PhysicsParams,
    center: &[f64],
    sigma: f64,
    momentum: &[f64],
) -> Result<Wavefunction> {
    params.validate()?;
    let nd = grid.ndim();
    if center.len() != nd {
        return Err(Error::ShapeMismatch { expected: nd, got: center.len() });
    }
    if momentum.len() != nd {
        return Err(Error::ShapeMismatch { expected: nd, got: momentum.len() });
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    for (a, axis) in grid.axes().iter().enumerate() {
        let min = 3.0 * axis.spacing();
        if sigma < min {
            return Err(Error::PacketTooNarrow { sigma, min });
        }
        if center[a] - 5.0 * sigma < axis.x_min || center[a] + 5.0 * sigma >= axis.x_max {
            return Err(Error::PacketOutOfDomain { axis: a });
        }
    }
    let hbar = params.hbar;
    let psi = Wavefunction::from_fn(grid.clone(), 0.0, |x| {
        let mut arg = Complex64::new(0.0, 0.0);
        for a in 0..nd {
            let d = x[a] - center[a];
            arg += Complex64::new(-d * d / (4.0 * sigma * sigma), momentum[a] * x[a] / hbar);
        }
        arg.exp()
    })?;
    let scale = 1.0 / psi.norm().sqrt();
    Ok(psi.scaled(Complex64::new(scale, 0.0)))
}
