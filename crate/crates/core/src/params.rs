use crate::error::{Error, Result};

/// Physical constants of the damped wave equation.
///
/// `dim` is the number of Cartesian components that contribute to the
/// damping rate `dim * friction_k / mass`; it must match the grid the
/// state lives on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    pub hbar: f64,
    pub mass: f64,
    pub friction_k: f64,
    pub dim: usize,
}

impl Default for PhysicsParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0, friction_k: 0.0, dim: 1 }
    }
}

impl PhysicsParams {
    pub fn new(hbar: f64, mass: f64, friction_k: f64, dim: usize) -> Result<Self> {
        let p = Self { hbar, mass, friction_k, dim };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {}", self.mass)));
        }
        if !(self.friction_k.is_finite() && self.friction_k >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "friction coefficient must be non-negative, got {}",
                self.friction_k
            )));
        }
        if !(1..=3).contains(&self.dim) {
            return Err(Error::InvalidParameter(format!("dim must be 1, 2 or 3, got {}", self.dim)));
        }
        Ok(())
    }

    /// Same constants with the friction switched off.
    pub fn conservative(&self) -> Self {
        Self { friction_k: 0.0, ..*self }
    }

    /// Amplitude decay rate `d k / m`; the wave equation carries `-i hbar` times this.
    pub fn damping_rate(&self) -> f64 {
        self.dim as f64 * self.friction_k / self.mass
    }

    /// `k * dt / m`, the quantity bounded by the step-size guard.
    pub fn friction_step_ratio(&self, dt: f64) -> f64 {
        self.friction_k * dt / self.mass
    }

    pub(crate) fn check_step_guard(&self, dt: f64, limit: f64) -> Result<()> {
        let ratio = self.friction_step_ratio(dt);
        if ratio > limit {
            return Err(Error::StepSizeGuard { ratio, limit });
        }
        Ok(())
    }
}

/// Upper bound on `k * dt / m` accepted by the steppers that expand the friction factor.
pub const STEP_GUARD_LIMIT: f64 = 0.1;

/// One periodic axis: `n_points` nodes at `x_min + j * dx`, `dx = (x_max - x_min) / n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Axis {
    pub const MIN_POINTS: usize = 8;

    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let axis = Self { x_min, x_max, n_points };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        if self.n_points < Self::MIN_POINTS {
            return Err(Error::InvalidParameter(format!(
                "axis needs at least {} points, got {}",
                Self::MIN_POINTS,
                self.n_points
            )));
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::InvalidParameter(format!(
                "axis bounds must satisfy x_min < x_max, got [{}, {})",
                self.x_min, self.x_max
            )));
        }
        Ok(())
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n_points as f64
    }

    pub fn coordinate(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.spacing()
    }

    pub fn coordinates(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.coordinate(j)).collect()
    }

    /// Angular wavenumbers in FFT order: 0, 1, .., n/2, -(n/2 - 1), .., -1 times 2π/L.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.n_points;
        let dq = 2.0 * std::f64::consts::PI / self.length();
        (0..n)
            .map(|j| {
                let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
                m * dq
            })
            .collect()
    }

    /// Wavenumbers for odd derivatives: as [`Self::wavenumbers`] but with the
    /// unpaired Nyquist mode set to zero so the derivative stays Hermitian.
    pub fn derivative_wavenumbers(&self) -> Vec<f64> {
        let mut q = self.wavenumbers();
        if self.n_points.is_multiple_of(2) {
            q[self.n_points / 2] = 0.0;
        }
        q
    }
}

/// Uniform periodic tensor-product lattice with 1 to 3 axes, row-major
/// storage (the last axis varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    axes: Vec<Axis>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if !(1..=3).contains(&axes.len()) {
            return Err(Error::InvalidParameter(format!("grid needs 1 to 3 axes, got {}", axes.len())));
        }
        for a in &axes {
            a.validate()?;
        }
        Ok(Self { axes })
    }

    pub fn uniform_1d(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        Self::new(vec![Axis::new(x_min, x_max, n_points)?])
    }

    /// Same axis repeated `dim` times.
    pub fn cube(x_min: f64, x_max: f64, n_points: usize, dim: usize) -> Result<Self> {
        let axis = Axis::new(x_min, x_max, n_points)?;
        Self::new(vec![axis; dim])
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.n_points).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n_points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Volume element `∏ dx`.
    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(Axis::spacing).product()
    }

    /// Stride of `axis` in the flat storage.
    pub fn stride(&self, axis: usize) -> usize {
        self.axes[axis + 1..].iter().map(|a| a.n_points).product()
    }

    /// Multi-index of a flat position.
    pub fn unravel(&self, mut flat: usize) -> [usize; 3] {
        let mut idx = [0usize; 3];
        for (a, axis) in self.axes.iter().enumerate().rev() {
            idx[a] = flat % axis.n_points;
            flat /= axis.n_points;
        }
        idx
    }

    /// Coordinates of every node, per axis, in flat order.
    pub fn point(&self, flat: usize) -> [f64; 3] {
        let idx = self.unravel(flat);
        let mut x = [0.0; 3];
        for (a, axis) in self.axes.iter().enumerate() {
            x[a] = axis.coordinate(idx[a]);
        }
        x
    }

    /// `|q|²` at every node of the reciprocal lattice, flat order.
    pub fn wavenumber_squared(&self) -> Vec<f64> {
        let per_axis: Vec<Vec<f64>> = self.axes.iter().map(Axis::wavenumbers).collect();
        (0..self.len())
            .map(|flat| {
                let idx = self.unravel(flat);
                per_axis.iter().enumerate().map(|(a, q)| q[idx[a]] * q[idx[a]]).sum()
            })
            .collect()
    }

    pub(crate) fn check_matches(&self, params: &PhysicsParams) -> Result<()> {
        if params.dim != self.ndim() {
            return Err(Error::Dimension { expected: params.dim, got: self.ndim() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_invariants() {
        assert!(PhysicsParams::new(1.0, 1.0, 0.0, 1).is_ok());
        assert!(PhysicsParams::new(0.0, 1.0, 0.0, 1).is_err());
        assert!(PhysicsParams::new(1.0, -1.0, 0.0, 1).is_err());
        assert!(PhysicsParams::new(1.0, 1.0, -0.1, 1).is_err());
        assert!(PhysicsParams::new(1.0, 1.0, 0.1, 4).is_err());
        assert!(PhysicsParams::new(1.0, 1.0, 0.1, 0).is_err());
    }

    #[test]
    fn damping_rate_counts_components() {
        let p = PhysicsParams::new(1.0, 2.0, 0.3, 3).unwrap();
        assert!((p.damping_rate() - 0.45).abs() < 1e-15);
    }

    #[test]
    fn axis_spacing_and_wavenumbers() {
        let a = Axis::new(-20.0, 20.0, 512).unwrap();
        assert!((a.spacing() - 40.0 / 512.0).abs() < 1e-15);
        let q = a.wavenumbers();
        let dq = 2.0 * std::f64::consts::PI / 40.0;
        assert_eq!(q[0], 0.0);
        assert!((q[1] - dq).abs() < 1e-15);
        assert!((q[511] + dq).abs() < 1e-15);
        assert!((q[256] - 256.0 * dq).abs() < 1e-12);
        assert_eq!(a.derivative_wavenumbers()[256], 0.0);
    }

    #[test]
    fn axis_rejects_small_or_inverted() {
        assert!(Axis::new(0.0, 1.0, 7).is_err());
        assert!(Axis::new(1.0, 1.0, 16).is_err());
        assert!(Axis::new(2.0, 1.0, 16).is_err());
    }

    #[test]
    fn grid_layout_is_row_major() {
        let g = Grid::new(vec![Axis::new(0.0, 8.0, 8).unwrap(), Axis::new(0.0, 10.0, 10).unwrap()]).unwrap();
        assert_eq!(g.len(), 80);
        assert_eq!(g.stride(0), 10);
        assert_eq!(g.stride(1), 1);
        assert_eq!(g.unravel(23), [2, 3, 0]);
        let x = g.point(23);
        assert_eq!((x[0], x[1]), (2.0, 3.0));
        assert!((g.cell_volume() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn grid_dimension_check() {
        let g = Grid::cube(-1.0, 1.0, 8, 2).unwrap();
        let p = PhysicsParams::new(1.0, 1.0, 0.0, 3).unwrap();
        assert!(matches!(g.check_matches(&p), Err(Error::Dimension { .. })));
        assert!(Grid::new(vec![]).is_err());
    }
}
