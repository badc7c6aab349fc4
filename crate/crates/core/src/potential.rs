//! Time-independent external potentials.

use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};

/// External potential `V(r)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Free,
    /// `½ m ω² |r - c|²` with the same center `c` on every axis.
    Harmonic {
        omega: f64,
        center: f64,
    },
    /// Slab `|x - c| <= half_width` along the first axis, `height` inside and zero outside.
    Barrier {
        height: f64,
        half_width: f64,
        center: f64,
    },
    /// Values at the nodes of `grid`, multilinearly interpolated in between.
    Sampled {
        grid: Grid,
        values: Vec<f64>,
    },
}

impl PotentialSpec {
    pub fn harmonic(omega: f64, center: f64) -> Result<Self> {
        let v = Self::Harmonic { omega, center };
        v.validate()?;
        Ok(v)
    }

    pub fn barrier(height: f64, half_width: f64, center: f64) -> Result<Self> {
        let v = Self::Barrier { height, half_width, center };
        v.validate()?;
        Ok(v)
    }

    pub fn sampled(grid: Grid, values: Vec<f64>) -> Result<Self> {
        let v = Self::Sampled { grid, values };
        v.validate()?;
        Ok(v)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Free => Ok(()),
            Self::Harmonic { omega, center } => {
                if !(omega.is_finite() && *omega > 0.0) || !center.is_finite() {
                    return Err(Error::InvalidParameter(format!("harmonic omega must be positive, got {omega}")));
                }
                Ok(())
            }
            Self::Barrier { height, half_width, center } => {
                if !(half_width.is_finite() && *half_width > 0.0) || !height.is_finite() || !center.is_finite() {
                    return Err(Error::InvalidParameter(format!(
                        "barrier half-width must be positive, got {half_width}"
                    )));
                }
                Ok(())
            }
            Self::Sampled { grid, values } => {
                if values.len() != grid.len() {
                    return Err(Error::ShapeMismatch { expected: grid.len(), got: values.len() });
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidParameter("sampled potential has non-finite entries".into()));
                }
                Ok(())
            }
        }
    }

    /// Potential at every node of `grid`, flat order.
    pub fn sample(&self, grid: &Grid, params: &PhysicsParams) -> Result<Vec<f64>> {
        self.validate()?;
        match self {
            Self::Sampled { grid: own, values } => {
                if own != grid {
                    return Err(Error::InvalidParameter("sampled potential lives on a different grid".into()));
                }
                Ok(values.clone())
            }
            _ => Ok((0..grid.len()).map(|f| self.analytic_value(&grid.point(f)[..grid.ndim()], params)).collect()),
        }
    }

    /// `V(x)` at an arbitrary point.
    pub fn value_at(&self, x: &[f64], params: &PhysicsParams) -> Result<f64> {
        match self {
            Self::Sampled { grid, values } => interpolate(grid, values, x),
            _ => Ok(self.analytic_value(x, params)),
        }
    }

    /// `∇V(x)`: analytic for the closed-form potentials, centered differences
    /// of the interpolant (step `dx / 2`) for sampled data.
    pub fn gradient_at(&self, x: &[f64], params: &PhysicsParams) -> Result<Vec<f64>> {
        match self {
            Self::Free => Ok(vec![0.0; x.len()]),
            Self::Harmonic { omega, center } => {
                let c = params.mass * omega * omega;
                Ok(x.iter().map(|xi| c * (xi - center)).collect())
            }
            // flat inside and outside; the edges are treated as flat too
            Self::Barrier { .. } => Ok(vec![0.0; x.len()]),
            Self::Sampled { grid, values } => {
                if x.len() != grid.ndim() {
                    return Err(Error::ShapeMismatch { expected: grid.ndim(), got: x.len() });
                }
                let mut g = Vec::with_capacity(x.len());
                for (a, axis) in grid.axes().iter().enumerate() {
                    let h = 0.5 * axis.spacing();
                    let mut plus = x.to_vec();
                    let mut minus = x.to_vec();
                    plus[a] += h;
                    minus[a] -= h;
                    let vp = interpolate(grid, values, &plus).map_err(|_| Error::GradientUnavailable(x.to_vec()))?;
                    let vm = interpolate(grid, values, &minus).map_err(|_| Error::GradientUnavailable(x.to_vec()))?;
                    g.push((vp - vm) / (2.0 * h));
                }
                Ok(g)
            }
        }
    }

    fn analytic_value(&self, x: &[f64], params: &PhysicsParams) -> f64 {
        match self {
            Self::Free => 0.0,
            Self::Harmonic { omega, center } => {
                let r2: f64 = x.iter().map(|xi| (xi - center) * (xi - center)).sum();
                0.5 * params.mass * omega * omega * r2
            }
            Self::Barrier { height, half_width, center } => {
                if (x[0] - center).abs() <= *half_width {
                    *height
                } else {
                    0.0
                }
            }
            Self::Sampled { .. } => unreachable!("sampled potentials are interpolated"),
        }
    }
}

/// Multilinear interpolation on the periodic lattice; the cell between the
/// last node and `x_max` wraps to node 0. Points outside `[x_min, x_max]` are rejected.
fn interpolate(grid: &Grid, values: &[f64], x: &[f64]) -> Result<f64> {
    if x.len() != grid.ndim() {
        return Err(Error::ShapeMismatch { expected: grid.ndim(), got: x.len() });
    }
    let mut lo = [0usize; 3];
    let mut hi = [0usize; 3];
    let mut frac = [0.0f64; 3];
    for (a, axis) in grid.axes().iter().enumerate() {
        if !(x[a] >= axis.x_min && x[a] <= axis.x_max) {
            return Err(Error::GradientUnavailable(x.to_vec()));
        }
        let s = (x[a] - axis.x_min) / axis.spacing();
        let j = (s.floor() as usize).min(axis.n_points - 1);
        lo[a] = j;
        hi[a] = (j + 1) % axis.n_points;
        frac[a] = s - j as f64;
    }
    let nd = grid.ndim();
    let mut acc = 0.0;
    for corner in 0..(1usize << nd) {
        let mut w = 1.0;
        let mut flat = 0;
        for a in 0..nd {
            let upper = corner >> a & 1 == 1;
            w *= if upper { frac[a] } else { 1.0 - frac[a] };
            flat += (if upper { hi[a] } else { lo[a] }) * grid.stride(a);
        }
        acc += w * values[flat];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> PhysicsParams {
        PhysicsParams::default()
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(PotentialSpec::harmonic(0.0, 0.0).is_err());
        assert!(PotentialSpec::barrier(1.0, 0.0, 0.0).is_err());
        let g = Grid::uniform_1d(0.0, 1.0, 8).unwrap();
        assert!(PotentialSpec::sampled(g, vec![0.0; 7]).is_err());
    }

    #[test]
    fn harmonic_value_and_gradient() {
        let p = PhysicsParams { mass: 2.0, ..unit() };
        let v = PotentialSpec::harmonic(3.0, 1.0).unwrap();
        assert!((v.value_at(&[2.0], &p).unwrap() - 9.0).abs() < 1e-14);
        assert!((v.gradient_at(&[2.0], &p).unwrap()[0] - 18.0).abs() < 1e-14);
    }

    #[test]
    fn barrier_is_a_slab_on_the_first_axis() {
        let v = PotentialSpec::barrier(5.0, 0.5, 1.0).unwrap();
        assert_eq!(v.value_at(&[1.4, 100.0], &unit()).unwrap(), 5.0);
        assert_eq!(v.value_at(&[1.6, 0.0], &unit()).unwrap(), 0.0);
    }

    #[test]
    fn sampled_interpolation_reproduces_linear_data() {
        let g = Grid::uniform_1d(0.0, 8.0, 8).unwrap();
        let values: Vec<f64> = (0..8).map(|j| 2.0 * j as f64).collect();
        let v = PotentialSpec::sampled(g.clone(), values).unwrap();
        assert!((v.value_at(&[2.25], &unit()).unwrap() - 4.5).abs() < 1e-14);
        assert!((v.gradient_at(&[3.3], &unit()).unwrap()[0] - 2.0).abs() < 1e-12);
        assert!(matches!(v.gradient_at(&[-1.0], &unit()), Err(Error::GradientUnavailable(_))));
        assert_eq!(v.sample(&g, &unit()).unwrap().len(), 8);
        let other = Grid::uniform_1d(0.0, 9.0, 8).unwrap();
        assert!(v.sample(&other, &unit()).is_err());
    }

    #[test]
    fn sampled_bilinear() {
        let g = Grid::cube(0.0, 4.0, 8, 2).unwrap();
        let values: Vec<f64> = (0..64)
            .map(|f| {
                let x = g.point(f);
                x[0] + 3.0 * x[1]
            })
            .collect();
        let v = PotentialSpec::sampled(g, values).unwrap();
        assert!((v.value_at(&[1.1, 2.3], &unit()).unwrap() - 8.0).abs() < 1e-12);
        let grad = v.gradient_at(&[1.1, 2.3], &unit()).unwrap();
        assert!((grad[0] - 1.0).abs() < 1e-12 && (grad[1] - 3.0).abs() < 1e-12);
    }
}
