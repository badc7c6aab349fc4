//! Gaussian moments of the free short-time kernel,
//! `∫ η^n exp(i m η² / 2ħε) dη` for n ∈ {0, 1, 2, 4}.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{PhysicsParams, STEP_GUARD_LIMIT};

/// Time step and regularization of one short-time propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeParams {
    pub epsilon: f64,
    /// Quadrature regularization `δ`: the kernel is evaluated at `ε(1 − iδ)`.
    pub delta_reg: f64,
    pub physics: PhysicsParams,
}

impl ShortTimeParams {
    pub const MAX_DELTA: f64 = 0.1;

    pub fn new(epsilon: f64, delta_reg: f64, physics: PhysicsParams) -> Result<Self> {
        let p = Self { epsilon, delta_reg, physics };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        self.physics.validate()?;
        check_epsilon(self.epsilon, &self.physics)?;
        check_delta(self.delta_reg)
    }

    /// `A = (i 2π ħ ε / m)^{1/2}`.
    pub fn normalization(&self) -> Complex64 {
        normalization(Complex64::new(self.epsilon, 0.0), &self.physics)
    }
}

pub(crate) fn check_epsilon(epsilon: f64, physics: &PhysicsParams) -> Result<()> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    physics.check_step_guard(epsilon, STEP_GUARD_LIMIT)
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= ShortTimeParams::MAX_DELTA) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 0.1], got {delta}")));
    }
    Ok(())
}

/// `(i 2π ħ ε / m)^{1/2}` on the principal branch, for real or complex `ε`.
pub fn normalization(epsilon: Complex64, physics: &PhysicsParams) -> Complex64 {
    (Complex64::i() * 2.0 * std::f64::consts::PI * physics.hbar * epsilon / physics.mass).sqrt()
}

/// Closed form of the moment at a possibly complex time step.
pub fn kernel_moment_closed_complex(order: u32, epsilon: Complex64, physics: &PhysicsParams) -> Result<Complex64> {
    let a = normalization(epsilon, physics);
    let s = Complex64::i() * physics.hbar * epsilon / physics.mass;
    match order {
        0 => Ok(a),
        1 => Ok(Complex64::new(0.0, 0.0)),
        2 => Ok(s * a),
        4 => Ok(3.0 * s * s * a),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// Closed-form moment at real `ε`: `A`, `0`, `(iħε/m) A`, `3 (iħε/m)² A`.
pub fn kernel_moment_closed(order: u32, epsilon: f64, physics: &PhysicsParams) -> Result<Complex64> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon must be positive, got {epsilon}")));
    }
    kernel_moment_closed_complex(order, Complex64::new(epsilon, 0.0), physics)
}

/// Half-width of the quadrature window, in units where the kernel has decayed by `e^{-144}`.
pub fn quadrature_half_width(epsilon: f64, delta: f64, physics: &PhysicsParams) -> f64 {
    12.0 * (2.0 * physics.hbar * epsilon / physics.mass).sqrt() / delta.sqrt()
}

const QUADRATURE_TOLERANCE: f64 = 1e-8;
const INITIAL_INTERVALS: usize = 1 << 14;
const MAX_INTERVALS: usize = 1 << 23;

/// Trapezoid rule for `∫ η^n exp(i m η² / 2ħε(1 − iδ)) dη` on `|η| ≤ W`,
/// doubling the node count until two successive levels agree to `1e-8`
/// relative to the moment's natural scale `|A| (ħε/m)^{n/2}`.
pub fn kernel_moment_quadrature(order: u32, epsilon: f64, physics: &PhysicsParams, delta: f64) -> Result<Complex64> {
    if !matches!(order, 0 | 1 | 2 | 4) {
        return Err(Error::UnsupportedOrder(order));
    }
    physics.validate()?;
    check_epsilon(epsilon, physics)?;
    check_delta(delta)?;
    let eps_c = Complex64::new(epsilon, -epsilon * delta);
    let coeff = Complex64::i() * physics.mass / (2.0 * physics.hbar * eps_c);
    let integrand = |eta: f64| (coeff * eta * eta).exp() * eta.powi(order as i32);
    let half = quadrature_half_width(epsilon, delta, physics);
    let scale = normalization(Complex64::new(epsilon, 0.0), physics).norm()
        * (physics.hbar * epsilon / physics.mass).powf(order as f64 / 2.0);
    refine_trapezoid(integrand, -half, half, scale)
}

/// Successive-halving trapezoid on `[a, b]` with the stopping rule above.
pub(crate) fn refine_trapezoid(f: impl Fn(f64) -> Complex64, a: f64, b: f64, scale: f64) -> Result<Complex64> {
    let mut n = INITIAL_INTERVALS;
    let mut h = (b - a) / n as f64;
    let mut sum: Complex64 = 0.5 * (f(a) + f(b)) + (1..n).map(|i| f(a + i as f64 * h)).sum::<Complex64>();
    let mut estimate = sum * h;
    loop {
        // add the midpoints of the current level
        let mids: Complex64 = (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum();
        sum += mids;
        n *= 2;
        h *= 0.5;
        let refined = sum * h;
        let change = (refined - estimate).norm() / refined.norm().max(scale);
        if change <= QUADRATURE_TOLERANCE {
            return Ok(refined);
        }
        if n >= MAX_INTERVALS {
            return Err(Error::QuadratureFailure { rel_change: change });
        }
        estimate = refined;
    }
}

/// `δ → 0` limit of the regularized quadrature from the values at `δ`, `δ/2`
/// and `δ/4` (two Richardson levels, removing the `O(δ)` and `O(δ²)` terms).
pub fn kernel_moment_richardson(order: u32, epsilon: f64, physics: &PhysicsParams, delta: f64) -> Result<Complex64> {
    let f0 = kernel_moment_quadrature(order, epsilon, physics, delta)?;
    let f1 = kernel_moment_quadrature(order, epsilon, physics, delta / 2.0)?;
    let f2 = kernel_moment_quadrature(order, epsilon, physics, delta / 4.0)?;
    Ok(richardson(f0, f1, f2))
}

pub(crate) fn richardson(f0: Complex64, f1: Complex64, f2: Complex64) -> Complex64 {
    let r1 = 2.0 * f1 - f0;
    let r2 = 2.0 * f2 - f1;
    (4.0 * r2 - r1) / 3.0
}
