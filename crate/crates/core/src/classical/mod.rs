//! Classical mechanics with friction `F = -k v`: generalized forces, the
//! damped equations of motion, the general Lagrangian `L = T − V − w_nc`
//! and the running action.
//!
//! `w_nc` is the work `∫F_nc·dr` done by friction since the trajectory's
//! starting point, which serves as the reference point of the work integral.

mod ehrenfest;

pub use ehrenfest::{compare_ehrenfest, DeviationReport};

use crate::error::{Error, Result};
use crate::params::PhysicsParams;
use crate::potential::PotentialSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalState {
    pub q: Vec<f64>,
    pub v: Vec<f64>,
    pub t: f64,
    /// Accumulated nonconservative work; non-positive and non-increasing for `k ≥ 0`.
    pub w_nc: f64,
}

impl ClassicalState {
    /// State at rest on the work reference point (`w_nc = 0`).
    pub fn new(q: Vec<f64>, v: Vec<f64>, t: f64) -> Result<Self> {
        let s = Self { q, v, t, w_nc: 0.0 };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_empty() || self.q.len() > 3 {
            return Err(Error::InvalidParameter(format!("expected 1 to 3 coordinates, got {}", self.q.len())));
        }
        if self.v.len() != self.q.len() {
            return Err(Error::ShapeMismatch { expected: self.q.len(), got: self.v.len() });
        }
        if !self.is_finite() {
            return Err(Error::NonFinite { time: self.t });
        }
        Ok(())
    }

    fn is_finite(&self) -> bool {
        self.t.is_finite() && self.w_nc.is_finite() && self.q.iter().chain(&self.v).all(|x| x.is_finite())
    }

    pub fn kinetic_energy(&self, params: &PhysicsParams) -> f64 {
        0.5 * params.mass * self.v.iter().map(|v| v * v).sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectorySample {
    pub state: ClassicalState,
    pub kinetic: f64,
    pub potential: f64,
    pub lagrangian: f64,
    /// `∫ L dt` from the first sample.
    pub action: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    pub samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn last(&self) -> Option<&TrajectorySample> {
        self.samples.last()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.state.t)
    }

    pub fn total_energy(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.kinetic + s.potential)
    }
}

/// `Q_j = Σ_i F_i · ∂r_i/∂q_j`. `forces[i]` is the force on particle `i`;
/// `jacobian[i][j]` is `∂r_i/∂q_j`, a vector of the same length.
pub fn generalized_force(forces: &[Vec<f64>], jacobian: &[Vec<Vec<f64>>]) -> Result<Vec<f64>> {
    if forces.len() != jacobian.len() {
        return Err(Error::ShapeMismatch { expected: forces.len(), got: jacobian.len() });
    }
    let n_coords = jacobian.first().map_or(0, Vec::len);
    let mut q = vec![0.0; n_coords];
    for (force, rows) in forces.iter().zip(jacobian) {
        if rows.len() != n_coords {
            return Err(Error::ShapeMismatch { expected: n_coords, got: rows.len() });
        }
        for (qj, dr) in q.iter_mut().zip(rows) {
            if dr.len() != force.len() {
                return Err(Error::ShapeMismatch { expected: force.len(), got: dr.len() });
            }
            *qj += force.iter().zip(dr).map(|(f, d)| f * d).sum::<f64>();
        }
    }
    Ok(q)
}

/// Right-hand side of `m dv/dt = −∇V(q) − k v`, returned as `(dq/dt, dv/dt)`.
pub fn eom_rhs(
    state: &ClassicalState,
    potential: &PotentialSpec,
    params: &PhysicsParams,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let grad = potential.gradient_at(&state.q, params)?;
    let accel = grad.iter().zip(&state.v).map(|(g, v)| (-g - params.friction_k * v) / params.mass).collect();
    Ok((state.v.clone(), accel))
}

/// `L = T − V − w_nc`; reduces to `T − V` when no friction work has been done.
pub fn lagrangian_general(state: &ClassicalState, potential: &PotentialSpec, params: &PhysicsParams) -> Result<f64> {
    Ok(state.kinetic_energy(params) - potential.value_at(&state.q, params)? - state.w_nc)
}

fn sample(
    state: ClassicalState,
    action: f64,
    potential: &PotentialSpec,
    params: &PhysicsParams,
) -> Result<TrajectorySample> {
    let kinetic = state.kinetic_energy(params);
    let v = potential.value_at(&state.q, params)?;
    Ok(TrajectorySample { lagrangian: kinetic - v - state.w_nc, kinetic, potential: v, state, action })
}

/// Derivative of the augmented system `(q, v, w_nc, S)`.
fn augmented_rhs(
    q: &[f64],
    v: &[f64],
    w: f64,
    potential: &PotentialSpec,
    params: &PhysicsParams,
) -> Result<(Vec<f64>, Vec<f64>, f64, f64)> {
    let grad = potential.gradient_at(q, params)?;
    let accel: Vec<f64> = grad.iter().zip(v).map(|(g, vi)| (-g - params.friction_k * vi) / params.mass).collect();
    let v2: f64 = v.iter().map(|x| x * x).sum();
    let power = -params.friction_k * v2;
    let lagrangian = 0.5 * params.mass * v2 - potential.value_at(q, params)? - w;
    Ok((v.to_vec(), accel, power, lagrangian))
}

fn axpy(base: &[f64], h: f64, d: &[f64]) -> Vec<f64> {
    base.iter().zip(d).map(|(b, x)| b + h * x).collect()
}

/// Fixed-step RK4 on positions and velocities. The friction work and the
/// action ride along as extra components, so they are accumulated with the
/// same (Simpson-weighted) stages.
pub fn integrate(
    state: &ClassicalState,
    potential: &PotentialSpec,
    params: &PhysicsParams,
    dt: f64,
    n_steps: usize,
) -> Result<Trajectory> {
    params.validate()?;
    state.validate()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    let mut samples = Vec::with_capacity(n_steps + 1);
    let mut current = state.clone();
    let mut action = 0.0;
    samples.push(sample(current.clone(), action, potential, params)?);
    for step in 1..=n_steps {
        let (q, v, w) = (&current.q, &current.v, current.w_nc);
        let k1 = augmented_rhs(q, v, w, potential, params)?;
        let k2 = augmented_rhs(
            &axpy(q, dt / 2.0, &k1.0),
            &axpy(v, dt / 2.0, &k1.1),
            w + dt / 2.0 * k1.2,
            potential,
            params,
        )?;
        let k3 = augmented_rhs(
            &axpy(q, dt / 2.0, &k2.0),
            &axpy(v, dt / 2.0, &k2.1),
            w + dt / 2.0 * k2.2,
            potential,
            params,
        )?;
        let k4 = augmented_rhs(&axpy(q, dt, &k3.0), &axpy(v, dt, &k3.1), w + dt * k3.2, potential, params)?;
        let combine = |base: &[f64], a: &[f64], b: &[f64], c: &[f64], d: &[f64]| -> Vec<f64> {
            (0..base.len()).map(|i| base[i] + dt / 6.0 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i])).collect()
        };
        let next = ClassicalState {
            q: combine(q, &k1.0, &k2.0, &k3.0, &k4.0),
            v: combine(v, &k1.1, &k2.1, &k3.1, &k4.1),
            w_nc: w + dt / 6.0 * (k1.2 + 2.0 * k2.2 + 2.0 * k3.2 + k4.2),
            t: state.t + step as f64 * dt,
        };
        action += dt / 6.0 * (k1.3 + 2.0 * k2.3 + 2.0 * k3.3 + k4.3);
        if !next.is_finite() || !action.is_finite() {
            return Err(Error::NonFinite { time: next.t });
        }
        current = next;
        samples.push(sample(current.clone(), action, potential, params)?);
    }
    Ok(Trajectory { samples })
}

/// RMS over interior samples of `m dv/dt + ∇V(q) + k v` with centered differences
/// for `dv/dt`: the residual of the damped Lagrange equations (for `k = 0`, the
/// conservative ones).
pub fn euler_lagrange_residual(
    trajectory: &Trajectory,
    potential: &PotentialSpec,
    params: &PhysicsParams,
) -> Result<f64> {
    let s = &trajectory.samples;
    if s.len() < 3 {
        return Err(Error::InvalidParameter("need at least three samples".into()));
    }
    let mut sum = 0.0;
    let mut count = 0usize;
    for i in 1..s.len() - 1 {
        let (prev, cur, next) = (&s[i - 1].state, &s[i].state, &s[i + 1].state);
        let span = next.t - prev.t;
        let grad = potential.gradient_at(&cur.q, params)?;
        for (c, g) in grad.iter().enumerate() {
            let accel = (next.v[c] - prev.v[c]) / span;
            let r = params.mass * accel + g + params.friction_k * cur.v[c];
            sum += r * r;
            count += 1;
        }
    }
    Ok((sum / count as f64).sqrt())
}
