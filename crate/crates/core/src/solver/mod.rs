//! Time integration of the damped wave equation.

mod crank_nicolson;
mod split_step;

pub use crank_nicolson::{step_crank_nicolson, CrankNicolson, CyclicTridiagonal};
pub use split_step::{step_exact_factored, step_split_fourier, SplitStepper};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::observables::{ObservableCalculator, ObservableRecord};
use crate::params::{PhysicsParams, STEP_GUARD_LIMIT};
use crate::potential::PotentialSpec;
use crate::wavefunction::Wavefunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntegratorChoice {
    CrankNicolson,
    SplitStepStrang,
    /// `e^{-d k t/m}` times the frictionless split-step evolution; the reference integrator.
    ExactFactored,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionPlan {
    pub dt: f64,
    pub n_steps: usize,
    pub record_every: usize,
    pub integrator: IntegratorChoice,
}

impl EvolutionPlan {
    pub fn new(dt: f64, n_steps: usize, record_every: usize, integrator: IntegratorChoice) -> Self {
        Self { dt, n_steps, record_every, integrator }
    }

    pub fn validate(&self, params: &PhysicsParams) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {}", self.dt)));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be at least 1".into()));
        }
        if self.integrator != IntegratorChoice::ExactFactored {
            params.check_step_guard(self.dt, STEP_GUARD_LIMIT)?;
        }
        Ok(())
    }

    pub fn final_time(&self) -> f64 {
        self.n_steps as f64 * self.dt
    }
}

/// Receives every record together with the state it was computed from.
pub trait Observer {
    fn observe(&mut self, record: &ObservableRecord, state: &Wavefunction) -> Result<()>;
}

impl<F> Observer for F
where
    F: FnMut(&ObservableRecord, &Wavefunction) -> Result<()>,
{
    fn observe(&mut self, record: &ObservableRecord, state: &Wavefunction) -> Result<()> {
        self(record, state)
    }
}

/// Ignores everything.
#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl Observer for NoObserver {
    fn observe(&mut self, _: &ObservableRecord, _: &Wavefunction) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Evolution {
    pub state: Wavefunction,
    pub records: Vec<ObservableRecord>,
}

enum Stepper {
    CrankNicolson(CrankNicolson),
    Split(SplitStepper),
}

impl Stepper {
    fn step(&self, amps: &mut [Complex64]) -> Result<()> {
        match self {
            Stepper::CrankNicolson(cn) => cn.step_in_place(amps),
            Stepper::Split(s) => {
                s.step_in_place(amps);
                Ok(())
            }
        }
    }
}

/// Advance `psi0` by `plan.n_steps` steps, recording observables at step 0,
/// every `record_every` steps and at the final step.
///
/// The exact-factored integrator keeps the frictionless state internally and
/// reports `e^{-d k t/m}` times it, with `t` measured from `psi0`.
pub fn evolve(
    psi0: &Wavefunction,
    potential: &PotentialSpec,
    params: &PhysicsParams,
    plan: &EvolutionPlan,
    observer: &mut impl Observer,
) -> Result<Evolution> {
    params.validate()?;
    plan.validate(params)?;
    let grid = psi0.grid();
    let calc = ObservableCalculator::new(grid, params, potential)?;
    let (stepper, rate) = match plan.integrator {
        IntegratorChoice::CrankNicolson => {
            (Stepper::CrankNicolson(CrankNicolson::new(grid, potential, params, plan.dt)?), 0.0)
        }
        IntegratorChoice::SplitStepStrang => {
            (Stepper::Split(SplitStepper::new(grid, potential, params, plan.dt)?), 0.0)
        }
        IntegratorChoice::ExactFactored => (
            Stepper::Split(SplitStepper::new(grid, potential, &params.conservative(), plan.dt)?),
            params.damping_rate(),
        ),
    };

    let t0 = psi0.time();
    let mut amps = psi0.amplitudes().to_vec();
    let mut records = Vec::with_capacity(plan.n_steps / plan.record_every + 2);
    let snapshot = |amps: &[Complex64], step: usize| -> Wavefunction {
        let elapsed = step as f64 * plan.dt;
        let scale = (-rate * elapsed).exp();
        let scaled = if rate == 0.0 { amps.to_vec() } else { amps.iter().map(|z| z * scale).collect() };
        psi0.with_amplitudes(scaled, t0 + elapsed)
    };
    let mut emit = |state: &Wavefunction, records: &mut Vec<ObservableRecord>| -> Result<()> {
        if !state.is_finite() {
            return Err(Error::NonFinite { time: state.time() });
        }
        let rec = calc.evaluate(state)?;
        if !rec.is_finite() {
            return Err(Error::NonFinite { time: rec.time });
        }
        observer.observe(&rec, state)?;
        records.push(rec);
        Ok(())
    };

    emit(&snapshot(&amps, 0), &mut records)?;
    for step in 1..=plan.n_steps {
        stepper.step(&mut amps)?;
        if step % plan.record_every == 0 || step == plan.n_steps {
            emit(&snapshot(&amps, step), &mut records)?;
        }
    }
    Ok(Evolution { state: snapshot(&amps, plan.n_steps), records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Grid;
    use crate::wavefunction::init_gaussian;

    fn setup() -> (Wavefunction, PhysicsParams) {
        let grid = Grid::uniform_1d(-20.0, 20.0, 256).unwrap();
        let params = PhysicsParams { friction_k: 0.2, ..Default::default() };
        (init_gaussian(&grid, &params, &[1.0], 1.0, &[0.0]).unwrap(), params)
    }

    #[test]
    fn zero_steps_returns_initial_state() {
        let (psi, params) = setup();
        let plan = EvolutionPlan::new(0.01, 0, 1, IntegratorChoice::SplitStepStrang);
        let ev = evolve(&psi, &PotentialSpec::Free, &params, &plan, &mut NoObserver).unwrap();
        assert_eq!(ev.state, psi);
        assert_eq!(ev.records.len(), 1);
        assert_eq!(ev.records[0].time, 0.0);
    }

    #[test]
    fn record_schedule_includes_final_step() {
        let (psi, params) = setup();
        let plan = EvolutionPlan::new(0.01, 10, 4, IntegratorChoice::CrankNicolson);
        let mut seen = Vec::new();
        let mut obs = |r: &ObservableRecord, s: &Wavefunction| {
            assert_eq!(r.time, s.time());
            seen.push(r.time);
            Ok(())
        };
        let ev = evolve(&psi, &PotentialSpec::Free, &params, &plan, &mut obs).unwrap();
        let times: Vec<f64> = ev.records.iter().map(|r| r.time).collect();
        assert_eq!(times.len(), 4);
        for (t, e) in times.iter().zip([0.0, 0.04, 0.08, 0.1]) {
            assert!((t - e).abs() < 1e-12);
        }
        assert_eq!(seen, times);
    }

    #[test]
    fn plan_validation() {
        let p = PhysicsParams { friction_k: 1.0, ..Default::default() };
        assert!(EvolutionPlan::new(0.0, 1, 1, IntegratorChoice::SplitStepStrang).validate(&p).is_err());
        assert!(EvolutionPlan::new(0.1, 1, 0, IntegratorChoice::SplitStepStrang).validate(&p).is_err());
        assert!(matches!(
            EvolutionPlan::new(0.2, 1, 1, IntegratorChoice::CrankNicolson).validate(&p),
            Err(Error::StepSizeGuard { .. })
        ));
        assert!(EvolutionPlan::new(0.2, 1, 1, IntegratorChoice::ExactFactored).validate(&p).is_ok());
    }

    #[test]
    fn observer_errors_abort() {
        let (psi, params) = setup();
        let plan = EvolutionPlan::new(0.01, 5, 1, IntegratorChoice::SplitStepStrang);
        let mut calls = 0;
        let mut obs = |_: &ObservableRecord, _: &Wavefunction| {
            calls += 1;
            if calls == 3 {
                Err(Error::NonFinite { time: 0.0 })
            } else {
                Ok(())
            }
        };
        assert!(evolve(&psi, &PotentialSpec::Free, &params, &plan, &mut obs).is_err());
    }

    #[test]
    fn exact_factored_tracks_split_step() {
        let (psi, params) = setup();
        let pot = PotentialSpec::harmonic(1.0, 0.0).unwrap();
        let a = evolve(
            &psi,
            &pot,
            &params,
            &EvolutionPlan::new(0.01, 50, 10, IntegratorChoice::SplitStepStrang),
            &mut NoObserver,
        )
        .unwrap();
        let b = evolve(
            &psi,
            &pot,
            &params,
            &EvolutionPlan::new(0.01, 50, 10, IntegratorChoice::ExactFactored),
            &mut NoObserver,
        )
        .unwrap();
        assert!(a.state.max_abs_difference(&b.state) < 1e-12);
    }
}
