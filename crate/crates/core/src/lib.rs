//! Simulation of the damped Schrödinger equation
//! `iħ ∂Ψ/∂t = (-ħ²∇²/2m + V - iħ d k/m) Ψ`
//! for a particle subject to friction `F = -k v`.
//!
//! The crate provides:
//! - [`solver`]: Crank–Nicolson, Strang split-step and exact-factored time integrators;
//! - [`pathintegral`]: the short-time propagator, Gaussian kernel moments and the
//!   generator-defect measurement that recovers the wave equation from it;
//! - [`classical`]: generalized forces, the damped equations of motion, the
//!   general Lagrangian with nonconservative work and an Ehrenfest comparison.

pub mod classical;
pub mod error;
pub mod hamiltonian;
pub mod observables;
pub mod params;
pub mod pathintegral;
pub mod potential;
pub mod solver;
pub mod spectral;
pub mod wavefunction;

pub use num_complex::Complex64;

pub use error::{Error, Result};
pub use hamiltonian::{apply_hamiltonian, Hamiltonian};
pub use observables::{observables, ObservableCalculator, ObservableRecord};
pub use params::{Axis, Grid, PhysicsParams, STEP_GUARD_LIMIT};
pub use potential::PotentialSpec;
pub use wavefunction::{init_gaussian, Wavefunction};
