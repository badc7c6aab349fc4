//! Shared fixtures for the benchmarks.

use ncwave_core::{init_gaussian, Grid, PhysicsParams, PotentialSpec, Wavefunction};

pub fn damped_params(dim: usize) -> PhysicsParams {
    PhysicsParams { friction_k: 0.1, dim, ..PhysicsParams::default() }
}

pub fn harmonic() -> PotentialSpec {
    PotentialSpec::harmonic(1.0, 0.0).expect("valid harmonic potential")
}

/// Unit-width Gaussian with unit momentum on `[-20, 20)` with `n` points.
pub fn packet_1d(n: usize) -> Wavefunction {
    let grid = Grid::uniform_1d(-20.0, 20.0, n).expect("valid grid");
    init_gaussian(&grid, &damped_params(1), &[0.0], 1.0, &[1.0]).expect("packet fits the grid")
}

/// Gaussian on an `n³` cube spanning `[-8, 8)`.
pub fn packet_3d(n: usize) -> Wavefunction {
    let grid = Grid::cube(-8.0, 8.0, n, 3).expect("valid grid");
    init_gaussian(&grid, &damped_params(3), &[0.0; 3], 1.5, &[0.5, 0.0, 0.0]).expect("packet fits the grid")
}
