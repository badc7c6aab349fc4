use num_complex::Complex64;

use super::*;
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::solver::step_split_fourier;
use crate::wavefunction::{init_gaussian, Wavefunction};

fn small_state() -> Wavefunction {
    let grid = Grid::uniform_1d(-8.0, 8.0, 32).unwrap();
    let p = PhysicsParams::default();
    let psi = init_gaussian(&grid, &p, &[0.3], 1.5, &[0.8]).unwrap();
    // add a non-Gaussian component so every Fourier mode takes part
    let amps = psi
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(j, z)| z + Complex64::new(0.05 * (j as f64 * 0.7).sin(), 0.02 * (j as f64 * 1.3).cos()))
        .collect();
    Wavefunction::new(grid, amps, 0.0).unwrap()
}

#[test]
fn multiplier_matches_direct_regularized_convolution() {
    let psi = small_state();
    for physics in [PhysicsParams::default(), PhysicsParams { friction_k: 0.5, mass: 1.3, ..Default::default() }] {
        for (eps, delta) in [(0.05, 1e-2), (0.1, 5e-2)] {
            let direct = convolve_regularized(&psi, &physics, eps, delta).unwrap();
            let spectral = convolve_spectral_regularized(&psi, &physics, eps, delta).unwrap();
            let err = direct.iter().zip(&spectral).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-9, "eps {eps} delta {delta}: {err}");
        }
    }
}

#[test]
fn regularized_convolution_tends_to_the_real_multiplier() {
    let psi = small_state();
    let physics = PhysicsParams { friction_k: 0.3, ..Default::default() };
    let eps = 0.05;
    let delta = 1e-2;
    let f: Vec<Vec<Complex64>> = [delta, delta / 2.0, delta / 4.0]
        .iter()
        .map(|d| convolve_regularized(&psi, &physics, eps, *d).unwrap())
        .collect();
    let exact = step_short_time(&psi, &PotentialSpec::Free, &physics, eps).unwrap();
    for (j, want) in exact.amplitudes().iter().enumerate() {
        let limit = moments_richardson(f[0][j], f[1][j], f[2][j]);
        assert!((limit - want).norm() < 1e-5);
    }
}

fn moments_richardson(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let r1 = 2.0 * b - a;
    let r2 = 2.0 * c - b;
    (4.0 * r2 - r1) / 3.0
}

#[test]
fn frictionless_step_is_the_free_propagator() {
    let grid = Grid::uniform_1d(-20.0, 20.0, 256).unwrap();
    let p = PhysicsParams::default();
    let psi = init_gaussian(&grid, &p, &[0.5], 1.0, &[1.0]).unwrap();
    let pot = PotentialSpec::harmonic(1.0, 0.0).unwrap();
    let eps = 1e-2;
    let short = step_short_time(&psi, &pot, &p, eps).unwrap();
    // free propagator then the full potential phase, done by hand
    let free = step_split_fourier(&psi, &PotentialSpec::Free, &p, eps).unwrap();
    let v = pot.sample(&grid, &p).unwrap();
    for ((s, f), vj) in short.amplitudes().iter().zip(free.amplitudes()).zip(&v) {
        assert!((s - f * Complex64::from_polar(1.0, -eps * vj)).norm() < 1e-12);
    }
}

#[test]
fn constant_state_scales_by_kernel_amplitude() {
    for dim in [1usize, 3] {
        let grid = Grid::cube(-4.0, 4.0, 8, dim).unwrap();
        let physics = PhysicsParams { friction_k: 0.4, mass: 1.7, dim, ..Default::default() };
        let eps = 1e-2;
        let psi = Wavefunction::new(grid.clone(), vec![Complex64::new(0.2, 0.1); grid.len()], 0.0).unwrap();
        let out = step_short_time(&psi, &PotentialSpec::Free, &physics, eps).unwrap();
        let factor = (physics.mass / (physics.mass + 2.0 * physics.friction_k * eps)).powf(dim as f64 / 2.0);
        for (o, i) in out.amplitudes().iter().zip(psi.amplitudes()) {
            assert!((o - factor * i).norm() < 1e-14);
        }
    }
}

#[test]
fn norm_ratio_tends_to_exponential_decay() {
    let grid = Grid::uniform_1d(-20.0, 20.0, 128).unwrap();
    let physics = PhysicsParams { friction_k: 0.5, ..Default::default() };
    let psi = init_gaussian(&grid, &physics, &[0.0], 1.0, &[0.0]).unwrap();
    let mut previous_gap = f64::INFINITY;
    for eps in [1e-2, 1e-3, 1e-4] {
        let out = step_short_time(&psi, &PotentialSpec::Free, &physics, eps).unwrap();
        let ratio = out.norm() / psi.norm();
        let closed = (1.0 / (1.0 + 2.0 * 0.5 * eps)).powi(1);
        assert!((ratio - closed).abs() < 1e-13);
        // (1 + 2kε/m)^{-d} = e^{-2dkε/m} (1 + O(ε²))
        let x = 2.0 * 0.5 * eps;
        let gap = (ratio / (-x).exp() - 1.0).abs();
        assert!(gap < x * x, "eps {eps}: gap {gap}");
        assert!(gap < previous_gap / 50.0);
        previous_gap = gap;
    }
}

#[test]
fn step_guard_is_enforced() {
    let grid = Grid::uniform_1d(-5.0, 5.0, 32).unwrap();
    let physics = PhysicsParams { friction_k: 1.0, ..Default::default() };
    let psi = Wavefunction::zeros(grid);
    assert!(step_short_time(&psi, &PotentialSpec::Free, &physics, 0.2).is_err());
    assert!(step_short_time(&psi, &PotentialSpec::Free, &physics, 0.0).is_err());
}

#[test]
fn plane_wave_defect_matches_taylor_remainder() {
    let grid = Grid::uniform_1d(0.0, 10.0, 64).unwrap();
    let p = PhysicsParams::default();
    let q = 2.0 * std::f64::consts::PI * 3.0 / 10.0;
    let psi = Wavefunction::from_fn(grid, 0.0, |x| Complex64::from_polar(1.0, q * x[0])).unwrap();
    for eps in [1e-1, 1e-2, 1e-3] {
        let theta: f64 = p.hbar * eps * q * q / (2.0 * p.mass);
        let expected = (Complex64::from_polar(1.0, -theta) - 1.0 + Complex64::i() * theta).norm() / theta;
        let d = generator_defect(&psi, &PotentialSpec::Free, &p, eps).unwrap();
        assert!((d - expected).abs() < 1e-9 * expected.max(1e-3), "eps {eps}: {d} vs {expected}");
    }
}

#[test]
fn quartic_term_bracket_is_five_in_three_dimensions() {
    let grid = Grid::cube(-8.0, 8.0, 32, 3).unwrap();
    let physics = PhysicsParams { friction_k: 0.2, dim: 3, ..Default::default() };
    let psi = init_gaussian(&grid, &physics, &[0.0; 3], 1.5, &[0.0; 3]).unwrap();
    let eps = 1e-2;
    let got = discarded_quartic_term(&psi, &physics, eps).unwrap();
    // ‖∂²ψ/∂x²‖ of a unit Gaussian is sqrt(3/16)/σ²
    let second = (3.0f64 / 16.0).sqrt() / (1.5 * 1.5);
    let expected = 0.2 / 2.0 * 5.0 * eps * eps * second;
    // continuum value; the 16-unit box truncates the tails at the 1e-4 level
    assert!((got / expected - 1.0).abs() < 1e-3, "{got} vs {expected}");
    let at_other = discarded_quartic_term(&psi, &physics, eps / 10.0).unwrap();
    assert!((got / at_other - 100.0).abs() < 1e-9);
}
