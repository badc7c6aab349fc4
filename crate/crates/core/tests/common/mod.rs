//! Test-only oracles, independent of the library's FFT and stepping code.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use ncwave_core::{Complex64, Grid, PhysicsParams, PotentialSpec, Wavefunction};
use std::f64::consts::PI;

/// Kinetic discretization used for the dense Hermitian part.
#[derive(Clone, Copy, Debug)]
pub enum Kinetic {
    /// Periodic spectral second derivative, entries summed from the Fourier series.
    Spectral,
    /// 3-point stencil with periodic wrap.
    FiniteDifference,
}

/// Dense real-symmetric `H₀ = −ħ²/2m D² + V` on a 1-D grid.
pub fn dense_h0(grid: &Grid, params: &PhysicsParams, potential: &PotentialSpec, kinetic: Kinetic) -> DMatrix<f64> {
    let axis = grid.axes()[0];
    let n = axis.n_points;
    let dx = axis.spacing();
    let c = params.hbar * params.hbar / (2.0 * params.mass);
    let mut h = DMatrix::<f64>::zeros(n, n);
    match kinetic {
        Kinetic::Spectral => {
            let l = axis.length();
            for j in 0..n {
                for m in 0..n {
                    // (1/n) Σ_q q² cos(q (x_j − x_m)), q = 2π s / L for s in (−n/2, n/2]
                    let mut s = 0.0;
                    for mode in 0..n {
                        let idx = if mode <= n / 2 { mode as f64 } else { mode as f64 - n as f64 };
                        let q = 2.0 * PI * idx / l;
                        s += q * q * (q * (j as f64 - m as f64) * dx).cos();
                    }
                    h[(j, m)] = c * s / n as f64;
                }
            }
        }
        Kinetic::FiniteDifference => {
            for j in 0..n {
                h[(j, j)] = 2.0 * c / (dx * dx);
                h[(j, (j + 1) % n)] = -c / (dx * dx);
                h[(j, (j + n - 1) % n)] = -c / (dx * dx);
            }
        }
    }
    for j in 0..n {
        h[(j, j)] += potential.value_at(&[axis.coordinate(j)], params).unwrap();
    }
    h
}

/// Exact `e^{−d k t/m} e^{−i H₀ t/ħ} ψ` from an eigendecomposition of `H₀`.
pub struct ExactEvolution {
    eig: SymmetricEigen<f64, nalgebra::Dyn>,
    params: PhysicsParams,
}

impl ExactEvolution {
    pub fn new(h0: DMatrix<f64>, params: PhysicsParams) -> Self {
        Self { eig: SymmetricEigen::new(h0), params }
    }

    pub fn evolve(&self, psi: &Wavefunction, t: f64) -> Vec<Complex64> {
        let u = &self.eig.eigenvectors;
        let re = DVector::from_iterator(psi.amplitudes().len(), psi.amplitudes().iter().map(|z| z.re));
        let im = DVector::from_iterator(psi.amplitudes().len(), psi.amplitudes().iter().map(|z| z.im));
        let (cr, ci) = (u.transpose() * re, u.transpose() * im);
        let decay = (-self.params.damping_rate() * t).exp();
        let n = cr.len();
        let mut out_re = DVector::zeros(n);
        let mut out_im = DVector::zeros(n);
        for i in 0..n {
            let c = Complex64::new(cr[i], ci[i])
                * Complex64::from_polar(decay, -self.eig.eigenvalues[i] * t / self.params.hbar);
            out_re[i] = c.re;
            out_im[i] = c.im;
        }
        let (r, i) = (u * out_re, u * out_im);
        r.iter().zip(i.iter()).map(|(a, b)| Complex64::new(*a, *b)).collect()
    }
}

pub fn relative_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Direct O(n²) DFT, `X_k = Σ_j x_j e^{−2πi jk/n}`.
pub fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64))
                .sum()
        })
        .collect()
}

/// Closed-form underdamped oscillator released from rest at `q0`.
pub fn damped_oscillator(t: f64, q0: f64, omega: f64, gamma: f64) -> f64 {
    let wd = (omega * omega - gamma * gamma).sqrt();
    q0 * (-gamma * t).exp() * ((wd * t).cos() + gamma / wd * (wd * t).sin())
}

/// Outcome of one acceptance criterion.
pub struct Verdict {
    pub id: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(id: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Self { id, pass, detail: detail.into() }
    }
}
