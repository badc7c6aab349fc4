//! Tensor-product FFTs on a periodic [`Grid`].

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::params::Grid;

/// Cached forward/inverse plans for every axis of a grid.
pub struct Spectral {
    shape: Vec<usize>,
    forward: Vec<Arc<dyn Fft<f64>>>,
    inverse: Vec<Arc<dyn Fft<f64>>>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("shape", &self.shape).finish()
    }
}

impl Spectral {
    pub fn new(grid: &Grid) -> Self {
        let mut planner = FftPlanner::new();
        let shape = grid.shape();
        let forward = shape.iter().map(|&n| planner.plan_fft_forward(n)).collect();
        let inverse = shape.iter().map(|&n| planner.plan_fft_inverse(n)).collect();
        Self { shape, forward, inverse }
    }

    /// Unnormalized forward transform in place.
    pub fn forward(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            self.along_axis(data, axis, &self.forward[axis]);
        }
    }

    /// Inverse transform in place, scaled so that `inverse(forward(x)) == x`.
    pub fn inverse(&self, data: &mut [Complex64]) {
        for axis in 0..self.shape.len() {
            self.along_axis(data, axis, &self.inverse[axis]);
        }
        let scale = 1.0 / data.len() as f64;
        data.iter_mut().for_each(|z| *z *= scale);
    }

    /// `data <- IFFT(multiplier * FFT(data))`.
    pub fn apply_multiplier(&self, data: &mut [Complex64], multiplier: &[Complex64]) {
        debug_assert_eq!(data.len(), multiplier.len());
        self.forward(data);
        data.iter_mut().zip(multiplier).for_each(|(z, m)| *z *= m);
        self.inverse(data);
    }

    /// Same as [`Self::apply_multiplier`] for a real symbol.
    pub fn apply_real_multiplier(&self, data: &mut [Complex64], multiplier: &[f64]) {
        debug_assert_eq!(data.len(), multiplier.len());
        self.forward(data);
        data.iter_mut().zip(multiplier).for_each(|(z, m)| *z *= m);
        self.inverse(data);
    }

    fn along_axis(&self, data: &mut [Complex64], axis: usize, plan: &Arc<dyn Fft<f64>>) {
        let n = self.shape[axis];
        let stride: usize = self.shape[axis + 1..].iter().product();
        if stride == 1 {
            plan.process(data);
            return;
        }
        let block = n * stride;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (j, z) in line.iter_mut().enumerate() {
                    *z = data[base + j * stride];
                }
                plan.process(&mut line);
                for (j, z) in line.iter().enumerate() {
                    data[base + j * stride] = *z;
                }
            }
        }
    }
}
