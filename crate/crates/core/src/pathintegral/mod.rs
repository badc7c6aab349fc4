//! Numerical realization of the short-time path integral for `F = -k v`:
//! kernel moments, the propagator step and the generator-defect measurement.

mod defect;
mod moments;
mod propagator;

pub use defect::{discarded_quartic_term, generator_defect};
pub use moments::{
    kernel_moment_closed, kernel_moment_closed_complex, kernel_moment_quadrature, kernel_moment_richardson,
    normalization, quadrature_half_width, ShortTimeParams,
};
pub use propagator::{
    convolve_regularized, convolve_spectral_regularized, kernel_multiplier, step_short_time, ShortTimePropagator,
};

#[cfg(test)]
mod tests;
