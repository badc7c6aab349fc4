use super::Trajectory;
use crate::error::{Error, Result};

/// Deviation between a quantum `⟨x⟩(t)` series and a classical `q(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub max: f64,
    pub rms: f64,
    /// `(t, ⟨x⟩, q)` per matched sample.
    pub samples: Vec<(f64, f64, f64)>,
}

fn same_time(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Pairs `quantum` = `(t, ⟨x⟩)` with the trajectory sample at the same time
/// (coordinate `axis`). Classical samples that fall between quantum records
/// are skipped, so the trajectory may be recorded more densely.
pub fn compare_ehrenfest(quantum: &[(f64, f64)], trajectory: &Trajectory, axis: usize) -> Result<DeviationReport> {
    if quantum.is_empty() {
        return Err(Error::InvalidParameter("empty quantum series".into()));
    }
    let mut samples = Vec::with_capacity(quantum.len());
    let mut classical = trajectory.samples.iter().peekable();
    for (index, &(t, x)) in quantum.iter().enumerate() {
        while classical.peek().is_some_and(|s| s.state.t < t && !same_time(s.state.t, t)) {
            classical.next();
        }
        let sample = classical.next().ok_or(Error::TimeGridMismatch { index, left: t, right: f64::NAN })?;
        if !same_time(sample.state.t, t) {
            return Err(Error::TimeGridMismatch { index, left: t, right: sample.state.t });
        }
        let q =
            *sample.state.q.get(axis).ok_or(Error::ShapeMismatch { expected: axis + 1, got: sample.state.q.len() })?;
        samples.push((t, x, q));
    }
    let max = samples.iter().map(|(_, x, q)| (x - q).abs()).fold(0.0, f64::max);
    let rms = (samples.iter().map(|(_, x, q)| (x - q).powi(2)).sum::<f64>() / samples.len() as f64).sqrt();
    Ok(DeviationReport { max, rms, samples })
}
