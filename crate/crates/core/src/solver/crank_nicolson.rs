//! Crank–Nicolson for the 1-D damped wave equation on a periodic grid with a
//! 3-point Laplacian. The cyclic tridiagonal system is solved by the Thomas
//! algorithm plus a Sherman–Morrison correction for the wrap-around corners.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{Grid, PhysicsParams};
use crate::potential::PotentialSpec;
use crate::wavefunction::Wavefunction;

/// Relative pivot threshold of the tridiagonal elimination.
const PIVOT_TOLERANCE: f64 = 1e-14;

/// Factorized `(1 + i dt H/2ħ)` together with the explicit half `(1 - i dt H/2ħ)`.
#[derive(Debug, Clone)]
pub struct CrankNicolson {
    /// Off-diagonal of `i dt H / 2ħ` (constant, also in the corners).
    off: Complex64,
    /// Diagonal of `i dt H / 2ħ`.
    diag: Vec<Complex64>,
    solver: CyclicTridiagonal,
}

impl CrankNicolson {
    pub fn new(grid: &Grid, potential: &PotentialSpec, params: &PhysicsParams, dt: f64) -> Result<Self> {
        params.validate()?;
        grid.check_matches(params)?;
        if grid.ndim() != 1 {
            return Err(Error::Dimension { expected: 1, got: grid.ndim() });
        }
        let dx = grid.axes()[0].spacing();
        let hbar = params.hbar;
        let kinetic = hbar * hbar / (2.0 * params.mass * dx * dx);
        let tau = Complex64::new(0.0, dt / (2.0 * hbar));
        let shift = Complex64::new(0.0, -hbar * params.damping_rate());
        let off = tau * (-kinetic);
        let diag: Vec<Complex64> =
            potential.sample(grid, params)?.into_iter().map(|v| tau * (2.0 * kinetic + v + shift)).collect();
        let lhs_diag: Vec<Complex64> = diag.iter().map(|d| 1.0 + d).collect();
        let solver = CyclicTridiagonal::factor(off, &lhs_diag, off)?;
        Ok(Self { off, diag, solver })
    }

    pub fn step_in_place(&self, psi: &mut [Complex64]) -> Result<()> {
        let n = psi.len();
        let rhs: Vec<Complex64> = (0..n)
            .map(|j| {
                let left = psi[(j + n - 1) % n];
                let right = psi[(j + 1) % n];
                psi[j] * (1.0 - self.diag[j]) - self.off * (left + right)
            })
            .collect();
        let out = self.solver.solve(&rhs);
        psi.copy_from_slice(&out);
        Ok(())
    }
}

/// One Crank–Nicolson step of length `dt` (1-D grids only).
pub fn step_crank_nicolson(
    psi: &Wavefunction,
    potential: &PotentialSpec,
    params: &PhysicsParams,
    dt: f64,
) -> Result<Wavefunction> {
    let cn = CrankNicolson::new(psi.grid(), potential, params, dt)?;
    let mut amps = psi.amplitudes().to_vec();
    cn.step_in_place(&mut amps)?;
    Ok(psi.with_amplitudes(amps, psi.time() + dt))
}

/// Periodic tridiagonal matrix with constant off-diagonals `lower`/`upper`
/// (including the corners `A[0][n-1] = lower`, `A[n-1][0] = upper`), factored
/// once and reused.
#[derive(Debug, Clone)]
pub struct CyclicTridiagonal {
    lower: Complex64,
    /// Thomas forward-sweep multipliers `c'_i` and pivots of the modified system.
    c_prime: Vec<Complex64>,
    pivots: Vec<Complex64>,
    gamma: Complex64,
    /// Solution of the modified system for the rank-one correction vector.
    z: Vec<Complex64>,
    correction_denominator: Complex64,
}

impl CyclicTridiagonal {
    pub fn factor(lower: Complex64, diag: &[Complex64], upper: Complex64) -> Result<Self> {
        let n = diag.len();
        if n < 3 {
            return Err(Error::InvalidParameter("cyclic tridiagonal system needs n >= 3".into()));
        }
        // corners: alpha = A[n-1][0] = upper (wraps from the last row), beta = A[0][n-1] = lower
        let alpha = upper;
        let beta = lower;
        let gamma = -diag[0];
        let mut modified = diag.to_vec();
        modified[0] -= gamma;
        modified[n - 1] -= alpha * beta / gamma;

        let mut c_prime = vec![Complex64::new(0.0, 0.0); n];
        let mut pivots = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let sub = if i == 0 { Complex64::new(0.0, 0.0) } else { lower };
            let pivot = if i == 0 { modified[0] } else { modified[i] - sub * c_prime[i - 1] };
            let row_scale = modified[i].norm() + lower.norm() + upper.norm();
            if pivot.norm() < PIVOT_TOLERANCE * row_scale {
                return Err(Error::SingularSystem { row: i, pivot: pivot.norm() });
            }
            pivots[i] = pivot;
            c_prime[i] = upper / pivot;
        }
        let mut solver =
            Self { lower, c_prime, pivots, gamma, z: Vec::new(), correction_denominator: Complex64::new(1.0, 0.0) };
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        u[0] = gamma;
        u[n - 1] = alpha;
        let z = solver.thomas(&u);
        let denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
        if denom.norm() < PIVOT_TOLERANCE {
            return Err(Error::SingularSystem { row: n - 1, pivot: denom.norm() });
        }
        solver.z = z;
        solver.correction_denominator = denom;
        Ok(solver)
    }

    fn thomas(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = rhs.len();
        let mut d = vec![Complex64::new(0.0, 0.0); n];
        d[0] = rhs[0] / self.pivots[0];
        for i in 1..n {
            d[i] = (rhs[i] - self.lower * d[i - 1]) / self.pivots[i];
        }
        for i in (0..n - 1).rev() {
            d[i] = d[i] - self.c_prime[i] * d[i + 1];
        }
        d
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = rhs.len();
        let mut x = self.thomas(rhs);
        let beta = self.lower;
        let factor = (x[0] + beta * x[n - 1] / self.gamma) / self.correction_denominator;
        x.iter_mut().zip(&self.z).for_each(|(xi, zi)| *xi -= factor * zi);
        x
    }
}
