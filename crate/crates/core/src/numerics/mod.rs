//! Independent verification engine.
//!
//! Uniform grids, the 3-point finite-difference Hamiltonian with Dirichlet
//! ends, a Sturm-bisection eigensolver for the resulting symmetric
//! tridiagonal matrices, composite Simpson quadrature, and residual norms.
//! Nothing here knows about the closed forms it is used to check.

mod quadrature;
mod tridiag;

use thiserror::Error;

use crate::potentials::{DomainKind, Family, Potential, PotentialError};

pub use quadrature::integrate;
pub use tridiag::{eigen_lowest_k, sturm_count, DiscreteEigenpair, TridiagonalOperator};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("complex-valued potentials cannot be discretized by the Hermitian solver")]
    ComplexPotential,
    #[error("potential evaluation failed at node x = {x}: {source}")]
    PotentialFailure { x: f64, source: PotentialError },
    #[error("requested {k} eigenvalues from an operator of size {n}")]
    InvalidCount { k: usize, n: usize },
    #[error("{what} did not converge: {detail}")]
    NoConvergence { what: &'static str, detail: String },
    #[error("convergence order undefined: successive values are identical")]
    DegenerateSequence,
    #[error("convergence order undefined: sequence is not monotone ({0} and {1})")]
    NonMonotone(f64, f64),
}

impl NumericsError {
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, NumericsError::NoConvergence { .. })
    }
}

/// Uniform discretization of `[x_lo, x_hi]` with `n` nodes. `inset` records
/// how far `x_lo`/`x_hi` were pulled in from a singular domain endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub inset: f64,
}

/// Left end of the half-line grids; bound states vanish at least like x^{B−A}.
pub const HALF_LINE_LO: f64 = 1e-4;
pub const HALF_LINE_HI: f64 = 25.0;
pub const INTERVAL_INSET: f64 = 1e-6;
pub const REAL_LINE_HALF_WIDTH: f64 = 30.0;

impl Grid {
    pub fn new(x_lo: f64, x_hi: f64, n: usize) -> Result<Self, NumericsError> {
        if !(x_lo.is_finite() && x_hi.is_finite() && x_lo < x_hi) {
            return Err(NumericsError::InvalidGrid(format!(
                "need finite x_lo < x_hi (got {x_lo}, {x_hi})"
            )));
        }
        if n < 3 {
            return Err(NumericsError::InvalidGrid(format!("need n >= 3 (got {n})")));
        }
        Ok(Self {
            x_lo,
            x_hi,
            n,
            inset: 0.0,
        })
    }

    /// Grid on `[lo + inset, hi − inset]`.
    pub fn inset(lo: f64, hi: f64, inset: f64, n: usize) -> Result<Self, NumericsError> {
        let mut grid = Self::new(lo + inset, hi - inset, n)?;
        grid.inset = inset;
        Ok(grid)
    }

    /// Reference truncation for a family's domain.
    pub fn for_family(family: Family, n: usize) -> Result<Self, NumericsError> {
        match family.domain().kind {
            DomainKind::HalfLine => Self::new(HALF_LINE_LO, HALF_LINE_HI, n),
            DomainKind::OpenInterval { lo, hi } => Self::inset(lo, hi, INTERVAL_INSET, n),
            DomainKind::RealLine => Self::new(-REAL_LINE_HALF_WIDTH, REAL_LINE_HALF_WIDTH, n),
        }
    }

    pub fn spacing(&self) -> f64 {
        (self.x_hi - self.x_lo) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.x_hi
        } else {
            self.x_lo + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.node(i))
    }

    /// Nodes strictly inside; these carry the unknowns of the Dirichlet problem.
    pub fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        (1..self.n - 1).map(|i| self.node(i))
    }

    pub fn with_n(&self, n: usize) -> Result<Self, NumericsError> {
        let mut grid = Self::new(self.x_lo, self.x_hi, n)?;
        grid.inset = self.inset;
        Ok(grid)
    }
}

fn real_value(potential: &dyn Potential, x: f64) -> Result<f64, NumericsError> {
    if potential.domain().complex_valued {
        return Err(NumericsError::ComplexPotential);
    }
    potential
        .value_checked(x)
        .map(|v| v.re)
        .map_err(|source| NumericsError::PotentialFailure { x, source })
}

/// `−d²/dx² + V` with the 3-point Laplacian on the interior nodes.
pub fn build_hamiltonian(
    potential: &dyn Potential,
    grid: &Grid,
) -> Result<TridiagonalOperator, NumericsError> {
    if potential.domain().complex_valued {
        return Err(NumericsError::ComplexPotential);
    }
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let diagonal = grid
        .interior()
        .map(|x| real_value(potential, x).map(|v| 2.0 * inv_h2 + v))
        .collect::<Result<Vec<_>, _>>()?;
    let off_diagonal = vec![-inv_h2; diagonal.len().saturating_sub(1)];
    Ok(TridiagonalOperator::new(diagonal, off_diagonal))
}

/// Lowest `k` eigenvalues of `−d²/dx² + V` on the grid.
pub fn spectrum(
    potential: &dyn Potential,
    grid: &Grid,
    k: usize,
) -> Result<Vec<f64>, NumericsError> {
    let op = build_hamiltonian(potential, grid)?;
    op.lowest_eigenvalues(k)
}

/// Richardson estimate of the convergence order from three successive
/// refinements (n, 2n, 4n).
pub fn convergence_order(coarse: f64, medium: f64, fine: f64) -> Result<f64, NumericsError> {
    let d1 = coarse - medium;
    let d2 = medium - fine;
    if d1 == 0.0 || d2 == 0.0 {
        return Err(NumericsError::DegenerateSequence);
    }
    let ratio = d1 / d2;
    if ratio <= 0.0 {
        return Err(NumericsError::NonMonotone(d1, d2));
    }
    Ok(ratio.log2())
}

/// How ψ″ is obtained in [`residual_norm`].
pub enum SecondDerivative<'a> {
    Analytic(&'a dyn Fn(f64) -> f64),
    /// 5-point, fourth-order central differences with the given step (clamped
    /// so the stencil stays inside the potential's domain).
    FiniteDifference {
        step: f64,
    },
}

/// Relative residual `‖−ψ″ + (V − E)ψ‖₂ / ‖ψ‖₂` over the interior nodes.
pub fn residual_norm(
    potential: &dyn Potential,
    psi: &dyn Fn(f64) -> f64,
    second: SecondDerivative<'_>,
    energy: f64,
    grid: &Grid,
) -> Result<f64, NumericsError> {
    let (dom_lo, dom_hi) = potential.domain().kind.bounds();
    let mut num = 0.0;
    let mut den = 0.0;
    for x in grid.interior() {
        let v = real_value(potential, x)?;
        let f = psi(x);
        let d2 = match &second {
            SecondDerivative::Analytic(g) => g(x),
            SecondDerivative::FiniteDifference { step } => {
                let room = (x - dom_lo).min(dom_hi - x) / 4.0;
                let h = step.min(room);
                (-psi(x + 2.0 * h) + 16.0 * psi(x + h) - 30.0 * f + 16.0 * psi(x - h)
                    - psi(x - 2.0 * h))
                    / (12.0 * h * h)
            }
        };
        let r = -d2 + (v - energy) * f;
        num += r * r;
        den += f * f;
    }
    Ok((num / den).sqrt())
}

/// `|⟨u, v⟩| / (‖u‖ ‖v‖)`.
pub fn overlap(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu: f64 = u.iter().map(|a| a * a).sum::<f64>().sqrt();
    let nv: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    dot.abs() / (nu * nv)
}

/// Sign changes in a sample sequence, ignoring entries below 1e−10 of the peak.
pub fn count_sign_changes(samples: &[f64]) -> usize {
    let peak = samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = 1e-10 * peak;
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in samples.iter().filter(|v| v.abs() > floor) {
        if last != 0.0 && v.signum() != last.signum() {
            changes += 1;
        }
        last = v;
    }
    changes
}
