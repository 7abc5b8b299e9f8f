//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration for the eigenvectors.

use super::NumericsError;

/// Absolute bisection tolerance on eigenvalues.
pub const EIGENVALUE_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 400;
const MAX_INVERSE_ITERATIONS: usize = 12;

/// Symmetric tridiagonal matrix stored by its diagonal and off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub diagonal: Vec<f64>,
    pub off_diagonal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteEigenpair {
    pub value: f64,
    /// Unit 2-norm; the largest-magnitude component is positive.
    pub vector: Vec<f64>,
}

impl TridiagonalOperator {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Self {
        assert_eq!(
            off_diagonal.len() + 1,
            diagonal.len().max(1),
            "off-diagonal must have n - 1 entries"
        );
        Self {
            diagonal,
            off_diagonal,
        }
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda`.
    pub fn sturm_count(&self, lambda: f64) -> usize {
        sturm_count(&self.diagonal, &self.off_diagonal, lambda)
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.off_diagonal[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    pub fn norm_inf(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diagonal[i] * v[i];
                if i > 0 {
                    acc += self.off_diagonal[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    acc += self.off_diagonal[i] * v[i + 1];
                }
                acc
            })
            .collect()
    }

    /// The `k` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>, NumericsError> {
        let n = self.len();
        if k == 0 || k > n {
            return Err(NumericsError::InvalidCount { k, n });
        }
        let (glo, ghi) = self.gershgorin();
        let pad = 1e-12 * glo.abs().max(ghi.abs()).max(1.0);
        let mut values = Vec::with_capacity(k);
        let mut floor = glo - pad;
        for j in 0..k {
            let value = self.bisect(j, floor, ghi + pad)?;
            floor = floor.max(value - 2.0 * EIGENVALUE_TOL);
            values.push(value);
        }
        Ok(values)
    }

    // Finds the j-th eigenvalue (0-based) inside [lo, hi].
    fn bisect(&self, j: usize, mut lo: f64, mut hi: f64) -> Result<f64, NumericsError> {
        for _ in 0..MAX_BISECTIONS {
            if hi - lo <= EIGENVALUE_TOL {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                // interval is at floating-point resolution
                return Ok(mid);
            }
            if self.sturm_count(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(NumericsError::NoConvergence {
            what: "Sturm bisection",
            detail: format!("eigenvalue {j} bracket [{lo}, {hi}] after {MAX_BISECTIONS} steps"),
        })
    }

    /// Eigenvector for an (accurately known) eigenvalue by inverse iteration.
    pub fn inverse_iteration(&self, value: f64) -> Result<Vec<f64>, NumericsError> {
        let n = self.len();
        let norm = self.norm_inf().max(1.0);
        let tol = 1e-9 * value.abs().max(1.0) + 1e3 * f64::EPSILON * norm;
        let lu = ShiftedLu::factor(self, value, f64::EPSILON * norm);

        // deterministic, non-degenerate start vector
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64 + 1.0) * 0.618_033_988_749_895).fract())
            .collect();
        normalize(&mut v);
        let mut residual = f64::INFINITY;
        for iteration in 0..MAX_INVERSE_ITERATIONS {
            lu.solve(&mut v);
            normalize(&mut v);
            let tv = self.apply(&v);
            residual = tv
                .iter()
                .zip(&v)
                .map(|(t, x)| (t - value * x).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual <= tol && iteration > 0 {
                fix_sign(&mut v);
                return Ok(v);
            }
        }
        Err(NumericsError::NoConvergence {
            what: "inverse iteration",
            detail: format!("residual {residual:e} > {tol:e} at eigenvalue {value}"),
        })
    }
}

/// Number of eigenvalues strictly below `lambda` (count of negative pivots in
/// the LDLᵀ factorization of `T − λI`).
pub fn sturm_count(diagonal: &[f64], off_diagonal: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diagonal.len() {
        let coupling = if i == 0 {
            0.0
        } else {
            off_diagonal[i - 1] * off_diagonal[i - 1] / q
        };
        q = diagonal[i] - lambda - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (diagonal[i].abs() + lambda.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` lowest eigenpairs.
pub fn eigen_lowest_k(
    op: &TridiagonalOperator,
    k: usize,
) -> Result<Vec<DiscreteEigenpair>, NumericsError> {
    op.lowest_eigenvalues(k)?
        .into_iter()
        .map(|value| {
            op.inverse_iteration(value)
                .map(|vector| DiscreteEigenpair { value, vector })
        })
        .collect()
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
}

fn fix_sign(v: &mut [f64]) {
    let peak = v
        .iter()
        .copied()
        .fold(0.0_f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if peak < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// LU factorization of `T − σI` with partial pivoting (one extra
/// super-diagonal of fill-in).
struct ShiftedLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(op: &TridiagonalOperator, shift: f64, tiny: f64) -> Self {
        let n = op.len();
        let mut diag: Vec<f64> = op.diagonal.iter().map(|d| d - shift).collect();
        let mut lower = op.off_diagonal.clone();
        let mut upper = op.off_diagonal.clone();
        let mut upper2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if diag[i].abs() >= lower[i].abs() {
                if diag[i] == 0.0 {
                    diag[i] = tiny;
                }
                let fact = lower[i] / diag[i];
                lower[i] = fact;
                diag[i + 1] -= fact * upper[i];
            } else {
                let fact = diag[i] / lower[i];
                diag[i] = lower[i];
                lower[i] = fact;
                let temp = upper[i];
                upper[i] = diag[i + 1];
                diag[i + 1] = temp - fact * diag[i + 1];
                if i + 2 < n {
                    upper2[i] = upper[i + 1];
                    upper[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        if let Some(last) = diag.last_mut() {
            if *last == 0.0 {
                *last = tiny;
            }
        }
        Self {
            lower,
            diag,
            upper,
            upper2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.lower[i] * b[i];
            } else {
                b[i + 1] -= self.lower[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= self.upper[i] * b[i + 1];
            }
            if i + 2 < n {
                acc -= self.upper2[i] * b[i + 2];
            }
            b[i] = acc / self.diag[i];
        }
    }
}
