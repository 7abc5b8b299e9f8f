//! Special-function kernel.
//!
//! Jacobi polynomials P_n^{(α,β)} for arbitrary real parameters (including the
//! non-classical β < −1 that the extended potentials need), their derivatives,
//! `ln Γ`, and the degree-(ν+1) polynomials P̂ that appear in the bound states
//! of the rationally-extended potentials.

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("ln_gamma requires a positive argument, got {0}")]
    NonPositiveGammaArgument(f64),
    #[error("P-hat is undefined for alpha == beta (alpha = {0})")]
    EqualJacobiParameters(f64),
    #[error("P-hat is undefined when alpha + beta + 2*nu vanishes (alpha = {alpha}, beta = {beta}, nu = {nu})")]
    VanishingDenominator { alpha: f64, beta: f64, nu: usize },
}

/// Jacobi parameters together with a polynomial degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyParams {
    pub alpha: f64,
    pub beta: f64,
    pub degree: usize,
}

impl PolyParams {
    pub fn new(alpha: f64, beta: f64, degree: usize) -> Self {
        Self {
            alpha,
            beta,
            degree,
        }
    }

    /// The zero `b = (β+α)/(β−α)` of the prefactor `β+α − (β−α)z`.
    pub fn b(&self) -> Option<f64> {
        if self.beta == self.alpha {
            None
        } else {
            Some((self.beta + self.alpha) / (self.beta - self.alpha))
        }
    }

    pub fn eval(&self, z: f64) -> f64 {
        jacobi_eval(self.degree, self.alpha, self.beta, z)
    }
}

// Relative size below which a recurrence coefficient is treated as zero.
const DEGENERATE_COEFF: f64 = 1e-13;

/// Evaluates P_n^{(α,β)}(z).
///
/// Uses the forward three-term recurrence in the degree. For parameter sets
/// where a leading recurrence coefficient vanishes (α+β an integer in a
/// particular range, which the extended potentials do hit) the recurrence
/// carries no information, and the polynomial is summed explicitly instead.
pub fn jacobi_eval(n: usize, alpha: f64, beta: f64, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if recurrence_degenerate(n, alpha, beta) {
        return jacobi_sum(n, alpha, beta, z);
    }

    let ab = alpha + beta;
    let mut p_prev = 1.0;
    let mut p = (alpha + 1.0) + 0.5 * (ab + 2.0) * (z - 1.0);
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let lead = 2.0 * k * (k + ab) * (s - 2.0);
        let lin = (s - 1.0) * (alpha * alpha - beta * beta);
        let quad = (s - 2.0) * (s - 1.0) * s;
        let back = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * s;
        let next = ((lin + quad * z) * p - back * p_prev) / lead;
        p_prev = p;
        p = next;
    }
    p
}

fn recurrence_degenerate(n: usize, alpha: f64, beta: f64) -> bool {
    let ab = alpha + beta;
    (2..=n).any(|k| {
        let k = k as f64;
        let s = 2.0 * k + ab;
        let scale = (k * (k.abs() + ab.abs()) * (s.abs() + 2.0)).max(1.0);
        (2.0 * k * (k + ab) * (s - 2.0)).abs() <= DEGENERATE_COEFF * scale
    })
}

/// Finite hypergeometric sum
/// P_n(z) = Σ_l (n+α+β+1)_l (α+l+1)_{n−l} / (l! (n−l)!) · ((z−1)/2)^l,
/// valid for every real α, β.
fn jacobi_sum(n: usize, alpha: f64, beta: f64, z: f64) -> f64 {
    let t = 0.5 * (z - 1.0);
    let top = n as f64 + alpha + beta + 1.0;
    let mut total = 0.0;
    let mut head = 1.0; // (n+α+β+1)_l / l!
    let mut t_pow = 1.0;
    for l in 0..=n {
        let mut tail = 1.0; // (α+l+1)_{n−l} / (n−l)!
        for j in 0..(n - l) {
            tail *= (alpha + (l + 1 + j) as f64) / (j + 1) as f64;
        }
        total += head * tail * t_pow;
        head *= (top + l as f64) / (l + 1) as f64;
        t_pow *= t;
    }
    total
}

/// dP_n^{(α,β)}/dz = ½(n+α+β+1) P_{n−1}^{(α+1,β+1)}(z).
pub fn jacobi_deriv(n: usize, alpha: f64, beta: f64, z: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    0.5 * (n as f64 + alpha + beta + 1.0) * jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, z)
}

/// Evaluates P̂_{ν+1}^{(α,β)}(z), a polynomial of degree ν+1:
///
/// P̂_{ν+1}(z) = −½(z−b) P_ν(z) + [b P_ν(z) − P_{ν−1}(z)] / (α+β+2ν),
/// with b = (β+α)/(β−α) and P_{−1} ≡ 0.
pub fn phat_eval(nu: usize, alpha: f64, beta: f64, z: f64) -> Result<f64, SpecfunError> {
    let b = PolyParams::new(alpha, beta, nu)
        .b()
        .ok_or(SpecfunError::EqualJacobiParameters(alpha))?;
    let denom = alpha + beta + 2.0 * nu as f64;
    if denom == 0.0 {
        return Err(SpecfunError::VanishingDenominator { alpha, beta, nu });
    }
    let p_nu = jacobi_eval(nu, alpha, beta, z);
    let p_prev = if nu == 0 {
        0.0
    } else {
        jacobi_eval(nu - 1, alpha, beta, z)
    };
    Ok(-0.5 * (z - b) * p_nu + (b * p_nu - p_prev) / denom)
}

/// Derivative of P̂_{ν+1}^{(α,β)} with respect to z.
pub fn phat_deriv(nu: usize, alpha: f64, beta: f64, z: f64) -> Result<f64, SpecfunError> {
    let b = PolyParams::new(alpha, beta, nu)
        .b()
        .ok_or(SpecfunError::EqualJacobiParameters(alpha))?;
    let denom = alpha + beta + 2.0 * nu as f64;
    if denom == 0.0 {
        return Err(SpecfunError::VanishingDenominator { alpha, beta, nu });
    }
    let p_nu = jacobi_eval(nu, alpha, beta, z);
    let dp_nu = jacobi_deriv(nu, alpha, beta, z);
    let dp_prev = if nu == 0 {
        0.0
    } else {
        jacobi_deriv(nu - 1, alpha, beta, z)
    };
    Ok(-0.5 * p_nu - 0.5 * (z - b) * dp_nu + (b * dp_nu - dp_prev) / denom)
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64, SpecfunError> {
    if !x.is_finite() || x <= 0.0 {
        return Err(SpecfunError::NonPositiveGammaArgument(x));
    }
    // small positive integers: exact factorial sums
    if x.fract() == 0.0 && x <= 32.0 {
        let n = x as usize;
        return Ok((2..n).map(|k| (k as f64).ln()).sum());
    }
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        let reflected = ln_gamma(1.0 - x)?;
        return Ok((PI / (PI * x).sin()).ln() - reflected);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln())
}
