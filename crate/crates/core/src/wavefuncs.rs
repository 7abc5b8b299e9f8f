//! Closed-form bound states of the conventional and extended GPT potentials.
//!
//! With `z = cosh x`, the conventional states are
//! `ψ_ν = 𝒩_ν (z−1)^{(B−A)/2} (z+1)^{−(B+A)/2} P_ν^{(B−A−½, −B−A−½)}(z)`
//! and the extended ones replace the Jacobi polynomial by
//! `P̂_{ν+1}^{(B−A−½, −B−A−½)}(z) / (2Bz − 2A − 1)`. Both share the energies
//! `−(A−ν)²`, `ν = 0..=ν_max`.

use thiserror::Error;

use crate::potentials::{validate_params, Family, FamilyParams, ParamClass, Path, PotentialError};
use crate::specfun::{jacobi_deriv, jacobi_eval, ln_gamma, phat_deriv, phat_eval, SpecfunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefuncError {
    #[error("A must be positive (got {0})")]
    NonPositiveA(f64),
    #[error("nu = {nu} exceeds nu_max = {nu_max}")]
    NuOutOfRange { nu: usize, nu_max: usize },
    #[error(transparent)]
    Params(#[from] PotentialError),
    #[error(transparent)]
    Special(#[from] SpecfunError),
    #[error("normalization requires {what} > 0 (got {value})")]
    Normalization { what: &'static str, value: f64 },
    #[error("epsilon = {0} is not positive: the factorization energy is not below the level")]
    NonPositiveEpsilon(f64),
}

/// Largest integer strictly below `A`.
pub fn nu_max(a: f64) -> Result<usize, WavefuncError> {
    if !a.is_finite() || a <= 0.0 {
        return Err(WavefuncError::NonPositiveA(a));
    }
    Ok((a.ceil() - 1.0) as usize)
}

/// `E_ν = −(A−ν)²`.
pub fn gpt_energy(a: f64, nu: usize) -> Result<f64, WavefuncError> {
    let top = nu_max(a)?;
    if nu > top {
        return Err(WavefuncError::NuOutOfRange { nu, nu_max: top });
    }
    Ok(-(a - nu as f64).powi(2))
}

/// `ε_ν = E_ν − E` for the factorization energy of the given path.
pub fn epsilon(a: f64, b: f64, nu: usize, path: Path) -> Result<f64, WavefuncError> {
    let factorization_energy = -(b - 0.5 * path.sign()).powi(2);
    let eps = gpt_energy(a, nu)? - factorization_energy;
    if eps > 0.0 {
        Ok(eps)
    } else {
        Err(WavefuncError::NonPositiveEpsilon(eps))
    }
}

/// Quadrature cutoff `25 / (A − ν_max)` for integrals of bound states,
/// capped where `cosh x` still fits in a double.
pub fn quadrature_cutoff(a: f64) -> Result<f64, WavefuncError> {
    let decay = a - nu_max(a)? as f64;
    Ok((25.0 / decay).min(MAX_X))
}

// Beyond this, z^nu times the exponentially small envelope under/overflows.
const MAX_X: f64 = 300.0;

/// `ln(cosh x − 1)` and `ln(cosh x + 1)`, stable for small and large x.
fn ln_z_shifts(x: f64) -> (f64, f64) {
    let t = 0.5 * x;
    let (ln_sinh, ln_cosh) = if t > 1.0 {
        let e = (-2.0 * t).exp();
        let base = t - std::f64::consts::LN_2;
        (base + (-e).ln_1p(), base + e.ln_1p())
    } else {
        (t.sinh().ln(), t.cosh().ln())
    };
    let ln2 = std::f64::consts::LN_2;
    (ln2 + 2.0 * ln_sinh, ln2 + 2.0 * ln_cosh)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Conventional,
    Extended,
}

/// A bound state: quantum number, energy, and the closed-form wavefunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenpair {
    pub nu: usize,
    pub energy: f64,
    a: f64,
    b: f64,
    kind: Kind,
    norm: f64,
}

impl Eigenpair {
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    fn jacobi_params(&self) -> (f64, f64) {
        (self.b - self.a - 0.5, -self.b - self.a - 0.5)
    }

    /// `(z−1)^{(B−A)/2} (z+1)^{−(B+A)/2}` and its logarithmic x-derivative.
    fn envelope(&self, x: f64) -> (f64, f64) {
        let (ln_m, ln_p) = ln_z_shifts(x);
        let up = 0.5 * (self.b - self.a);
        let down = 0.5 * (self.b + self.a);
        let t = 0.5 * x;
        let env = (up * ln_m - down * ln_p).exp();
        let dlog = up / t.tanh() - down * t.tanh();
        (env, dlog)
    }

    /// ψ(x); zero at and to the left of the origin.
    pub fn psi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let (alpha, beta) = self.jacobi_params();
        let z = x.cosh();
        let (env, _) = self.envelope(x);
        match self.kind {
            Kind::Conventional => self.norm * env * jacobi_eval(self.nu, alpha, beta, z),
            Kind::Extended => {
                let d = 2.0 * self.b * z - 2.0 * self.a - 1.0;
                // parameters were validated on construction
                let p = phat_eval(self.nu, alpha, beta, z).unwrap_or(f64::NAN);
                self.norm * env * p / d
            }
        }
    }

    /// Analytic dψ/dx.
    pub fn dpsi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let (alpha, beta) = self.jacobi_params();
        let (sh, z) = (x.sinh(), x.cosh());
        let (env, dlog) = self.envelope(x);
        match self.kind {
            Kind::Conventional => {
                let p = jacobi_eval(self.nu, alpha, beta, z);
                let dp = jacobi_deriv(self.nu, alpha, beta, z);
                self.norm * env * (dlog * p + sh * dp)
            }
            Kind::Extended => {
                let d = 2.0 * self.b * z - 2.0 * self.a - 1.0;
                let p = phat_eval(self.nu, alpha, beta, z).unwrap_or(f64::NAN);
                let dp = phat_deriv(self.nu, alpha, beta, z).unwrap_or(f64::NAN);
                let dlog_d = 2.0 * self.b * sh / d;
                self.norm * env / d * ((dlog - dlog_d) * p + sh * dp)
            }
        }
    }
}

fn check_gpt(params: &FamilyParams, nu: usize) -> Result<ParamClass, WavefuncError> {
    let report = validate_params(params);
    if let ParamClass::Invalid(reason) = report.class {
        return Err(PotentialError::InvalidParams {
            family: params.family,
            reason,
        }
        .into());
    }
    let top = nu_max(params.a)?;
    if nu > top {
        return Err(WavefuncError::NuOutOfRange { nu, nu_max: top });
    }
    Ok(report.class)
}

/// `ln 𝒩_ν^{(A,B)}`.
fn ln_gpt_norm(a: f64, b: f64, nu: usize) -> Result<f64, WavefuncError> {
    let nu_f = nu as f64;
    let two_a_minus = 2.0 * a - 2.0 * nu_f;
    if two_a_minus <= 0.0 {
        return Err(WavefuncError::Normalization {
            what: "2A - 2nu",
            value: two_a_minus,
        });
    }
    let inner = ln_gamma(nu_f + 1.0)? + two_a_minus.ln() + ln_gamma(b + a - nu_f + 0.5)?
        - ln_gamma(b - a + nu_f + 0.5)?
        - ln_gamma(2.0 * a - nu_f + 1.0)?;
    Ok(a * std::f64::consts::LN_2 + 0.5 * inner)
}

/// Bound state `ψ_ν^{(A,B)}` of the conventional GPT potential.
pub fn gpt_wavefunction(a: f64, b: f64, nu: usize) -> Result<Eigenpair, WavefuncError> {
    check_gpt(&FamilyParams::new(Family::Gpt, a, b), nu)?;
    Ok(Eigenpair {
        nu,
        energy: gpt_energy(a, nu)?,
        a,
        b,
        kind: Kind::Conventional,
        norm: ln_gpt_norm(a, b, nu)?.exp(),
    })
}

/// Bound state `ψ_ν^{(−)}` of the extended GPT potential, with
/// `𝒩_ν^{(−)} = −4B [(B−A+ν−½)/(B+A−ν−½)]^{1/2} 𝒩_ν^{(A,B+1)}`.
pub fn ext_wavefunction(a: f64, b: f64, nu: usize) -> Result<Eigenpair, WavefuncError> {
    let class = check_gpt(&FamilyParams::new(Family::GptExt, a, b), nu)?;
    if class == ParamClass::ConventionalEquivalent {
        return Err(WavefuncError::Normalization {
            what: "B - A - 1/2",
            value: b - a - 0.5,
        });
    }
    let nu_f = nu as f64;
    let num = b - a + nu_f - 0.5;
    let den = b + a - nu_f - 0.5;
    if num <= 0.0 || den <= 0.0 {
        return Err(WavefuncError::Normalization {
            what: "B - A + nu - 1/2 and B + A - nu - 1/2",
            value: num.min(den),
        });
    }
    let norm = -4.0 * b * (num / den).sqrt() * ln_gpt_norm(a, b + 1.0, nu)?.exp();
    Ok(Eigenpair {
        nu,
        energy: gpt_energy(a, nu)?,
        a,
        b,
        kind: Kind::Extended,
        norm,
    })
}

/// All bound states of the conventional (`ext == false`) or extended potential.
pub fn bound_states(a: f64, b: f64, ext: bool) -> Result<Vec<Eigenpair>, WavefuncError> {
    (0..=nu_max(a)?)
        .map(|nu| {
            if ext {
                ext_wavefunction(a, b, nu)
            } else {
                gpt_wavefunction(a, b, nu)
            }
        })
        .collect()
}
