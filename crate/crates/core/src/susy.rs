//! First- and second-order SUSY operator algebra for the GPT family.
//!
//! `Â = d/dx + W` and `Â† = −d/dx + W`; the second-order intertwiner is
//! `𝒜 = d²/dx² + 2p d/dx + 2p′ + q` with `𝒜 = ÂB̂`, `𝒜† = B̂†Â†`.

use thiserror::Error;

use crate::potentials::{
    gpt, gpt_ext, superpotential, tilde_superpotential, validate_params, FactorizationScheme,
    Family, FamilyParams, ParamClass, Path, PotentialError,
};
use crate::specfun::{jacobi_deriv, jacobi_eval};
use crate::wavefuncs::{epsilon, ext_wavefunction, gpt_wavefunction, WavefuncError};

/// Below this |p| the q-constraint is not evaluated.
pub const P_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SusyError {
    #[error(transparent)]
    Params(#[from] PotentialError),
    #[error(transparent)]
    Wavefunction(#[from] WavefuncError),
    #[error("second-order data is only available for the GPT family, not {0}")]
    NotGpt(Family),
    #[error("p({x}) = {p:e} is too close to zero to evaluate q")]
    VanishingP { x: f64, p: f64 },
}

/// Value and first two derivatives of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub f: f64,
    pub df: f64,
    pub d2f: f64,
}

impl Jet {
    pub fn new(f: f64, df: f64, d2f: f64) -> Self {
        Self { f, df, d2f }
    }
}

/// `exp(−(x−c)²/(2σ²))` with analytic derivatives of any order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBump {
    pub center: f64,
    pub width: f64,
}

impl GaussianBump {
    pub fn new(center: f64, width: f64) -> Self {
        Self { center, width }
    }

    /// n-th derivative: `(−1/σ)ⁿ Heₙ(t) e^{−t²/2}`, `t = (x−c)/σ`.
    pub fn derivative(&self, order: usize, x: f64) -> f64 {
        let t = (x - self.center) / self.width;
        let (mut prev, mut he) = (0.0, 1.0);
        for k in 0..order {
            let next = t * he - k as f64 * prev;
            prev = he;
            he = next;
        }
        (-1.0 / self.width).powi(order as i32) * he * (-0.5 * t * t).exp()
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    pub fn jet(&self, x: f64) -> Jet {
        Jet::new(
            self.derivative(0, x),
            self.derivative(1, x),
            self.derivative(2, x),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `d/dx + W`
    Annihilate,
    /// `−d/dx + W`
    Create,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Annihilate => 1.0,
            Direction::Create => -1.0,
        }
    }
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// A first-order operator `±d/dx + W` with real `W`.
pub struct FirstOrderOp {
    w: RealFn,
    w_prime: RealFn,
    pub direction: Direction,
}

impl std::fmt::Debug for FirstOrderOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FirstOrderOp")
            .field("direction", &self.direction)
            .finish_non_exhaustive()
    }
}

impl FirstOrderOp {
    pub fn new(
        w: impl Fn(f64) -> f64 + Send + Sync + 'static,
        w_prime: impl Fn(f64) -> f64 + Send + Sync + 'static,
        direction: Direction,
    ) -> Self {
        Self {
            w: Box::new(w),
            w_prime: Box::new(w_prime),
            direction,
        }
    }

    /// Uses the real part of the scheme's superpotential.
    pub fn from_scheme(scheme: FactorizationScheme, direction: Direction) -> Self {
        Self::new(
            move |x| scheme.w_re(x),
            move |x| scheme.w_prime_re(x),
            direction,
        )
    }

    pub fn w(&self, x: f64) -> f64 {
        (self.w)(x)
    }

    pub fn w_prime(&self, x: f64) -> f64 {
        (self.w_prime)(x)
    }

    /// Value and derivative of the result; needs `f″`.
    pub fn apply_jet(&self, jet: Jet, x: f64) -> (f64, f64) {
        let s = self.direction.sign();
        let w = self.w(x);
        let value = s * jet.df + w * jet.f;
        let slope = s * jet.d2f + self.w_prime(x) * jet.f + w * jet.df;
        (value, slope)
    }
}

/// `±f′(x) + W(x) f(x)`.
pub fn apply_first_order(op: &FirstOrderOp, jet: Jet, x: f64) -> f64 {
    op.direction.sign() * jet.df + op.w(x) * jet.f
}

/// `outer(inner f)` at `x`.
pub fn compose_first_order(outer: &FirstOrderOp, inner: &FirstOrderOp, jet: Jet, x: f64) -> f64 {
    let (value, slope) = inner.apply_jet(jet, x);
    outer.direction.sign() * slope + outer.w(x) * value
}

/// `𝒪_z = [β+α − (β−α)z]((z−1) d/dz + α + 1) + (β−α)(z−1)` applied to
/// `P_ν^{(α+1, β−1)}`.
pub fn apply_o(alpha: f64, beta: f64, nu: usize, z: f64) -> f64 {
    let p = jacobi_eval(nu, alpha + 1.0, beta - 1.0, z);
    let dp = jacobi_deriv(nu, alpha + 1.0, beta - 1.0, z);
    let front = beta + alpha - (beta - alpha) * z;
    front * ((z - 1.0) * dp + (alpha + 1.0) * p) + (beta - alpha) * (z - 1.0) * p
}

/// Second-order SUSY data for GPT on one decomposition path.
///
/// `p = ½(W + W̃) = −B sinh x/(2B cosh x − 2A − 1)` is path independent;
/// `c̄ = Ẽ − E = ∓2B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsusyData {
    pub a: f64,
    pub b: f64,
    pub cbar: f64,
    pub path: Path,
    pub scheme: FactorizationScheme,
    pub tilde: FactorizationScheme,
}

pub fn ssusy_data(params: &FamilyParams, path: Path) -> Result<SsusyData, SusyError> {
    if !params.family.is_gpt() {
        return Err(SusyError::NotGpt(params.family));
    }
    let base = params.with_family(Family::Gpt);
    if let ParamClass::Invalid(reason) = validate_params(&base).class {
        return Err(PotentialError::InvalidParams {
            family: base.family,
            reason,
        }
        .into());
    }
    let scheme = superpotential(&base, path)?;
    let tilde = tilde_superpotential(&base, path)?;
    Ok(SsusyData {
        a: params.a,
        b: params.b,
        cbar: -2.0 * params.b * path.sign(),
        path,
        scheme,
        tilde,
    })
}

impl SsusyData {
    fn denominator(&self, x: f64) -> f64 {
        2.0 * self.b * x.cosh() - 2.0 * self.a - 1.0
    }

    pub fn p(&self, x: f64) -> f64 {
        -self.b * x.sinh() / self.denominator(x)
    }

    pub fn p_prime(&self, x: f64) -> f64 {
        let d = self.denominator(x);
        let k = 2.0 * self.a + 1.0;
        -self.b * (2.0 * self.b - k * x.cosh()) / (d * d)
    }

    pub fn p_second(&self, x: f64) -> f64 {
        let d = self.denominator(x);
        let k = 2.0 * self.a + 1.0;
        let b = self.b;
        b * x.sinh() * (8.0 * b * b - k * k - 2.0 * b * k * x.cosh()) / (d * d * d)
    }

    fn checked_p(&self, x: f64) -> Result<f64, SusyError> {
        let p = self.p(x);
        if p.abs() <= P_FLOOR {
            return Err(SusyError::VanishingP { x, p });
        }
        Ok(p)
    }

    /// `p² + p″/2p − (p′/2p)² + c̄²/16p²`, shared by `q` and `V^{(1,2)}`.
    fn constraint_core(&self, x: f64) -> Result<f64, SusyError> {
        let p = self.checked_p(x)?;
        let r = self.p_prime(x) / (2.0 * p);
        Ok(p * p + self.p_second(x) / (2.0 * p) - r * r + self.cbar * self.cbar / (16.0 * p * p))
    }

    /// `q = −p′ + p² − p″/2p + (p′/2p)² − c̄²/16p²`.
    pub fn q(&self, x: f64) -> Result<f64, SusyError> {
        let p = self.checked_p(x)?;
        let r = self.p_prime(x) / (2.0 * p);
        Ok(
            -self.p_prime(x) + p * p - self.p_second(x) / (2.0 * p) + r * r
                - self.cbar * self.cbar / (16.0 * p * p),
        )
    }

    /// `V^{(1)} = −2p′ + …`, the potential of `h^{(1)}`.
    pub fn v1(&self, x: f64) -> Result<f64, SusyError> {
        Ok(-2.0 * self.p_prime(x) + self.constraint_core(x)?)
    }

    /// `V^{(2)} = +2p′ + …`, the potential of `h^{(2)}`.
    pub fn v2(&self, x: f64) -> Result<f64, SusyError> {
        Ok(2.0 * self.p_prime(x) + self.constraint_core(x)?)
    }

    /// `V_{A,B} − Ẽ + c̄/2`, from the conventional potential.
    pub fn h1_potential(&self, x: f64) -> f64 {
        gpt(self.a, self.b, x) - self.tilde.energy + 0.5 * self.cbar
    }

    /// `V_{A,B,ext} − E − c̄/2`, from the extended potential.
    pub fn h2_potential(&self, x: f64) -> f64 {
        gpt_ext(self.a, self.b, x) - self.scheme.energy - 0.5 * self.cbar
    }

    /// Potential of the intermediate Hamiltonian, `V_{A,B±1} − Ẽ + c̄/2`.
    pub fn intermediate_potential(&self, x: f64) -> f64 {
        gpt(self.a, self.b + self.path.sign(), x) - self.tilde.energy + 0.5 * self.cbar
    }

    /// `Â = d/dx + W`.
    pub fn a_hat(&self) -> FirstOrderOp {
        FirstOrderOp::from_scheme(self.scheme, Direction::Annihilate)
    }

    /// `B̂ = d/dx + W̃`.
    pub fn b_hat(&self) -> FirstOrderOp {
        FirstOrderOp::from_scheme(self.tilde, Direction::Annihilate)
    }

    pub fn a_hat_dagger(&self) -> FirstOrderOp {
        FirstOrderOp::from_scheme(self.scheme, Direction::Create)
    }

    pub fn b_hat_dagger(&self) -> FirstOrderOp {
        FirstOrderOp::from_scheme(self.tilde, Direction::Create)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondOrder {
    /// `𝒜 = d²/dx² + 2p d/dx + 2p′ + q`
    Intertwiner,
    /// `𝒜† = d²/dx² − 2p d/dx + q`
    Adjoint,
}

pub fn apply_second_order(
    data: &SsusyData,
    op: SecondOrder,
    jet: Jet,
    x: f64,
) -> Result<f64, SusyError> {
    let p = data.p(x);
    let q = data.q(x)?;
    Ok(match op {
        SecondOrder::Intertwiner => {
            jet.d2f + 2.0 * p * jet.df + (2.0 * data.p_prime(x) + q) * jet.f
        }
        SecondOrder::Adjoint => jet.d2f - 2.0 * p * jet.df + q * jet.f,
    })
}

/// `(𝒜 h^{(1)} − h^{(2)} 𝒜) f` at `x`. The bump's own derivatives are
/// analytic; the derivatives of `h^{(1)} f` and `𝒜 f` use 5-point differences
/// with spacing `step`.
pub fn intertwining_defect(
    data: &SsusyData,
    bump: &GaussianBump,
    x: f64,
    step: f64,
) -> Result<f64, SusyError> {
    let h1_f = |t: f64| -bump.derivative(2, t) + data.h1_potential(t) * bump.value(t);
    let a_f = |t: f64| apply_second_order(data, SecondOrder::Intertwiner, bump.jet(t), t);

    let stencil = |g: &dyn Fn(f64) -> Result<f64, SusyError>| -> Result<Jet, SusyError> {
        let h = step;
        let v = [
            g(x - 2.0 * h)?,
            g(x - h)?,
            g(x)?,
            g(x + h)?,
            g(x + 2.0 * h)?,
        ];
        Ok(Jet::new(
            v[2],
            (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h),
            (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h),
        ))
    };

    let g = stencil(&|t| Ok(h1_f(t)))?;
    let left = apply_second_order(data, SecondOrder::Intertwiner, g, x)?;
    let af = stencil(&a_f)?;
    let right = -af.d2f + data.h2_potential(x) * af.f;
    Ok(left - right)
}

/// `ψ_ν^{(−)}` rebuilt from the shape-invariant partner:
/// `±ε_ν^{−1/2} Â ψ_ν^{(A,B±1)}`, with the sign matching the closed form.
pub fn intertwined_state(a: f64, b: f64, nu: usize, path: Path, x: f64) -> Result<f64, SusyError> {
    let params = FamilyParams::new(Family::Gpt, a, b);
    let scheme = superpotential(&params, path)?;
    let partner = gpt_wavefunction(a, b + path.sign(), nu)?;
    let eps = epsilon(a, b, nu, path)?;
    let op = FirstOrderOp::from_scheme(scheme, Direction::Annihilate);
    let jet = Jet::new(partner.psi(x), partner.dpsi(x), 0.0);
    Ok(path.sign() * apply_first_order(&op, jet, x) / eps.sqrt())
}

/// Largest deviation between [`intertwined_state`] and the closed-form
/// extended wavefunction over `xs`.
pub fn reconstruction_error(
    a: f64,
    b: f64,
    nu: usize,
    path: Path,
    xs: &[f64],
) -> Result<f64, SusyError> {
    let closed = ext_wavefunction(a, b, nu)?;
    xs.iter().try_fold(0.0_f64, |m, &x| {
        Ok(m.max((intertwined_state(a, b, nu, path, x)? - closed.psi(x)).abs()))
    })
}
