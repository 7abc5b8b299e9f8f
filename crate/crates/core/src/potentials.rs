//! Potential families, superpotentials and SUSY partner construction.
//!
//! Conventions: the Schrödinger operator is `−d²/dx² + V(x)`. A factorization
//! scheme `(W, E)` generates the partner pair `V^{(±)} = W² ∓ W′ + E`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::wavefuncs::nu_max;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: Family, reason: String },
    #[error("x = {x} lies outside the domain {domain}")]
    OutsideDomain { x: f64, domain: DomainKind },
    #[error("potential has a pole at x = {x}")]
    Pole { x: f64 },
    #[error("{0} admits no pole-free rational extension")]
    NoPoleFreeExtension(Family),
    #[error("{what} is not defined for {family}")]
    Unsupported { family: Family, what: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Gpt,
    GptExt,
    Scarf1,
    Scarf1Ext,
    Scarf2,
    PtScarf2,
    PtScarf2ExtI,
    PtScarf2ExtII,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Gpt,
        Family::GptExt,
        Family::Scarf1,
        Family::Scarf1Ext,
        Family::Scarf2,
        Family::PtScarf2,
        Family::PtScarf2ExtI,
        Family::PtScarf2ExtII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gpt => "gpt",
            Family::GptExt => "gpt-ext",
            Family::Scarf1 => "scarf1",
            Family::Scarf1Ext => "scarf1-ext",
            Family::Scarf2 => "scarf2",
            Family::PtScarf2 => "pt-scarf2",
            Family::PtScarf2ExtI => "pt-scarf2-ext-i",
            Family::PtScarf2ExtII => "pt-scarf2-ext-ii",
        }
    }

    pub fn domain(self) -> DomainDescriptor {
        let kind = match self {
            Family::Gpt | Family::GptExt => DomainKind::HalfLine,
            Family::Scarf1 | Family::Scarf1Ext => DomainKind::SCARF1,
            _ => DomainKind::RealLine,
        };
        DomainDescriptor {
            kind,
            complex_valued: self.is_pt(),
        }
    }

    pub fn is_pt(self) -> bool {
        matches!(
            self,
            Family::PtScarf2 | Family::PtScarf2ExtI | Family::PtScarf2ExtII
        )
    }

    pub fn is_gpt(self) -> bool {
        matches!(self, Family::Gpt | Family::GptExt)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DomainKind {
    /// 0 < x < ∞
    HalfLine,
    /// lo < x < hi
    OpenInterval { lo: f64, hi: f64 },
    /// −∞ < x < ∞
    RealLine,
}

impl DomainKind {
    pub const SCARF1: DomainKind = DomainKind::OpenInterval {
        lo: -FRAC_PI_2,
        hi: FRAC_PI_2,
    };

    pub fn contains(&self, x: f64) -> bool {
        match *self {
            DomainKind::HalfLine => x > 0.0 && x.is_finite(),
            DomainKind::OpenInterval { lo, hi } => x > lo && x < hi,
            DomainKind::RealLine => x.is_finite(),
        }
    }

    /// Domain bounds, infinite where unbounded.
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            DomainKind::HalfLine => (0.0, f64::INFINITY),
            DomainKind::OpenInterval { lo, hi } => (lo, hi),
            DomainKind::RealLine => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainKind::HalfLine => write!(f, "(0, inf)"),
            DomainKind::OpenInterval { lo, hi } => write!(f, "({lo}, {hi})"),
            DomainKind::RealLine => write!(f, "(-inf, inf)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainDescriptor {
    pub kind: DomainKind,
    pub complex_valued: bool,
}

impl DomainDescriptor {
    pub fn real(kind: DomainKind) -> Self {
        Self {
            kind,
            complex_valued: false,
        }
    }
}

/// A family tag with its couplings `A`, `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: Family,
    pub a: f64,
    pub b: f64,
}

impl FamilyParams {
    pub fn new(family: Family, a: f64, b: f64) -> Self {
        Self { family, a, b }
    }

    pub fn with_family(self, family: Family) -> Self {
        Self { family, ..self }
    }

    fn invalid(&self, reason: impl Into<String>) -> PotentialError {
        PotentialError::InvalidParams {
            family: self.family,
            reason: reason.into(),
        }
    }

    /// Validated pointwise evaluator for this family.
    pub fn potential(&self) -> Result<FamilyPotential, PotentialError> {
        let report = validate_params(self);
        if let ParamClass::Invalid(reason) = report.class {
            return Err(self.invalid(reason));
        }
        let extension = match self.family {
            Family::Scarf1Ext => Some(partner_from_scheme(
                superpotential(self, Path::Upper)?,
                PartnerSign::Minus,
            )),
            _ => None,
        };
        Ok(FamilyPotential {
            params: *self,
            extension,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamClass {
    /// The range in which the conventional potential is repulsive at the origin.
    Primary,
    /// Weakly attractive at the origin; the most regular solutions are kept.
    WeakAttraction,
    /// `B = A + ½` for the extended GPT potential, which then coincides with
    /// the conventional `V_{A−1, A+3/2}`.
    ConventionalEquivalent,
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub class: ParamClass,
    /// Largest bound-state quantum number of the (first) energy series.
    pub nu_max: Option<usize>,
    /// Largest quantum number of the second real series, `−(B−½−ν)²`, of the
    /// PT-symmetric Scarf II family (present only when `B − ½ > 0`).
    pub second_series_nu_max: Option<usize>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        !matches!(self.class, ParamClass::Invalid(_))
    }
}

const EQUIVALENCE_EPS: f64 = 1e-12;

/// Classifies `(A, B)` for the requested family.
pub fn validate_params(params: &FamilyParams) -> ValidityReport {
    let (a, b) = (params.a, params.b);
    let invalid = |reason: String| ValidityReport {
        class: ParamClass::Invalid(reason),
        nu_max: None,
        second_series_nu_max: None,
    };
    if !a.is_finite() || !b.is_finite() {
        return invalid("A and B must be finite".into());
    }
    match params.family {
        Family::Gpt | Family::GptExt => {
            if a <= 0.0 {
                return invalid(format!("requires A > 0 (got A = {a})"));
            }
            let ext = params.family == Family::GptExt;
            let class = if b > a + 1.0 {
                ParamClass::Primary
            } else if ext && (b - a - 0.5).abs() <= EQUIVALENCE_EPS {
                if a > 1.0 {
                    ParamClass::ConventionalEquivalent
                } else {
                    return invalid(format!("B = A + 1/2 requires A > 1 (got A = {a})"));
                }
            } else if b <= a + 1.0 && (b > a + 0.5 || (!ext && b > a)) {
                ParamClass::WeakAttraction
            } else {
                let need = if ext {
                    "B > A + 1 > 1, or A + 1 >= B > A + 1/2 (pole-free extension)"
                } else {
                    "B > A + 1 > 1, or the weak-attraction range A + 1 >= B > A"
                };
                return invalid(format!("requires {need} (got A = {a}, B = {b})"));
            };
            let nu = if class == ParamClass::ConventionalEquivalent {
                nu_max(a - 1.0).ok()
            } else {
                nu_max(a).ok()
            };
            ValidityReport {
                class,
                nu_max: nu,
                second_series_nu_max: None,
            }
        }
        Family::Scarf1 | Family::Scarf1Ext => {
            if b > 0.0 && b < a - 1.0 {
                ValidityReport {
                    class: ParamClass::Primary,
                    nu_max: None,
                    second_series_nu_max: None,
                }
            } else {
                invalid(format!("requires 0 < B < A - 1 (got A = {a}, B = {b})"))
            }
        }
        Family::Scarf2 | Family::PtScarf2 | Family::PtScarf2ExtI | Family::PtScarf2ExtII => {
            if a <= 0.0 {
                return invalid(format!("requires A > 0 (got A = {a})"));
            }
            let ext = matches!(params.family, Family::PtScarf2ExtI | Family::PtScarf2ExtII);
            if ext && b == 0.0 {
                return invalid("the extension requires B != 0".into());
            }
            if params.family == Family::PtScarf2ExtII && b <= 0.5 {
                return invalid(format!(
                    "the permuted extension requires B > 1/2 (got B = {b})"
                ));
            }
            let second = if params.family.is_pt() && b > 0.5 {
                nu_max(b - 0.5).ok()
            } else {
                None
            };
            ValidityReport {
                class: ParamClass::Primary,
                nu_max: nu_max(a).ok(),
                second_series_nu_max: second,
            }
        }
    }
}

/// A pointwise potential evaluator on a fixed domain.
pub trait Potential: Send + Sync {
    fn domain(&self) -> DomainDescriptor;

    /// Unchecked evaluation of the closed form.
    fn value(&self, x: f64) -> Complex64;

    fn value_checked(&self, x: f64) -> Result<Complex64, PotentialError> {
        let domain = self.domain();
        if !domain.kind.contains(x) {
            return Err(PotentialError::OutsideDomain {
                x,
                domain: domain.kind,
            });
        }
        let v = self.value(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(PotentialError::Pole { x })
        }
    }
}

/// Closed-form evaluator for one of the named families.
#[derive(Clone)]
pub struct FamilyPotential {
    params: FamilyParams,
    // Scarf I has no closed-form extension; it is produced by the partner builder.
    extension: Option<PartnerPotential>,
}

impl fmt::Debug for FamilyPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FamilyPotential")
            .field("params", &self.params)
            .finish()
    }
}

impl FamilyPotential {
    pub fn params(&self) -> FamilyParams {
        self.params
    }
}

impl Potential for FamilyPotential {
    fn domain(&self) -> DomainDescriptor {
        self.params.family.domain()
    }

    fn value(&self, x: f64) -> Complex64 {
        let (a, b) = (self.params.a, self.params.b);
        let real = |v: f64| Complex64::new(v, 0.0);
        match self.params.family {
            Family::Gpt => real(gpt(a, b, x)),
            Family::GptExt => real(gpt_ext(a, b, x)),
            Family::Scarf1 => real(scarf1(a, b, x)),
            Family::Scarf1Ext => self
                .extension
                .as_ref()
                .map(|p| p.value(x))
                .unwrap_or(Complex64::new(f64::NAN, f64::NAN)),
            Family::Scarf2 => real(scarf2(a, b, x)),
            Family::PtScarf2 => pt_scarf2(a, b, x),
            Family::PtScarf2ExtI => pt_scarf2_ext(a, b, x),
            Family::PtScarf2ExtII => pt_scarf2_ext(b - 0.5, a + 0.5, x),
        }
    }
}

/// Checked evaluation of `V(x)` for a family.
pub fn potential_eval(params: &FamilyParams, x: f64) -> Result<Complex64, PotentialError> {
    params.potential()?.value_checked(x)
}

/// `V_{A,B}(x) = [B² + A(A+1)] csch²x − B(2A+1) csch x coth x`.
pub fn gpt(a: f64, b: f64, x: f64) -> f64 {
    let csch = 1.0 / x.sinh();
    let coth = 1.0 / x.tanh();
    (b * b + a * (a + 1.0)) * csch * csch - b * (2.0 * a + 1.0) * csch * coth
}

/// `2B cosh x − 2A − 1`, positive on the half-line whenever `B ≥ A + ½`.
pub fn gpt_ext_denominator(a: f64, b: f64, x: f64) -> f64 {
    2.0 * b * x.cosh() - 2.0 * a - 1.0
}

pub fn gpt_ext(a: f64, b: f64, x: f64) -> f64 {
    let d = gpt_ext_denominator(a, b, x);
    let s = 2.0 * a + 1.0;
    gpt(a, b, x) + 2.0 * s / d - 2.0 * (4.0 * b * b - s * s) / (d * d)
}

/// `V_{A,B}(x) = [A(A−1) + B²] sec²x − B(2A−1) sec x tan x` on (−π/2, π/2).
pub fn scarf1(a: f64, b: f64, x: f64) -> f64 {
    let sec = 1.0 / x.cos();
    (a * (a - 1.0) + b * b) * sec * sec - b * (2.0 * a - 1.0) * sec * x.tan()
}

/// Hyperbolic Scarf II, `[B² − A(A+1)] sech²x + B(2A+1) sech x tanh x`.
pub fn scarf2(a: f64, b: f64, x: f64) -> f64 {
    let sech = 1.0 / x.cosh();
    (b * b - a * (a + 1.0)) * sech * sech + b * (2.0 * a + 1.0) * sech * x.tanh()
}

/// Scarf II with `B → iB`.
pub fn pt_scarf2(a: f64, b: f64, x: f64) -> Complex64 {
    let sech = 1.0 / x.cosh();
    Complex64::new(
        -(b * b + a * (a + 1.0)) * sech * sech,
        b * (2.0 * a + 1.0) * sech * x.tanh(),
    )
}

/// `2A + 1 − 2iB sinh x`; its modulus never drops below `2A + 1`.
pub fn pt_denominator(a: f64, b: f64, x: f64) -> Complex64 {
    Complex64::new(2.0 * a + 1.0, -2.0 * b * x.sinh())
}

fn pt_scarf2_ext(a: f64, b: f64, x: f64) -> Complex64 {
    let d = pt_denominator(a, b, x);
    let s = 2.0 * a + 1.0;
    pt_scarf2(a, b, x) - 2.0 * s / d + 2.0 * (s * s - 4.0 * b * b) / (d * d)
}

/// The two real energy series of the PT-symmetric Scarf II potential.
#[derive(Debug, Clone, PartialEq)]
pub struct PtSpectrum {
    /// `−(A−ν)²`, `ν < A`
    pub first: Vec<f64>,
    /// `−(B−½−ν)²`, `ν < B−½`
    pub second: Vec<f64>,
}

pub fn pt_scarf2_energy_series(a: f64, b: f64) -> PtSpectrum {
    let series = |c: f64| -> Vec<f64> {
        match nu_max(c) {
            Ok(top) => (0..=top).map(|nu| -(c - nu as f64).powi(2)).collect(),
            Err(_) => Vec::new(),
        }
    };
    PtSpectrum {
        first: series(a),
        second: series(b - 0.5),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    /// Starts from the conventional potential with `B + 1`.
    Upper,
    /// Starts from the conventional potential with `B − 1`.
    Lower,
}

impl Path {
    pub const BOTH: [Path; 2] = [Path::Upper, Path::Lower];

    /// `+1` for the upper path, `−1` for the lower one.
    pub fn sign(self) -> f64 {
        match self {
            Path::Upper => 1.0,
            Path::Lower => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Path::Upper => "upper",
            Path::Lower => "lower",
        }
    }
}

impl FromStr for Path {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "upper" => Ok(Path::Upper),
            "lower" => Ok(Path::Lower),
            _ => Err(format!("unknown path '{s}' (expected upper or lower)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartnerSign {
    /// `W² − W′ + E`
    Plus,
    /// `W² + W′ + E`
    Minus,
}

/// Closed-form superpotentials. The optional `shift` is the constant `c` of
/// the rational term; `None` drops that term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Superpotential {
    /// `a coth x + b csch x − sinh x / (cosh x + c)`
    Hyperbolic { a: f64, b: f64, shift: Option<f64> },
    /// `a tan x + b sec x − cos x / (sin x + c)`
    Trigonometric { a: f64, b: f64, shift: Option<f64> },
    /// `a tanh x + b sech x − i cosh x / (i sinh x + c)`
    PtHyperbolic {
        a: Complex64,
        b: Complex64,
        shift: Option<f64>,
    },
}

impl Superpotential {
    pub fn value(&self, x: f64) -> Complex64 {
        match *self {
            Superpotential::Hyperbolic { a, b, shift } => {
                let (sh, ch) = (x.sinh(), x.cosh());
                let mut w = (a * ch + b) / sh;
                if let Some(c) = shift {
                    w -= sh / (ch + c);
                }
                w.into()
            }
            Superpotential::Trigonometric { a, b, shift } => {
                let (s, c0) = x.sin_cos();
                let mut w = (a * s + b) / c0;
                if let Some(c) = shift {
                    w -= c0 / (s + c);
                }
                w.into()
            }
            Superpotential::PtHyperbolic { a, b, shift } => {
                let (sh, ch) = (x.sinh(), x.cosh());
                let mut w = (a * sh + b) / ch;
                if let Some(c) = shift {
                    let i = Complex64::i();
                    w -= i * ch / (i * sh + c);
                }
                w
            }
        }
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        match *self {
            Superpotential::Hyperbolic { a, b, shift } => {
                let (sh, ch) = (x.sinh(), x.cosh());
                let csch = 1.0 / sh;
                let mut d = -a * csch * csch - b * csch * ch / sh;
                if let Some(c) = shift {
                    let u = ch + c;
                    d -= (1.0 + c * ch) / (u * u);
                }
                d.into()
            }
            Superpotential::Trigonometric { a, b, shift } => {
                let (s, c0) = x.sin_cos();
                let sec = 1.0 / c0;
                let mut d = a * sec * sec + b * sec * s / c0;
                if let Some(c) = shift {
                    let u = s + c;
                    d += (1.0 + c * s) / (u * u);
                }
                d.into()
            }
            Superpotential::PtHyperbolic { a, b, shift } => {
                let (sh, ch) = (x.sinh(), x.cosh());
                let sech = 1.0 / ch;
                let mut d = a * sech * sech - b * sech * sh / ch;
                if let Some(c) = shift {
                    let i = Complex64::i();
                    let u = i * sh + c;
                    d -= (1.0 + i * c * sh) / (u * u);
                }
                d
            }
        }
    }

    /// The same ansatz without its rational term, negated.
    fn negated_conventional(&self) -> Superpotential {
        match *self {
            Superpotential::Hyperbolic { a, b, .. } => Superpotential::Hyperbolic {
                a: -a,
                b: -b,
                shift: None,
            },
            Superpotential::Trigonometric { a, b, .. } => Superpotential::Trigonometric {
                a: -a,
                b: -b,
                shift: None,
            },
            Superpotential::PtHyperbolic { a, b, .. } => Superpotential::PtHyperbolic {
                a: -a,
                b: -b,
                shift: None,
            },
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, Superpotential::PtHyperbolic { .. })
    }
}

/// A superpotential, its factorization energy, and the path it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationScheme {
    pub superpotential: Superpotential,
    pub energy: f64,
    pub path: Path,
    pub domain: DomainDescriptor,
}

impl FactorizationScheme {
    pub fn w(&self, x: f64) -> Complex64 {
        self.superpotential.value(x)
    }

    pub fn w_prime(&self, x: f64) -> Complex64 {
        self.superpotential.derivative(x)
    }

    /// Real part of `W`; exact for the real families.
    pub fn w_re(&self, x: f64) -> f64 {
        self.w(x).re
    }

    pub fn w_prime_re(&self, x: f64) -> f64 {
        self.w_prime(x).re
    }
}

/// Superpotential producing the rational extension as its `V^{(−)}` partner.
///
/// * GPT: `W = ±(B±½) coth x ∓ (A+½) csch x − 2B sinh x/(2B cosh x − 2A − 1)`,
///   `E = −(B∓½)²`, with `V^{(+)} = V_{A,B±1}`.
/// * Scarf I: `a tan x + b sec x − cos x/(sin x + c)`, `c = −(2A−1)/(2B)`.
/// * PT Scarf II: `a tanh x + b sech x − i cosh x/(i sinh x + c)` with
///   `c = −(2A+1)/(2B)` for the first extension; the second one permutes
///   `A + ½` with `B`.
pub fn superpotential(
    params: &FamilyParams,
    path: Path,
) -> Result<FactorizationScheme, PotentialError> {
    let report = validate_params(params);
    if let ParamClass::Invalid(reason) = report.class {
        return Err(params.invalid(reason));
    }
    let (a_cpl, b_cpl) = (params.a, params.b);
    if b_cpl == 0.0 {
        return Err(params.invalid("B = 0 leaves the pole position c undefined"));
    }
    let s = path.sign();
    let domain = params.family.domain();
    let (superpotential, energy) = match params.family {
        Family::Gpt | Family::GptExt => {
            if b_cpl < a_cpl + 0.5 {
                return Err(PotentialError::NoPoleFreeExtension(params.family));
            }
            let a = s * (b_cpl + 0.5 * s);
            let b = -s * (a_cpl + 0.5);
            let c = -(2.0 * a_cpl + 1.0) / (2.0 * b_cpl);
            (
                Superpotential::Hyperbolic {
                    a,
                    b,
                    shift: Some(c),
                },
                -(a - 1.0).powi(2),
            )
        }
        Family::Scarf1 | Family::Scarf1Ext => {
            let a = -s * b_cpl - 0.5;
            let b = s * (a_cpl - 0.5);
            let c = -(2.0 * a_cpl - 1.0) / (2.0 * b_cpl);
            (
                Superpotential::Trigonometric {
                    a,
                    b,
                    shift: Some(c),
                },
                (a + 1.0).powi(2),
            )
        }
        Family::PtScarf2 | Family::PtScarf2ExtI | Family::PtScarf2ExtII => {
            // the second extension is the first with A + ½ and B interchanged
            let (a_cpl, b_cpl) = if params.family == Family::PtScarf2ExtII {
                (b_cpl - 0.5, a_cpl + 0.5)
            } else {
                (a_cpl, b_cpl)
            };
            let a = s * (b_cpl + 0.5 * s);
            let b = Complex64::new(0.0, s * (a_cpl + 0.5));
            let c = -(2.0 * a_cpl + 1.0) / (2.0 * b_cpl);
            (
                Superpotential::PtHyperbolic {
                    a: a.into(),
                    b,
                    shift: Some(c),
                },
                -(a - 1.0).powi(2),
            )
        }
        Family::Scarf2 => return Err(PotentialError::NoPoleFreeExtension(Family::Scarf2)),
    };
    Ok(FactorizationScheme {
        superpotential,
        energy,
        path,
        domain,
    })
}

/// First-step scheme `(W̃, Ẽ)` taking the conventional potential with `B`
/// to the one with `B ± 1`: `W̃²−W̃′+Ẽ = V_{A,B}`, `W̃²+W̃′+Ẽ = V_{A,B±1}`.
///
/// For GPT, `W̃ = ∓(B±½) coth x ± (A+½) csch x` and `Ẽ = −(B±½)²`.
pub fn tilde_superpotential(
    params: &FamilyParams,
    path: Path,
) -> Result<FactorizationScheme, PotentialError> {
    let scheme = superpotential(params, path)?;
    let tilde = scheme.superpotential.negated_conventional();
    // Ẽ cancels the constant left over by W̃²
    let energy = match tilde {
        Superpotential::Hyperbolic { a, .. } => -a * a,
        Superpotential::Trigonometric { a, .. } => a * a,
        Superpotential::PtHyperbolic { a, .. } => -(a * a).re,
    };
    Ok(FactorizationScheme {
        superpotential: tilde,
        energy,
        path,
        domain: scheme.domain,
    })
}

/// `x ↦ W(x)² ∓ W′(x) + E`.
#[derive(Debug, Clone, Copy)]
pub struct PartnerPotential {
    pub scheme: FactorizationScheme,
    pub sign: PartnerSign,
}

impl Potential for PartnerPotential {
    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor {
            kind: self.scheme.domain.kind,
            complex_valued: !self.scheme.superpotential.is_real(),
        }
    }

    fn value(&self, x: f64) -> Complex64 {
        let w = self.scheme.w(x);
        let dw = self.scheme.w_prime(x);
        let e = self.scheme.energy;
        match self.sign {
            PartnerSign::Plus => w * w - dw + e,
            PartnerSign::Minus => w * w + dw + e,
        }
    }
}

pub fn partner_from_scheme(scheme: FactorizationScheme, sign: PartnerSign) -> PartnerPotential {
    PartnerPotential { scheme, sign }
}

/// A potential given by an arbitrary real function.
#[derive(Clone)]
pub struct FnPotential {
    domain: DomainDescriptor,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl FnPotential {
    pub fn new(kind: DomainKind, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            domain: DomainDescriptor::real(kind),
            f: Arc::new(f),
        }
    }
}

impl Potential for FnPotential {
    fn domain(&self) -> DomainDescriptor {
        self.domain
    }

    fn value(&self, x: f64) -> Complex64 {
        (self.f)(x).into()
    }
}

/// Logarithm of the factorization function φ of the GPT scheme (`W = −φ′/φ`),
/// normalized with leading constant 1:
/// `φ ∝ (cosh x − 1)^{∓½(B−A±½−½)} (cosh x + 1)^{∓½(B+A±½+½)} (2B cosh x − 2A − 1)`.
pub fn ln_factorization_function(
    params: &FamilyParams,
    path: Path,
    x: f64,
) -> Result<f64, PotentialError> {
    if !params.family.is_gpt() {
        return Err(PotentialError::Unsupported {
            family: params.family,
            what: "the factorization function",
        });
    }
    superpotential(params, path)?;
    if !DomainKind::HalfLine.contains(x) {
        return Err(PotentialError::OutsideDomain {
            x,
            domain: DomainKind::HalfLine,
        });
    }
    let (a, b) = (params.a, params.b);
    let s = path.sign();
    let p_minus = -0.5 * s * (b - a + 0.5 * s - 0.5);
    let p_plus = -0.5 * s * (b + a + 0.5 * s + 0.5);
    // cosh x ∓ 1 via half-angle forms, accurate as x → 0
    let half = 0.5 * x;
    let ln_zm1 = (2.0 * half.sinh().powi(2)).ln();
    let ln_zp1 = (2.0 * half.cosh().powi(2)).ln();
    Ok(p_minus * ln_zm1 + p_plus * ln_zp1 + gpt_ext_denominator(a, b, x).ln())
}

pub fn factorization_function(
    params: &FamilyParams,
    path: Path,
    x: f64,
) -> Result<f64, PotentialError> {
    ln_factorization_function(params, path, x).map(f64::exp)
}
