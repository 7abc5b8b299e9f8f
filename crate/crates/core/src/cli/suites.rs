use clap::ValueEnum;
use serde::Serialize;

use super::CliError;
use crate::numerics::{build_hamiltonian, eigen_lowest_k, integrate, overlap, Grid};
use crate::potentials::{
    gpt, gpt_ext, partner_from_scheme, pt_denominator, superpotential, tilde_superpotential,
    validate_params, Family, FamilyParams, PartnerSign, Path, Potential,
};
use crate::susy::{
    apply_second_order, compose_first_order, intertwining_defect, reconstruction_error, ssusy_data,
    GaussianBump, SecondOrder, SsusyData,
};
use crate::wavefuncs::{
    bound_states, ext_wavefunction, gpt_wavefunction, nu_max, quadrature_cutoff,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Partner,
    Intertwine,
    Ssusy,
    Ortho,
    PtPolefree,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Partner => "partner",
            Suite::Intertwine => "intertwine",
            Suite::Ssusy => "ssusy",
            Suite::Ortho => "ortho",
            Suite::PtPolefree => "pt-polefree",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value <= tol`; NaN fails.
    pub fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tol,
            pass: value <= tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParams {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: ReportParams,
    pub checks: Vec<Check>,
    pub pass: bool,
}

const PARTNER_TOL: f64 = 1e-10;
const RECONSTRUCTION_TOL: f64 = 1e-8;
const HALF_SUM_TOL: f64 = 1e-12;
const COMPOSITION_TOL: f64 = 1e-7;
const INTERMEDIATE_TOL: f64 = 1e-10;
const TWO_PATH_TOL: f64 = 1e-9;
const HAMILTONIAN_TOL: f64 = 1e-6;
const GRAM_TOL: f64 = 1e-8;
const EIGENVECTOR_TOL: f64 = 1e-6;
const EIGENVECTOR_GRID_N: usize = 16384;
const PT_HALF_WIDTH: f64 = 20.0;

/// `n` points strictly inside `(lo, hi)`.
fn interior(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |i| lo + (hi - lo) * i as f64 / (n + 1) as f64)
}

fn max_over(xs: impl Iterator<Item = f64>, f: impl Fn(f64) -> f64) -> f64 {
    xs.map(f).fold(0.0, f64::max)
}

fn try_max_over<E>(
    xs: impl Iterator<Item = f64>,
    f: impl Fn(f64) -> Result<f64, E>,
) -> Result<f64, E> {
    xs.map(f)
        .try_fold(0.0_f64, |m, v| v.map(|v| m.max(v.abs())))
}

pub fn run_suite(
    suite: Suite,
    a: f64,
    b: f64,
    path: Option<Path>,
) -> Result<VerificationReport, CliError> {
    let paths: Vec<Path> = match path {
        Some(p) => vec![p],
        None => Path::BOTH.to_vec(),
    };
    let checks = match suite {
        Suite::Partner => partner_checks(a, b, &paths)?,
        Suite::Intertwine => intertwine_checks(a, b, &paths, path.is_some())?,
        Suite::Ssusy => ssusy_checks(a, b, &paths)?,
        Suite::Ortho => ortho_checks(a, b)?,
        Suite::PtPolefree => pt_polefree_checks(a, b)?,
        Suite::All => {
            let mut all = partner_checks(a, b, &paths)?;
            all.extend(intertwine_checks(a, b, &paths, path.is_some())?);
            all.extend(ssusy_checks(a, b, &paths)?);
            all.extend(ortho_checks(a, b)?);
            all.extend(pt_polefree_checks(a, b)?);
            all
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        params: ReportParams {
            a,
            b,
            path: path.map_or("both", Path::name).to_string(),
        },
        checks,
        pass,
    })
}

fn gpt_params(a: f64, b: f64) -> FamilyParams {
    FamilyParams::new(Family::Gpt, a, b)
}

fn partner_checks(a: f64, b: f64, paths: &[Path]) -> Result<Vec<Check>, CliError> {
    let params = gpt_params(a, b);
    let mut checks = Vec::new();
    for &path in paths {
        let b_shift = b + path.sign();
        let scheme = superpotential(&params, path)?;
        let plus = partner_from_scheme(scheme, PartnerSign::Plus);
        let minus = partner_from_scheme(scheme, PartnerSign::Minus);
        let tilde = tilde_superpotential(&params, path)?;
        let t_plus = partner_from_scheme(tilde, PartnerSign::Plus);
        let t_minus = partner_from_scheme(tilde, PartnerSign::Minus);
        let xs = || interior(0.1, 10.0, 200);
        let tag = path.name();
        checks.push(Check::at_most(
            format!("partner/{tag}/V+ = V(A,B{:+})", path.sign()),
            max_over(xs(), |x| (plus.value(x).re - gpt(a, b_shift, x)).abs()),
            PARTNER_TOL,
        ));
        checks.push(Check::at_most(
            format!("partner/{tag}/V- = V_ext"),
            max_over(xs(), |x| (minus.value(x).re - gpt_ext(a, b, x)).abs()),
            PARTNER_TOL,
        ));
        checks.push(Check::at_most(
            format!("partner/{tag}/tilde V+ = V(A,B)"),
            max_over(xs(), |x| (t_plus.value(x).re - gpt(a, b, x)).abs()),
            PARTNER_TOL,
        ));
        checks.push(Check::at_most(
            format!("partner/{tag}/tilde V- = V(A,B{:+})", path.sign()),
            max_over(xs(), |x| (t_minus.value(x).re - gpt(a, b_shift, x)).abs()),
            PARTNER_TOL,
        ));
    }
    Ok(checks)
}

fn intertwine_checks(
    a: f64,
    b: f64,
    paths: &[Path],
    explicit: bool,
) -> Result<Vec<Check>, CliError> {
    let top = nu_max(a)?;
    let xs: Vec<f64> = (1..=160).map(|i| 0.05 * i as f64).collect();
    let mut checks = Vec::new();
    for &path in paths {
        // the lower path needs a bound conventional potential at B − 1
        if !explicit && !validate_params(&gpt_params(a, b + path.sign())).is_valid() {
            continue;
        }
        for nu in 0..=top {
            checks.push(Check::at_most(
                format!("intertwine/{}/nu={nu}", path.name()),
                reconstruction_error(a, b, nu, path, &xs)?,
                RECONSTRUCTION_TOL,
            ));
        }
    }
    Ok(checks)
}

fn ssusy_path_checks(d: &SsusyData, checks: &mut Vec<Check>) -> Result<(), CliError> {
    let tag = d.path.name();
    let xs = || interior(0.2, 6.0, 50);
    let bump = GaussianBump::new(3.0, 0.7);

    checks.push(Check::at_most(
        format!("ssusy/{tag}/cbar = -+2B"),
        (d.cbar + 2.0 * d.b * d.path.sign()).abs(),
        0.0,
    ));
    // Ẽ and E are rounded squares, so their difference is exact only up to a few ulps
    checks.push(Check::at_most(
        format!("ssusy/{tag}/cbar = E~ - E"),
        (d.cbar - (d.tilde.energy - d.scheme.energy)).abs(),
        8.0 * f64::EPSILON * (d.tilde.energy.abs() + d.scheme.energy.abs()),
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/p = (W + W~)/2"),
        max_over(xs(), |x| {
            (0.5 * (d.scheme.w_re(x) + d.tilde.w_re(x)) - d.p(x)).abs()
        }),
        HALF_SUM_TOL,
    ));
    let (a_hat, b_hat) = (d.a_hat(), d.b_hat());
    let (a_dag, b_dag) = (d.a_hat_dagger(), d.b_hat_dagger());
    checks.push(Check::at_most(
        format!("ssusy/{tag}/A = AB"),
        try_max_over(xs(), |x| {
            let jet = bump.jet(x);
            apply_second_order(d, SecondOrder::Intertwiner, jet, x)
                .map(|v| v - compose_first_order(&a_hat, &b_hat, jet, x))
        })?,
        COMPOSITION_TOL,
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/A+ = B+A+"),
        try_max_over(xs(), |x| {
            let jet = bump.jet(x);
            apply_second_order(d, SecondOrder::Adjoint, jet, x)
                .map(|v| v - compose_first_order(&b_dag, &a_dag, jet, x))
        })?,
        COMPOSITION_TOL,
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/V1 constraint"),
        try_max_over(xs(), |x| d.v1(x).map(|v| v - d.h1_potential(x)))?,
        COMPOSITION_TOL,
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/V2 constraint"),
        try_max_over(xs(), |x| d.v2(x).map(|v| v - d.h2_potential(x)))?,
        COMPOSITION_TOL,
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/intermediate h"),
        max_over(interior(0.2, 6.0, 100), |x| {
            let wt = d.tilde.w_re(x);
            let w = d.scheme.w_re(x);
            let from_tilde = wt * wt + d.tilde.w_prime_re(x) + 0.5 * d.cbar;
            let from_w = w * w - d.scheme.w_prime_re(x) - 0.5 * d.cbar;
            (from_tilde - from_w).abs()
        }),
        INTERMEDIATE_TOL,
    ));
    checks.push(Check::at_most(
        format!("ssusy/{tag}/hamiltonian intertwining"),
        try_max_over(interior(1.0, 5.0, 30), |x| {
            intertwining_defect(d, &bump, x, 2e-3)
        })?,
        HAMILTONIAN_TOL,
    ));
    Ok(())
}

fn ssusy_checks(a: f64, b: f64, paths: &[Path]) -> Result<Vec<Check>, CliError> {
    let params = gpt_params(a, b);
    let data = paths
        .iter()
        .map(|&p| ssusy_data(&params, p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut checks = Vec::new();
    for d in &data {
        ssusy_path_checks(d, &mut checks)?;
    }
    if let [up, low] = data.as_slice() {
        let xs = || interior(0.2, 6.0, 100);
        checks.push(Check::at_most(
            "ssusy/two-path h1",
            max_over(xs(), |x| (up.h1_potential(x) - low.h1_potential(x)).abs()),
            TWO_PATH_TOL,
        ));
        checks.push(Check::at_most(
            "ssusy/two-path h2",
            max_over(xs(), |x| (up.h2_potential(x) - low.h2_potential(x)).abs()),
            TWO_PATH_TOL,
        ));
    }
    Ok(checks)
}

/// Largest entry of `G − I` for the closed-form states.
pub fn gram_deviation(a: f64, b: f64, ext: bool) -> Result<f64, CliError> {
    let states = bound_states(a, b, ext)?;
    let cutoff = quadrature_cutoff(a)?;
    let mut worst = 0.0_f64;
    for (i, u) in states.iter().enumerate() {
        for v in &states[i..] {
            let g = integrate(|x| u.psi(x) * v.psi(x), 0.0, cutoff, 1e-12)?;
            let target = if u.nu == v.nu { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    Ok(worst)
}

/// `1 − overlap` between the numerical ground state of `V_ext` and `ψ₀^{(−)}`.
pub fn ground_state_mismatch(a: f64, b: f64) -> Result<f64, CliError> {
    let params = FamilyParams::new(Family::GptExt, a, b);
    let grid = Grid::for_family(Family::GptExt, EIGENVECTOR_GRID_N)?;
    let op = build_hamiltonian(&params.potential()?, &grid)?;
    let pair = eigen_lowest_k(&op, 1)?.remove(0);
    let closed = ext_wavefunction(a, b, 0)?;
    let samples: Vec<f64> = grid.interior().map(|x| closed.psi(x)).collect();
    Ok(1.0 - overlap(&samples, &pair.vector))
}

fn ortho_checks(a: f64, b: f64) -> Result<Vec<Check>, CliError> {
    // validates the pair before any quadrature
    gpt_wavefunction(a, b, 0)?;
    Ok(vec![
        Check::at_most(
            "ortho/gram conventional",
            gram_deviation(a, b, false)?,
            GRAM_TOL,
        ),
        Check::at_most("ortho/gram extended", gram_deviation(a, b, true)?, GRAM_TOL),
        Check::at_most(
            "ortho/numerical ground state overlap",
            ground_state_mismatch(a, b)?,
            EIGENVECTOR_TOL,
        ),
    ])
}

/// `(2A + 1) − min |2A + 1 − 2iB sinh x|` over `[−20, 20]`, with `x = 0` on the grid.
pub fn pt_bound_shortfall(a: f64, b: f64) -> f64 {
    let n = 4000;
    let min = (0..=n)
        .map(|i| -PT_HALF_WIDTH + 2.0 * PT_HALF_WIDTH * i as f64 / n as f64)
        .map(|x| pt_denominator(a, b, x).norm())
        .fold(f64::INFINITY, f64::min);
    (2.0 * a + 1.0) - min
}

fn pt_polefree_checks(a: f64, b: f64) -> Result<Vec<Check>, CliError> {
    let mut checks = vec![
        Check::at_most("pt/ext-i denominator bound", pt_bound_shortfall(a, b), 0.0),
        // the second extension has A + ½ and B interchanged
        Check::at_most(
            "pt/ext-ii denominator bound",
            pt_bound_shortfall(b - 0.5, a + 0.5),
            0.0,
        ),
    ];
    for family in [Family::PtScarf2ExtI, Family::PtScarf2ExtII] {
        let potential = FamilyParams::new(family, a, b).potential()?;
        let non_finite = (0..=4000)
            .map(|i| -PT_HALF_WIDTH + 0.01 * i as f64)
            .filter(|&x| {
                potential
                    .value_checked(x)
                    .map_or(true, |v| !(v.re.is_finite() && v.im.is_finite()))
            })
            .count();
        checks.push(Check::at_most(
            format!("pt/{family} non-finite samples"),
            non_finite as f64,
            0.0,
        ));
    }
    Ok(checks)
}
