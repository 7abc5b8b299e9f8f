//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use rational_susy::numerics::{
    convergence_order, integrate, residual_norm, spectrum, Grid, SecondDerivative,
};
use rational_susy::potentials::{
    gpt, gpt_ext, partner_from_scheme, superpotential, Family, FamilyParams, PartnerSign, Path,
    Potential,
};
use rational_susy::specfun::phat_eval;
use rational_susy::susy::{
    apply_o, apply_second_order, compose_first_order, ssusy_data, GaussianBump, SecondOrder,
};
use rational_susy::wavefuncs::{
    bound_states, ext_wavefunction, gpt_wavefunction, quadrature_cutoff,
};

const A: f64 = 1.5;
const B: f64 = 3.0;
const REFERENCE_N: usize = 16384;
const EXACT: [f64; 2] = [-2.25, -0.25];

type Outcome = Result<(bool, String), String>;

fn interior(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |i| lo + (hi - lo) * i as f64 / (n + 1) as f64)
}

fn levels(family: Family, a: f64, b: f64, n: usize, k: usize) -> Result<Vec<f64>, String> {
    let params = FamilyParams::new(family, a, b);
    let potential = params.potential().map_err(|e| e.to_string())?;
    let grid = Grid::new(1e-4, 25.0, n).map_err(|e| e.to_string())?;
    spectrum(&potential, &grid, k).map_err(|e| e.to_string())
}

fn max_deviation(got: &[f64], want: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .map(|(g, w)| (g - w).abs())
        .fold(0.0, f64::max)
}

fn spectrum_criterion(family: Family, with_order: bool) -> Outcome {
    let start = Instant::now();
    let got = levels(family, A, B, REFERENCE_N, 2)?;
    let dev = max_deviation(&got, &EXACT);
    let mut ok = dev <= 1e-4;
    let mut detail = format!("E = {:.8}, {:.8}; max |dE| = {dev:.2e}", got[0], got[1]);
    if with_order {
        // n − 1 doubles at each refinement so h halves exactly
        let e: Vec<f64> = [4097, 8193, 16385]
            .iter()
            .map(|&n| levels(family, A, B, n, 1).map(|v| v[0]))
            .collect::<Result<_, _>>()?;
        let order = convergence_order(e[0], e[1], e[2]).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed().as_secs_f64();
        ok &= (order - 2.0).abs() <= 0.3 && elapsed < 10.0;
        detail.push_str(&format!("; order = {order:.3}; {elapsed:.2} s"));
    }
    Ok((ok, detail))
}

fn c1_gpt_spectrum() -> Outcome {
    spectrum_criterion(Family::Gpt, true)
}

fn c2_extension_isospectral() -> Outcome {
    spectrum_criterion(Family::GptExt, false)
}

fn c3_b_independence() -> Outcome {
    let e3 = levels(Family::Gpt, A, 3.0, REFERENCE_N, 2)?;
    let e4 = levels(Family::Gpt, A, 4.0, REFERENCE_N, 2)?;
    let dev = max_deviation(&e3, &e4);
    Ok((dev <= 2e-4, format!("max |E(B=3) − E(B=4)| = {dev:.2e}")))
}

fn c4_partner_identities() -> Outcome {
    let params = FamilyParams::new(Family::Gpt, A, B);
    let mut worst = 0.0_f64;
    for path in Path::BOTH {
        let scheme = superpotential(&params, path).map_err(|e| e.to_string())?;
        for x in interior(0.05, 10.0, 200) {
            let w = scheme.w_re(x);
            let dw = scheme.w_prime_re(x);
            let plus = w * w - dw + scheme.energy;
            let minus = w * w + dw + scheme.energy;
            worst = worst
                .max((plus - gpt(A, B + path.sign(), x)).abs())
                .max((minus - gpt_ext(A, B, x)).abs());
        }
        // the generic partner builder must agree with the hand expansion
        let built = partner_from_scheme(scheme, PartnerSign::Minus);
        for x in interior(0.05, 10.0, 200) {
            worst = worst.max((built.value(x).re - gpt_ext(A, B, x)).abs());
        }
    }
    Ok((
        worst <= 1e-10,
        format!("max deviation over both paths = {worst:.2e}"),
    ))
}

fn c5_intertwining_reconstruction() -> Outcome {
    let params = FamilyParams::new(Family::Gpt, A, B);
    let mut worst = 0.0_f64;
    for path in Path::BOTH {
        let scheme = superpotential(&params, path).map_err(|e| e.to_string())?;
        for nu in 0..=1 {
            let partner = gpt_wavefunction(A, B + path.sign(), nu).map_err(|e| e.to_string())?;
            let closed = ext_wavefunction(A, B, nu).map_err(|e| e.to_string())?;
            let eps = closed.energy - scheme.energy;
            for x in (1..=200).map(|i| 0.05 * i as f64) {
                let a_psi = partner.dpsi(x) + scheme.w_re(x) * partner.psi(x);
                // the lower path reaches ψ^{(−)} with the opposite overall sign
                let rebuilt = path.sign() * a_psi / eps.sqrt();
                worst = worst.max((rebuilt - closed.psi(x)).abs());
            }
        }
    }
    Ok((
        worst <= 1e-8,
        format!("max |ψ_rebuilt − ψ_closed| (ν = 0, 1; both paths) = {worst:.2e}"),
    ))
}

fn c6_operator_o() -> Outcome {
    let (mut worst, mut largest) = (0.0_f64, 0.0_f64);
    let mut points = 0;
    for &(alpha, beta) in &[(1.0, -5.0), (0.5, -3.0), (2.25, -7.5)] {
        for nu in 0..=5usize {
            if alpha + beta + 2.0 * nu as f64 == 0.0 {
                continue;
            }
            for z in (0..20).map(|i| 1.0 + 0.15 * i as f64) {
                let lhs = apply_o(alpha, beta, nu, z);
                let phat = phat_eval(nu, alpha, beta, z).map_err(|e| e.to_string())?;
                let rhs = -2.0 * (alpha - beta) * (nu as f64 + alpha) * phat;
                worst = worst.max((lhs - rhs).abs());
                largest = largest.max(rhs.abs());
                points += 1;
            }
        }
    }
    Ok((
        worst <= 1e-9,
        format!("{points} points; max |lhs − rhs| = {worst:.2e} (largest |rhs| = {largest:.1e})"),
    ))
}

fn c7_ssusy() -> Outcome {
    let params = FamilyParams::new(Family::Gpt, A, B);
    let bump = GaussianBump::new(3.0, 0.7);
    let (mut comp, mut half, mut closed, mut inter) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    let mut cbar_exact = true;
    for path in Path::BOTH {
        let d = ssusy_data(&params, path).map_err(|e| e.to_string())?;
        cbar_exact &=
            d.cbar == -2.0 * B * path.sign() && d.cbar == d.tilde.energy - d.scheme.energy;
        let (a_hat, b_hat) = (d.a_hat(), d.b_hat());
        for x in interior(0.2, 6.0, 50) {
            let jet = bump.jet(x);
            let big = apply_second_order(&d, SecondOrder::Intertwiner, jet, x)
                .map_err(|e| e.to_string())?;
            comp = comp.max((big - compose_first_order(&a_hat, &b_hat, jet, x)).abs());
            let p_half = 0.5 * (d.scheme.w_re(x) + d.tilde.w_re(x));
            let p_closed = -B * x.sinh() / (2.0 * B * x.cosh() - 2.0 * A - 1.0);
            half = half.max((p_half - d.p(x)).abs());
            closed = closed.max((p_half - p_closed).abs());
        }
        for x in interior(0.2, 6.0, 100) {
            let wt = d.tilde.w_re(x);
            let v_tilde_minus = wt * wt + d.tilde.w_prime_re(x) + d.tilde.energy;
            let v_plus = gpt(A, B + path.sign(), x);
            let lhs = v_tilde_minus - d.tilde.energy + 0.5 * d.cbar;
            let rhs = v_plus - d.scheme.energy - 0.5 * d.cbar;
            inter = inter.max((lhs - rhs).abs());
        }
    }
    let ok = comp <= 1e-7 && half <= 1e-12 && closed <= 1e-12 && cbar_exact && inter <= 1e-10;
    Ok((
        ok,
        format!(
            "𝒜 − ÂB̂ = {comp:.2e}; p half-sum = {half:.2e}, closed form = {closed:.2e}; \
             c̄ exact = {cbar_exact}; intermediate = {inter:.2e}"
        ),
    ))
}

fn c8_orthonormality() -> Outcome {
    let states = bound_states(A, B, true).map_err(|e| e.to_string())?;
    let cutoff = quadrature_cutoff(A).map_err(|e| e.to_string())?;
    let mut worst = 0.0_f64;
    for u in &states {
        for v in &states {
            let g = integrate(|x| u.psi(x) * v.psi(x), 0.0, cutoff, 1e-12)
                .map_err(|e| e.to_string())?;
            let target = if u.nu == v.nu { 1.0 } else { 0.0 };
            worst = worst.max((g - target).abs());
        }
    }
    Ok((
        worst <= 1e-8,
        format!(
            "{0}×{0} Gram matrix; max |G − I| = {worst:.2e}",
            states.len()
        ),
    ))
}

fn c9_scarf1_cross_isospectral() -> Outcome {
    let (a, b) = (4.0, 2.0);
    let grid = Grid::for_family(Family::Scarf1, REFERENCE_N).map_err(|e| e.to_string())?;
    let solve = |family| -> Result<Vec<f64>, String> {
        let potential = FamilyParams::new(family, a, b)
            .potential()
            .map_err(|e| e.to_string())?;
        spectrum(&potential, &grid, 3).map_err(|e| e.to_string())
    };
    let conv = solve(Family::Scarf1)?;
    let ext = solve(Family::Scarf1Ext)?;
    let dev = max_deviation(&conv, &ext);
    Ok((
        dev <= 1e-4,
        format!(
            "E = {:.6}, {:.6}, {:.6}; max pairwise |dE| = {dev:.2e}",
            conv[0], conv[1], conv[2]
        ),
    ))
}

fn c10_pt_pole_freedom() -> Outcome {
    let bound = 2.0 * A + 1.0;
    let min = (0..=40_000)
        .map(|i| -20.0 + 1e-3 * i as f64)
        .map(|x| Complex64::new(bound, -2.0 * B * x.sinh()).norm())
        .fold(f64::INFINITY, f64::min);
    let potential = FamilyParams::new(Family::PtScarf2ExtI, A, B)
        .potential()
        .map_err(|e| e.to_string())?;
    let finite = (0..=4000).map(|i| -20.0 + 0.01 * i as f64).all(|x| {
        potential
            .value_checked(x)
            .is_ok_and(|v| v.re.is_finite() && v.im.is_finite())
    });
    Ok((
        min >= bound && finite,
        format!("min |2A+1 − 2iB sinh x| = {min} (bound {bound}); potential finite = {finite}"),
    ))
}

fn c11_conventional_equivalence() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for a in [1.5, 2.0, 3.25] {
        let diffs: Vec<f64> = interior(0.1, 10.0, 200)
            .map(|x| gpt_ext(a, a + 0.5, x) - gpt(a - 1.0, a + 1.5, x))
            .collect();
        let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
        let spread = diffs.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max);
        ok &= spread <= 1e-9 && mean.abs() <= 1e-9;
        details.push(format!("A={a}: constant {mean:.2e}, spread {spread:.2e}"));
    }
    Ok((ok, details.join("; ")))
}

fn c12_negative_control() -> Outcome {
    let state = ext_wavefunction(A, B, 0).map_err(|e| e.to_string())?;
    let potential = FamilyParams::new(Family::GptExt, A, B)
        .potential()
        .map_err(|e| e.to_string())?;
    let grid = Grid::new(0.1, 20.0, 2001).map_err(|e| e.to_string())?;
    let psi = |x: f64| state.psi(x);
    let residual = |e: f64| {
        residual_norm(
            &potential,
            &psi,
            SecondDerivative::FiniteDifference { step: 1e-3 },
            e,
            &grid,
        )
        .map_err(|e| e.to_string())
    };
    let exact = residual(state.energy)?;
    let perturbed = residual(state.energy + 0.1)?;
    Ok((
        perturbed > 1e-2 && exact <= 1e-6,
        format!("residual at E = {exact:.2e}, at E + 0.1 = {perturbed:.2e}"),
    ))
}

type Criterion = fn() -> Outcome;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 12] = [
        ("GPT spectrum reproduction", c1_gpt_spectrum),
        ("isospectrality of the extension", c2_extension_isospectral),
        ("B-independence", c3_b_independence),
        ("partner identities", c4_partner_identities),
        (
            "intertwining reconstruction",
            c5_intertwining_reconstruction,
        ),
        ("operator-O identity", c6_operator_o),
        ("SSUSY composition", c7_ssusy),
        ("orthonormality", c8_orthonormality),
        ("Scarf I cross-isospectrality", c9_scarf1_cross_isospectral),
        ("PT pole-freedom", c10_pt_pole_freedom),
        ("B = A + 1/2 equivalence", c11_conventional_equivalence),
        ("negative control", c12_negative_control),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "{} {:>2} {name}: {detail}",
            if pass { "PASS" } else { "FAIL" },
            i + 1
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
