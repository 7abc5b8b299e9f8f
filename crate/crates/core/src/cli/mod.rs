//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for invalid
//! input, 3 for numerical non-convergence.

mod suites;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::numerics::{spectrum, Grid, NumericsError};
use crate::potentials::{
    validate_params, Family, FamilyParams, ParamClass, Path, Potential, PotentialError,
};
use crate::susy::SusyError;
use crate::wavefuncs::{ext_wavefunction, gpt_energy, gpt_wavefunction, WavefuncError};

pub use suites::{run_suite, Check, ReportParams, Suite, VerificationReport};

pub const DEFAULT_A: f64 = 1.5;
pub const DEFAULT_B: f64 = 3.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Convergence(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Convergence(_) => 3,
        }
    }
}

impl From<PotentialError> for CliError {
    fn from(e: PotentialError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<WavefuncError> for CliError {
    fn from(e: WavefuncError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SusyError> for CliError {
    fn from(e: SusyError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        if e.is_convergence_failure() {
            CliError::Convergence(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Whether every reported comparison was within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rational-susy",
    version,
    about = "Rationally-extended solvable potentials and their SUSY checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a potential on a uniform grid.
    Potential(PotentialArgs),
    /// Finite-difference eigenvalues, compared against exact values or another family.
    Spectrum(SpectrumArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Sample a closed-form bound state.
    Wavefunction(WavefunctionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct PotentialArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "B")]
    pub b: f64,
    #[arg(long)]
    pub xmin: f64,
    #[arg(long)]
    pub xmax: f64,
    #[arg(long, default_value_t = 101)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "B")]
    pub b: f64,
    #[arg(long = "grid-n", default_value_t = 16384)]
    pub grid_n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Compare pairwise against this family's numerical spectrum.
    #[arg(long)]
    pub compare: Option<Family>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long = "A", default_value_t = DEFAULT_A)]
    pub a: f64,
    #[arg(long = "B", default_value_t = DEFAULT_B)]
    pub b: f64,
    /// Restrict to one decomposition path; both are checked by default.
    #[arg(long)]
    pub path: Option<Path>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long = "A")]
    pub a: f64,
    #[arg(long = "B")]
    pub b: f64,
    #[arg(long)]
    pub nu: usize,
    #[arg(long, default_value_t = 0.0)]
    pub xmin: f64,
    #[arg(long, default_value_t = 10.0)]
    pub xmax: f64,
    #[arg(long, default_value_t = 201)]
    pub n: usize,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Potential(args) => cmd_potential(&args, out),
        Command::Spectrum(args) => cmd_spectrum(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Wavefunction(args) => cmd_wavefunction(&args, out),
    }
}

fn sample_points(xmin: f64, xmax: f64, n: usize) -> Result<Vec<f64>, CliError> {
    if !(xmin.is_finite() && xmax.is_finite()) || xmin > xmax {
        return Err(CliError::Validation(format!(
            "need finite xmin <= xmax (got {xmin}, {xmax})"
        )));
    }
    match n {
        0 => Err(CliError::Validation("need n >= 1".into())),
        1 => Ok(vec![xmin]),
        _ => Ok((0..n)
            .map(|i| {
                if i + 1 == n {
                    xmax
                } else {
                    xmin + (xmax - xmin) * i as f64 / (n - 1) as f64
                }
            })
            .collect()),
    }
}

fn checked_params(family: Family, a: f64, b: f64) -> Result<FamilyParams, CliError> {
    let params = FamilyParams::new(family, a, b);
    if let ParamClass::Invalid(reason) = validate_params(&params).class {
        return Err(CliError::Validation(format!("{family}: {reason}")));
    }
    Ok(params)
}

#[derive(Serialize)]
struct RealSample {
    x: f64,
    #[serde(rename = "V")]
    v: f64,
}

#[derive(Serialize)]
struct ComplexSample {
    x: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct PotentialTable<T> {
    family: Family,
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
    samples: Vec<T>,
}

pub fn cmd_potential(args: &PotentialArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let params = checked_params(args.family, args.a, args.b)?;
    let potential = params.potential()?;
    let xs = sample_points(args.xmin, args.xmax, args.n)?;
    let values = xs
        .iter()
        .map(|&x| potential.value_checked(x))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = potential.domain().complex_valued;

    match (args.format, complex) {
        (Format::Csv, false) => {
            writeln!(out, "x,V")?;
            for (x, v) in xs.iter().zip(&values) {
                writeln!(out, "{x:.16e},{:.16e}", v.re)?;
            }
        }
        (Format::Csv, true) => {
            writeln!(out, "x,re,im")?;
            for (x, v) in xs.iter().zip(&values) {
                writeln!(out, "{x:.16e},{:.16e},{:.16e}", v.re, v.im)?;
            }
        }
        (Format::Json, false) => {
            let samples = xs
                .iter()
                .zip(&values)
                .map(|(&x, v)| RealSample { x, v: v.re })
                .collect();
            write_json(
                out,
                &PotentialTable {
                    family: args.family,
                    a: args.a,
                    b: args.b,
                    samples,
                },
            )?;
        }
        (Format::Json, true) => {
            let samples = xs
                .iter()
                .zip(&values)
                .map(|(&x, v)| ComplexSample {
                    x,
                    re: v.re,
                    im: v.im,
                })
                .collect();
            write_json(
                out,
                &PotentialTable {
                    family: args.family,
                    a: args.a,
                    b: args.b,
                    samples,
                },
            )?;
        }
    }
    Ok(Outcome::Pass)
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Exact GPT energies for the first `k` states, `None` past the last bound state.
fn exact_gpt_levels(params: &FamilyParams, k: usize) -> Vec<Option<f64>> {
    let report = validate_params(params);
    let a_eff = if report.class == ParamClass::ConventionalEquivalent {
        params.a - 1.0
    } else {
        params.a
    };
    (0..k).map(|nu| gpt_energy(a_eff, nu).ok()).collect()
}

fn numerical_levels(params: &FamilyParams, grid_n: usize, k: usize) -> Result<Vec<f64>, CliError> {
    if params.family.domain().complex_valued {
        return Err(CliError::Validation(format!(
            "{} is complex-valued; the finite-difference eigensolver handles real potentials only \
             (use `verify --suite pt-polefree` for the PT families)",
            params.family
        )));
    }
    let grid = Grid::for_family(params.family, grid_n)?;
    Ok(spectrum(&params.potential()?, &grid, k)?)
}

pub fn cmd_spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let params = checked_params(args.family, args.a, args.b)?;
    let levels = numerical_levels(&params, args.grid_n, args.k)?;
    let mut pass = true;

    writeln!(
        out,
        "# {} A={} B={} grid-n={} tol={:e}",
        args.family, args.a, args.b, args.grid_n, args.tol
    )?;
    if let Some(other) = args.compare {
        let other_params = checked_params(other, args.a, args.b)?;
        let reference = numerical_levels(&other_params, args.grid_n, args.k)?;
        writeln!(out, "index,{},{},abs_diff", args.family, other)?;
        for (i, (e, r)) in levels.iter().zip(&reference).enumerate() {
            let diff = (e - r).abs();
            pass &= diff < args.tol;
            writeln!(out, "{i},{e:.16e},{r:.16e},{diff:.16e}")?;
        }
    } else {
        writeln!(out, "index,numerical,exact,abs_diff")?;
        let exact = if args.family.is_gpt() {
            exact_gpt_levels(&params, args.k)
        } else {
            vec![None; args.k]
        };
        for (i, (e, x)) in levels.iter().zip(&exact).enumerate() {
            match x {
                Some(x) => {
                    let diff = (e - x).abs();
                    pass &= diff < args.tol;
                    writeln!(out, "{i},{e:.16e},{x:.16e},{diff:.16e}")?;
                }
                None => writeln!(out, "{i},{e:.16e},,")?,
            }
        }
    }
    Ok(Outcome::from_bool(pass))
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let report = run_suite(args.suite, args.a, args.b, args.path)?;
    write_json(out, &report)?;
    Ok(Outcome::from_bool(report.pass))
}

pub fn cmd_wavefunction(args: &WavefunctionArgs, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let state = match args.family {
        Family::Gpt => gpt_wavefunction(args.a, args.b, args.nu)?,
        Family::GptExt => ext_wavefunction(args.a, args.b, args.nu)?,
        other => {
            return Err(CliError::Validation(format!(
                "closed-form wavefunctions are available for gpt and gpt-ext only (got {other})"
            )))
        }
    };
    let xs = sample_points(args.xmin, args.xmax, args.n)?;
    writeln!(out, "# energy = {:.16e}", state.energy)?;
    writeln!(out, "x,psi")?;
    for x in xs {
        writeln!(out, "{x:.16e},{:.16e}", state.psi(x))?;
    }
    Ok(Outcome::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (Result<Outcome, CliError>, String) {
        let cli = Cli::try_parse_from(std::iter::once("rational-susy").chain(args.iter().copied()))
            .expect("arguments parse");
        let mut buf = Vec::new();
        let outcome = run(cli, &mut buf);
        (outcome, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn potential_single_point() {
        let (outcome, text) = run_args(&[
            "potential",
            "--family",
            "gpt",
            "--A",
            "1.5",
            "--B",
            "3",
            "--xmin",
            "1",
            "--xmax",
            "1",
            "--n",
            "1",
        ]);
        assert_eq!(outcome.unwrap(), Outcome::Pass);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,V");
        assert_eq!(lines.len(), 2);
        let v: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
        assert!((v + 4.17565).abs() < 2e-5);
    }

    #[test]
    fn potential_pt_columns() {
        let (outcome, text) = run_args(&[
            "potential",
            "--family",
            "pt-scarf2-ext-i",
            "--A",
            "1.5",
            "--B",
            "3",
            "--xmin",
            "-1",
            "--xmax",
            "1",
            "--n",
            "3",
        ]);
        assert_eq!(outcome.unwrap(), Outcome::Pass);
        assert!(text.starts_with("x,re,im\n"));
        let mid: Vec<f64> = text
            .lines()
            .nth(2)
            .unwrap()
            .split(',')
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(mid[0], 0.0);
        assert!(mid[1].is_finite() && mid[2].is_finite());
    }

    #[test]
    fn potential_invalid_range_names_it() {
        let (outcome, _) = run_args(&[
            "potential",
            "--family",
            "scarf1",
            "--A",
            "4",
            "--B",
            "3",
            "--xmin",
            "0",
            "--xmax",
            "1",
        ]);
        let err = outcome.unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("B < A - 1"));
    }

    #[test]
    fn potential_json_is_parseable() {
        let (outcome, text) = run_args(&[
            "potential",
            "--family",
            "gpt-ext",
            "--A",
            "1.5",
            "--B",
            "3",
            "--xmin",
            "0.5",
            "--xmax",
            "2",
            "--n",
            "4",
            "--format",
            "json",
        ]);
        assert_eq!(outcome.unwrap(), Outcome::Pass);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["samples"].as_array().unwrap().len(), 4);
        assert!(v["samples"][0]["V"].is_f64());
    }

    #[test]
    fn spectrum_rejects_pt() {
        let (outcome, _) = run_args(&[
            "spectrum",
            "--family",
            "pt-scarf2",
            "--A",
            "1.5",
            "--B",
            "3",
        ]);
        assert_eq!(outcome.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn wavefunction_output() {
        let (outcome, text) = run_args(&[
            "wavefunction",
            "--family",
            "gpt",
            "--A",
            "1.5",
            "--B",
            "3",
            "--nu",
            "1",
            "--xmin",
            "0.01",
            "--xmax",
            "12",
            "--n",
            "300",
        ]);
        assert_eq!(outcome.unwrap(), Outcome::Pass);
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# energy = -2.5"));
        assert_eq!(lines.next().unwrap(), "x,psi");
        let psi: Vec<f64> = lines
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_eq!(crate::numerics::count_sign_changes(&psi), 1);

        let (outcome, _) = run_args(&[
            "wavefunction",
            "--family",
            "gpt",
            "--A",
            "1.5",
            "--B",
            "3",
            "--nu",
            "5",
        ]);
        assert_eq!(outcome.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn convergence_errors_have_their_own_code() {
        let err = CliError::from(NumericsError::NoConvergence {
            what: "test",
            detail: String::new(),
        });
        assert_eq!(err.exit_code(), 3);
        assert_eq!(
            CliError::from(NumericsError::ComplexPotential).exit_code(),
            2
        );
    }
}
