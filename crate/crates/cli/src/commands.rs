//! Command implementations. Each returns the text to write, or an error
//! carrying its exit code.

use std::fmt;
use std::fs;
use std::path::Path;

use octopara::funcalc::{phi, psi};
use octopara::io::{parse_operator, parse_polynomial, parse_spectrum_function, to_json};
use octopara::polarization::{reconstruct_operator, QuadraticFormProbe};
use octopara::spectral::decompose;
use octopara::{Error, ParaLinearOperator, SpectrumFunction};
use serde::Serialize;

use crate::report::{run_suite, worker_count, RunReport};
use crate::suites::{self, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_SELF_ADJOINT: i32 = 3;
pub const EXIT_NOT_STANDARD_STRONG: i32 = 4;
pub const EXIT_INPUT: i32 = 5;
pub const EXIT_FN_DOMAIN: i32 = 6;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSelfAdjoint { .. } => EXIT_NOT_SELF_ADJOINT,
            Error::NotStandardStrong { .. } | Error::NoConvergence => EXIT_NOT_STANDARD_STRONG,
            Error::SpectrumMismatch { .. } => EXIT_FN_DOMAIN,
            _ => EXIT_INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError { code: EXIT_INPUT, message: format!("cannot read {}: {e}", path.display()) })
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(to_json(value)?)
}

pub fn load_operator(path: &Path, tol: f64) -> Result<ParaLinearOperator, CliError> {
    Ok(parse_operator(&read(path)?, tol)?)
}

pub struct VerifyOutcome {
    pub reports: Vec<RunReport>,
    pub failures: usize,
}

/// Runs the named suites (all of them when `names` is empty).
pub fn verify(
    names: &[String],
    trials: u64,
    seed: u64,
    tol: Option<f64>,
    timing: bool,
) -> Result<VerifyOutcome, CliError> {
    let selected: Vec<&suites::Suite> = if names.is_empty() {
        SUITES.iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                suites::find(n).ok_or_else(|| CliError {
                    code: EXIT_USAGE,
                    message: format!(
                        "unknown suite {n:?}; expected one of {}",
                        SUITES.iter().map(|s| s.name).collect::<Vec<_>>().join(", ")
                    ),
                })
            })
            .collect::<Result<_, _>>()?
    };
    let workers = worker_count();
    let reports: Vec<RunReport> = selected
        .into_iter()
        .map(|s| {
            let mut r = run_suite(s, seed, trials, tol, workers);
            if !timing {
                r.wall_seconds = None;
            }
            r
        })
        .collect();
    let failures = reports.iter().map(|r| r.failures).sum();
    Ok(VerifyOutcome { reports, failures })
}

pub fn verify_json(outcome: &VerifyOutcome) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct All<'a> {
        failures: usize,
        suites: &'a [RunReport],
    }
    json(&All { failures: outcome.failures, suites: &outcome.reports })
}

pub fn decompose_cmd(input: &Path, tol: f64, seed: u64) -> Result<String, CliError> {
    let t = load_operator(input, tol)?;
    let d = decompose(&t, tol, seed)?;
    let residual = d.reconstruct().distance(&t);
    json(&d.to_file(residual))
}

pub fn polarize_cmd(input: &Path, tol: f64) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Out {
        operator: ParaLinearOperator,
        deviation: f64,
    }
    let t = load_operator(input, tol)?;
    let r = reconstruct_operator(&QuadraticFormProbe::from_operator(&t));
    let deviation = r.max_abs_diff(&t);
    json(&Out { operator: r, deviation })
}

pub enum FnSpec<'a> {
    Polynomial(&'a str),
    Table(&'a Path),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Calculus {
    Left,
    Right,
}

pub fn funcalc_cmd(input: &Path, spec: FnSpec<'_>, side: Calculus, tol: f64, seed: u64) -> Result<String, CliError> {
    let t = load_operator(input, tol)?;
    let d = decompose(&t, tol, seed)?;
    let f = match spec {
        FnSpec::Polynomial(text) => SpectrumFunction::polynomial(&d, &parse_polynomial(text)?),
        FnSpec::Table(path) => parse_spectrum_function(&read(path)?)?,
    };
    let out = match side {
        Calculus::Right => phi(&f, &d)?,
        Calculus::Left => psi(&f, &d)?,
    };
    json(&out)
}

pub fn adjoint_cmd(input: &Path, tol: f64) -> Result<String, CliError> {
    json(&load_operator(input, tol)?.adjoint())
}

pub fn norm_cmd(input: &Path, tol: f64) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Out {
        norm: f64,
    }
    json(&Out { norm: load_operator(input, tol)?.operator_norm() })
}
