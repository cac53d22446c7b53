//! Right and left functional calculi over a spectral decomposition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::operator::ParaLinearOperator;
use crate::spectral::SpectralDecomposition;
use crate::vector::Side;

/// Relative tolerance for matching a spectrum point against a table entry.
pub const MATCH_TOL: f64 = 1e-8;

/// An octonion-valued function tabulated at finitely many real points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionFile", into = "FunctionFile")]
pub struct SpectrumFunction {
    table: Vec<(f64, Octonion)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    values: Vec<FunctionEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionEntry {
    lambda: f64,
    f: Octonion,
}

impl TryFrom<FunctionFile> for SpectrumFunction {
    type Error = Error;
    fn try_from(file: FunctionFile) -> Result<Self> {
        SpectrumFunction::new(file.values.into_iter().map(|e| (e.lambda, e.f)).collect())
    }
}

impl From<SpectrumFunction> for FunctionFile {
    fn from(f: SpectrumFunction) -> Self {
        FunctionFile { values: f.table.into_iter().map(|(lambda, f)| FunctionEntry { lambda, f }).collect() }
    }
}

fn matches(a: f64, b: f64) -> bool {
    (a - b).abs() <= MATCH_TOL * a.abs().max(b.abs()).max(1.0)
}

impl SpectrumFunction {
    /// Rejects non-finite entries and points that match each other.
    pub fn new(table: Vec<(f64, Octonion)>) -> Result<Self> {
        for (i, (l, v)) in table.iter().enumerate() {
            if !l.is_finite() || v.0.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse("non-finite spectrum function entry".into()));
            }
            if table[..i].iter().any(|(m, _)| matches(*l, *m)) {
                return Err(Error::Parse(format!("duplicate spectrum point {l}")));
            }
        }
        Ok(SpectrumFunction { table })
    }

    /// Tabulates `f` on the spectrum of `d`, always including 0.
    pub fn on_spectrum(d: &SpectralDecomposition, mut f: impl FnMut(f64) -> Octonion) -> Self {
        let mut points = d.spectrum();
        if !points.contains(&0.0) {
            points.push(0.0);
        }
        SpectrumFunction { table: points.into_iter().map(|l| (l, f(l))).collect() }
    }

    /// `q ↦ Σ_k c_k q^k` on the spectrum of `d`.
    pub fn polynomial(d: &SpectralDecomposition, coeffs: &[Octonion]) -> Self {
        Self::on_spectrum(d, |q| eval_polynomial(coeffs, q))
    }

    pub fn table(&self) -> &[(f64, Octonion)] {
        &self.table
    }

    pub fn get(&self, lambda: f64) -> Result<Octonion> {
        self.table.iter().find(|(l, _)| matches(*l, lambda)).map(|(_, v)| *v).ok_or(Error::SpectrumMismatch { lambda })
    }

    /// `max |f(λ)|`.
    pub fn sup_norm(&self) -> f64 {
        self.table.iter().fold(0.0, |m, (_, v)| m.max(v.norm()))
    }

    pub fn is_real(&self) -> bool {
        self.table.iter().all(|(_, v)| v.is_real(0.0))
    }

    /// `f*(λ) = conj(f(λ))`.
    pub fn conj(&self) -> Self {
        self.map(|_, v| v.conj())
    }

    pub fn map(&self, f: impl Fn(f64, Octonion) -> Octonion) -> Self {
        SpectrumFunction { table: self.table.iter().map(|&(l, v)| (l, f(l, v))).collect() }
    }

    /// Pointwise combination on the points of `self`.
    pub fn zip_with(&self, other: &Self, f: impl Fn(Octonion, Octonion) -> Octonion) -> Result<Self> {
        let table = self.table.iter().map(|&(l, v)| Ok((l, f(v, other.get(l)?)))).collect::<Result<_>>()?;
        Ok(SpectrumFunction { table })
    }

    /// Checks coverage of every spectrum point of `d` and of 0.
    pub fn covers(&self, d: &SpectralDecomposition) -> Result<()> {
        self.get(0.0)?;
        for p in &d.pairs {
            self.get(p.lambda)?;
        }
        Ok(())
    }
}

pub fn eval_polynomial(coeffs: &[Octonion], q: f64) -> Octonion {
    coeffs.iter().rev().fold(Octonion::ZERO, |acc, c| acc * q + *c)
}

/// `Φ(f) = P_0 ⊙ f(0) + Σ_i P_{z_i} ⊙ f(λ_i)`.
pub fn phi(f: &SpectrumFunction, d: &SpectralDecomposition) -> Result<ParaLinearOperator> {
    assemble(f, d, Side::Right)
}

/// `Ψ(f) = f(0) ⊙ P_0 + Σ_i f(λ_i) ⊙ P_{z_i}`.
pub fn psi(f: &SpectrumFunction, d: &SpectralDecomposition) -> Result<ParaLinearOperator> {
    assemble(f, d, Side::Left)
}

fn assemble(f: &SpectrumFunction, d: &SpectralDecomposition, side: Side) -> Result<ParaLinearOperator> {
    f.covers(d)?;
    let mut acc = d.kernel_projection().scalar_action(f.get(0.0)?, side);
    for (p, proj) in d.pairs.iter().zip(d.pair_projections()) {
        acc = acc + proj.scalar_action(f.get(p.lambda)?, side);
    }
    Ok(acc)
}

/// `T^{⊛k}`, left-associated; `T^{⊛0} = I`.
pub fn power_op(t: &ParaLinearOperator, k: u32) -> ParaLinearOperator {
    let mut acc = ParaLinearOperator::identity(t.dim());
    for _ in 0..k {
        acc = acc.regular_compose(t).expect("same dimension");
    }
    acc
}
