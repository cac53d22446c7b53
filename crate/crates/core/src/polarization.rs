//! Recovering an operator from its quadratic form `Q(x) = ⟨T x, x⟩`, and
//! deciding self-adjointness from `Q` on the slice cone.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::octonion::Octonion;
use crate::operator::ParaLinearOperator;
use crate::random;
use crate::vector::OVector;

type QuadraticFn = dyn Fn(&OVector) -> Octonion + Send + Sync;

/// A black-box quadratic form on `O^n`.
pub struct QuadraticFormProbe {
    dim: usize,
    eval: Box<QuadraticFn>,
}

impl QuadraticFormProbe {
    pub fn new(dim: usize, eval: impl Fn(&OVector) -> Octonion + Send + Sync + 'static) -> Self {
        QuadraticFormProbe { dim, eval: Box::new(eval) }
    }

    /// `Q(x) = ⟨T x, x⟩`. The probe owns a copy of `T` and exposes only `Q`.
    pub fn from_operator(t: &ParaLinearOperator) -> Self {
        let t = t.clone();
        Self::new(t.dim(), move |x| t.apply(x).and_then(|tx| tx.inner_product(x)).expect("probe dimension checked"))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &OVector) -> Result<Octonion> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.dim() });
        }
        Ok((self.eval)(x))
    }
}

/// `m(x, y) = (Q(x + y) - Q(x - y)) / 2`.
pub fn m_form(q: &QuadraticFormProbe, x: &OVector, y: &OVector) -> Result<Octonion> {
    let plus = q.eval(&(x.clone() + y.clone()))?;
    let minus = q.eval(&(x.clone() - y.clone()))?;
    Ok((plus - minus) * 0.5)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcTerms {
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
}

fn require_real(x: &OVector) -> Result<()> {
    if !x.is_real(0.0) {
        return Err(Error::NotRealPart);
    }
    Ok(())
}

fn e(i: usize) -> Octonion {
    Octonion::basis(i)
}

/// `A_ij = m(x,y) + e_i m(x, y ē_i) + m(x, y ē_j) e_j`,
/// `B_ij = [e_i m(x, y conj(e_i e_j))] e_j`,
/// `C_ij = e_i [m(x, y conj(e_i e_j)) e_j]`, with `B_ii = C_ii = 0`.
pub fn abc_terms(q: &QuadraticFormProbe, x: &OVector, y: &OVector, i: usize, j: usize) -> Result<AbcTerms> {
    assert!((1..8).contains(&i) && (1..8).contains(&j), "indices run over 1..=7");
    require_real(x)?;
    require_real(y)?;
    let m0 = m_form(q, x, y)?;
    abc_with(q, x, y, i, j, m0)
}

fn abc_with(q: &QuadraticFormProbe, x: &OVector, y: &OVector, i: usize, j: usize, m0: Octonion) -> Result<AbcTerms> {
    let a = m0 + e(i) * m_form(q, x, &y.rmul(e(i).conj()))? + m_form(q, x, &y.rmul(e(j).conj()))? * e(j);
    if i == j {
        return Ok(AbcTerms { a, b: Octonion::ZERO, c: Octonion::ZERO });
    }
    let mm = m_form(q, x, &y.rmul((e(i) * e(j)).conj()))?;
    Ok(AbcTerms { a, b: (e(i) * mm) * e(j), c: e(i) * (mm * e(j)) })
}

/// `⟨T x, y⟩` for `x, y ∈ Re H` from `Q` alone:
/// `(1/56) Σ_{i≠j} (2A + B + C)_ij - (1/98) Σ_{i,j} A_ij - m/2`.
pub fn reconstruct_re(q: &QuadraticFormProbe, x: &OVector, y: &OVector) -> Result<Octonion> {
    require_real(x)?;
    require_real(y)?;
    let m0 = m_form(q, x, y)?;
    // The single-index terms of A are reused across the 49 pairs.
    let left: Vec<Octonion> = (1..8).map(|i| Ok(e(i) * m_form(q, x, &y.rmul(e(i).conj()))?)).collect::<Result<_>>()?;
    let right: Vec<Octonion> = (1..8).map(|j| Ok(m_form(q, x, &y.rmul(e(j).conj()))? * e(j))).collect::<Result<_>>()?;
    let mut off = Octonion::ZERO;
    let mut all = Octonion::ZERO;
    for i in 1..8 {
        for j in 1..8 {
            let a = m0 + left[i - 1] + right[j - 1];
            all += a;
            if i != j {
                let mm = m_form(q, x, &y.rmul((e(i) * e(j)).conj()))?;
                off += a * 2.0 + (e(i) * mm) * e(j) + e(i) * (mm * e(j));
            }
        }
    }
    Ok(off / 56.0 - all / 98.0 - m0 * 0.5)
}

/// Rebuilds `T` from `Q`: `G_ba = conj⟨T u_a, u_b⟩` and core entries
/// `Re(G_ba e_i)`.
pub fn reconstruct_operator(q: &QuadraticFormProbe) -> ParaLinearOperator {
    let n = q.dim;
    let mut core = Matrix::zeros(n, 8 * n);
    for a in 0..n {
        for b in 0..n {
            let g = reconstruct_re(q, &OVector::unit(n, a), &OVector::unit(n, b)).expect("real basis vectors").conj();
            for i in 0..8 {
                core[(b, 8 * a + i)] = (g * e(i)).re();
            }
        }
    }
    ParaLinearOperator::from_core(core).expect("core has the right shape")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfAdjointMode {
    /// `|M - Mᵀ| ≤ tol |T|` in operator norm.
    Exact,
    /// `|Im⟨T z, z⟩| ≤ tol |T| |z|²` on random slice paravectors.
    Sampled { samples: usize, seed: u64 },
}

pub const DEFAULT_SAMPLES: usize = 64;

pub fn is_self_adjoint(t: &ParaLinearOperator, mode: SelfAdjointMode, tol: f64) -> bool {
    let norm = t.operator_norm();
    match mode {
        SelfAdjointMode::Exact => {
            let m = t.matrix();
            (m - &m.transpose()).spectral_norm() <= tol * norm
        }
        SelfAdjointMode::Sampled { samples, seed } => {
            let q = QuadraticFormProbe::from_operator(t);
            let mut rng = random::trial_rng(seed, 0);
            (0..samples).all(|_| slice_reality_ok(&q, &mut rng, norm, tol))
        }
    }
}

fn slice_reality_ok<R: Rng>(q: &QuadraticFormProbe, rng: &mut R, norm: f64, tol: f64) -> bool {
    let z = random::slice(rng, q.dim).value();
    let v = q.eval(&z).expect("probe dimension");
    v.im().norm() <= tol * norm * z.norm() * z.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_form() {
        let q = QuadraticFormProbe::from_operator(&ParaLinearOperator::identity(2));
        let u0 = OVector::unit(2, 0);
        let u1 = OVector::unit(2, 1);
        assert_eq!(m_form(&q, &u0, &u1).unwrap(), Octonion::ZERO);
        assert_eq!(m_form(&q, &u0, &u0).unwrap(), Octonion::real(2.0));
        let t = abc_terms(&q, &u0, &u0, 1, 2).unwrap();
        assert_eq!(t.a, Octonion::real(2.0));
        assert_eq!(t.b, Octonion::ZERO);
        assert_eq!(t.c, Octonion::ZERO);
        assert!((reconstruct_re(&q, &u0, &u0).unwrap() - Octonion::ONE).max_abs() < 1e-14);
    }

    #[test]
    fn rejects_non_real_arguments() {
        let q = QuadraticFormProbe::from_operator(&ParaLinearOperator::identity(1));
        let x = OVector::unit(1, 0).lmul(e(1));
        assert!(matches!(reconstruct_re(&q, &x, &x), Err(Error::NotRealPart)));
        assert!(matches!(abc_terms(&q, &x, &x, 1, 1), Err(Error::NotRealPart)));
    }

    #[test]
    fn zero_form_gives_zero_operator() {
        let q = QuadraticFormProbe::new(3, |_| Octonion::ZERO);
        assert_eq!(reconstruct_operator(&q), ParaLinearOperator::zero(3));
    }

    #[test]
    fn left_multiplication_is_not_self_adjoint() {
        let l = ParaLinearOperator::left_mul(e(1), 2);
        assert!(!is_self_adjoint(&l, SelfAdjointMode::Exact, 1e-10));
        assert!(!is_self_adjoint(&l, SelfAdjointMode::Sampled { samples: DEFAULT_SAMPLES, seed: 0 }, 1e-10));
    }
}
