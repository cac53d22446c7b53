//! Slow, literal reference implementations.
//!
//! Nothing here touches the core-map representation, the cached matrix
//! shortcuts or the multiplication-matrix helpers: every operator is evaluated
//! vector by vector from its defining formula, then tabulated on the `8n`
//! real basis vectors.

use crate::error::Result;
use crate::linalg::Matrix;
use crate::octonion::{Octonion, FANO_TRIPLES};
use crate::operator::ParaLinearOperator;
use crate::random;
use crate::vector::{OVector, Side};

/// A real `8n x 8n` matrix tabulated from a formula.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOracle {
    pub dim: usize,
    pub matrix: Matrix,
}

impl DenseOracle {
    /// Column `c` is `f(x_c)` for the flat basis vector `x_c`.
    pub fn tabulate(n: usize, mut f: impl FnMut(&OVector) -> OVector) -> Self {
        let mut matrix = Matrix::zeros(8 * n, 8 * n);
        for c in 0..8 * n {
            let y = f(&OVector::flat_basis(n, c));
            matrix.set_column(c, &y.to_flat());
        }
        DenseOracle { dim: n, matrix }
    }

    pub fn apply(&self, x: &OVector) -> OVector {
        OVector::from_flat(&self.matrix.matvec(&x.to_flat()))
    }

    pub fn max_abs_diff(&self, t: &ParaLinearOperator) -> f64 {
        (&self.matrix - t.matrix()).max_abs()
    }
}

/// `x ↦ Σ_i e_i Re(f(g(x ē_i)))`.
pub fn oracle_regular_compose(f: &ParaLinearOperator, g: &ParaLinearOperator) -> DenseOracle {
    DenseOracle::tabulate(f.dim(), |x| {
        let mut acc = OVector::zeros(x.dim());
        for i in 0..8 {
            let ei = Octonion::basis(i);
            let inner = f.apply(&g.apply(&x.rmul(ei.conj())).unwrap()).unwrap();
            acc = acc + inner.re_project().lmul(ei);
        }
        acc
    })
}

/// Largest `|⟨x, T* y⟩ - ⟨T x, y⟩ + [y, T, x]|` over sampled pairs.
///
/// With `[y, T, x] = Σ e_i ⟨y, B_{e_i}(T, x)⟩_R` and `T*` the real transpose,
/// the correction enters with a minus sign: `⟨x, T* y⟩ = ⟨T x, y⟩ - [y, T, x]`.
/// For `T = L_{e_1}`, `x = e_2`, `y = e_4` the three terms are `e_7`, `-e_7`
/// and `-2 e_7`.
pub fn oracle_adjoint_contract(t: &ParaLinearOperator, trials: usize, seed: u64) -> f64 {
    adjoint_contract_with_sign(t, trials, seed, -1.0)
}

/// Same sampling as [`oracle_adjoint_contract`], for `⟨T x, y⟩ + sign [y, T, x]`.
pub fn adjoint_contract_with_sign(t: &ParaLinearOperator, trials: usize, seed: u64, sign: f64) -> f64 {
    let adj = t.adjoint();
    let n = t.dim();
    let mut worst: f64 = 0.0;
    for trial in 0..trials {
        let mut rng = random::trial_rng(seed, trial as u64);
        let x = random::vector(&mut rng, n);
        let y = random::vector(&mut rng, n);
        let lhs = x.inner_product(&adj.apply(&y).unwrap()).unwrap();
        let rhs = t.apply(&x).unwrap().inner_product(&y).unwrap()
            + ParaLinearOperator::triple_associator(&y, t, &x).unwrap() * sign;
        worst = worst.max((lhs - rhs).max_abs());
    }
    worst
}

/// Checks all 64 basis products against the oriented triples.
pub fn oracle_fano_table() -> bool {
    let expected = |i: usize, j: usize| -> Octonion {
        if i == 0 {
            return Octonion::basis(j);
        }
        if j == 0 {
            return Octonion::basis(i);
        }
        if i == j {
            return -Octonion::ONE;
        }
        for t in FANO_TRIPLES {
            for shift in 0..3 {
                let (a, b, c) = (t[shift], t[(shift + 1) % 3], t[(shift + 2) % 3]);
                if (a, b) == (i, j) {
                    return Octonion::basis(c);
                }
                if (b, a) == (i, j) {
                    return -Octonion::basis(c);
                }
            }
        }
        unreachable!("every pair of distinct imaginary units lies on one line")
    };
    (0..8).all(|i| (0..8).all(|j| Octonion::basis(i) * Octonion::basis(j) == expected(i, j)))
}

/// `T(x) = Σ_i e_i f_R(x ē_i)` evaluated with vector operations only.
pub fn oracle_from_core(core: &Matrix) -> DenseOracle {
    let n = core.rows();
    DenseOracle::tabulate(n, |x| {
        let mut acc = OVector::zeros(n);
        for i in 0..8 {
            let ei = Octonion::basis(i);
            let re = core.matvec(&x.rmul(ei.conj()).to_flat());
            acc = acc + OVector::from_real(&re).lmul(ei);
        }
        acc
    })
}

/// The octonion matrix `G` with `T u_a = Σ_b G_ba u_b`, read off by applying
/// `T` to the real basis.
pub fn octonion_matrix(t: &ParaLinearOperator) -> Vec<Vec<Octonion>> {
    let n = t.dim();
    let cols: Vec<OVector> = (0..n).map(|a| t.apply(&OVector::unit(n, a)).unwrap()).collect();
    (0..n).map(|b| (0..n).map(|a| cols[a].component(b)).collect()).collect()
}

/// `x ↦ G x` with octonion products.
pub fn oracle_octonion_matrix(g: &[Vec<Octonion>]) -> DenseOracle {
    let n = g.len();
    DenseOracle::tabulate(n, |x| OVector::new((0..n).map(|b| (0..n).map(|a| g[b][a] * x.component(a)).sum()).collect()))
}

/// Adjoint through the conjugate transpose of the octonion matrix.
pub fn oracle_adjoint(t: &ParaLinearOperator) -> DenseOracle {
    let g = octonion_matrix(t);
    let n = g.len();
    let gh: Vec<Vec<Octonion>> = (0..n).map(|b| (0..n).map(|a| g[a][b].conj()).collect()).collect();
    oracle_octonion_matrix(&gh)
}

/// Scalar actions through their Moufang forms, `r T(x r⁻¹) r` and `T(r x r) r⁻¹`.
pub fn oracle_scalar_action(t: &ParaLinearOperator, r: Octonion, side: Side) -> Result<DenseOracle> {
    let rinv = r.inverse()?;
    Ok(DenseOracle::tabulate(t.dim(), |x| match side {
        Side::Left => t.apply(&x.rmul(rinv)).unwrap().rmul(r).lmul(r),
        Side::Right => t.apply(&x.lmul(r).rmul(r)).unwrap().rmul(rinv),
    }))
}

/// `x ↦ r T(x) + B_r(T, x)` or `x ↦ T(r x) - B_r(T, x)`.
pub fn oracle_scalar_action_defining(t: &ParaLinearOperator, r: Octonion, side: Side) -> DenseOracle {
    DenseOracle::tabulate(t.dim(), |x| {
        let b = t.apply(x).unwrap().rmul(r) - t.apply(&x.rmul(r)).unwrap();
        match side {
            Side::Left => t.apply(x).unwrap().lmul(r) + b,
            Side::Right => t.apply(&x.lmul(r)).unwrap() - b,
        }
    })
}

/// `x ↦ z ⟨z, x⟩`.
pub fn oracle_slice_projection(z: &OVector) -> DenseOracle {
    DenseOracle::tabulate(z.dim(), |x| z.rmul(z.inner_product(x).unwrap()))
}

/// `(5/12) T - (1/12) Σ_i e_i ⊙ T ⊙ e_i`, with each scalar action in its
/// defining form and no matrix algebra.
pub fn oracle_op_real_part(t: &ParaLinearOperator) -> DenseOracle {
    let n = t.dim();
    DenseOracle::tabulate(n, |x| {
        let mut acc = t.apply(x).unwrap() * (5.0 / 12.0);
        for i in 1..8 {
            let e = Octonion::basis(i);
            // S = e ⊙ T, then (S ⊙ e)(x) = S(e x) - S(x) e + S(x e).
            let s = |y: &OVector| {
                let ty = t.apply(y).unwrap();
                ty.lmul(e) + ty.rmul(e) - t.apply(&y.rmul(e)).unwrap()
            };
            let v = s(&x.lmul(e)) - s(x).rmul(e) + s(&x.rmul(e));
            acc = acc - v * (1.0 / 12.0);
        }
        acc
    })
}
