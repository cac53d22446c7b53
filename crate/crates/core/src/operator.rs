//! Right para-linear operators on `H = O^n`.
//!
//! An operator is stored through its core map `f_R : H -> Re H`, an `n x 8n`
//! real matrix. The full action is `T(x) = Σ_i e_i f_R(x ē_i)`, cached as an
//! `8n x 8n` real matrix acting on flat coordinates.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::octonion::Octonion;
use crate::vector::{OVector, Side};

/// Matrix of `x ↦ p x` on flat coordinates of `O^n`.
pub fn left_mul_matrix(p: Octonion, n: usize) -> Matrix {
    let mut m = Matrix::zeros(8 * n, 8 * n);
    for i in 0..8 {
        let col = p * Octonion::basis(i);
        for k in 0..n {
            for r in 0..8 {
                m[(8 * k + r, 8 * k + i)] = col[r];
            }
        }
    }
    m
}

/// Matrix of `x ↦ x p` on flat coordinates of `O^n`.
pub fn right_mul_matrix(p: Octonion, n: usize) -> Matrix {
    let mut m = Matrix::zeros(8 * n, 8 * n);
    for i in 0..8 {
        let col = Octonion::basis(i) * p;
        for k in 0..n {
            for r in 0..8 {
                m[(8 * k + r, 8 * k + i)] = col[r];
            }
        }
    }
    m
}

/// Rows `8k` of an `8n x 8n` matrix: the real part of its action.
fn real_rows(m: &Matrix) -> Matrix {
    let n = m.rows() / 8;
    Matrix::from_fn(n, m.cols(), |k, c| m[(8 * k, c)])
}

/// Worst `|Re B_p(M, x)|` over `p ∈ {e_1..e_7}` and flat basis vectors `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParaLinearity {
    pub residual: f64,
    pub p: usize,
    pub basis_index: usize,
}

pub fn para_linearity(m: &Matrix) -> ParaLinearity {
    let n = m.rows() / 8;
    let mut worst = ParaLinearity { residual: 0.0, p: 1, basis_index: 0 };
    for p in 1..8 {
        let rp = right_mul_matrix(Octonion::basis(p), n);
        let b = &(&rp * m) - &(m * &rp);
        for k in 0..n {
            for c in 0..8 * n {
                let v = b[(8 * k, c)].abs();
                if v > worst.residual {
                    worst = ParaLinearity { residual: v, p, basis_index: c };
                }
            }
        }
    }
    worst
}

#[derive(Clone, PartialEq)]
pub struct ParaLinearOperator {
    dim: usize,
    core: Matrix,
    matrix: Matrix,
}

impl std::fmt::Debug for ParaLinearOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParaLinearOperator").field("dim", &self.dim).field("core", &self.core).finish()
    }
}

impl ParaLinearOperator {
    pub fn from_core(core: Matrix) -> Result<Self> {
        let n = core.rows();
        if n == 0 || core.cols() != 8 * n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n} x {}", 8 * n),
                found: format!("{} x {}", core.rows(), core.cols()),
            });
        }
        let mut matrix = Matrix::zeros(8 * n, 8 * n);
        for i in 0..8 {
            let rows = &core * &right_mul_matrix(Octonion::basis(i).conj(), n);
            for k in 0..n {
                matrix.row_mut(8 * k + i).copy_from_slice(rows.row(k));
            }
        }
        Ok(ParaLinearOperator { dim: n, core, matrix })
    }

    /// Accepts `m` when every `|Re B_p(m, x)|` is at most `tol`.
    pub fn from_real_matrix(m: &Matrix, tol: f64) -> Result<Self> {
        let (r, c) = m.shape();
        if r == 0 || r != c || r % 8 != 0 {
            return Err(Error::ShapeMismatch { expected: "8n x 8n".into(), found: format!("{r} x {c}") });
        }
        let check = para_linearity(m);
        if check.residual > tol || !check.residual.is_finite() {
            return Err(Error::NotParaLinear { p: check.p, basis_index: check.basis_index, residual: check.residual });
        }
        Self::from_core(real_rows(m))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_core(Matrix::from_fn(n, 8 * n, |k, c| if c == 8 * k { 1.0 } else { 0.0 }))
            .expect("identity core has a valid shape")
    }

    pub fn zero(n: usize) -> Self {
        Self::from_core(Matrix::zeros(n, 8 * n)).expect("zero core has a valid shape")
    }

    /// `L_p : x ↦ p x`.
    pub fn left_mul(p: Octonion, n: usize) -> Self {
        Self::from_core(real_rows(&left_mul_matrix(p, n))).expect("left multiplication core has a valid shape")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn core(&self) -> &Matrix {
        &self.core
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim != n {
            return Err(Error::DimensionMismatch { expected: self.dim, found: n });
        }
        Ok(())
    }

    pub fn apply(&self, x: &OVector) -> Result<OVector> {
        self.check_dim(x.dim())?;
        Ok(OVector::from_flat(&self.matrix.matvec(&x.to_flat())))
    }

    /// `f_R(x)` as real coordinates in `Re H`.
    pub fn apply_core(&self, x: &OVector) -> Result<Vec<f64>> {
        self.check_dim(x.dim())?;
        Ok(self.core.matvec(&x.to_flat()))
    }

    /// `B_p(T, x) = T(x) p - T(x p)`.
    pub fn b_p(&self, x: &OVector, p: Octonion) -> Result<OVector> {
        Ok(self.apply(x)?.rmul(p) - self.apply(&x.rmul(p))?)
    }

    /// `Σ_i f_R([x, p, e_i]) e_i`.
    pub fn b_p_formula(&self, x: &OVector, p: Octonion) -> Result<OVector> {
        let mut acc = OVector::zeros(self.dim);
        for i in 1..8 {
            let ei = Octonion::basis(i);
            let re = self.apply_core(&x.right_associator(p, ei))?;
            acc = acc + OVector::from_real(&re).rmul(ei);
        }
        Ok(acc)
    }

    /// `f ⊛ g`, the para-linear map with `Re((f ⊛ g) x) = Re(f(g(x)))`.
    pub fn regular_compose(&self, g: &ParaLinearOperator) -> Result<Self> {
        self.check_dim(g.dim)?;
        Self::from_core(&self.core * &g.matrix)
    }

    /// `[f, g, x] = (f ⊛ g)(x) - f(g(x))`.
    pub fn composition_associator(&self, g: &ParaLinearOperator, x: &OVector) -> Result<OVector> {
        Ok(self.regular_compose(g)?.apply(x)? - self.apply(&g.apply(x)?)?)
    }

    /// `[y, T, x] = Σ_i e_i ⟨y, B_{e_i}(T, x)⟩_R`.
    pub fn triple_associator(y: &OVector, t: &ParaLinearOperator, x: &OVector) -> Result<Octonion> {
        let mut acc = Octonion::ZERO;
        for i in 1..8 {
            let ei = Octonion::basis(i);
            acc += ei * y.real_inner(&t.b_p(x, ei)?)?;
        }
        Ok(acc)
    }

    /// The adjoint, whose matrix is the real transpose.
    pub fn adjoint(&self) -> Self {
        let matrix = self.matrix.transpose();
        let core = real_rows(&matrix);
        debug_assert!(para_linearity(&matrix).residual <= 1e-12 * (1.0 + matrix.max_abs()));
        ParaLinearOperator { dim: self.dim, core, matrix }
    }

    /// `r ⊙ T : x ↦ r T(x) + B_r(T, x)` or `T ⊙ r : x ↦ T(r x) - B_r(T, x)`.
    pub fn scalar_action(&self, r: Octonion, side: Side) -> Self {
        let n = self.dim;
        let m = &self.matrix;
        let rr = right_mul_matrix(r, n);
        let lr = left_mul_matrix(r, n);
        let full = match side {
            Side::Left => &(&(&lr * m) + &(&rr * m)) - &(m * &rr),
            Side::Right => &(&(m * &lr) - &(&rr * m)) + &(m * &rr),
        };
        if cfg!(debug_assertions) {
            let tol = 1e-12 * (1.0 + full.max_abs());
            if let Err(e) = Self::from_real_matrix(&full, tol) {
                panic!("scalar action left the para-linear class: {e}");
            }
        }
        Self::from_core(real_rows(&full)).expect("shape preserved")
    }

    /// Real operator norm of the cached matrix.
    pub fn operator_norm(&self) -> f64 {
        self.matrix.spectral_norm()
    }

    /// `(5/12) T - (1/12) Σ_i (e_i ⊙ T) ⊙ e_i`, the O-linear part.
    pub fn op_real_part(&self) -> Self {
        let mut acc = self.clone() * (5.0 / 12.0);
        for i in 1..8 {
            let ei = Octonion::basis(i);
            let t = self.scalar_action(ei, Side::Left).scalar_action(ei, Side::Right);
            acc = acc - t * (1.0 / 12.0);
        }
        acc
    }

    /// Worst `|B_{e_p}(T, x)|` over flat basis vectors; zero iff `T` is O-linear.
    pub fn o_linearity_residual(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for p in 1..8 {
            let rp = right_mul_matrix(Octonion::basis(p), n);
            let b = &(&rp * &self.matrix) - &(&self.matrix * &rp);
            worst = worst.max(b.max_abs());
        }
        worst
    }

    /// `G_ba = (T u_a)_b`: the octonion matrix with `T x = G x` for real `x`.
    pub fn octonion_entries(&self) -> Vec<Vec<Octonion>> {
        let n = self.dim;
        (0..n)
            .map(|b| {
                (0..n)
                    .map(|a| {
                        let mut c = [0.0; 8];
                        for (r, v) in c.iter_mut().enumerate() {
                            *v = self.matrix[(8 * b + r, 8 * a)];
                        }
                        Octonion(c)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn max_abs_diff(&self, other: &ParaLinearOperator) -> f64 {
        (&self.matrix - &other.matrix).max_abs()
    }

    /// Operator-norm distance.
    pub fn distance(&self, other: &ParaLinearOperator) -> f64 {
        (&self.matrix - &other.matrix).spectral_norm()
    }
}

impl Add for ParaLinearOperator {
    type Output = ParaLinearOperator;
    fn add(self, rhs: ParaLinearOperator) -> ParaLinearOperator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        ParaLinearOperator::from_core(&self.core + &rhs.core).expect("shape preserved")
    }
}

impl Sub for ParaLinearOperator {
    type Output = ParaLinearOperator;
    fn sub(self, rhs: ParaLinearOperator) -> ParaLinearOperator {
        assert_eq!(self.dim, rhs.dim, "operator dimension mismatch");
        ParaLinearOperator::from_core(&self.core - &rhs.core).expect("shape preserved")
    }
}

impl Mul<f64> for ParaLinearOperator {
    type Output = ParaLinearOperator;
    fn mul(self, rhs: f64) -> ParaLinearOperator {
        ParaLinearOperator::from_core(self.core.scale(rhs)).expect("shape preserved")
    }
}

/// Rows given either flat (row-major) or nested.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixData {
    Nested(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

impl MatrixData {
    fn into_matrix(self, rows: usize, cols: usize, name: &str) -> Result<Matrix> {
        let data = match self {
            MatrixData::Flat(v) => v,
            MatrixData::Nested(rs) => {
                if rs.len() != rows || rs.iter().any(|r| r.len() != cols) {
                    return Err(Error::ShapeMismatch {
                        expected: format!("{name}: {rows} rows of {cols}"),
                        found: format!("{} rows", rs.len()),
                    });
                }
                rs.into_iter().flatten().collect()
            }
        };
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{name}: {} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("non-finite entry in {name}")));
        }
        Ok(Matrix::from_row_major(rows, cols, data))
    }
}

/// On-disk operator: `{"dim", "core"}` or `{"dim", "matrix"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<MatrixData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixData>,
}

/// Upper bound on the octonionic dimension accepted from files.
pub const MAX_FILE_DIM: usize = 64;

impl OperatorFile {
    /// Para-linearity of a `"matrix"` input is checked at `tol` times the
    /// largest entry (at least 1).
    pub fn into_operator(self, tol: f64) -> Result<ParaLinearOperator> {
        let n = self.dim;
        if n == 0 || n > MAX_FILE_DIM {
            return Err(Error::Parse(format!("operator dimension {n} outside 1..={MAX_FILE_DIM}")));
        }
        match (self.core, self.matrix) {
            (Some(c), None) => ParaLinearOperator::from_core(c.into_matrix(n, 8 * n, "core")?),
            (None, Some(m)) => {
                let m = m.into_matrix(8 * n, 8 * n, "matrix")?;
                let scale = m.max_abs().max(1.0);
                ParaLinearOperator::from_real_matrix(&m, tol * scale)
            }
            _ => Err(Error::Parse("operator needs exactly one of \"core\" or \"matrix\"".into())),
        }
    }
}

impl From<&ParaLinearOperator> for OperatorFile {
    fn from(t: &ParaLinearOperator) -> Self {
        let rows = (0..t.dim).map(|k| t.core.row(k).to_vec()).collect();
        OperatorFile { dim: t.dim, core: Some(MatrixData::Nested(rows)), matrix: None }
    }
}

/// Tolerance used when deserializing a `"matrix"` operator through serde.
pub const DEFAULT_PARSE_TOL: f64 = 1e-9;

impl Serialize for ParaLinearOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParaLinearOperator {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        OperatorFile::deserialize(d)?.into_operator(DEFAULT_PARSE_TOL).map_err(serde::de::Error::custom)
    }
}
