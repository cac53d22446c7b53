//! Vectors in `H = Re H ⊗ O` over a fixed orthonormal basis `u_1..u_n` of `Re H`.
//!
//! A vector is stored as its `n` octonion components, `x = Σ_k c_k u_k` with
//! `c_k = Σ_i c_k[i] e_i`. Flattened real coordinates use index `8k + i`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{right_singular, Matrix};
use crate::octonion::{ImaginaryUnit, Octonion};

/// Which side a scalar multiplies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VectorFile", into = "VectorFile")]
pub struct OVector {
    components: Vec<Octonion>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFile {
    dim: usize,
    components: Vec<Octonion>,
}

impl TryFrom<VectorFile> for OVector {
    type Error = Error;
    fn try_from(f: VectorFile) -> Result<Self> {
        if f.dim == 0 {
            return Err(Error::Parse("vector dimension must be positive".into()));
        }
        if f.components.len() != f.dim {
            return Err(Error::DimensionMismatch { expected: f.dim, found: f.components.len() });
        }
        if f.components.iter().any(|c| c.0.iter().any(|v| !v.is_finite())) {
            return Err(Error::Parse("non-finite vector coefficient".into()));
        }
        Ok(OVector { components: f.components })
    }
}

impl From<OVector> for VectorFile {
    fn from(v: OVector) -> Self {
        VectorFile { dim: v.dim(), components: v.components }
    }
}

impl OVector {
    pub fn new(components: Vec<Octonion>) -> Self {
        assert!(!components.is_empty(), "vectors need at least one component");
        OVector { components }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Octonion::ZERO; n])
    }

    /// The real basis vector `u_k`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = Self::zeros(n);
        v.components[k] = Octonion::ONE;
        v
    }

    /// The real-orthonormal basis vector with flat index `8k + i`, i.e. `e_i u_k`.
    pub fn flat_basis(n: usize, index: usize) -> Self {
        let mut flat = vec![0.0; 8 * n];
        flat[index] = 1.0;
        Self::from_flat(&flat)
    }

    /// A vector of `Re H` from its real coordinates.
    pub fn from_real(coords: &[f64]) -> Self {
        Self::new(coords.iter().map(|&c| Octonion::real(c)).collect())
    }

    pub fn from_flat(flat: &[f64]) -> Self {
        assert!(flat.len().is_multiple_of(8) && !flat.is_empty(), "flat length must be a positive multiple of 8");
        Self::new(
            flat.chunks_exact(8)
                .map(|c| {
                    let mut a = [0.0; 8];
                    a.copy_from_slice(c);
                    Octonion(a)
                })
                .collect(),
        )
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.components.iter().flat_map(|c| c.0).collect()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Octonion] {
        &self.components
    }

    pub fn component(&self, k: usize) -> Octonion {
        self.components[k]
    }

    fn check_dim(&self, other: &OVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() });
        }
        Ok(())
    }

    /// `⟨x, y⟩ = Σ_k conj(x_k) y_k`, conjugate-linear in the first slot.
    pub fn inner_product(&self, other: &OVector) -> Result<Octonion> {
        self.check_dim(other)?;
        Ok(self.components.iter().zip(&other.components).map(|(a, b)| a.conj() * *b).sum())
    }

    /// `⟨x, y⟩_R = Re⟨x, y⟩`, the Euclidean product of the flat coordinates.
    pub fn real_inner(&self, other: &OVector) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self.components.iter().zip(&other.components).map(|(a, b)| a.dot(b)).sum())
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.max_abs()))
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.components.iter().all(|c| c.is_real(tol))
    }

    /// Real coordinates of the `Re H` part.
    pub fn real_coords(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.re()).collect()
    }

    pub fn re_project(&self) -> OVector {
        OVector { components: self.components.iter().map(|c| Octonion::real(c.re())).collect() }
    }

    /// `(5/12) x - (1/12) Σ_{i=1..7} e_i x e_i`, evaluated literally.
    pub fn re_project_formula(&self) -> OVector {
        let mut acc = self.clone() * (5.0 / 12.0);
        for i in 1..8 {
            let ei = Octonion::basis(i);
            let t = self.scale(ei, Side::Right).scale(ei, Side::Left);
            acc = acc - t * (1.0 / 12.0);
        }
        acc
    }

    pub fn scale(&self, p: Octonion, side: Side) -> OVector {
        let components = match side {
            Side::Left => self.components.iter().map(|c| p * *c).collect(),
            Side::Right => self.components.iter().map(|c| *c * p).collect(),
        };
        OVector { components }
    }

    /// `x p`.
    pub fn rmul(&self, p: Octonion) -> OVector {
        self.scale(p, Side::Right)
    }

    /// `p x`.
    pub fn lmul(&self, p: Octonion) -> OVector {
        self.scale(p, Side::Left)
    }

    /// `[x, p, q] = (xp)q - x(pq)`, componentwise.
    pub fn right_associator(&self, p: Octonion, q: Octonion) -> OVector {
        OVector { components: self.components.iter().map(|c| Octonion::associator(*c, p, q)).collect() }
    }

    /// `B_p(u, v) = ⟨u, v⟩ p - ⟨u, v p⟩`.
    pub fn second_associator(u: &OVector, v: &OVector, p: Octonion) -> Result<Octonion> {
        Ok(u.inner_product(v)? * p - u.inner_product(&v.rmul(p))?)
    }

    /// The `n x 7` matrix whose rows are the imaginary parts of the components.
    fn imaginary_matrix(&self) -> Matrix {
        Matrix::from_fn(self.dim(), 7, |k, r| self.components[k][r + 1])
    }

    /// If every imaginary part lies on one line, returns a unit `J` on that
    /// line (numerical rank of the imaginary parts at most 1). A vector with
    /// no imaginary content gets `e_1`.
    pub fn slice_membership(&self, tol: f64) -> Result<Option<ImaginaryUnit>> {
        let total = self.norm();
        if total == 0.0 {
            return Err(Error::ZeroVector);
        }
        let (sigma, v) = right_singular(&self.imaginary_matrix());
        let (s1, s2) = (sigma[0], sigma[1]);
        if s1 <= tol * total {
            return Ok(Some(ImaginaryUnit::e(1)));
        }
        if s2 > tol * s1 {
            return Ok(None);
        }
        let mut coords = [0.0; 7];
        for (r, c) in coords.iter_mut().enumerate() {
            *c = v[(r, 0)];
        }
        Ok(Some(ImaginaryUnit::from_imaginary(coords)?))
    }

    /// Coefficients `⟨z_a, x⟩` of `x` in a weak associative orthonormal basis.
    pub fn parseval_expand(&self, basis: &[SliceParavector]) -> Result<Vec<Octonion>> {
        if basis.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: basis.len() });
        }
        let zs: Vec<OVector> = basis.iter().map(|z| z.value()).collect();
        let residual = weak_orthonormality_residual(&zs)?;
        if residual > 1e-8 {
            return Err(Error::BasisNotOrthonormal { residual });
        }
        zs.iter().map(|z| z.inner_product(self)).collect()
    }

    /// `Σ_a z_a c_a`.
    pub fn synthesize(basis: &[SliceParavector], coeffs: &[Octonion]) -> OVector {
        assert_eq!(basis.len(), coeffs.len());
        let n = basis[0].dim();
        basis.iter().zip(coeffs).fold(OVector::zeros(n), |acc, (z, c)| acc + z.value().rmul(*c))
    }
}

/// Largest deviation from `⟨z_a, z_b⟩ = δ_ab` and `B_{e_p}(z_a, z_b) = 0`.
pub fn weak_orthonormality_residual(zs: &[OVector]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (a, za) in zs.iter().enumerate() {
        for (b, zb) in zs.iter().enumerate() {
            let target = if a == b { Octonion::ONE } else { Octonion::ZERO };
            worst = worst.max((za.inner_product(zb)? - target).max_abs());
            for p in 1..8 {
                worst = worst.max(OVector::second_associator(za, zb, Octonion::basis(p))?.max_abs());
            }
        }
    }
    Ok(worst)
}

impl Add for OVector {
    type Output = OVector;
    fn add(self, rhs: OVector) -> OVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        OVector { components: self.components.iter().zip(rhs.components).map(|(a, b)| *a + b).collect() }
    }
}

impl Sub for OVector {
    type Output = OVector;
    fn sub(self, rhs: OVector) -> OVector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        OVector { components: self.components.iter().zip(rhs.components).map(|(a, b)| *a - b).collect() }
    }
}

impl Mul<f64> for OVector {
    type Output = OVector;
    fn mul(self, rhs: f64) -> OVector {
        OVector { components: self.components.into_iter().map(|c| c * rhs).collect() }
    }
}

impl Neg for OVector {
    type Output = OVector;
    fn neg(self) -> OVector {
        self * -1.0
    }
}

/// `z = u + J v` with `u, v` in `Re H` given by real coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceParavector {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub axis: ImaginaryUnit,
}

impl SliceParavector {
    pub fn new(u: Vec<f64>, v: Vec<f64>, axis: ImaginaryUnit) -> Self {
        assert_eq!(u.len(), v.len(), "slice parts must have equal length");
        SliceParavector { u, v, axis }
    }

    pub fn real(u: Vec<f64>) -> Self {
        let n = u.len();
        Self::new(u, vec![0.0; n], ImaginaryUnit::e(1))
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    pub fn value(&self) -> OVector {
        let j = self.axis.value();
        OVector::new(self.u.iter().zip(&self.v).map(|(a, b)| Octonion::real(*a) + j * *b).collect())
    }

    /// Splits `x` along the axis found by [`OVector::slice_membership`].
    pub fn from_vector(x: &OVector, tol: f64) -> Result<Self> {
        let axis = x.slice_membership(tol)?.ok_or(Error::NotSlice)?;
        let j = axis.value();
        let u = x.real_coords();
        let v = x.components().iter().map(|c| c.dot(&j)).collect();
        Ok(SliceParavector { u, v, axis })
    }

    pub fn norm(&self) -> f64 {
        self.value().norm()
    }
}
