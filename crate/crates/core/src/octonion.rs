//! Octonion arithmetic over the basis `{1, e1, ..., e7}`.
//!
//! Products of imaginary units follow `e_i e_j = eps_ijk e_k - delta_ij`, with
//! `eps_ijk = +1` on the oriented triples
//! `(123), (145), (176), (246), (257), (347), (365)` and their cyclic shifts.
//! The full 8x8 table is generated once from those seven triples.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The seven oriented triples of the Fano plane.
pub const FANO_TRIPLES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

/// Basis products: `e_i e_j = sign[i][j] * e_{index[i][j]}`.
#[derive(Debug, Clone)]
pub struct MulTable {
    pub index: [[usize; 8]; 8],
    pub sign: [[f64; 8]; 8],
}

impl MulTable {
    fn generate() -> Self {
        let mut index = [[0usize; 8]; 8];
        let mut sign = [[0.0f64; 8]; 8];
        for i in 0..8 {
            index[0][i] = i;
            sign[0][i] = 1.0;
            index[i][0] = i;
            sign[i][0] = 1.0;
        }
        for i in 1..8 {
            index[i][i] = 0;
            sign[i][i] = -1.0;
        }
        for &[a, b, c] in &FANO_TRIPLES {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                index[x][y] = z;
                sign[x][y] = 1.0;
                index[y][x] = z;
                sign[y][x] = -1.0;
            }
        }
        let table = MulTable { index, sign };
        table.assert_alternative();
        table
    }

    /// Left and right alternativity on all basis triples.
    fn assert_alternative(&self) {
        for i in 0..8 {
            for j in 0..8 {
                let (x, y) = (Octonion::basis(i), Octonion::basis(j));
                let left = mul_with(self, mul_with(self, x, x), y) - mul_with(self, x, mul_with(self, x, y));
                let right = mul_with(self, mul_with(self, y, x), x) - mul_with(self, y, mul_with(self, x, x));
                assert!(
                    left.norm_sqr() == 0.0 && right.norm_sqr() == 0.0,
                    "multiplication table is not alternative at (e{i}, e{j})"
                );
            }
        }
    }
}

/// The shared multiplication table.
pub fn mul_table() -> &'static MulTable {
    static TABLE: OnceLock<MulTable> = OnceLock::new();
    TABLE.get_or_init(MulTable::generate)
}

fn mul_with(table: &MulTable, a: Octonion, b: Octonion) -> Octonion {
    let mut out = [0.0; 8];
    for i in 0..8 {
        let ai = a.0[i];
        if ai == 0.0 {
            continue;
        }
        for j in 0..8 {
            out[table.index[i][j]] += table.sign[i][j] * ai * b.0[j];
        }
    }
    Octonion(out)
}

/// An octonion `x0 + x1 e1 + ... + x7 e7`.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);

    pub fn new(coeffs: [f64; 8]) -> Self {
        Octonion(coeffs)
    }

    pub fn real(x: f64) -> Self {
        let mut c = [0.0; 8];
        c[0] = x;
        Octonion(c)
    }

    /// `e_i`, with `e_0 = 1`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }

    pub fn coeffs(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn re(&self) -> f64 {
        self.0[0]
    }

    pub fn im(&self) -> Octonion {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    pub fn conj(&self) -> Octonion {
        let mut c = self.0;
        for v in &mut c[1..] {
            *v = -*v;
        }
        Octonion(c)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `conj(a) / |a|^2`.
    pub fn inverse(&self) -> Result<Octonion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj() / n2)
    }

    /// Euclidean inner product of the coefficient vectors, `Re(conj(a) b)`.
    pub fn dot(&self, other: &Octonion) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.im().norm() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(x: Octonion, y: Octonion) -> Octonion {
        x * y - y * x
    }

    /// `[x, y, z] = (xy)z - x(yz)`.
    ///
    /// The arguments are put in a canonical order before the products are
    /// formed, so permuting them changes the result by exactly the sign of
    /// the permutation, and a repeated argument gives exactly zero.
    pub fn associator(x: Octonion, y: Octonion, z: Octonion) -> Octonion {
        let mut args = [x, y, z];
        let mut sign = 1.0;
        for (a, b) in [(0, 1), (1, 2), (0, 1)] {
            match args[a].total_cmp(&args[b]) {
                std::cmp::Ordering::Greater => {
                    args.swap(a, b);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return Octonion::ZERO,
                std::cmp::Ordering::Less => {}
            }
        }
        let [x, y, z] = args;
        ((x * y) * z - x * (y * z)) * sign
    }

    fn total_cmp(&self, other: &Octonion) -> std::cmp::Ordering {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

/// All scalar invariants of one octonion at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnaryAlgebra {
    pub conj: Octonion,
    pub norm: f64,
    pub inverse: Octonion,
    pub re: f64,
    pub im: Octonion,
}

/// Conjugate, norm, inverse and real/imaginary split of `a`.
pub fn unary_algebra(a: Octonion) -> Result<UnaryAlgebra> {
    Ok(UnaryAlgebra { conj: a.conj(), norm: a.norm(), inverse: a.inverse()?, re: a.re(), im: a.im() })
}

/// Imaginary part recovered from associators:
/// `Im p = -(1/48) sum_{i,j=1..7} [e_i, e_j, (e_i e_j) p]`.
pub fn im_via_associator(p: Octonion) -> Octonion {
    let mut acc = Octonion::ZERO;
    for i in 1..8 {
        for j in 1..8 {
            let ei = Octonion::basis(i);
            let ej = Octonion::basis(j);
            acc += Octonion::associator(ei, ej, (ei * ej) * p);
        }
    }
    acc * (-1.0 / 48.0)
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Octonion {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Add for Octonion {
    type Output = Octonion;
    fn add(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a += b;
        }
        Octonion(c)
    }
}

impl AddAssign for Octonion {
    fn add_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    fn sub(self, rhs: Octonion) -> Octonion {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(rhs.0) {
            *a -= b;
        }
        Octonion(c)
    }
}

impl SubAssign for Octonion {
    fn sub_assign(&mut self, rhs: Octonion) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|v| -v))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        mul_with(mul_table(), self, rhs)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    fn mul(self, rhs: f64) -> Octonion {
        Octonion(self.0.map(|v| v * rhs))
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    fn mul(self, rhs: Octonion) -> Octonion {
        rhs * self
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    fn div(self, rhs: f64) -> Octonion {
        Octonion(self.0.map(|v| v / rhs))
    }
}

impl std::iter::Sum for Octonion {
    fn sum<I: Iterator<Item = Octonion>>(iter: I) -> Octonion {
        iter.fold(Octonion::ZERO, |a, b| a + b)
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion{:?}", self.0)
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0[0])?;
        for i in 1..8 {
            let v = self.0[i];
            if v != 0.0 {
                let sign = if v < 0.0 { '-' } else { '+' };
                write!(f, " {} {}e{}", sign, v.abs(), i)?;
            }
        }
        Ok(())
    }
}

/// A unit imaginary octonion `J`, so that `J^2 = -1`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ImaginaryUnit(Octonion);

impl ImaginaryUnit {
    /// Accepts `j` when `Re j` and `|j| - 1` are both within `tol`; the stored
    /// value is the exact normalization of `Im j`.
    pub fn new(j: Octonion, tol: f64) -> Result<Self> {
        let n = j.im().norm();
        if j.re().abs() > tol || (n - 1.0).abs() > tol || n == 0.0 {
            return Err(Error::NotImaginaryUnit { re: j.re(), norm: j.norm() });
        }
        Ok(ImaginaryUnit(j.im() / n))
    }

    /// Normalizes the imaginary part of `v`.
    pub fn from_direction(v: Octonion) -> Result<Self> {
        let im = v.im();
        let n = im.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(ImaginaryUnit(im / n))
    }

    /// Builds `J` from its seven imaginary coordinates.
    pub fn from_imaginary(coords: [f64; 7]) -> Result<Self> {
        let mut c = [0.0; 8];
        c[1..].copy_from_slice(&coords);
        Self::from_direction(Octonion(c))
    }

    pub fn e(i: usize) -> Self {
        assert!((1..8).contains(&i), "imaginary basis index out of range");
        ImaginaryUnit(Octonion::basis(i))
    }

    pub fn value(&self) -> Octonion {
        self.0
    }

    pub fn imaginary_coords(&self) -> [f64; 7] {
        let mut out = [0.0; 7];
        out.copy_from_slice(&self.0 .0[1..]);
        out
    }

    pub fn negate(&self) -> Self {
        ImaginaryUnit(-self.0)
    }
}
