//! Slice projections, strong eigenpairs and the spectral decomposition of
//! self-adjoint para-linear operators.
//!
//! `decompose` diagonalizes the real `8n x 8n` matrix, groups eigenvalues
//! into clusters and then looks for an orthonormal family of slice
//! paravectors `z` inside each real eigenspace `V`, with `V` equal to the real
//! span of all `z e_k`. Finding such a family is a search: for a candidate
//! axis `J`, the slice vectors with that axis in `V` form `V ∩ C_J`, where
//! `C_J = (Re H + J Re H)` is a `2n`-dimensional real subspace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, orthonormal_range, right_singular, symmetric_eigen, Matrix};
use crate::octonion::{ImaginaryUnit, Octonion};
use crate::operator::ParaLinearOperator;
use crate::polarization::{is_self_adjoint, SelfAdjointMode};
use crate::random;
use crate::vector::{weak_orthonormality_residual, OVector, Side, SliceParavector};

/// Accepted deviation of `|z|` from 1 and of the imaginary parts of `z` from
/// a single line.
pub const SLICE_TOL: f64 = 1e-9;

/// `P_z : x ↦ z ⟨z, x⟩` for a unit slice paravector `z`.
pub fn slice_projection(z: &OVector) -> Result<ParaLinearOperator> {
    let nz = z.norm();
    if (nz - 1.0).abs() > SLICE_TOL {
        return Err(Error::NotUnit { norm: nz });
    }
    if z.slice_membership(SLICE_TOL)?.is_none() {
        return Err(Error::NotSlice);
    }
    Ok(projection_unchecked(z))
}

/// Core entries `Re(z_b conj(z_a) e_i)`: `P_z` acts on real vectors through
/// the octonion matrix `z z*`.
fn projection_unchecked(z: &OVector) -> ParaLinearOperator {
    let n = z.dim();
    let mut core = Matrix::zeros(n, 8 * n);
    for a in 0..n {
        for b in 0..n {
            let g = z.component(b) * z.component(a).conj();
            for i in 0..8 {
                core[(b, 8 * a + i)] = (g * Octonion::basis(i)).re();
            }
        }
    }
    ParaLinearOperator::from_core(core).expect("core has the right shape")
}

impl SliceParavector {
    pub fn projection(&self) -> Result<ParaLinearOperator> {
        slice_projection(&self.value())
    }
}

/// `|T z - z λ| ≤ tol |T| |z|`.
pub fn strong_eigencheck(t: &ParaLinearOperator, z: &OVector, lambda: f64, tol: f64) -> Result<bool> {
    let r = t.apply(z)? - z.clone() * lambda;
    Ok(r.norm() <= tol * t.operator_norm() * z.norm())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StrongEigenpair {
    pub lambda: f64,
    pub z: SliceParavector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub dim: usize,
    /// Nonzero eigenvalues, by descending `|λ|`.
    pub pairs: Vec<StrongEigenpair>,
    pub kernel: Vec<SliceParavector>,
}

impl SpectralDecomposition {
    /// `Σ λ_i P_{z_i}`.
    pub fn reconstruct(&self) -> ParaLinearOperator {
        self.pairs
            .iter()
            .fold(ParaLinearOperator::zero(self.dim), |acc, p| acc + projection_unchecked(&p.z.value()) * p.lambda)
    }

    /// Projection onto the kernel, `Σ P_z` over kernel vectors.
    pub fn kernel_projection(&self) -> ParaLinearOperator {
        self.kernel.iter().fold(ParaLinearOperator::zero(self.dim), |acc, z| acc + projection_unchecked(&z.value()))
    }

    pub fn pair_projections(&self) -> Vec<ParaLinearOperator> {
        self.pairs.iter().map(|p| projection_unchecked(&p.z.value())).collect()
    }

    /// Pair vectors followed by kernel vectors.
    pub fn basis(&self) -> Vec<SliceParavector> {
        self.pairs.iter().map(|p| p.z.clone()).chain(self.kernel.iter().cloned()).collect()
    }

    /// Distinct eigenvalues including 0 when the kernel is nontrivial.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for p in &self.pairs {
            if !out.contains(&p.lambda) {
                out.push(p.lambda);
            }
        }
        if !self.kernel.is_empty() {
            out.push(0.0);
        }
        out
    }

    pub fn to_file(&self, residual: f64) -> DecompositionFile {
        DecompositionFile {
            pairs: self
                .pairs
                .iter()
                .map(|p| PairFile { lambda: p.lambda, z: p.z.value(), axis: p.z.axis.imaginary_coords() })
                .collect(),
            kernel: self.kernel.iter().map(|z| z.value()).collect(),
            residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairFile {
    pub lambda: f64,
    pub z: OVector,
    pub axis: [f64; 7],
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionFile {
    pub pairs: Vec<PairFile>,
    pub kernel: Vec<OVector>,
    pub residual: f64,
}

/// `|T ⊛ P_z - P_z ⊙ λ|` in operator norm.
pub fn eigen_commutation_residual(t: &ParaLinearOperator, pair: &StrongEigenpair) -> Result<f64> {
    let p = projection_unchecked(&pair.z.value());
    let lhs = t.regular_compose(&p)?;
    let rhs = p.scalar_action(Octonion::real(pair.lambda), Side::Right);
    Ok(lhs.distance(&rhs))
}

/// Distance from the eigenspace below which a unit vector counts as lying in it.
const INTERSECTION_TOL: f64 = 1e-9;
/// Accepted defect in orthonormality and eigenspace containment, relative.
const VERIFY_TOL: f64 = 1e-8;
const RANDOM_AXES: usize = 32;
const REFINE_ITERS: usize = 500;
const POLISH_ITERS: usize = 3;

/// Spectral decomposition of a self-adjoint operator.
///
/// Fails with `NotSelfAdjoint` when `|M - Mᵀ| > tol |T|` and with
/// `NotStandardStrong(λ)` when no slice basis of some eigenspace is found.
pub fn decompose(t: &ParaLinearOperator, tol: f64, seed: u64) -> Result<SpectralDecomposition> {
    let n = t.dim();
    let tnorm = t.operator_norm();
    if !is_self_adjoint(t, SelfAdjointMode::Exact, tol) {
        return Err(Error::NotSelfAdjoint { asymmetry: t.matrix().asymmetry() });
    }
    if tnorm == 0.0 {
        let kernel = (0..n).map(|k| SliceParavector::real(OVector::unit(n, k).real_coords())).collect();
        return Ok(SpectralDecomposition { dim: n, pairs: Vec::new(), kernel });
    }
    let eig = symmetric_eigen(t.matrix()).ok_or(Error::NoConvergence)?;
    let tau = tol.max(1e-8) * tnorm;

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in eig.values.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if v - eig.values[*c.last().unwrap()] <= tau => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    let mut pairs = Vec::new();
    let mut kernel = Vec::new();
    for (ci, idx) in clusters.iter().enumerate() {
        let mean = idx.iter().map(|&i| eig.values[i]).sum::<f64>() / idx.len() as f64;
        let is_kernel = mean.abs() <= tau;
        let lambda = if is_kernel { 0.0 } else { mean };
        let r = Matrix::from_columns(8 * n, &idx.iter().map(|&i| eig.vectors.column(i)).collect::<Vec<_>>());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(ci as u64);
        let zs = harvest(&r, n, &mut rng).ok_or(Error::NotStandardStrong { lambda })?;
        if !contained(&r, &zs) {
            return Err(Error::NotStandardStrong { lambda });
        }
        if is_kernel {
            kernel.extend(zs);
        } else {
            pairs.extend(zs.into_iter().map(|z| StrongEigenpair { lambda, z }));
        }
    }

    let all: Vec<OVector> = pairs.iter().map(|p| p.z.value()).chain(kernel.iter().map(|z| z.value())).collect();
    let residual = weak_orthonormality_residual(&all)?;
    if all.len() != n || residual > VERIFY_TOL {
        let lambda = pairs.first().map(|p| p.lambda).unwrap_or(0.0);
        return Err(Error::NotStandardStrong { lambda });
    }

    pairs.sort_by(|a, b| b.lambda.abs().total_cmp(&a.lambda.abs()).then(b.lambda.total_cmp(&a.lambda)));
    Ok(SpectralDecomposition { dim: n, pairs, kernel })
}

/// Every `z e_k` lies in the column span of `r`.
fn contained(r: &Matrix, zs: &[SliceParavector]) -> bool {
    zs.iter().all(|z| {
        let zv = z.value();
        (0..8).all(|k| {
            let w = zv.rmul(Octonion::basis(k)).to_flat();
            let proj = r.matvec(&r.tr_matvec(&w));
            let d: Vec<f64> = w.iter().zip(&proj).map(|(a, b)| a - b).collect();
            norm(&d) <= VERIFY_TOL
        })
    })
}

/// Columns `e_0 u_k` and `J u_k`: an orthonormal basis of `C_J`.
fn slice_frame(j: &ImaginaryUnit, n: usize) -> Matrix {
    let jv = j.value();
    let mut b = Matrix::zeros(8 * n, 2 * n);
    for k in 0..n {
        b[(8 * k, 2 * k)] = 1.0;
        for i in 1..8 {
            b[(8 * k + i, 2 * k + 1)] = jv[i];
        }
    }
    b
}

/// Columns `e_0 u_k`: an orthonormal basis of `Re H`.
fn real_frame(n: usize) -> Matrix {
    Matrix::from_fn(8 * n, n, |r, k| if r == 8 * k { 1.0 } else { 0.0 })
}

/// `|w - R Rᵀ w|`.
fn distance_to(r: &Matrix, w: &[f64]) -> f64 {
    let p = project(r, w);
    norm(&w.iter().zip(&p).map(|(a, b)| a - b).collect::<Vec<_>>())
}

/// Unit vectors of `span(b)` lying in `span(r)`, up to `INTERSECTION_TOL`.
/// The distance is measured directly: `1 - σ²` loses half the digits.
fn intersection(r: &Matrix, b: &Matrix) -> Vec<Vec<f64>> {
    let s = r.transpose() * b;
    let (_, v) = right_singular(&s);
    (0..v.cols()).map(|j| b.matvec(&v.column(j))).take_while(|w| distance_to(r, w) <= INTERSECTION_TOL).collect()
}

fn top_singular(r: &Matrix, b: &Matrix) -> (f64, Vec<f64>) {
    let s = r.transpose() * b;
    let (sigma, v) = right_singular(&s);
    (sigma[0], b.matvec(&v.column(0)))
}

/// The dominant direction of the imaginary parts of all components of the
/// given flat vectors.
fn dominant_axis(vectors: &[Vec<f64>], n: usize) -> Option<ImaginaryUnit> {
    let rows: Vec<f64> =
        vectors.iter().flat_map(|w| (0..n).flat_map(move |k| w[8 * k + 1..8 * k + 8].to_vec())).collect();
    let m = Matrix::from_row_major(rows.len() / 7, 7, rows);
    let (sigma, v) = right_singular(&m);
    if sigma[0] == 0.0 {
        return None;
    }
    let mut c = [0.0; 7];
    for (i, x) in c.iter_mut().enumerate() {
        *x = v[(i, 0)];
    }
    ImaginaryUnit::from_imaginary(c).ok()
}

fn project(r: &Matrix, w: &[f64]) -> Vec<f64> {
    r.matvec(&r.tr_matvec(w))
}

/// Alternating projections between `span(r)` and `C_J`, re-estimating `J`
/// from the projected vectors each round.
fn refine_axis(r: &Matrix, j: ImaginaryUnit, n: usize, iters: usize) -> ImaginaryUnit {
    let mut j = j;
    let (_, mut w) = top_singular(r, &slice_frame(&j, n));
    for _ in 0..iters {
        let mut pw = project(r, &w);
        let nw = norm(&pw);
        if nw == 0.0 {
            break;
        }
        pw.iter_mut().for_each(|x| *x /= nw);
        let Some(next) = dominant_axis(&[pw.clone()], n) else { break };
        let frame = slice_frame(&next, n);
        let back = frame.matvec(&frame.tr_matvec(&pw));
        let moved = norm(&back.iter().zip(&pw).map(|(a, b)| a - b).collect::<Vec<_>>());
        j = next;
        w = back;
        if moved < 1e-15 {
            break;
        }
    }
    j
}

/// Re-estimates `J` from the intersection vectors (or the closest vector of
/// `C_J`) pushed back into `span(r)`.
fn polish_axis(r: &Matrix, j: ImaginaryUnit, n: usize) -> ImaginaryUnit {
    let mut j = j;
    for _ in 0..POLISH_ITERS {
        let frame = slice_frame(&j, n);
        let mut ws = intersection(r, &frame);
        if ws.is_empty() {
            ws.push(top_singular(r, &frame).1);
        }
        let projected: Vec<Vec<f64>> = ws.iter().map(|w| project(r, w)).collect();
        match dominant_axis(&projected, n) {
            Some(next) => j = align(next, &j),
            None => break,
        }
    }
    j
}

fn align(j: ImaginaryUnit, reference: &ImaginaryUnit) -> ImaginaryUnit {
    if j.value().dot(&reference.value()) < 0.0 {
        j.negate()
    } else {
        j
    }
}

fn push_axis(cands: &mut Vec<ImaginaryUnit>, im: Octonion) {
    let Ok(j) = ImaginaryUnit::from_direction(im) else { return };
    if cands.iter().all(|c| c.value().dot(&j.value()).abs() < 1.0 - 1e-9) {
        cands.push(j);
    }
}

/// Axis candidates for the eigenspace `span(r)`.
fn candidate_axes(r: &Matrix, n: usize, rng: &mut ChaCha8Rng) -> Vec<ImaginaryUnit> {
    let pi = r * &r.transpose();
    let mut cands = Vec::new();
    let entry = |b: usize, a: usize| {
        let mut c = [0.0; 8];
        for (i, x) in c.iter_mut().enumerate() {
            *x = pi[(8 * b + i, 8 * a)];
        }
        Octonion(c)
    };
    let scale = pi.max_abs().max(1e-300);
    // Entries of the projector's octonion matrix.
    for b in 0..n {
        for a in 0..n {
            let im = entry(b, a).im();
            if im.norm() > 1e-6 * scale {
                push_axis(&mut cands, im);
            }
        }
    }
    // Images of the eigenvectors of its real part.
    let re_g = Matrix::from_fn(n, n, |b, a| pi[(8 * b, 8 * a)]);
    if let Some(e) = symmetric_eigen(&re_g) {
        for s in e.vectors.columns() {
            let y = OVector::from_flat(&pi.matvec(&OVector::from_real(&s).to_flat()));
            let best = y.components().iter().map(|c| c.im()).max_by(|a, b| a.norm().total_cmp(&b.norm()));
            if let Some(im) = best {
                if im.norm() > 1e-6 * scale {
                    push_axis(&mut cands, im);
                }
            }
        }
    }
    // Components of the eigenspace basis.
    for w in r.columns() {
        for k in 0..n {
            let mut c = [0.0; 8];
            c[1..].copy_from_slice(&w[8 * k + 1..8 * k + 8]);
            let im = Octonion(c);
            if im.norm() > 1e-6 {
                push_axis(&mut cands, im);
            }
        }
    }
    for _ in 0..RANDOM_AXES {
        push_axis(&mut cands, random::imaginary_unit(rng).value());
    }
    cands
}

fn to_slice(w: &[f64], j: &ImaginaryUnit, n: usize) -> SliceParavector {
    let jv = j.value();
    let u = (0..n).map(|k| w[8 * k]).collect();
    let v = (0..n).map(|k| dot(&w[8 * k + 1..8 * k + 8], &jv.0[1..])).collect();
    SliceParavector::new(u, v, *j)
}

/// Rotates `z` within its slice so its first nonzero component is real and
/// positive, and fixes the sign of the axis.
fn normalize_phase(z: SliceParavector) -> SliceParavector {
    let SliceParavector { mut u, mut v, axis } = z;
    if let Some(k) = (0..u.len()).find(|&k| u[k] * u[k] + v[k] * v[k] > 1e-12) {
        let r = (u[k] * u[k] + v[k] * v[k]).sqrt();
        let (a, b) = (u[k] / r, -v[k] / r);
        for i in 0..u.len() {
            let (ui, vi) = (u[i], v[i]);
            u[i] = ui * a - vi * b;
            v[i] = ui * b + vi * a;
        }
        v[k] = 0.0;
    }
    if v.iter().all(|x| x.abs() <= 1e-12) {
        return SliceParavector::new(u, vec![0.0; v.len()], ImaginaryUnit::e(1));
    }
    let coords = axis.imaginary_coords();
    let lead = coords.iter().find(|c| c.abs() > 1e-12).copied().unwrap_or(1.0);
    if lead < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
        return SliceParavector::new(u, v, axis.negate());
    }
    SliceParavector::new(u, v, axis)
}

/// Complex Gram-Schmidt in `C_J`: removes `z⟨z,w⟩_R + zJ⟨zJ,w⟩_R`.
fn complex_gram_schmidt(ws: &[Vec<f64>], j: &ImaginaryUnit) -> Vec<Vec<f64>> {
    let mut zs: Vec<Vec<f64>> = Vec::new();
    for w in ws {
        let mut w = w.clone();
        for _ in 0..2 {
            for z in &zs {
                let zj = OVector::from_flat(z).rmul(j.value()).to_flat();
                let (a, b) = (dot(z, &w), dot(&zj, &w));
                for i in 0..w.len() {
                    w[i] -= a * z[i] + b * zj[i];
                }
            }
        }
        let nw = norm(&w);
        if nw > 0.5 {
            zs.push(w.into_iter().map(|x| x / nw).collect());
        }
    }
    zs
}

/// Removes `span{z e_k}` from `span(r)`; `None` if the dimensions do not add up.
fn deflate(r: &Matrix, zs: &[SliceParavector]) -> Option<Matrix> {
    let cols: Vec<Vec<f64>> = zs
        .iter()
        .flat_map(|z| {
            let zv = z.value();
            (0..8).map(move |k| zv.rmul(Octonion::basis(k)).to_flat())
        })
        .collect();
    let zm = Matrix::from_columns(r.rows(), &cols);
    let p = r - &(&zm * &(zm.transpose() * r));
    let next = orthonormal_range(&p, 0.5);
    (next.cols() + cols.len() == r.cols()).then_some(next)
}

fn harvest(r: &Matrix, n: usize, rng: &mut ChaCha8Rng) -> Option<Vec<SliceParavector>> {
    let mut r = r.clone();
    let mut out = Vec::new();
    if !r.cols().is_multiple_of(8) {
        return None;
    }

    let real: Vec<SliceParavector> = intersection(&r, &real_frame(n))
        .iter()
        .map(|w| SliceParavector::real((0..n).map(|k| w[8 * k]).collect()))
        .collect();
    let real: Vec<SliceParavector> = real.into_iter().map(normalize_phase).collect();
    if !real.is_empty() {
        r = deflate(&r, &real)?;
        out.extend(real);
    }

    while r.cols() > 0 {
        if !r.cols().is_multiple_of(8) {
            return None;
        }
        let cands = candidate_axes(&r, n, rng);
        let (mut best_sigma, mut best) = (f64::NEG_INFINITY, None);
        for j in cands {
            let (s, _) = top_singular(&r, &slice_frame(&j, n));
            if s > best_sigma + 1e-14 {
                best_sigma = s;
                best = Some(j);
            }
        }
        let mut j = best?;
        if intersection(&r, &slice_frame(&j, n)).is_empty() {
            j = refine_axis(&r, j, n, REFINE_ITERS);
        }
        j = polish_axis(&r, j, n);
        let ws = intersection(&r, &slice_frame(&j, n));
        let zs = complex_gram_schmidt(&ws, &j);
        if zs.is_empty() {
            return None;
        }
        let zs: Vec<SliceParavector> = zs.iter().map(|w| normalize_phase(to_slice(w, &j, n))).collect();
        r = deflate(&r, &zs)?;
        out.extend(zs);
    }
    Some(out)
}
