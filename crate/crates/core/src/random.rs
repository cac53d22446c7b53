//! Seeded generators for octonions, vectors, operators and slice systems.
//!
//! Every trial draws from its own ChaCha stream, so results do not depend on
//! how trials are spread over threads.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{reorthonormalize, Matrix};
use crate::octonion::{ImaginaryUnit, Octonion};
use crate::operator::ParaLinearOperator;
use crate::vector::{OVector, SliceParavector};

/// The generator for trial `index` under a run seed.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normals<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| normal(rng)).collect()
}

pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    let mut c = [0.0; 8];
    c.iter_mut().for_each(|v| *v = normal(rng));
    Octonion(c)
}

/// Uniform on the unit sphere of imaginary octonions.
pub fn imaginary_unit<R: Rng + ?Sized>(rng: &mut R) -> ImaginaryUnit {
    loop {
        let mut c = [0.0; 7];
        c.iter_mut().for_each(|v| *v = normal(rng));
        if let Ok(j) = ImaginaryUnit::from_imaginary(c) {
            return j;
        }
    }
}

pub fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OVector {
    OVector::from_flat(&normals(rng, 8 * n))
}

pub fn real_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OVector {
    OVector::from_real(&normals(rng, n))
}

/// Core entries are independent standard normals.
pub fn operator<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ParaLinearOperator {
    ParaLinearOperator::from_core(Matrix::from_row_major(n, 8 * n, normals(rng, 8 * n * n)))
        .expect("core has the right shape")
}

/// `(T + T*) / 2` for a random `T`.
pub fn self_adjoint<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ParaLinearOperator {
    let t = operator(rng, n);
    (t.clone() + t.adjoint()) * 0.5
}

/// `u + J v` with standard normal `u, v` and uniform `J`.
pub fn slice<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SliceParavector {
    let u = normals(rng, n);
    let v = normals(rng, n);
    SliceParavector::new(u, v, imaginary_unit(rng))
}

/// Haar-ish orthogonal matrix from Gram-Schmidt on a Gaussian matrix.
pub fn orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut q = Matrix::from_row_major(n, n, normals(rng, n * n));
    reorthonormalize(&mut q);
    q
}

/// Random `g x g` complex unitary, columns from complex Gram-Schmidt.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, g: usize) -> Vec<Vec<Complex64>> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(g);
    while cols.len() < g {
        let mut c: Vec<Complex64> = (0..g).map(|_| Complex64::new(normal(rng), normal(rng))).collect();
        for _ in 0..2 {
            for prev in &cols {
                let proj: Complex64 = prev.iter().zip(&c).map(|(a, b)| a.conj() * b).sum();
                for (ci, pi) in c.iter_mut().zip(prev) {
                    *ci -= proj * pi;
                }
            }
        }
        let nrm = c.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 1e-8 {
            cols.push(c.into_iter().map(|v| v / nrm).collect());
        }
    }
    cols
}

/// A weak associative orthonormal basis of slice paravectors. The real
/// coordinates are split into orthogonal blocks of the given sizes; each block
/// gets its own axis and a random unitary mixing within `C_J`.
pub fn weak_associative_system<R: Rng + ?Sized>(rng: &mut R, n: usize, groups: &[usize]) -> Vec<SliceParavector> {
    assert_eq!(groups.iter().sum::<usize>(), n, "group sizes must add up to the dimension");
    let q = orthogonal(rng, n);
    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    for &g in groups {
        let j = imaginary_unit(rng);
        let u = unitary(rng, g);
        for col in &u {
            let mut re = vec![0.0; n];
            let mut im = vec![0.0; n];
            for k in 0..n {
                for (c, w) in col.iter().enumerate() {
                    let qk = q[(k, start + c)];
                    re[k] += qk * w.re;
                    im[k] += qk * w.im;
                }
            }
            out.push(SliceParavector::new(re, im, j));
        }
        start += g;
    }
    out
}

/// A random composition of `n` into positive parts.
pub fn groups<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut left = n;
    while left > 0 {
        let g = rng.random_range(1..=left);
        out.push(g);
        left -= g;
    }
    out
}
