//! Named property suites for `verify`. Each property maps a seeded generator
//! and a dimension to a residual that must stay within its tolerance.

use octopara::funcalc::{phi, power_op, psi, SpectrumFunction};
use octopara::oracle::{
    oracle_adjoint, oracle_adjoint_contract, oracle_fano_table, oracle_from_core, oracle_octonion_matrix,
    oracle_op_real_part, oracle_regular_compose, oracle_scalar_action, oracle_scalar_action_defining,
    oracle_slice_projection,
};
use octopara::polarization::{
    is_self_adjoint, reconstruct_operator, reconstruct_re, QuadraticFormProbe, SelfAdjointMode,
};
use octopara::random;
use octopara::spectral::{decompose, eigen_commutation_residual, slice_projection};
use octopara::vector::weak_orthonormality_residual;
use octopara::{OVector, Octonion, ParaLinearOperator, Result, Side, SliceParavector, SpectralDecomposition};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = fn(&mut ChaCha8Rng, usize) -> Result<f64>;

pub struct Property {
    pub name: &'static str,
    pub tol: f64,
    pub check: Check,
}

pub struct Suite {
    pub name: &'static str,
    pub properties: &'static [Property],
}

const fn prop(name: &'static str, tol: f64, check: Check) -> Property {
    Property { name, tol, check }
}

pub const SUITES: &[Suite] = &[
    Suite {
        name: "octonion",
        properties: &[
            prop("moufang", 1e-12, moufang),
            prop("five_term", 1e-12, five_term),
            prop("alternative", 0.0, alternative),
            prop("norm_multiplicative", 1e-12, norm_multiplicative),
            prop("conjugation_reverses_products", 1e-12, conjugation),
            prop("fano_table", 0.0, fano_table),
        ],
    },
    Suite {
        name: "module",
        properties: &[
            prop("inner_product_hermitian", 1e-12, hermitian),
            prop("norm_is_euclidean", 1e-12, euclidean),
            prop("left_multiplication_adjoint", 1e-12, left_adjoint),
            prop("second_associator_imaginary", 1e-12, second_associator),
            prop("parseval_round_trip", 1e-10, parseval),
        ],
    },
    Suite {
        name: "operator",
        properties: &[
            prop("real_part_of_b_p", 1e-12, real_b_p),
            prop("regular_composition_real_part", 1e-12, composition_real_part),
            prop("left_multiplication_composes", 1e-12, left_composition),
            prop("adjoint_contract", 1e-11, adjoint_contract),
            prop("adjoint_of_composition", 1e-11, adjoint_of_composition),
            prop("adjoint_of_scalar_actions", 1e-11, adjoint_of_scalars),
            prop("adjoint_involution", 1e-11, adjoint_involution),
            prop("banach_bound", 0.0, banach_bound),
            prop("scalar_action_norm", 1e-11, scalar_norm),
        ],
    },
    Suite {
        name: "polarization",
        properties: &[
            prop("reconstruct_re", 1e-10, polarization_re),
            prop("operator_round_trip", 1e-9, polarization_round_trip),
            prop("self_adjoint_modes_agree", 0.0, self_adjoint_modes),
        ],
    },
    Suite {
        name: "spectral",
        properties: &[
            prop("round_trip", 1e-8, spectral_round_trip),
            prop("eigenvalues_recovered", 1e-9, eigenvalues_recovered),
            prop("weak_orthonormality", 1e-10, spectral_orthonormality),
            prop("projection_commutation", 1e-10, projection_commutation),
            prop("projection_family", 1e-10, projection_family),
        ],
    },
    Suite {
        name: "funcalc",
        properties: &[
            prop("powers", 1e-9, powers),
            prop("involution", 1e-10, involution),
            prop("real_part_multiplicative", 1e-10, real_multiplicative),
            prop("norm_bounds", 0.0, norm_bounds),
            prop("decomposition_independence", 1e-9, decomposition_independence),
        ],
    },
    Suite {
        name: "oracle",
        properties: &[
            prop("from_core", 1e-11, oracle_core),
            prop("octonion_matrix", 1e-11, oracle_entries),
            prop("regular_compose", 1e-11, oracle_compose),
            prop("adjoint", 1e-11, oracle_adj),
            prop("scalar_action", 1e-11, oracle_scalar),
            prop("slice_projection", 1e-11, oracle_projection),
            prop("op_real_part", 1e-11, oracle_real_part),
        ],
    },
];

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

fn o(rng: &mut ChaCha8Rng) -> Octonion {
    random::octonion(rng)
}

fn assoc(x: Octonion, y: Octonion, z: Octonion) -> Octonion {
    Octonion::associator(x, y, z)
}

fn moufang(rng: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    let (x, y, z) = (o(rng), o(rng), o(rng));
    let r = (((x * y) * x) * z - x * (y * (x * z)))
        .max_abs()
        .max((z * ((x * y) * x) - ((z * x) * y) * x).max_abs())
        .max(((x * (y * z)) * x - (x * y) * (z * x)).max_abs());
    Ok(r / (x.norm_sqr() * y.norm() * z.norm()).max(1.0))
}

fn five_term(rng: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    let (x, y, z, w) = (o(rng), o(rng), o(rng), o(rng));
    let lhs = x * assoc(y, z, w) + assoc(x, y, z) * w;
    let rhs = assoc(x * y, z, w) - assoc(x, y * z, w) + assoc(x, y, z * w);
    Ok((lhs - rhs).max_abs() / (x.norm() * y.norm() * z.norm() * w.norm()).max(1.0))
}

fn alternative(rng: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    let (x, y) = (o(rng), o(rng));
    Ok(assoc(x, x, y).max_abs().max(assoc(x, y, y).max_abs()).max(assoc(x, y, x).max_abs()))
}

fn norm_multiplicative(rng: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    let (x, y) = (o(rng), o(rng));
    Ok(((x * y).norm() - x.norm() * y.norm()).abs() / (x.norm() * y.norm()).max(1.0))
}

fn conjugation(rng: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    let (x, y) = (o(rng), o(rng));
    Ok(((x * y).conj() - y.conj() * x.conj()).max_abs() / (x.norm() * y.norm()).max(1.0))
}

fn fano_table(_: &mut ChaCha8Rng, _: usize) -> Result<f64> {
    Ok(if oracle_fano_table() { 0.0 } else { 1.0 })
}

fn hermitian(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (x, y) = (random::vector(rng, n), random::vector(rng, n));
    Ok((x.inner_product(&y)? - y.inner_product(&x)?.conj()).max_abs() / (x.norm() * y.norm()))
}

fn euclidean(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let x = random::vector(rng, n);
    let sq: f64 = x.to_flat().iter().map(|v| v * v).sum();
    Ok((x.inner_product(&x)? - Octonion::real(sq)).max_abs() / sq)
}

/// `⟨u, p̄ v⟩ = ⟨p u, v⟩ - B_p(u, v)`.
fn left_adjoint(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (u, v, p) = (random::vector(rng, n), random::vector(rng, n), o(rng));
    let lhs = u.inner_product(&v.lmul(p.conj()))?;
    let rhs = u.lmul(p).inner_product(&v)? - OVector::second_associator(&u, &v, p)?;
    Ok((lhs - rhs).max_abs() / (u.norm() * v.norm() * p.norm()))
}

fn second_associator(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (u, v, p) = (random::vector(rng, n), random::vector(rng, n), o(rng));
    let b = OVector::second_associator(&u, &v, p)?;
    let swapped = OVector::second_associator(&v, &u, p)?;
    Ok(b.re().abs().max((b + swapped).max_abs()) / (u.norm() * v.norm() * p.norm()))
}

fn system(rng: &mut ChaCha8Rng, n: usize) -> Vec<SliceParavector> {
    let groups = random::groups(rng, n);
    random::weak_associative_system(rng, n, &groups)
}

fn parseval(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let basis = system(rng, n);
    let x = random::vector(rng, n);
    let coeffs = x.parseval_expand(&basis)?;
    let back = OVector::synthesize(&basis, &coeffs);
    let energy: f64 = coeffs.iter().map(Octonion::norm_sqr).sum();
    let norm_sqr = x.norm() * x.norm();
    Ok(((back - x).norm() / norm_sqr.sqrt()).max((energy - norm_sqr).abs() / norm_sqr))
}

fn real_b_p(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let x = random::vector(rng, n);
    let mut worst: f64 = 0.0;
    for p in 1..8 {
        worst = worst.max(t.b_p(&x, Octonion::basis(p))?.re_project().max_abs());
    }
    Ok(worst / (t.operator_norm() * x.norm()))
}

fn composition_real_part(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (f, g) = (random::operator(rng, n), random::operator(rng, n));
    let x = random::vector(rng, n);
    let lhs = f.regular_compose(&g)?.apply(&x)?.re_project();
    let rhs = f.apply(&g.apply(&x)?)?.re_project();
    Ok((lhs - rhs).max_abs() / (f.operator_norm() * g.operator_norm() * x.norm()))
}

fn left_composition(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let p = o(rng);
    let lhs = ParaLinearOperator::left_mul(p, n).regular_compose(&t)?;
    Ok(lhs.distance(&t.scalar_action(p, Side::Left)) / (p.norm() * t.operator_norm()))
}

fn adjoint_contract(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(oracle_adjoint_contract(&t, 1, rng.random()) / t.operator_norm())
}

fn adjoint_of_composition(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (s, t) = (random::operator(rng, n), random::operator(rng, n));
    let lhs = s.regular_compose(&t)?.adjoint();
    let rhs = t.adjoint().regular_compose(&s.adjoint())?;
    Ok(lhs.distance(&rhs) / (s.operator_norm() * t.operator_norm()))
}

fn adjoint_of_scalars(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let r = o(rng);
    let a = t.adjoint();
    let left = t.scalar_action(r, Side::Left).adjoint().distance(&a.scalar_action(r.conj(), Side::Right));
    let right = t.scalar_action(r, Side::Right).adjoint().distance(&a.scalar_action(r.conj(), Side::Left));
    Ok(left.max(right) / (r.norm() * t.operator_norm()))
}

fn adjoint_involution(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let a = t.adjoint();
    Ok(a.adjoint().distance(&t).max((a.operator_norm() - t.operator_norm()).abs()) / t.operator_norm())
}

/// Amount by which `|S ⊛ T|` exceeds `8 |S| |T|`.
fn banach_bound(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (s, t) = (random::operator(rng, n), random::operator(rng, n));
    let st = s.regular_compose(&t)?.operator_norm();
    Ok((st - 8.0 * s.operator_norm() * t.operator_norm()).max(0.0))
}

fn scalar_norm(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let r = o(rng);
    let want = r.norm() * t.operator_norm();
    let worst = [Side::Left, Side::Right]
        .into_iter()
        .map(|side| (t.scalar_action(r, side).operator_norm() - want).abs())
        .fold(0.0, f64::max);
    Ok(worst / want)
}

fn polarization_re(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let (x, y) = (random::real_vector(rng, n), random::real_vector(rng, n));
    let want = t.apply(&x)?.inner_product(&y)?;
    let got = reconstruct_re(&QuadraticFormProbe::from_operator(&t), &x, &y)?;
    Ok((got - want).max_abs() / (t.operator_norm() * x.norm() * y.norm()))
}

fn polarization_round_trip(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(reconstruct_operator(&QuadraticFormProbe::from_operator(&t)).max_abs_diff(&t) / t.operator_norm().max(1.0))
}

/// 1 when the exact and sampled self-adjointness tests disagree, or when
/// either contradicts how the operator was built.
fn self_adjoint_modes(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let symmetric = rng.random_bool(0.5);
    let t = if symmetric { random::self_adjoint(rng, n) } else { random::operator(rng, n) };
    let exact = is_self_adjoint(&t, SelfAdjointMode::Exact, 1e-8);
    let sampled = is_self_adjoint(&t, SelfAdjointMode::Sampled { samples: 64, seed: rng.random() }, 1e-8);
    Ok(if exact == sampled && exact == symmetric { 0.0 } else { 1.0 })
}

/// `Σ λ_k P_{z_k}` over a random weak associative slice system.
fn built(rng: &mut ChaCha8Rng, n: usize) -> Result<(ParaLinearOperator, Vec<f64>)> {
    let zs = system(rng, n);
    let distinct: Vec<f64> = (0..n).map(|_| 2.0 * random::normal(rng)).collect();
    let values: Vec<f64> =
        (0..n).map(|_| if rng.random_bool(0.15) { 0.0 } else { distinct[rng.random_range(0..n)] }).collect();
    let mut t = ParaLinearOperator::zero(n);
    for (z, l) in zs.iter().zip(&values) {
        t = t + z.projection()? * *l;
    }
    Ok((t, values))
}

fn built_decomposed(rng: &mut ChaCha8Rng, n: usize) -> Result<(ParaLinearOperator, Vec<f64>, SpectralDecomposition)> {
    let (t, values) = built(rng, n)?;
    let d = decompose(&t, 1e-10, rng.random())?;
    Ok((t, values, d))
}

fn spectral_round_trip(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (t, _, d) = built_decomposed(rng, n)?;
    Ok(d.reconstruct().distance(&t))
}

fn eigenvalues_recovered(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, values, d) = built_decomposed(rng, n)?;
    let nearest =
        |l: f64, among: &mut dyn Iterator<Item = f64>| among.map(|m| (l - m).abs()).fold(f64::INFINITY, f64::min);
    let mut worst: f64 = 0.0;
    for &l in values.iter().filter(|l| **l != 0.0) {
        worst = worst.max(nearest(l, &mut d.pairs.iter().map(|p| p.lambda)));
    }
    for p in &d.pairs {
        worst = worst.max(nearest(p.lambda, &mut values.iter().copied()));
    }
    Ok(worst)
}

fn spectral_orthonormality(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, _, d) = built_decomposed(rng, n)?;
    let zs: Vec<OVector> = d.basis().iter().map(|z| z.value()).collect();
    weak_orthonormality_residual(&zs)
}

fn projection_commutation(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (t, _, d) = built_decomposed(rng, n)?;
    let mut worst: f64 = 0.0;
    for p in &d.pairs {
        worst = worst.max(eigen_commutation_residual(&t, p)?);
    }
    Ok(worst)
}

fn projection_family(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, _, d) = built_decomposed(rng, n)?;
    let ps = d.pair_projections();
    let mut worst: f64 = 0.0;
    for (i, pi) in ps.iter().enumerate() {
        for (j, pj) in ps.iter().enumerate() {
            let want = if i == j { pi.clone() } else { ParaLinearOperator::zero(n) };
            worst = worst.max(pj.regular_compose(pi)?.distance(&want));
        }
    }
    Ok(worst)
}

fn powers(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (t, _, d) = built_decomposed(rng, n)?;
    let scale = t.operator_norm().max(1.0);
    let mut worst: f64 = 0.0;
    for k in 0..=5u32 {
        let q = SpectrumFunction::on_spectrum(&d, |l| Octonion::real(l.powi(k as i32)));
        worst = worst.max(phi(&q, &d)?.distance(&power_op(&t, k)) / scale.powi(k as i32));
    }
    Ok(worst)
}

fn involution(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, _, d) = built_decomposed(rng, n)?;
    let f = SpectrumFunction::on_spectrum(&d, |_| random::octonion(rng));
    Ok(phi(&f.conj(), &d)?.distance(&psi(&f, &d)?.adjoint()))
}

fn real_multiplicative(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, _, d) = built_decomposed(rng, n)?;
    let f = SpectrumFunction::on_spectrum(&d, |_| Octonion::real(random::normal(rng)));
    let g = SpectrumFunction::on_spectrum(&d, |_| Octonion::real(random::normal(rng)));
    let lhs = phi(&f.zip_with(&g, |a, b| a * b)?, &d)?.op_real_part();
    let rhs = phi(&f, &d)?.regular_compose(&phi(&g, &d)?)?.op_real_part();
    Ok(lhs.distance(&rhs))
}

/// Excess of `|Φ(f)|` over `|f|` for real `f` and over `8 |f|` otherwise.
fn norm_bounds(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (_, _, d) = built_decomposed(rng, n)?;
    let real = SpectrumFunction::on_spectrum(&d, |_| Octonion::real(random::normal(rng)));
    let oct = SpectrumFunction::on_spectrum(&d, |_| random::octonion(rng));
    let a = phi(&real, &d)?.operator_norm() - real.sup_norm() * (1.0 + 1e-12);
    let b = phi(&oct, &d)?.operator_norm() - 8.0 * oct.sup_norm();
    let c = psi(&oct, &d)?.operator_norm() - 8.0 * oct.sup_norm();
    Ok(a.max(b).max(c).max(0.0))
}

fn decomposition_independence(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (t, _, d) = built_decomposed(rng, n)?;
    let other = decompose(&t, 1e-10, rng.random())?;
    let f = SpectrumFunction::on_spectrum(&d, |_| random::octonion(rng));
    let g = SpectrumFunction::on_spectrum(&other, |l| f.get(l).unwrap_or(Octonion::ZERO));
    Ok(phi(&f, &d)?.distance(&phi(&g, &other)?).max(psi(&f, &d)?.distance(&psi(&g, &other)?)))
}

fn oracle_core(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(oracle_from_core(t.core()).max_abs_diff(&t))
}

fn oracle_entries(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(oracle_octonion_matrix(&t.octonion_entries()).max_abs_diff(&t))
}

fn oracle_compose(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let (f, g) = (random::operator(rng, n), random::operator(rng, n));
    Ok(oracle_regular_compose(&f, &g).max_abs_diff(&f.regular_compose(&g)?))
}

fn oracle_adj(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(oracle_adjoint(&t).max_abs_diff(&t.adjoint()))
}

fn oracle_scalar(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    let r = o(rng);
    let mut worst: f64 = 0.0;
    for side in [Side::Left, Side::Right] {
        let fast = t.scalar_action(r, side);
        worst = worst
            .max(oracle_scalar_action(&t, r, side)?.max_abs_diff(&fast))
            .max(oracle_scalar_action_defining(&t, r, side).max_abs_diff(&fast));
    }
    Ok(worst)
}

fn oracle_projection(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let s = random::slice(rng, n);
    let z = s.value() * (1.0 / s.norm());
    Ok(oracle_slice_projection(&z).max_abs_diff(&slice_projection(&z)?))
}

fn oracle_real_part(rng: &mut ChaCha8Rng, n: usize) -> Result<f64> {
    let t = random::operator(rng, n);
    Ok(oracle_op_real_part(&t).max_abs_diff(&t.op_real_part()))
}
