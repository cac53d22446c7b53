//! Acceptance criteria 1-11. Runs without the libtest harness and prints one
//! `[PASS]` or `[FAIL]` line per criterion, followed by the measured values.

use std::process::ExitCode;
use std::time::Instant;

use octopara::funcalc::{phi, power_op, psi, SpectrumFunction};
use octopara::linalg::Matrix;
use octopara::oracle::{
    adjoint_contract_with_sign, oracle_adjoint_contract, oracle_fano_table, oracle_regular_compose,
};
use octopara::polarization::{
    abc_terms, is_self_adjoint, m_form, reconstruct_operator, reconstruct_re, QuadraticFormProbe, SelfAdjointMode,
    DEFAULT_SAMPLES,
};
use octopara::random::{self, trial_rng};
use octopara::spectral::{decompose, eigen_commutation_residual};
use octopara::{Error, OVector, Octonion, ParaLinearOperator, Side, SliceParavector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, notes: Vec::new() }
    }

    /// Records `value` against `bound` and fails the criterion if it is exceeded.
    fn bound(&mut self, what: &str, value: f64, bound: f64) {
        let ok = value <= bound;
        self.pass &= ok;
        self.notes.push(format!("{what}: {value:.3e} (bound {bound:.0e}){}", if ok { "" } else { "  <-- exceeded" }));
    }

    fn count(&mut self, what: &str, bad: usize, total: usize) {
        self.pass &= bad == 0;
        self.notes.push(format!("{what}: {bad} of {total}"));
    }

    fn check(&mut self, what: &str, ok: bool) {
        self.pass &= ok;
        self.notes.push(format!("{what}: {}", if ok { "ok" } else { "failed" }));
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }
}

const SEED: u64 = 0xacce;

fn rng(criterion: u64, trial: u64) -> ChaCha8Rng {
    trial_rng(SEED + criterion, trial)
}

fn dim(trial: u64) -> usize {
    1 + (trial % 4) as usize
}

/// Octonion with coefficients uniform in [-1, 1].
fn unit_scale(rng: &mut ChaCha8Rng) -> Octonion {
    let mut c = [0.0; 8];
    c.iter_mut().for_each(|v| *v = rng.random_range(-1.0..=1.0));
    Octonion(c)
}

fn assoc(x: Octonion, y: Octonion, z: Octonion) -> Octonion {
    Octonion::associator(x, y, z)
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut moufang: f64 = 0.0;
    let mut five: f64 = 0.0;
    for t in 0..10_000 {
        let mut r = rng(1, t);
        let (x, y, z, w) = (unit_scale(&mut r), unit_scale(&mut r), unit_scale(&mut r), unit_scale(&mut r));
        moufang = moufang
            .max((((x * y) * x) * z - x * (y * (x * z))).max_abs())
            .max((z * ((x * y) * x) - ((z * x) * y) * x).max_abs())
            .max(((x * (y * z)) * x - (x * y) * (z * x)).max_abs());
        let lhs = x * assoc(y, z, w) + assoc(x, y, z) * w;
        let rhs = assoc(x * y, z, w) - assoc(x, y * z, w) + assoc(x, y, z * w);
        five = five.max((lhs - rhs).max_abs());
    }
    out.bound("Moufang, 10000 triples", moufang, 1e-12);
    out.bound("five-term identity, 10000 quadruples", five, 1e-12);
    out.check("Fano table, 64 products", oracle_fano_table());
    out
}

/// Flat real vector `x ↦ M x` as an octonion vector.
fn act(m: &Matrix, x: &OVector) -> OVector {
    OVector::from_flat(&m.matvec(&x.to_flat()))
}

/// The three characterizations of para-linearity, evaluated on a raw matrix
/// with `f_R = Re ∘ M`. Returns their residuals.
fn characterizations(m: &Matrix) -> [f64; 3] {
    let n = m.rows() / 8;
    let f_re = |x: &OVector| act(m, x).re_project();
    let mut defining: f64 = 0.0;
    let mut expansion: f64 = 0.0;
    let mut associator: f64 = 0.0;
    for c in 0..8 * n {
        let x = OVector::flat_basis(n, c);
        let mut sum = OVector::zeros(n);
        for i in 0..8 {
            let ei = Octonion::basis(i);
            sum = sum + f_re(&x.rmul(ei.conj())).lmul(ei);
        }
        expansion = expansion.max((sum - act(m, &x)).max_abs());
        for p in 1..8 {
            let ep = Octonion::basis(p);
            let b = act(m, &x).rmul(ep) - act(m, &x.rmul(ep));
            defining = defining.max(b.re_project().max_abs());
            let mut formula = OVector::zeros(n);
            for i in 1..8 {
                let ei = Octonion::basis(i);
                formula = formula + f_re(&x.right_associator(ep, ei)).rmul(ei);
            }
            associator = associator.max((b - formula).max_abs());
        }
    }
    [defining, expansion, associator]
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut worst_b: f64 = 0.0;
    let mut disagreements = 0;
    let mut wrong = 0;
    let mut generic_min: f64 = f64::INFINITY;
    for t in 0..500 {
        let mut r = rng(2, t);
        let n = dim(t);
        let op = random::operator(&mut r, n);
        let res = characterizations(op.matrix());
        worst_b = worst_b.max(res[0]);
        let verdicts = res.map(|v| v <= 1e-12);
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            disagreements += 1;
        }
        if !verdicts[0] {
            wrong += 1;
        }
        // A generic real matrix: all three must fail together.
        let g = Matrix::from_row_major(8 * n, 8 * n, random::normals(&mut r, 64 * n * n));
        let res = characterizations(&g);
        generic_min = generic_min.min(res.iter().copied().fold(f64::INFINITY, f64::min));
        let verdicts = res.map(|v| v <= 1e-12);
        if verdicts.iter().any(|&v| v != verdicts[0]) {
            disagreements += 1;
        }
        if verdicts[0] {
            wrong += 1;
        }
    }
    out.bound("max |Re B_p(T, x)| over basis x, p = e1..e7, 500 core operators", worst_b, 1e-12);
    out.count("characterization disagreements, 500 core + 500 generic", disagreements, 1000);
    out.count("misclassified operators", wrong, 1000);
    out.note(format!("smallest characterization residual on generic matrices: {generic_min:.3e}"));
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let (mut vs_oracle, mut real_part, mut left): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for t in 0..1000 {
        let mut r = rng(3, t);
        let n = dim(t);
        let f = random::operator(&mut r, n);
        let g = random::operator(&mut r, n);
        let fg = f.regular_compose(&g).unwrap();
        vs_oracle = vs_oracle.max(oracle_regular_compose(&f, &g).max_abs_diff(&fg));
        let x = random::vector(&mut r, n);
        let lhs = fg.apply(&x).unwrap().re_project();
        let rhs = f.apply(&g.apply(&x).unwrap()).unwrap().re_project();
        real_part = real_part.max((lhs - rhs).max_abs());
        let p = random::octonion(&mut r);
        let lp = ParaLinearOperator::left_mul(p, n).regular_compose(&f).unwrap();
        left = left.max(lp.max_abs_diff(&f.scalar_action(p, Side::Left)));
    }
    out.bound("optimized vs oracle composition, 1000 pairs", vs_oracle, 1e-12);
    out.bound("Re((f ⊛ g) x) - Re(f(g x))", real_part, 1e-12);
    out.bound("L_p ⊛ T - p ⊙ T", left, 1e-12);
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let mut contract: f64 = 0.0;
    let mut plus_form: f64 = 0.0;
    let (mut prod, mut left, mut right, mut twice, mut norm): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for t in 0..1000 {
        let mut r = rng(4, t);
        let n = dim(t);
        let s = random::operator(&mut r, n);
        let op = random::operator(&mut r, n);
        contract = contract.max(oracle_adjoint_contract(&op, 1, SEED + t));
        plus_form = plus_form.max(adjoint_contract_with_sign(&op, 1, SEED + t, 1.0));
        if t < 250 {
            let p = random::octonion(&mut r);
            let a = op.adjoint();
            prod =
                prod.max(s.regular_compose(&op).unwrap().adjoint().distance(&a.regular_compose(&s.adjoint()).unwrap()));
            left =
                left.max(op.scalar_action(p, Side::Left).adjoint().distance(&a.scalar_action(p.conj(), Side::Right)));
            right =
                right.max(op.scalar_action(p, Side::Right).adjoint().distance(&a.scalar_action(p.conj(), Side::Left)));
            twice = twice.max(a.adjoint().distance(&op));
            norm = norm.max((a.operator_norm() - op.operator_norm()).abs());
        }
    }
    out.bound("<x, T* y> - <T x, y> + [y, T, x], 1000 samples", contract, 1e-11);
    out.bound("(S ⊛ T)* - T* ⊛ S*", prod, 1e-11);
    out.bound("(r ⊙ T)* - T* ⊙ conj(r)", left, 1e-11);
    out.bound("(T ⊙ r)* - conj(r) ⊙ T*", right, 1e-11);
    out.bound("T** - T", twice, 1e-11);
    out.bound("|T*| - |T|", norm, 1e-11);
    out.note(format!("for the record, <x, T* y> - <T x, y> - [y, T, x] reaches {plus_form:.3e}"));
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let mut violations = 0;
    let mut worst_ratio: f64 = 0.0;
    let mut scalar: f64 = 0.0;
    for t in 0..1000 {
        let mut r = rng(5, t);
        let n = dim(t);
        let s = random::operator(&mut r, n);
        let op = random::operator(&mut r, n);
        let bound = 8.0 * s.operator_norm() * op.operator_norm();
        let st = s.regular_compose(&op).unwrap().operator_norm();
        if st > bound {
            violations += 1;
        }
        worst_ratio = worst_ratio.max(st / (s.operator_norm() * op.operator_norm()));
        if t < 250 {
            let p = random::octonion(&mut r);
            let want = p.norm() * op.operator_norm();
            for side in [Side::Left, Side::Right] {
                scalar = scalar.max((op.scalar_action(p, side).operator_norm() - want).abs() / want);
            }
        }
    }
    out.count("|S ⊛ T| > 8 |S| |T|, 1000 pairs", violations, 1000);
    out.note(format!("largest |S ⊛ T| / (|S| |T|): {worst_ratio:.4}"));
    out.bound("relative deviation of |r ⊙ T|, |T ⊙ r| from |r| |T|", scalar, 1e-11);
    out
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let mut re: f64 = 0.0;
    for t in 0..500 {
        let mut r = rng(6, t);
        let n = dim(t);
        let op = random::operator(&mut r, n);
        let q = QuadraticFormProbe::from_operator(&op);
        let x = random::real_vector(&mut r, n);
        let y = random::real_vector(&mut r, n);
        let want = op.apply(&x).unwrap().inner_product(&y).unwrap();
        re = re.max((reconstruct_re(&q, &x, &y).unwrap() - want).max_abs());
    }
    out.bound("reconstruct_re vs <T x, y>, 500 triples", re, 1e-10);
    let mut full: f64 = 0.0;
    for t in 0..100 {
        let mut r = rng(6, 1000 + t);
        let op = random::operator(&mut r, dim(t));
        full = full.max(reconstruct_operator(&QuadraticFormProbe::from_operator(&op)).max_abs_diff(&op));
    }
    out.bound("reconstruct_operator round trip, 100 operators", full, 1e-9);

    // The identity operator, term by term: m = 2α, A = 2α, B = C = 0, so the
    // three parts are 168α/56, 98α/98 and α.
    let mut r = rng(6, 5000);
    let x = random::real_vector(&mut r, 3);
    let y = random::real_vector(&mut r, 3);
    let alpha = x.real_inner(&y).unwrap();
    let q = QuadraticFormProbe::from_operator(&ParaLinearOperator::identity(3));
    let m = m_form(&q, &x, &y).unwrap();
    let (mut off, mut all, mut terms): (Octonion, Octonion, f64) = (Octonion::ZERO, Octonion::ZERO, 0.0);
    for i in 1..8 {
        for j in 1..8 {
            let abc = abc_terms(&q, &x, &y, i, j).unwrap();
            terms =
                terms.max((abc.a - Octonion::real(2.0 * alpha)).max_abs()).max(abc.b.max_abs()).max(abc.c.max_abs());
            all += abc.a;
            if i != j {
                off += abc.a * 2.0 + abc.b + abc.c;
            }
        }
    }
    let parts = [
        (off / 56.0 - Octonion::real(168.0 * alpha / 56.0)).max_abs(),
        (all / 98.0 - Octonion::real(98.0 * alpha / 98.0)).max_abs(),
        (m * 0.5 - Octonion::real(alpha)).max_abs(),
    ];
    let total = (reconstruct_re(&q, &x, &y).unwrap() - Octonion::real(alpha)).max_abs();
    out.bound("identity: A - 2α, B, C", terms, 1e-13);
    out.bound("identity: 168α/56, 98α/98, α bookkeeping", parts.iter().copied().fold(0.0, f64::max), 1e-13);
    out.bound("identity: result - α", total, 1e-13);
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let mut disagree = 0;
    let mut wrong = 0;
    for t in 0..1000 {
        let mut r = rng(7, t);
        let n = dim(t);
        let symmetric = t % 2 == 0;
        let op = if symmetric { random::self_adjoint(&mut r, n) } else { random::operator(&mut r, n) };
        let exact = is_self_adjoint(&op, SelfAdjointMode::Exact, 1e-8);
        let sampled = is_self_adjoint(&op, SelfAdjointMode::Sampled { samples: DEFAULT_SAMPLES, seed: SEED + t }, 1e-8);
        if exact != sampled {
            disagree += 1;
        }
        if exact != symmetric {
            wrong += 1;
        }
    }
    out.count("exact vs sampled disagreements, 500 symmetrized + 500 generic", disagree, 1000);
    out.count("verdicts contradicting the construction", wrong, 1000);
    out
}

/// `Σ λ_k P_{z_k}` over a random weak associative slice system, with up to
/// `n` distinct values (0 allowed).
fn slice_system_operator(r: &mut ChaCha8Rng, n: usize) -> (ParaLinearOperator, Vec<(f64, SliceParavector)>) {
    let groups = random::groups(r, n);
    let zs = random::weak_associative_system(r, n, &groups);
    let distinct: Vec<f64> = (0..n).map(|_| 2.0 * random::normal(r)).collect();
    let values: Vec<f64> =
        (0..n).map(|_| if r.random_bool(0.15) { 0.0 } else { distinct[r.random_range(0..n)] }).collect();
    let t = zs.iter().zip(&values).fold(ParaLinearOperator::zero(n), |acc, (z, l)| acc + z.projection().unwrap() * *l);
    (t, values.into_iter().zip(zs).collect())
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let (mut lambda_err, mut recon, mut ortho): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut failures = 0;
    for t in 0..200 {
        let mut r = rng(8, t);
        let (op, truth) = slice_system_operator(&mut r, dim(t));
        let d = match decompose(&op, 1e-10, SEED) {
            Ok(d) => d,
            Err(e) => {
                failures += 1;
                out.note(format!("trial {t}: {e}"));
                continue;
            }
        };
        for (l, _) in truth.iter().filter(|(l, _)| *l != 0.0) {
            let nearest = d.pairs.iter().map(|p| (p.lambda - l).abs()).fold(f64::INFINITY, f64::min);
            lambda_err = lambda_err.max(nearest);
        }
        for p in &d.pairs {
            let nearest = truth.iter().map(|(l, _)| (p.lambda - l).abs()).fold(f64::INFINITY, f64::min);
            lambda_err = lambda_err.max(nearest);
        }
        recon = recon.max(d.reconstruct().distance(&op));
        let zs: Vec<OVector> = d.pairs.iter().map(|p| p.z.value()).collect();
        for (i, zi) in zs.iter().enumerate() {
            for (j, zj) in zs.iter().enumerate() {
                let delta = if i == j { Octonion::ONE } else { Octonion::ZERO };
                ortho = ortho.max((zi.inner_product(zj).unwrap() - delta).max_abs());
                for p in 1..8 {
                    ortho = ortho.max(OVector::second_associator(zi, zj, Octonion::basis(p)).unwrap().max_abs());
                }
            }
        }
    }
    out.count("decompose failures, 200 operators", failures, 200);
    out.bound("eigenvalue recovery error", lambda_err, 1e-9);
    out.bound("|T - Σ λ_i P_{z_i}|", recon, 1e-8);
    out.bound("<z_i, z_j> - δ_ij and B_p(z_i, z_j)", ortho, 1e-10);
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let (mut imag, mut commute, mut family): (f64, f64, f64) = (0.0, 0.0, 0.0);
    let mut failures = 0;
    for t in 0..200 {
        let mut r = rng(9, t);
        let n = dim(t);
        let (op, _) = slice_system_operator(&mut r, n);
        let Ok(d) = decompose(&op, 1e-10, SEED) else {
            failures += 1;
            continue;
        };
        for p in &d.pairs {
            let z = p.z.value();
            imag = imag.max(z.inner_product(&op.apply(&z).unwrap()).unwrap().im().max_abs());
            commute = commute.max(eigen_commutation_residual(&op, p).unwrap());
        }
        let ps = d.pair_projections();
        for (i, pi) in ps.iter().enumerate() {
            for (j, pj) in ps.iter().enumerate() {
                let want = if i == j { pi.clone() } else { ParaLinearOperator::zero(n) };
                family = family.max(pj.regular_compose(pi).unwrap().distance(&want));
            }
        }
    }
    out.count("decompose failures, 200 operators", failures, 200);
    out.bound("imaginary part of strong eigenvalues", imag, 1e-10);
    out.bound("|T ⊛ P_z - P_z ⊙ λ|", commute, 1e-10);
    out.bound("|P_j ⊛ P_i - δ_ij P_i|", family, 1e-10);
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let (mut powers, mut involution, mut multiplicative, mut independence): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let (mut real_violations, mut octonion_violations) = (0, 0);
    let mut failures = 0;
    for t in 0..500 {
        let mut r = rng(10, t);
        let n = dim(t);
        let (op, _) = slice_system_operator(&mut r, n);
        let Ok(d) = decompose(&op, 1e-10, SEED) else {
            failures += 1;
            continue;
        };
        let f = SpectrumFunction::on_spectrum(&d, |_| random::octonion(&mut r));
        let g = SpectrumFunction::on_spectrum(&d, |_| Octonion::real(random::normal(&mut r)));
        let h = SpectrumFunction::on_spectrum(&d, |_| Octonion::real(random::normal(&mut r)));
        if phi(&g, &d).unwrap().operator_norm() > g.sup_norm() * (1.0 + 1e-12) {
            real_violations += 1;
        }
        if phi(&f, &d).unwrap().operator_norm() > 8.0 * f.sup_norm() {
            octonion_violations += 1;
        }
        if t >= 100 {
            continue;
        }
        for k in 0..=5u32 {
            let qk = SpectrumFunction::on_spectrum(&d, |l| Octonion::real(l.powi(k as i32)));
            powers = powers.max(phi(&qk, &d).unwrap().distance(&power_op(&op, k)));
        }
        involution = involution.max(phi(&f.conj(), &d).unwrap().distance(&psi(&f, &d).unwrap().adjoint()));
        let gh = g.zip_with(&h, |a, b| a * b).unwrap();
        let lhs = phi(&gh, &d).unwrap().op_real_part();
        let rhs = phi(&g, &d).unwrap().regular_compose(&phi(&h, &d).unwrap()).unwrap().op_real_part();
        multiplicative = multiplicative.max(lhs.distance(&rhs));
        let other = decompose(&op, 1e-10, SEED + 1).unwrap();
        let f2 = SpectrumFunction::on_spectrum(&other, |l| f.get(l).unwrap());
        independence = independence.max(phi(&f, &d).unwrap().distance(&phi(&f2, &other).unwrap()));
    }
    out.count("decompose failures, 500 operators", failures, 500);
    out.bound("Φ(q^k) - T^⊛k, k = 0..5", powers, 1e-9);
    out.bound("Φ(f*) - Ψ(f)*", involution, 1e-10);
    out.bound("Re Φ(g h) - Re(Φ(g) ⊛ Φ(h)), real g, h", multiplicative, 1e-10);
    out.count("|Φ(f)| > |f| for real f", real_violations, 500);
    out.count("|Φ(f)| > 8 |f| for octonionic f", octonion_violations, 500);
    out.bound("Φ(f) across two seeds", independence, 1e-9);
    out
}

fn criterion_11() -> Outcome {
    let mut out = Outcome::new();
    let mut per_dim = [(0usize, 0usize); 4];
    let mut other = 0;
    let mut worst: f64 = 0.0;
    for t in 0..200 {
        let mut r = rng(11, t);
        let n = dim(t);
        let op = random::self_adjoint(&mut r, n);
        match decompose(&op, 1e-10, SEED) {
            Ok(d) => {
                let res = d.reconstruct().distance(&op);
                worst = worst.max(res);
                if res > 1e-8 {
                    other += 1;
                }
                per_dim[n - 1].0 += 1;
            }
            Err(Error::NotStandardStrong { .. }) => per_dim[n - 1].1 += 1,
            Err(e) => {
                other += 1;
                out.note(format!("trial {t}: unexpected {e}"));
            }
        }
    }
    out.count("outcomes other than success (residual ≤ 1e-8) or NotStandardStrong", other, 200);
    for (k, (ok, nss)) in per_dim.iter().enumerate() {
        out.note(format!("n = {}: {ok} decomposed, {nss} NotStandardStrong", k + 1));
    }
    let total_nss: usize = per_dim.iter().map(|p| p.1).sum();
    out.note(format!("NotStandardStrong rate: {:.1}% (reported, not asserted)", 100.0 * total_nss as f64 / 200.0));
    if worst > 0.0 {
        out.note(format!("largest residual among successes: {worst:.3e}"));
    }
    out
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("algebra identities", criterion_1),
        ("para-linearity", criterion_2),
        ("regular composition", criterion_3),
        ("adjoint and involution", criterion_4),
        ("Banach-algebra bound", criterion_5),
        ("polarization", criterion_6),
        ("self-adjointness equivalence", criterion_7),
        ("spectral round trip", criterion_8),
        ("eigen structure", criterion_9),
        ("functional calculus", criterion_10),
        ("honest failure path", criterion_11),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {}: {name} ({secs:.1}s)", i + 1);
        for note in &outcome.notes {
            println!("       {note}");
        }
        all &= outcome.pass;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
