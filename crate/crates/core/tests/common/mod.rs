#![allow(dead_code)]

use octopara::random::trial_rng;
use octopara::Octonion;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-2.0f64..2.0).prop_map(Octonion::new)
}

pub fn nonzero_octonion() -> impl Strategy<Value = Octonion> {
    octonion().prop_filter("nonzero", |o| o.norm() > 1e-3)
}

/// A seeded generator plus a dimension in `1..=4`.
pub fn seeded() -> impl Strategy<Value = (ChaCha8Rng, usize)> {
    (any::<u64>(), 1usize..=4).prop_map(|(s, n)| (trial_rng(s, 0), n))
}

pub fn close(a: Octonion, b: Octonion, tol: f64) -> bool {
    (a - b).max_abs() <= tol
}
