//! Strategies shared by the property tests.

#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use valring::check::RunConfig;
use valring::coeff::ResidueElem;
use valring::series::{KPoly, Precision, Series};

pub fn rational() -> impl Strategy<Value = ResidueElem> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| ResidueElem::ratio(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = ResidueElem> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

/// A polynomial in `u1, u2` of low degree.
pub fn tower_poly() -> impl Strategy<Value = ResidueElem> {
    prop::collection::vec((rational(), 0u32..=2, 0u32..=1), 1..=3).prop_map(|terms| {
        terms.iter().fold(ResidueElem::zero(), |acc, (c, a, b)| {
            let m = &ResidueElem::var(1).pow(*a) * &ResidueElem::var(2).pow(*b);
            &acc + &(c * &m)
        })
    })
}

/// A rational function in `u1, u2`.
pub fn residue() -> impl Strategy<Value = ResidueElem> {
    (tower_poly(), tower_poly())
        .prop_filter_map("nonzero denominator", |(n, d)| n.checked_div(&d).ok())
}

pub fn nonzero_residue() -> impl Strategy<Value = ResidueElem> {
    residue().prop_filter("nonzero", |c| !c.is_zero())
}

/// A rational, or with lower weight `c·u1` or `u1 + c`.
pub fn coefficient() -> impl Strategy<Value = ResidueElem> {
    prop_oneof![
        4 => rational(),
        1 => rational().prop_map(|c| &c * &ResidueElem::var(1)),
        1 => rational().prop_map(|c| &ResidueElem::var(1) + &c),
    ]
}

/// An exact Laurent polynomial with exponents in `lo..hi`.
pub fn exact_series(lo: i64, hi: i64) -> impl Strategy<Value = Series> {
    prop::collection::vec((lo..hi, coefficient()), 0..=3)
        .prop_map(|terms| Series::from_map(terms, Precision::Exact).unwrap())
}

pub fn nonzero_series(lo: i64, hi: i64) -> impl Strategy<Value = Series> {
    exact_series(lo, hi).prop_filter("nonzero", |s| !s.is_exact_zero())
}

/// An exact element of `O`.
pub fn integral() -> impl Strategy<Value = Series> {
    exact_series(0, 4)
}

/// An exact unit of `O`.
pub fn unit() -> impl Strategy<Value = Series> {
    (nonzero_rational(), exact_series(1, 4)).prop_map(|(c, s)| &Series::constant(c) + &s)
}

/// A one-variable polynomial of degree at most 3, not identically zero.
pub fn one_var_poly() -> impl Strategy<Value = KPoly> {
    prop::collection::vec(exact_series(-2, 3), 1..=4)
        .prop_map(KPoly::from_coeffs)
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// A generator seed paired with a fresh `ChaCha8Rng` for the corpus
/// generators.
pub fn seeded() -> impl Strategy<Value = ChaCha8Rng> {
    any::<u64>().prop_map(ChaCha8Rng::seed_from_u64)
}

pub fn cfg() -> RunConfig {
    RunConfig::default()
}

/// `a ≡ b (mod t^n)`: every coefficient of `a - b` below `t^n` is known
/// and zero.
pub fn congruent(a: &Series, b: &Series, n: i64) -> bool {
    let d = a - b;
    (d.offset().min(n)..n).all(|k| d.coeff(k).is_some_and(|c| c.is_zero()))
}

/// A fixed-seed configuration so property runs are reproducible.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x7661_6c72),
        failure_persistence: None,
        ..Default::default()
    }
}
