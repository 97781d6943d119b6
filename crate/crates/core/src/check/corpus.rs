//! Seeded generators for formulas, coefficients and matrices.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::RunConfig;
use crate::coeff::{Monomial, ResidueElem};
use crate::formula::Formula;
use crate::realize::OMatrix;
use crate::series::{KPoly, Precision, Series};

/// Probability that a generated coefficient involves the base tower
/// variable `u1`.
pub const TOWER_PROB: f64 = 0.15;

pub fn rational(rng: &mut ChaCha8Rng) -> ResidueElem {
    let p = loop {
        let p = rng.gen_range(-5..=5);
        if p != 0 {
            break p;
        }
    };
    ResidueElem::ratio(p, rng.gen_range(1..=4))
}

/// A nonzero residue: a rational, or with [`TOWER_PROB`] a rational
/// combination involving `u1`.
pub fn residue(rng: &mut ChaCha8Rng) -> ResidueElem {
    let c = rational(rng);
    if rng.gen_bool(TOWER_PROB) {
        let u = ResidueElem::var(1);
        if rng.gen_bool(0.5) {
            &c * &u
        } else {
            &u + &c
        }
    } else {
        c
    }
}

fn exact(terms: Vec<(i64, ResidueElem)>) -> Series {
    Series::from_map(terms, Precision::Exact).expect("exact series")
}

/// An exact Laurent polynomial with valuation in the configured range.
pub fn coeff(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Series {
    let (lo, hi) = cfg.val_range;
    let j = rng.gen_range(lo..=hi);
    let mut terms = vec![(j, residue(rng))];
    if rng.gen_bool(0.3) {
        terms.push((j + rng.gen_range(1..=2), rational(rng)));
    }
    exact(terms)
}

/// An exact element of `O` with rational coefficients, `v ≥ min_val`.
pub fn integral(rng: &mut ChaCha8Rng, min_val: i64, tower: bool) -> Series {
    let len = rng.gen_range(1..=3);
    let mut terms = Vec::new();
    for k in 0..len {
        let c = if tower { residue(rng) } else { rational(rng) };
        if rng.gen_bool(0.8) {
            terms.push((min_val + k, c));
        }
    }
    exact(terms)
}

/// An exact unit of `O`.
pub fn unit(rng: &mut ChaCha8Rng, tower: bool) -> Series {
    let c = if tower { residue(rng) } else { rational(rng) };
    &Series::constant(c) + &integral(rng, 1, tower)
}

/// A one-variable polynomial of degree at most `max_degree`.
pub fn one_var_poly(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> KPoly {
    let d = rng.gen_range(0..=cfg.max_degree) as usize;
    let coeffs = (0..=d)
        .map(|i| {
            if i < d && rng.gen_bool(0.35) {
                Series::zero()
            } else {
                coeff(rng, cfg)
            }
        })
        .collect();
    KPoly::from_coeffs(coeffs)
}

fn atom_from(rng: &mut ChaCha8Rng, mut poly: impl FnMut(&mut ChaCha8Rng) -> KPoly) -> Formula {
    match rng.gen_range(0..10) {
        0..=2 => Formula::eq(poly(rng)),
        3..=5 => {
            let f = poly(rng);
            Formula::div(f, poly(rng))
        }
        6..=8 => Formula::pn(rng.gen_range(2..=4), poly(rng)),
        _ => Formula::nv(poly(rng)),
    }
}

/// A one-variable formula whose connective depth is at most `depth`.
pub fn formula(rng: &mut ChaCha8Rng, cfg: &RunConfig, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let a = atom_from(rng, |r| one_var_poly(r, cfg));
        return if rng.gen_bool(0.3) { a.not() } else { a };
    }
    let sub = |rng: &mut ChaCha8Rng| formula(rng, cfg, depth - 1);
    let (a, b) = (sub(rng), sub(rng));
    let phi = if rng.gen_bool(0.5) { a.and(b) } else { a.or(b) };
    if rng.gen_bool(0.2) {
        phi.not()
    } else {
        phi
    }
}

pub fn formula_corpus(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Vec<Formula> {
    (0..cfg.corpus_size).map(|_| formula(rng, cfg, 3)).collect()
}

/// Determinant of the matrix of variables `x1..x{n²}`, row-major.
pub fn generic_det(n: usize) -> KPoly {
    fn rec(n: usize, row: usize, cols: &[usize]) -> KPoly {
        if cols.is_empty() {
            return KPoly::constant(Series::one());
        }
        let mut acc = KPoly::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = KPoly::var(row * n + c + 1).mul(&rec(n, row + 1, &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }
    rec(n, 0, &(0..n).collect::<Vec<_>>())
}

/// A polynomial in `x1..x{vars}` of total degree at most 2.
pub fn multi_poly(rng: &mut ChaCha8Rng, cfg: &RunConfig, vars: usize) -> KPoly {
    let mut p = KPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut exps = vec![0u32; vars];
        for _ in 0..rng.gen_range(0..=2) {
            exps[rng.gen_range(0..vars)] += 1;
        }
        p = p.add(&KPoly::term(coeff(rng, cfg), Monomial::from_exponents(exps)));
    }
    p
}

/// An atom or negated atom in `n²` variables.
pub fn gl_atom(rng: &mut ChaCha8Rng, cfg: &RunConfig, n: usize) -> Formula {
    let vars = n * n;
    let a = atom_from(rng, |r| {
        if r.gen_bool(0.2) {
            generic_det(n).scale(&coeff(r, cfg)).add(&multi_poly(r, cfg, vars))
        } else {
            multi_poly(r, cfg, vars)
        }
    });
    if rng.gen_bool(0.3) {
        a.not()
    } else {
        a
    }
}

/// A random element of `GL(n, O)` with exact entries and a nonzero
/// constant determinant, built as `D·L·U·P`.
pub fn gl_element(rng: &mut ChaCha8Rng, n: usize, tower: bool) -> OMatrix {
    let mut d = OMatrix::identity(n).entries().to_vec();
    let mut l = d.clone();
    let mut u = d.clone();
    for i in 0..n {
        let c = if tower { residue(rng) } else { rational(rng) };
        d[i * n + i] = Series::constant(c);
        for j in 0..n {
            if j < i {
                l[i * n + j] = integral(rng, 0, tower);
            } else if j > i {
                u[i * n + j] = integral(rng, 0, tower);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = (0..n * n)
        .map(|k| if perm[k / n] == k % n { Series::one() } else { Series::zero() })
        .collect();
    let m = |e: Vec<Series>| OMatrix::new(n, e).expect("entries in O");
    let mul = |a: &OMatrix, b: &OMatrix| crate::realize::mat_mul(a, b).expect("same size");
    mul(&mul(&mul(&m(d), &m(l)), &m(u)), &m(p))
}

/// An exact matrix with every entry in the maximal ideal.
pub fn small_matrix(rng: &mut ChaCha8Rng, n: usize) -> OMatrix {
    let entries = (0..n * n)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Series::zero()
            } else {
                let v = rng.gen_range(1..=3);
                integral(rng, v, true)
            }
        })
        .collect();
    OMatrix::new(n, entries).expect("entries in O")
}
