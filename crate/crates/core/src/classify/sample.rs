//! Randomized cross-check of a classification against direct evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Classification;
use crate::coeff::ResidueElem;
use crate::error::Result;
use crate::formula::{evaluate, Formula, Truth};
use crate::series::Series;

const MAX_SAMPLE_DEGREE: i64 = 3;
const NUM_RANGE: i64 = 9;
const DEN_RANGE: i64 = 5;

/// Outcome of [`sample_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub samples: usize,
    /// Points whose residue is a root of the witness.
    pub discarded: usize,
    /// Kept points where evaluation matched the verdict.
    pub agree: usize,
    pub pass: bool,
    /// Evaluation at small rational roots of the witness, for information
    /// only: the verdict says nothing about these points.
    pub at_roots: Vec<(String, String)>,
}

fn small_rational(rng: &mut ChaCha8Rng) -> ResidueElem {
    let p = rng.gen_range(-NUM_RANGE..=NUM_RANGE);
    let q = rng.gen_range(1..=DEN_RANGE);
    ResidueElem::ratio(p, q)
}

fn random_point(rng: &mut ChaCha8Rng) -> Series {
    let d = rng.gen_range(0..=MAX_SAMPLE_DEGREE);
    let coeffs = (0..=d).map(|_| small_rational(rng)).collect();
    Series::from_coeffs(0, coeffs, crate::series::Precision::Exact)
        .expect("exact coefficients form a series")
}

/// Draw `k` exact points of `O` with rational coefficients and compare
/// `evaluate(phi, a)` with the verdict of `c` wherever the residue of `a`
/// avoids the witness.
pub fn sample_check(phi: &Formula, c: &Classification, k: usize, seed: u64) -> Result<SampleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Series> = (0..k).map(|_| random_point(&mut rng)).collect();
    let expected = Truth::from_bool(c.is_cofinite());
    let outcomes = points
        .par_iter()
        .map(|a| {
            if !c.avoids(&a.residue()?) {
                return Ok(None);
            }
            Ok(Some(evaluate(phi, std::slice::from_ref(a))? == expected))
        })
        .collect::<Result<Vec<_>>>()?;
    let discarded = outcomes.iter().filter(|o| o.is_none()).count();
    let agree = outcomes.iter().filter(|o| **o == Some(true)).count();

    let mut at_roots = Vec::new();
    for p in -NUM_RANGE..=NUM_RANGE {
        for q in 1..=DEN_RANGE {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let r = ResidueElem::rational(BigRational::new(BigInt::from(p), BigInt::from(q)));
            if c.witness.eval(&r).is_zero() {
                let truth = evaluate(phi, &[Series::constant(r.clone())])?;
                at_roots.push((r.to_string(), truth.to_string()));
            }
        }
    }

    Ok(SampleReport {
        samples: k,
        discarded,
        agree,
        pass: agree == k - discarded,
        at_roots,
    })
}
