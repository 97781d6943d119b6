//! Seeded self-check suites, one per acceptance property.
//!
//! Every suite draws from its own `ChaCha8Rng` seeded from the run seed and
//! the suite name, so reports are reproducible and independent of which
//! other suites run.

pub mod corpus;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    classify_formula, d_phi, find_witness, in_p_trans, sample_check, Template,
};
use crate::coeff::{ResidueElem, Tower};
use crate::error::Error;
use crate::formula::{evaluate, Formula, Truth};
use crate::realize::{
    fresh_point, generic_gl, in_p_g, left_translate, mat_inv, mat_mul, perturb, res_mat,
};
use crate::series::{hensel_lift, is_nth_power, nth_root, KPoly, Series, Valuation};

/// Parameters shared by all suites.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// Points per formula in the dichotomy suite.
    pub samples: usize,
    /// Target precision of the lifting suite.
    pub prec: i64,
    pub corpus_size: usize,
    pub max_degree: u32,
    pub val_range: (i64, i64),
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            samples: 50,
            prec: 32,
            corpus_size: 200,
            max_degree: 4,
            val_range: (-3, 3),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError(m.into()));
        if self.samples < 1 {
            return bad("samples must be at least 1");
        }
        if self.prec < 1 {
            return bad("prec must be at least 1");
        }
        if self.corpus_size < 1 {
            return bad("corpus-size must be at least 1");
        }
        if self.val_range.0 > self.val_range.1 {
            return bad("val-range lower bound exceeds upper bound");
        }
        Ok(())
    }

    fn rng(&self, suite: &str) -> ChaCha8Rng {
        // FNV-1a of the suite name, mixed into the seed
        let h = suite
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    /// The one-variable corpus; formulas may use the base tower `⟨u1⟩`.
    pub fn corpus(&self) -> Vec<Formula> {
        corpus::formula_corpus(&mut self.rng("corpus"), self)
    }
}

/// Outcome of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failures: usize,
    pub pass: bool,
    /// The first few failure descriptions.
    pub details: Vec<String>,
}

const MAX_DETAILS: usize = 5;

impl SuiteReport {
    fn from_outcomes(suite: &str, outcomes: Vec<Result<(), String>>) -> Self {
        let checked = outcomes.len();
        let errs: Vec<String> = outcomes.into_iter().filter_map(Result::err).collect();
        SuiteReport {
            suite: suite.to_string(),
            checked,
            failures: errs.len(),
            pass: errs.is_empty(),
            details: errs.into_iter().take(MAX_DETAILS).collect(),
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn err(what: impl std::fmt::Display, e: Error) -> String {
    format!("{what}: {e}")
}

/// Base tower for corpus formulas.
fn base_tower() -> Tower {
    Tower::with_len(1)
}

/// Classification terminates and sampling agrees with it.
pub fn dichotomy(cfg: &RunConfig) -> SuiteReport {
    let corpus = cfg.corpus();
    let outcomes = corpus
        .par_iter()
        .enumerate()
        .map(|(i, phi)| {
            let c = classify_formula(phi).map_err(|e| err(phi, e))?;
            let r = sample_check(phi, &c, cfg.samples, cfg.seed.wrapping_add(i as u64))
                .map_err(|e| err(phi, e))?;
            if r.pass {
                Ok(())
            } else {
                Err(format!("{phi}: {} of {} kept samples agree", r.agree, r.samples - r.discarded))
            }
        })
        .collect();
    SuiteReport::from_outcomes("dichotomy", outcomes)
}

/// `in_p_trans` against evaluation at a fresh transcendental.
pub fn oracle_triangle(cfg: &RunConfig) -> SuiteReport {
    let corpus = cfg.corpus();
    let (_, u) = fresh_point(&base_tower());
    let outcomes = corpus
        .par_iter()
        .map(|phi| {
            let member = in_p_trans(phi).map_err(|e| err(phi, e))?;
            let at_u = evaluate(phi, std::slice::from_ref(&u)).map_err(|e| err(phi, e))?;
            expect_eq(&phi.to_string(), at_u, Truth::from_bool(member))
        })
        .collect();
    SuiteReport::from_outcomes("oracle-triangle", outcomes)
}

fn tuple(rng: &mut ChaCha8Rng, cfg: &RunConfig) -> Vec<Series> {
    let len = rng.gen_range(1..=cfg.max_degree as usize + 1);
    if rng.gen_bool(0.1) {
        return vec![Series::zero(); len];
    }
    (0..len)
        .map(|_| {
            if rng.gen_bool(0.25) {
                Series::zero()
            } else {
                corpus::coeff(rng, cfg)
            }
        })
        .collect()
}

/// `d_phi` against the classifier on instantiated templates.
pub fn definability(cfg: &RunConfig) -> SuiteReport {
    const PER_TYPE: usize = 100;
    let mut rng = cfg.rng("definability");
    let mut templates = Vec::with_capacity(3 * PER_TYPE);
    for _ in 0..PER_TYPE {
        templates.push(Template::Zero(tuple(&mut rng, cfg)));
    }
    for _ in 0..PER_TYPE {
        let b = tuple(&mut rng, cfg);
        templates.push(Template::Div(b, tuple(&mut rng, cfg)));
    }
    for _ in 0..PER_TYPE {
        let n = rng.gen_range(2..=5);
        templates.push(Template::Power(n, tuple(&mut rng, cfg)));
    }
    let outcomes = templates
        .par_iter()
        .map(|tpl| {
            let phi = tpl.instantiate();
            let d = d_phi(tpl).map_err(|e| err(&phi, e))?;
            let m = in_p_trans(&phi).map_err(|e| err(&phi, e))?;
            expect_eq(&phi.to_string(), d, m)
        })
        .collect();
    SuiteReport::from_outcomes("definability", outcomes)
}

/// Membership is unchanged under `x ↦ x + a` and `x ↦ b·x`.
pub fn translation(cfg: &RunConfig) -> SuiteReport {
    const FORMULAS: usize = 50;
    const MAPS: usize = 10;
    let corpus = cfg.corpus();
    let mut rng = cfg.rng("translation");
    let mut maps = Vec::with_capacity(2 * MAPS);
    for _ in 0..MAPS {
        let a = corpus::integral(&mut rng, 0, true);
        maps.push(KPoly::x().add(&KPoly::constant(a)));
    }
    for _ in 0..MAPS {
        maps.push(KPoly::x().scale(&corpus::unit(&mut rng, true)));
    }
    let jobs: Vec<(&Formula, &KPoly)> = corpus
        .iter()
        .take(FORMULAS)
        .flat_map(|phi| maps.iter().map(move |m| (phi, m)))
        .collect();
    let outcomes = jobs
        .par_iter()
        .map(|&(phi, m)| {
            let moved = phi.substitute(std::slice::from_ref(m)).map_err(|e| err(phi, e))?;
            let before = in_p_trans(phi).map_err(|e| err(phi, e))?;
            let after = in_p_trans(&moved).map_err(|e| err(&moved, e))?;
            expect_eq(&format!("{phi} under x -> {m}"), after, before)
        })
        .collect();
    SuiteReport::from_outcomes("translation", outcomes)
}

/// `v(s) ≥ prec`, counting a series known to be zero below `prec`.
fn vanishes_to(s: &Series, prec: i64) -> bool {
    match s.valuation() {
        Ok(Valuation::Infinity) => true,
        Ok(Valuation::Finite(v)) => v >= prec,
        Err(Error::PrecisionExhausted(_)) => s.offset() >= prec,
        Err(_) => false,
    }
}

fn hensel_instance(rng: &mut ChaCha8Rng) -> (KPoly, Series) {
    let rho = corpus::rational(rng);
    let deg_q = rng.gen_range(0..=2);
    // q(rho) ≠ 0 keeps rho a simple root of (x - rho)·q
    let q = loop {
        let coeffs: Vec<Series> = (0..=deg_q)
            .map(|_| Series::constant(corpus::rational(rng)))
            .collect();
        let q = KPoly::from_coeffs(coeffs);
        let at = q.eval(&[Series::constant(rho.clone())]).expect("one variable");
        if !at.is_exact_zero() {
            break q;
        }
    };
    let lin = KPoly::x().sub(&KPoly::constant(Series::constant(rho.clone())));
    let noise: Vec<Series> = (0..=deg_q + 1).map(|_| corpus::integral(rng, 1, false)).collect();
    let f = lin.mul(&q).add(&KPoly::from_coeffs(noise));
    let alpha = &Series::constant(rho) + &corpus::integral(rng, 1, false);
    (f, alpha)
}

/// Lifted roots vanish to the target precision and keep their residue.
pub fn hensel(cfg: &RunConfig) -> SuiteReport {
    const INSTANCES: usize = 100;
    let prec = cfg.prec;
    let mut rng = cfg.rng("hensel");
    let lifts: Vec<(KPoly, Series)> = (0..INSTANCES).map(|_| hensel_instance(&mut rng)).collect();
    let roots: Vec<(Series, u32, ResidueElem)> = (0..INSTANCES)
        .map(|_| {
            let n = rng.gen_range(2..=5);
            let rho = corpus::rational(&mut rng);
            let a = &Series::constant(rho.pow(n)) * &(&Series::one() + &corpus::integral(&mut rng, 1, false));
            (a, n, rho)
        })
        .collect();

    let mut outcomes: Vec<Result<(), String>> = lifts
        .par_iter()
        .map(|(f, alpha)| {
            let what = format!("lift {f} from {alpha}");
            let r = hensel_lift(f, alpha, prec).map_err(|e| err(&what, e))?;
            let fr = f.eval(std::slice::from_ref(&r)).map_err(|e| err(&what, e))?;
            if !vanishes_to(&fr, prec) {
                return Err(format!("{what}: f(r) = {fr}"));
            }
            expect_eq(&what, r.residue().ok(), alpha.residue().ok())
        })
        .collect();
    outcomes.extend(
        roots
            .par_iter()
            .map(|(a, n, rho)| {
                let what = format!("root {n} of {a}");
                let r = nth_root(a, *n, rho, prec).map_err(|e| err(&what, e))?;
                let diff = &r.pow(*n) - a;
                if !vanishes_to(&diff, prec) {
                    return Err(format!("{what}: r^n - a = {diff}"));
                }
                expect_eq(&what, r.residue().ok(), Some(rho.clone()))
            })
            .collect::<Vec<_>>(),
    );
    SuiteReport::from_outcomes("hensel", outcomes)
}

/// `c·t^j` is an n-th power iff `n | j`, and the quotient by n-th powers
/// has exactly `n` classes.
pub fn nth_power(cfg: &RunConfig) -> SuiteReport {
    const UNITS: usize = 10;
    let mut rng = cfg.rng("nth-power");
    let mut outcomes = Vec::new();
    for n in 2..=5u32 {
        for _ in 0..UNITS {
            let c = corpus::unit(&mut rng, true);
            let mut classes = BTreeSet::new();
            for j in -6..=6i64 {
                let a = c.shift(j);
                let what = format!("P_{n}({a})");
                let got = is_nth_power(&a, n).map_err(|e| err(&what, e));
                outcomes.push(got.clone().and_then(|g| expect_eq(&what, g, j % n as i64 == 0)));
                // two elements are in the same class iff their ratio is an n-th power
                let rep = (-6..=j).find(|&i| {
                    let ratio = &a * &c.shift(i).inv(1).expect("unit");
                    is_nth_power(&ratio, n).unwrap_or(false)
                });
                classes.insert(rep);
            }
            outcomes.push(expect_eq(&format!("classes mod P_{n}"), classes.len(), n as usize));
        }
    }
    SuiteReport::from_outcomes("nth-power", outcomes)
}

/// Sizes of the GL suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlSizes {
    pub pairs: usize,
    pub translations: usize,
    pub perturbations: usize,
    pub formulas: usize,
}

impl Default for GlSizes {
    fn default() -> Self {
        GlSizes {
            pairs: 50,
            translations: 20,
            perturbations: 20,
            formulas: 50,
        }
    }
}

/// Residue homomorphism, left-translation invariance and domination for
/// `GL(n, O)`.
pub fn gl(cfg: &RunConfig, n: usize, sizes: GlSizes) -> SuiteReport {
    let name = format!("gl-{n}");
    let mut rng = cfg.rng(&name);
    let (_, gt) = generic_gl(n, &base_tower());
    let formulas: Vec<Formula> = (0..sizes.formulas)
        .map(|_| corpus::gl_atom(&mut rng, cfg, n))
        .collect();
    let pairs: Vec<_> = (0..sizes.pairs)
        .map(|_| (corpus::gl_element(&mut rng, n, true), corpus::gl_element(&mut rng, n, true)))
        .collect();
    let hs: Vec<_> = (0..sizes.translations)
        .map(|_| corpus::gl_element(&mut rng, n, true))
        .collect();
    let ms: Vec<_> = (0..sizes.perturbations)
        .map(|_| corpus::small_matrix(&mut rng, n))
        .collect();

    let mut outcomes: Vec<Result<(), String>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let what = format!("res of {a} * {b}");
            let ab = mat_mul(a, b).map_err(|e| err(&what, e))?;
            let ra = res_mat(a).map_err(|e| err(&what, e))?;
            let rb = res_mat(b).map_err(|e| err(&what, e))?;
            let lhs = res_mat(&ab).map_err(|e| err(&what, e))?;
            expect_eq(&what, lhs, ra.mul(&rb).map_err(|e| err(&what, e))?)?;
            let inv = mat_inv(a, cfg.prec).map_err(|e| err(&what, e))?;
            let rinv = res_mat(&inv).map_err(|e| err(&what, e))?;
            expect_eq(&format!("res of {a}^-1"), Some(rinv), ra.inverse().ok())
        })
        .collect();

    let base: Vec<Result<bool, String>> = formulas
        .par_iter()
        .map(|phi| in_p_g(phi, &gt).map_err(|e| err(phi, e)))
        .collect();

    let jobs: Vec<(usize, usize)> = (0..formulas.len())
        .flat_map(|f| (0..hs.len()).map(move |h| (f, h)))
        .collect();
    outcomes.extend(
        jobs.par_iter()
            .map(|&(f, h)| {
                let (phi, h) = (&formulas[f], &hs[h]);
                let want = base[f].clone()?;
                let what = format!("{phi} translated by {h}");
                let moved = left_translate(phi, h).map_err(|e| err(&what, e))?;
                let got = in_p_g(&moved, &gt).map_err(|e| err(&what, e))?;
                expect_eq(&what, got, want)
            })
            .collect::<Vec<_>>(),
    );

    let jobs: Vec<(usize, usize)> = (0..formulas.len())
        .flat_map(|f| (0..ms.len()).map(move |m| (f, m)))
        .collect();
    outcomes.extend(
        jobs.par_iter()
            .map(|&(f, m)| {
                let (phi, m) = (&formulas[f], &ms[m]);
                let want = base[f].clone()?;
                let what = format!("{phi} at g* + {m}");
                let point = perturb(&gt, m).map_err(|e| err(&what, e))?;
                let got = evaluate(phi, point.entries()).map_err(|e| err(&what, e))?;
                expect_eq(&what, got, Truth::from_bool(want))
            })
            .collect::<Vec<_>>(),
    );
    SuiteReport::from_outcomes(&name, outcomes)
}

/// Every res-cofinite corpus formula has a rational point.
pub fn witness(cfg: &RunConfig) -> SuiteReport {
    let corpus = cfg.corpus();
    let outcomes = corpus
        .par_iter()
        .filter(|phi| in_p_trans(phi).unwrap_or(true))
        .map(|phi| {
            let a = find_witness(phi).map_err(|e| err(phi, e))?;
            if a.max_var() != 0 {
                return Err(format!("{phi}: witness {a} is not rational"));
            }
            let at = evaluate(phi, std::slice::from_ref(&a)).map_err(|e| err(phi, e))?;
            expect_eq(&format!("{phi} at {a}"), at, Truth::True)
        })
        .collect();
    SuiteReport::from_outcomes("witness", outcomes)
}

/// Names accepted by [`run_suite`], in report order.
pub const SUITES: [&str; 10] = [
    "definability",
    "dichotomy",
    "gl-1",
    "gl-2",
    "gl-3",
    "hensel",
    "nth-power",
    "oracle-triangle",
    "translation",
    "witness",
];

pub fn run_suite(cfg: &RunConfig, name: &str) -> Option<SuiteReport> {
    Some(match name {
        "definability" => definability(cfg),
        "dichotomy" => dichotomy(cfg),
        "gl-1" => gl(cfg, 1, GlSizes::default()),
        "gl-2" => gl(cfg, 2, GlSizes::default()),
        "gl-3" => gl(cfg, 3, GlSizes::default()),
        "hensel" => hensel(cfg),
        "nth-power" => nth_power(cfg),
        "oracle-triangle" => oracle_triangle(cfg),
        "translation" => translation(cfg),
        "witness" => witness(cfg),
        _ => return None,
    })
}

/// Every suite, sorted by name.
pub fn run_all(cfg: &RunConfig) -> Vec<SuiteReport> {
    SUITES
        .iter()
        .map(|s| run_suite(cfg, s).expect("known suite"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            corpus_size: 12,
            samples: 10,
            ..RunConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            corpus_size: 0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            val_range: (2, 1),
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn corpus_is_seeded() {
        let cfg = small();
        assert_eq!(cfg.corpus(), cfg.corpus());
        let other = RunConfig { seed: 1, ..small() };
        assert_ne!(cfg.corpus(), other.corpus());
        assert!(cfg.corpus().iter().all(|phi| phi.depth() <= 3 && phi.arity() <= 1));
    }

    #[test]
    fn small_runs_pass() {
        let cfg = small();
        for r in [dichotomy(&cfg), oracle_triangle(&cfg), witness(&cfg)] {
            assert!(r.pass, "{r:?}");
        }
        let sizes = GlSizes {
            pairs: 3,
            translations: 2,
            perturbations: 2,
            formulas: 4,
        };
        let r = gl(&cfg, 2, sizes);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.checked, 3 + 8 + 8);
    }
}
