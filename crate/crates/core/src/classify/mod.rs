//! Res-finite / res-cofinite classification of one-variable formulas.
//!
//! For `f = Σ b_i x^i`, pick a coefficient `e_f` of least valuation and set
//! `f* = f / e_f ∈ O[x]`. Whenever `res(f*)(res(a)) ≠ 0` we have
//! `v(f(a)) = v(e_f)`, so off the finite zero set of `res(f*)` every atom is
//! decided by valuations of coefficients alone. Combining the per-literal
//! exception sets gives a single witness polynomial `Z` such that the
//! formula is constant on `{a ∈ O : Z(res(a)) ≠ 0}`.

mod definable;
mod sample;

use std::fmt;

use serde_json::{json, Value};

pub use definable::{d_phi, Template};
pub use sample::{sample_check, SampleReport};

use crate::coeff::{ResidueElem, ResiduePoly};
use crate::error::{Error, Result};
use crate::formula::{evaluate, Atomic, Formula, Literal, Truth};
use crate::series::{KPoly, Series, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    ResFinite,
    ResCofinite,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::ResFinite => "res-finite",
            Kind::ResCofinite => "res-cofinite",
        }
    }

    fn from_cofinite(cofinite: bool) -> Kind {
        if cofinite {
            Kind::ResCofinite
        } else {
            Kind::ResFinite
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict plus the exception set `Z`, given as a monic squarefree
/// polynomial (the constant 1 when `Z` is empty).
///
/// Cofinite: every `a ∈ O` with `witness(res(a)) ≠ 0` satisfies the formula.
/// Finite: every `a ∈ O` satisfying the formula has `witness(res(a)) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: Kind,
    pub witness: ResiduePoly,
}

impl Classification {
    fn new(kind: Kind, witness: ResiduePoly) -> Self {
        Classification { kind, witness }
    }

    fn trivial(cofinite: bool) -> Self {
        Classification::new(Kind::from_cofinite(cofinite), ResiduePoly::one())
    }

    pub fn is_cofinite(&self) -> bool {
        self.kind == Kind::ResCofinite
    }

    /// Whether `a` lies outside the exception set.
    pub fn avoids(&self, a: &ResidueElem) -> bool {
        !self.witness.eval(a).is_zero()
    }

    /// `{"kind":...,"witness":...,"in_p_trans":...}`
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "witness": self.witness.to_string(),
            "in_p_trans": self.is_cofinite(),
        })
    }
}

/// The choice of `e_f` and the residue of `f* = f / e_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarForm {
    pub e_index: usize,
    pub e_f: Series,
    pub res_f_star: ResiduePoly,
}

/// Index and value of a coefficient of least valuation; ties go to the
/// lowest degree.
pub fn min_val_coeff(f: &KPoly) -> Result<(usize, Series)> {
    let coeffs = f.univariate_coeffs()?;
    let mut best: Option<(usize, i64)> = None;
    for (i, c) in coeffs.iter().enumerate() {
        if let Valuation::Finite(v) = c.valuation()? {
            if best.is_none_or(|(_, bv)| v < bv) {
                best = Some((i, v));
            }
        }
    }
    let (i, _) = best.ok_or(Error::ZeroPolynomial)?;
    Ok((i, coeffs[i].clone()))
}

/// `e_f` and `res(f*)`. The residue of `b_i / e_f` is the ratio of leading
/// coefficients when `v(b_i) = v(e_f)` and zero otherwise, so no series
/// division is needed.
pub fn star_form(f: &KPoly) -> Result<StarForm> {
    let (e_index, e_f) = min_val_coeff(f)?;
    let v = e_f.valuation_nonzero()?;
    let lead_inv = e_f.coeff(v).expect("valuation is decided").inv()?;
    let res = f
        .univariate_coeffs()?
        .iter()
        .map(|b| match b.valuation()? {
            Valuation::Finite(w) if w == v => Ok(&b.coeff(v).expect("decided") * &lead_inv),
            _ => Ok(ResidueElem::zero()),
        })
        .collect::<Result<Vec<_>>>()?;
    let res_f_star = ResiduePoly::new(res);
    debug_assert!(!res_f_star.is_zero());
    Ok(StarForm {
        e_index,
        e_f,
        res_f_star,
    })
}

/// `f* = f / e_f` as a polynomial over `O`: exact when `e_f` is a
/// monomial, otherwise known to relative precision `rel_prec`.
pub fn star_poly(f: &KPoly, rel_prec: i64) -> Result<KPoly> {
    let (_, e_f) = min_val_coeff(f)?;
    let v = e_f.valuation_nonzero()?;
    let rel = match e_f.prec().bound() {
        Some(p) => rel_prec.min(p - v),
        None => rel_prec,
    };
    Ok(f.scale(&e_f.inv(rel)?))
}

fn one_variable(f: &KPoly) -> Result<()> {
    if f.arity() > 1 {
        Err(Error::Multivariate)
    } else {
        Ok(())
    }
}

pub fn classify_literal(lit: &Literal) -> Result<Classification> {
    for f in lit.atomic.polys() {
        one_variable(f)?;
    }
    let neg = lit.negated;
    let flip = |cofinite: bool| cofinite != neg;
    Ok(match &lit.atomic {
        Atomic::Eq(f) => {
            if f.is_zero() {
                return Ok(Classification::trivial(flip(true)));
            }
            let s = star_form(f)?;
            Classification::new(Kind::from_cofinite(flip(false)), s.res_f_star.squarefree()?)
        }
        Atomic::Div(f, g) => match (f.is_zero(), g.is_zero()) {
            (_, true) => Classification::trivial(flip(true)),
            (true, false) => classify_literal(&Literal {
                atomic: Atomic::Eq(g.clone()),
                negated: neg,
            })?,
            (false, false) => {
                let sf = star_form(f)?;
                let sg = star_form(g)?;
                let witness = sf.res_f_star.mul(&sg.res_f_star).squarefree()?;
                let le = sf.e_f.valuation_nonzero()? <= sg.e_f.valuation_nonzero()?;
                Classification::new(Kind::from_cofinite(flip(le)), witness)
            }
        },
        Atomic::Pn(n, f) => {
            if f.is_zero() {
                return Ok(Classification::trivial(flip(true)));
            }
            let s = star_form(f)?;
            let divisible = s.e_f.valuation_nonzero()?.rem_euclid(*n as i64) == 0;
            Classification::new(Kind::from_cofinite(flip(divisible)), s.res_f_star.squarefree()?)
        }
        Atomic::Nv(f) => {
            let phi = Formula::nv(f.clone());
            let phi = if neg { phi.not() } else { phi };
            classify_formula(&phi)?
        }
    })
}

/// Classify a one-variable formula: normalize, classify the literals, and
/// evaluate the connectives with each literal fixed at its generic value.
pub fn classify_formula(phi: &Formula) -> Result<Classification> {
    if phi.arity() > 1 {
        return Err(Error::Multivariate);
    }
    let nnf = phi.normalize();
    let classes = nnf
        .literals()
        .into_iter()
        .map(classify_literal)
        .collect::<Result<Vec<_>>>()?;
    let witness = classes
        .iter()
        .fold(ResiduePoly::one(), |acc, c| acc.squarefree_union(&c.witness));
    let mut next = classes.iter();
    let generic = nnf.fold(&mut |_| {
        Truth::from_bool(next.next().expect("one class per literal").is_cofinite())
    });
    let cofinite = generic == Truth::True;
    Ok(Classification::new(Kind::from_cofinite(cofinite), witness))
}

/// Membership of `phi` in the generic type `p_trans`: exactly the
/// res-cofinite formulas.
pub fn in_p_trans(phi: &Formula) -> Result<bool> {
    Ok(classify_formula(phi)?.is_cofinite())
}

/// A rational point satisfying a res-cofinite formula: the first of
/// `0, 1, 2, ...` whose residue avoids the witness.
pub fn find_witness(phi: &Formula) -> Result<Series> {
    let c = classify_formula(phi)?;
    if !c.is_cofinite() {
        return Err(Error::NotResCofinite);
    }
    let point = (0..)
        .map(ResidueElem::int)
        .find(|r| c.avoids(r))
        .map(Series::constant)
        .expect("a nonzero polynomial has finitely many roots");
    assert_eq!(
        evaluate(phi, std::slice::from_ref(&point))?,
        Truth::True,
        "witness point must satisfy the formula"
    );
    Ok(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn classify(text: &str) -> Classification {
        classify_formula(&parse(text).unwrap()).unwrap()
    }

    fn lit(text: &str) -> Classification {
        let phi = parse(text).unwrap();
        let nnf = phi.normalize();
        let lits = nnf.literals();
        assert_eq!(lits.len(), 1);
        classify_literal(lits[0]).unwrap()
    }

    fn poly(text: &str) -> KPoly {
        crate::parse_kpoly(text).unwrap()
    }

    #[test]
    fn min_val_coeff_examples() {
        assert_eq!(min_val_coeff(&poly("t + x")).unwrap(), (1, Series::one()));
        assert_eq!(min_val_coeff(&poly("2 + 3*x")).unwrap(), (0, Series::int(2)));
        assert_eq!(min_val_coeff(&poly("t^2 + t*x^3")).unwrap(), (3, Series::t()));
        assert_eq!(min_val_coeff(&KPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn star_form_examples() {
        let s = star_form(&poly("t + t*x")).unwrap();
        assert_eq!(star_poly(&poly("t + t*x"), 4).unwrap(), poly("1 + x"));
        assert_eq!(s.res_f_star.to_string(), "y+1");
        let s = star_form(&poly("t + x")).unwrap();
        assert_eq!(star_poly(&poly("t + x"), 4).unwrap(), poly("t + x"));
        assert_eq!(s.res_f_star.to_string(), "y");
        let s = star_form(&poly("2")).unwrap();
        assert_eq!(star_poly(&poly("2"), 4).unwrap(), poly("1"));
        assert_eq!(s.res_f_star, ResiduePoly::one());
    }

    #[test]
    fn star_form_non_monomial_pivot() {
        // e_f = 1 + t is not a monomial; f* = x + t/(1+t) is inexact
        let f = poly("(1 + t)*x + t");
        let s = star_form(&f).unwrap();
        assert_eq!(s.res_f_star.to_string(), "y");
        let fs = star_poly(&f, 3).unwrap();
        assert_eq!(fs.to_string(), "(1 + O(t^3))*x + (t - t^2 + t^3 + O(t^4))");
        let res: Vec<_> = fs.univariate_coeffs().unwrap().iter().map(|c| c.residue().unwrap()).collect();
        assert_eq!(ResiduePoly::new(res), s.res_f_star);
    }

    #[test]
    fn literal_examples() {
        let c = lit("x = 0");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResFinite, "y".into()));
        let c = lit("v(t*x + 1) <= v(t)");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResCofinite, "1".into()));
        let c = lit("P_2(t + t*x^2)");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResFinite, "y^2+1".into()));
        let c = lit("!(x = 0)");
        assert_eq!(c.kind, Kind::ResCofinite);
        let c = lit("!(v(x) <= v(t))");
        assert_eq!(c.kind, Kind::ResFinite);
    }

    #[test]
    fn degenerate_literals() {
        assert_eq!(lit("x - x = 0"), Classification::trivial(true));
        assert_eq!(lit("!(x - x = 0)"), Classification::trivial(false));
        assert_eq!(lit("v(x) <= v(0)"), Classification::trivial(true));
        assert_eq!(lit("v(0) <= v(0)"), Classification::trivial(true));
        assert_eq!(lit("P_3(0*x)"), Classification::trivial(true));
        // v(0) <= v(g) is g = 0
        assert_eq!(lit("v(0) <= v(x - 1)"), lit("x - 1 = 0"));
        assert_eq!(lit("!(v(0) <= v(x - 1))"), lit("!(x - 1 = 0)"));
    }

    #[test]
    fn formula_examples() {
        let c = classify("!(x = 0) & P_2(x)");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResCofinite, "y".into()));
        let c = classify("x = 0 | x - 1 = 0");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResFinite, "y^2-y".into()));
        let c = classify("N(x)");
        assert_eq!((c.kind, c.witness.to_string()), (Kind::ResFinite, "y".into()));
    }

    #[test]
    fn p_trans_examples() {
        let m = |s: &str| in_p_trans(&parse(s).unwrap()).unwrap();
        assert!(m("!(x = 0)"));
        assert!(!m("v(t) <= v(x)"));
        assert!(m("P_2(x)"));
        assert!(!m("P_2(t*x)"));
        assert!(m("!P_2(t*x)"));
    }

    #[test]
    fn witness_examples() {
        let w = |s: &str| find_witness(&parse(s).unwrap()).unwrap();
        assert_eq!(w("P_2(x) & !(x - 1 = 0)"), Series::int(2));
        assert_eq!(w("!(x = 0)"), Series::int(1));
        assert_eq!(w("v(x) <= v(t^2*x + 1)"), Series::int(1));
        assert_eq!(find_witness(&parse("x = 0").unwrap()), Err(Error::NotResCofinite));
    }

    #[test]
    fn multivariate_rejected() {
        assert_eq!(classify_formula(&parse("x1*x2 = 0").unwrap()), Err(Error::Multivariate));
    }

    #[test]
    fn classification_json() {
        let c = classify("x = 0");
        assert_eq!(
            c.to_json(),
            json!({"kind": "res-finite", "witness": "y", "in_p_trans": false})
        );
    }
}
