use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{join_terms, Series};
use crate::coeff::Monomial;
use crate::error::{Error, Result};

/// A polynomial in `x1, ..., xm` with [`Series`] coefficients.
///
/// The one-variable case is the usual `K[x]`; the variable `x` is `x1`.
/// Exactly-zero coefficients are not stored, inexact zeros such as
/// `O(t^5)` are.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KPoly {
    terms: BTreeMap<Monomial, Series>,
}

impl KPoly {
    pub fn zero() -> Self {
        KPoly::default()
    }

    pub fn constant(c: Series) -> Self {
        KPoly::term(c, Monomial::one())
    }

    pub fn term(c: Series, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_exact_zero() {
            terms.insert(m, c);
        }
        KPoly { terms }
    }

    /// The variable `x{index}` (1-based).
    pub fn var(index: usize) -> Self {
        KPoly::term(Series::one(), Monomial::var(index))
    }

    /// `x`, the variable of one-variable formulas.
    pub fn x() -> Self {
        KPoly::var(1)
    }

    /// `Σ coeffs[i] x^i`.
    pub fn from_coeffs(coeffs: Vec<Series>) -> Self {
        let mut p = KPoly::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(Monomial::from_exponents(vec![i as u32]), c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Series)> {
        self.terms.iter()
    }

    /// True when every coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest `x` variable index used, 0 for constants.
    pub fn arity(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    /// Highest tower variable occurring in a coefficient.
    pub fn max_tower_var(&self) -> usize {
        self.terms.values().map(Series::max_var).max().unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.terms.values().all(Series::is_exact)
    }

    /// The constant coefficient if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<Series> {
        if self.arity() > 0 {
            return None;
        }
        Some(
            self.terms
                .get(&Monomial::one())
                .cloned()
                .unwrap_or_else(Series::zero),
        )
    }

    /// Dense coefficient list in `x`; fails for several variables.
    pub fn univariate_coeffs(&self) -> Result<Vec<Series>> {
        if self.arity() > 1 {
            return Err(Error::Multivariate);
        }
        let deg = self
            .terms
            .keys()
            .map(|m| m.exp(1) as usize)
            .max()
            .map_or(0, |d| d + 1);
        let mut out = vec![Series::zero(); deg];
        for (m, c) in &self.terms {
            out[m.exp(1) as usize] = c.clone();
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: Series) {
        use std::collections::btree_map::Entry;
        if c.is_exact_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_exact_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &KPoly) -> KPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> KPoly {
        KPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &KPoly) -> KPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &KPoly) -> KPoly {
        let mut out = KPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Series) -> KPoly {
        let mut out = KPoly::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> KPoly {
        let mut out = KPoly::constant(Series::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative in `x{index}`.
    pub fn derivative(&self, index: usize) -> KPoly {
        let mut out = KPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index - 1] -= 1;
            out.add_term(Monomial::from_exponents(exps), c.scale(&(e as i64).into()));
        }
        out
    }

    /// Evaluate at a point; `point[i]` is the value of `x{i+1}`.
    pub fn eval(&self, point: &[Series]) -> Result<Series> {
        let arity = self.arity();
        if point.len() < arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: point.len(),
            });
        }
        if arity <= 1 {
            let a = point.first().cloned().unwrap_or_else(Series::zero);
            return Ok(self.horner(&a));
        }
        let mut powers: HashMap<(usize, u32), Series> = HashMap::new();
        let mut acc = Series::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| point[i].pow(e))
                    .clone();
                term = &term * &p;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    fn horner(&self, a: &Series) -> Series {
        let coeffs = self.univariate_coeffs().expect("arity checked");
        coeffs
            .iter()
            .rev()
            .fold(Series::zero(), |acc, c| &(&acc * a) + c)
    }

    /// Compose with `x{i+1} ↦ map[i]`.
    pub fn substitute(&self, map: &[KPoly]) -> Result<KPoly> {
        let arity = self.arity();
        if map.len() < arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: map.len(),
            });
        }
        let mut powers: HashMap<(usize, u32), KPoly> = HashMap::new();
        let mut out = KPoly::zero();
        for (m, c) in &self.terms {
            let mut term = KPoly::constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, e))
                    .or_insert_with(|| map[i].pow(e))
                    .clone();
                term = term.mul(&p);
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

fn fmt_xmono(m: &Monomial) -> String {
    let single = m.max_var() <= 1;
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if single { "x".to_string() } else { format!("x{}", i + 1) };
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join("*")
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let cs = c.to_string();
                if m.is_one() {
                    return if c.is_compound() { format!("({cs})") } else { cs };
                }
                let xm = fmt_xmono(m);
                if c.is_compound() {
                    format!("({cs})*{xm}")
                } else if cs == "1" {
                    xm
                } else if cs == "-1" {
                    format!("-{xm}")
                } else {
                    format!("{cs}*{xm}")
                }
            })
            .collect();
        write!(f, "{}", join_terms(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ResidueElem;

    fn c(n: i64) -> KPoly {
        KPoly::constant(Series::int(n))
    }

    #[test]
    fn compound_constant_coefficients_are_grouped() {
        let c = Series::constant(&ResidueElem::var(1) - &ResidueElem::ratio(5, 3));
        let f = KPoly::x().scale(&c);
        assert_eq!(f.to_string(), "(u1-5/3)*x");
        assert_eq!(crate::parse_kpoly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn eval_examples() {
        let x = KPoly::x();
        let f = x.mul(&x).sub(&c(1));
        assert_eq!(f.eval(&[Series::one()]).unwrap(), Series::zero());

        let f = x.scale(&Series::t()).add(&c(1));
        let u1 = Series::constant(ResidueElem::var(1));
        let val = f.eval(&[u1]).unwrap();
        assert_eq!(val.to_string(), "1 + u1*t");

        let one_plus_t = &Series::one() + &Series::t();
        let f = x.mul(&x).sub(&KPoly::constant(one_plus_t));
        assert_eq!(f.eval(&[Series::one()]).unwrap(), -Series::t());
    }

    #[test]
    fn multivariate_eval_and_substitute() {
        // det of [[x1, x2], [x3, x4]]
        let det = KPoly::var(1).mul(&KPoly::var(4)).sub(&KPoly::var(2).mul(&KPoly::var(3)));
        let pt: Vec<Series> = [1, 2, 3, 4].iter().map(|&n| Series::int(n)).collect();
        assert_eq!(det.eval(&pt).unwrap(), Series::int(-2));
        assert!(matches!(det.eval(&pt[..2]), Err(Error::ArityMismatch { .. })));
        let shifted = KPoly::x().substitute(&[KPoly::x().add(&c(1))]).unwrap();
        assert_eq!(shifted, KPoly::x().add(&c(1)));
    }

    #[test]
    fn display() {
        let x = KPoly::x();
        let f = x.scale(&Series::t()).add(&c(1));
        assert_eq!(f.to_string(), "t*x + 1");
        let g = x.pow(2).scale(&(&Series::one() + &Series::t())).sub(&c(2));
        assert_eq!(g.to_string(), "(1 + t)*x^2 - 2");
        let h = KPoly::var(1).mul(&KPoly::var(2)).neg();
        assert_eq!(h.to_string(), "-x1*x2");
    }
}
