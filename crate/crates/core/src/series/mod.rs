//! Truncated Laurent series over the residue tower: the working model of
//! `K = C((t))` and its valuation ring.

mod hensel;
mod kpoly;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use hensel::{hensel_lift, is_nth_power, nth_root};
pub use kpoly::KPoly;

use crate::coeff::ResidueElem;
use crate::error::{Error, Result};

/// How much of a series is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Precision {
    /// Every unstored coefficient is zero: a Laurent polynomial.
    Exact,
    /// Coefficients are known for exponents strictly below the bound.
    Bounded(i64),
}

impl Precision {
    pub fn min(self, other: Precision) -> Precision {
        match (self, other) {
            (Precision::Exact, p) | (p, Precision::Exact) => p,
            (Precision::Bounded(a), Precision::Bounded(b)) => Precision::Bounded(a.min(b)),
        }
    }

    pub fn bound(self) -> Option<i64> {
        match self {
            Precision::Exact => None,
            Precision::Bounded(p) => Some(p),
        }
    }
}

/// A value in `Z ∪ {∞}`; `Finite` values order below `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// `Σ coeffs[i] t^(offset + i)`, plus `O(t^prec)` when the precision is
/// bounded.
///
/// Normal form: no leading zero coefficient (unless the offset has reached
/// the precision bound), no trailing zero coefficient for exact series, and
/// `coeffs.len() == prec - offset` for bounded series. The exact zero has
/// offset 0 and no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    offset: i64,
    coeffs: Vec<ResidueElem>,
    prec: Precision,
}

impl Series {
    fn normalized(mut offset: i64, mut coeffs: Vec<ResidueElem>, prec: Precision) -> Series {
        if let Precision::Bounded(p) = prec {
            let keep = (p - offset).max(0) as usize;
            coeffs.truncate(keep);
            while coeffs.len() < keep {
                coeffs.push(ResidueElem::zero());
            }
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            offset += lead as i64;
        }
        match prec {
            Precision::Exact => {
                while coeffs.last().is_some_and(ResidueElem::is_zero) {
                    coeffs.pop();
                }
                if coeffs.is_empty() {
                    offset = 0;
                }
            }
            Precision::Bounded(p) => {
                if offset > p {
                    offset = p;
                }
            }
        }
        Series {
            offset,
            coeffs,
            prec,
        }
    }

    /// Build a series from explicit coefficients.
    pub fn from_coeffs(offset: i64, coeffs: Vec<ResidueElem>, prec: Precision) -> Result<Series> {
        if let Precision::Bounded(p) = prec {
            for (i, c) in coeffs.iter().enumerate() {
                let e = offset + i as i64;
                if e >= p && !c.is_zero() {
                    return Err(Error::ExponentBeyondPrecision { exponent: e, prec: p });
                }
            }
            if offset > p {
                return Ok(Series::big_o(p));
            }
        }
        Ok(Series::normalized(offset, coeffs, prec))
    }

    /// Build a series from an exponent-to-coefficient map.
    pub fn from_map<I>(terms: I, prec: Precision) -> Result<Series>
    where
        I: IntoIterator<Item = (i64, ResidueElem)>,
    {
        let mut map: BTreeMap<i64, ResidueElem> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_default();
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let Some((&lo, _)) = map.first_key_value() else {
            return Ok(match prec {
                Precision::Exact => Series::zero(),
                Precision::Bounded(p) => Series::big_o(p),
            });
        };
        let hi = *map.last_key_value().map(|(k, _)| k).unwrap_or(&lo);
        if let Precision::Bounded(p) = prec {
            if hi >= p {
                return Err(Error::ExponentBeyondPrecision { exponent: hi, prec: p });
            }
        }
        let mut coeffs = vec![ResidueElem::zero(); (hi - lo + 1) as usize];
        for (e, c) in map {
            coeffs[(e - lo) as usize] = c;
        }
        Ok(Series::normalized(lo, coeffs, prec))
    }

    pub fn zero() -> Series {
        Series {
            offset: 0,
            coeffs: Vec::new(),
            prec: Precision::Exact,
        }
    }

    pub fn one() -> Series {
        Series::constant(ResidueElem::one())
    }

    pub fn constant(c: ResidueElem) -> Series {
        Series::monomial(c, 0)
    }

    pub fn int(n: i64) -> Series {
        Series::constant(ResidueElem::int(n))
    }

    /// `c t^k`, exact.
    pub fn monomial(c: ResidueElem, k: i64) -> Series {
        Series::normalized(k, vec![c], Precision::Exact)
    }

    /// The uniformizer `t`.
    pub fn t() -> Series {
        Series::monomial(ResidueElem::one(), 1)
    }

    /// `O(t^p)`: zero to precision `p`.
    pub fn big_o(p: i64) -> Series {
        Series {
            offset: p,
            coeffs: Vec::new(),
            prec: Precision::Bounded(p),
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[ResidueElem] {
        &self.coeffs
    }

    pub fn prec(&self) -> Precision {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == Precision::Exact
    }

    pub fn is_exact_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`, or `None` when it lies beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<ResidueElem> {
        if let Precision::Bounded(p) = self.prec {
            if k >= p {
                return None;
            }
        }
        if k < self.offset {
            return Some(ResidueElem::zero());
        }
        Some(
            self.coeffs
                .get((k - self.offset) as usize)
                .cloned()
                .unwrap_or_default(),
        )
    }

    /// Exponent just past the last stored coefficient.
    fn end(&self) -> i64 {
        self.offset + self.coeffs.len() as i64
    }

    /// A lower bound for the valuation: exact when the series has a known
    /// nonzero coefficient, the precision bound when it has none.
    fn val_floor(&self) -> Option<i64> {
        if self.is_exact_zero() {
            None
        } else {
            Some(self.offset)
        }
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<Valuation> {
        match (self.coeffs.first(), self.prec) {
            (Some(c), _) if !c.is_zero() => Ok(Valuation::Finite(self.offset)),
            (_, Precision::Exact) => Ok(Valuation::Infinity),
            (_, Precision::Bounded(p)) => Err(Error::PrecisionExhausted(p)),
        }
    }

    /// Finite valuation, treating zero as an error.
    pub fn valuation_nonzero(&self) -> Result<i64> {
        match self.valuation()? {
            Valuation::Finite(v) => Ok(v),
            Valuation::Infinity => Err(Error::ZeroElement),
        }
    }

    /// Residue of an element of the valuation ring.
    pub fn residue(&self) -> Result<ResidueElem> {
        match self.valuation() {
            Ok(Valuation::Finite(v)) if v < 0 => Err(Error::NotInValuationRing),
            Ok(_) => Ok(self.coeff(0).expect("valuation ring element has known t^0")),
            Err(e) => {
                if self.offset > 0 {
                    Ok(ResidueElem::zero())
                } else {
                    Err(e)
                }
            }
        }
    }

    /// Membership in `O` when it is decidable.
    pub fn in_valuation_ring(&self) -> Result<bool> {
        match self.valuation() {
            Ok(v) => Ok(v >= Valuation::Finite(0)),
            Err(e) => {
                if self.offset >= 0 {
                    Ok(true)
                } else {
                    Err(e)
                }
            }
        }
    }

    /// Drop everything from `t^p` on.
    pub fn truncate(&self, p: i64) -> Series {
        let prec = self.prec.min(Precision::Bounded(p));
        Series::normalized(self.offset, self.coeffs.clone(), prec)
    }

    /// The stored coefficients as an exact Laurent polynomial.
    pub fn to_exact(&self) -> Series {
        Series::normalized(self.offset, self.coeffs.clone(), Precision::Exact)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Series {
        if self.is_exact_zero() {
            return self.clone();
        }
        let prec = match self.prec {
            Precision::Exact => Precision::Exact,
            Precision::Bounded(p) => Precision::Bounded(p + k),
        };
        Series {
            offset: self.offset + k,
            coeffs: self.coeffs.clone(),
            prec,
        }
    }

    pub fn scale(&self, c: &ResidueElem) -> Series {
        if c.is_zero() {
            return Series::zero();
        }
        Series::normalized(
            self.offset,
            self.coeffs.iter().map(|x| x * c).collect(),
            self.prec,
        )
    }

    /// A single exact term `c t^k`, if that is what this is.
    pub fn as_monomial(&self) -> Option<(&ResidueElem, i64)> {
        match (self.prec, self.coeffs.as_slice()) {
            (Precision::Exact, [c]) => Some((c, self.offset)),
            _ => None,
        }
    }

    /// The constant value, if this is an exact constant.
    pub fn as_constant(&self) -> Option<ResidueElem> {
        if self.is_exact_zero() {
            return Some(ResidueElem::zero());
        }
        match self.as_monomial() {
            Some((c, 0)) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn max_var(&self) -> usize {
        self.coeffs.iter().map(ResidueElem::max_var).max().unwrap_or(0)
    }

    fn add_ref(&self, other: &Series) -> Series {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let prec = self.prec.min(other.prec);
        let lo = self.offset.min(other.offset);
        let hi = match prec {
            Precision::Exact => self.end().max(other.end()),
            Precision::Bounded(p) => p,
        };
        if hi <= lo {
            return Series::normalized(lo, Vec::new(), prec);
        }
        let mut coeffs = vec![ResidueElem::zero(); (hi - lo) as usize];
        for s in [self, other] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.offset + i as i64;
                if e >= hi {
                    break;
                }
                let slot = &mut coeffs[(e - lo) as usize];
                *slot = &*slot + c;
            }
        }
        Series::normalized(lo, coeffs, prec)
    }

    fn mul_ref(&self, other: &Series) -> Series {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Series::zero();
        }
        let lo = self.offset + other.offset;
        let mut prec = Precision::Exact;
        if let Precision::Bounded(pa) = self.prec {
            prec = prec.min(Precision::Bounded(pa + other.val_floor().unwrap_or(0)));
        }
        if let Precision::Bounded(pb) = other.prec {
            prec = prec.min(Precision::Bounded(pb + self.val_floor().unwrap_or(0)));
        }
        let hi = match prec {
            Precision::Exact => self.end() + other.end() - 1,
            Precision::Bounded(p) => p,
        };
        if hi <= lo {
            return Series::normalized(lo, Vec::new(), prec);
        }
        let n = (hi - lo) as usize;
        let mut coeffs = vec![ResidueElem::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= n {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Series::normalized(lo, coeffs, prec)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut out = Series::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Inverse `r` with `self * r ≡ 1 (mod t^prec)` and `v(r) = -v(self)`.
    ///
    /// An exact monomial has an exact inverse. Otherwise the result carries
    /// `O(t^(prec - v))`.
    pub fn inv(&self, prec: i64) -> Result<Series> {
        let v = match self.valuation()? {
            Valuation::Infinity => return Err(Error::DivisionByZero),
            Valuation::Finite(v) => v,
        };
        if let Some((c, k)) = self.as_monomial() {
            return Ok(Series::monomial(c.inv()?, -k));
        }
        // unit part u = self / t^v, needed modulo t^prec
        if let Precision::Bounded(p) = self.prec {
            if p - v < prec {
                return Err(Error::PrecisionExhausted(p));
            }
        }
        let n = prec.max(0) as usize;
        let u = &self.coeffs;
        let c0_inv = u[0].inv()?;
        let mut w: Vec<ResidueElem> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                w.push(c0_inv.clone());
                continue;
            }
            let mut acc = ResidueElem::zero();
            for j in 1..=k.min(u.len().saturating_sub(1)) {
                if u[j].is_zero() || w[k - j].is_zero() {
                    continue;
                }
                acc = &acc + &(&u[j] * &w[k - j]);
            }
            w.push(-(&acc * &c0_inv));
        }
        Ok(Series::normalized(-v, w, Precision::Bounded(prec - v)))
    }

    /// Render coefficient-term strings, highest-priority first.
    fn term_strings(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out.push(fmt_term(c, self.offset + i as i64));
        }
        out
    }
}

fn fmt_term(c: &ResidueElem, k: i64) -> String {
    let tpow = match k {
        0 => String::new(),
        1 => "t".to_string(),
        _ => format!("t^{k}"),
    };
    if tpow.is_empty() {
        return if c.is_compound() { format!("({c})") } else { c.to_string() };
    }
    if c.is_one() {
        return tpow;
    }
    if (-c).is_one() {
        return format!("-{tpow}");
    }
    if c.is_compound() {
        format!("({c})*{tpow}")
    } else {
        format!("{c}*{tpow}")
    }
}

/// Join term strings with ` + ` / ` - `.
pub(crate) fn join_terms(terms: &[String]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            s.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.term_strings();
        if let Precision::Bounded(p) = self.prec {
            terms.push(format!("O(t^{p})"));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        // a lone constant needs no grouping
        if let (Some(c), true) = (self.as_constant(), terms.len() == 1) {
            return write!(f, "{c}");
        }
        write!(f, "{}", join_terms(&terms))
    }
}

impl Series {
    /// True when the printed form needs grouping inside a product: more
    /// than one term, or a lone constant printed as a sum or quotient.
    pub(crate) fn is_compound(&self) -> bool {
        let n = self.coeffs.iter().filter(|c| !c.is_zero()).count()
            + usize::from(!self.is_exact());
        n > 1 || (n == 1 && self.as_constant().is_some_and(|c| c.is_compound()))
    }

    /// Agreement on every coefficient both series know.
    pub fn agrees_with(&self, other: &Series) -> bool {
        let hi = match self.prec.min(other.prec) {
            Precision::Bounded(p) => p,
            Precision::Exact => self.end().max(other.end()),
        };
        let lo = self.offset.min(other.offset);
        (lo..hi).all(|k| self.coeff(k) == other.coeff(k))
    }

    /// Compare valuations, erroring when either is undecidable.
    pub fn cmp_valuation(&self, other: &Series) -> Result<Ordering> {
        Ok(self.valuation()?.cmp(&other.valuation()?))
    }
}

macro_rules! series_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                let f: fn(&Series, &Series) -> Series = $body;
                f(self, rhs)
            }
        }
        impl $tr for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, |a, b| a.add_ref(b));
series_binop!(Sub, sub, |a, b| a.add_ref(&-b));
series_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            offset: self.offset,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        -&self
    }
}

impl From<ResidueElem> for Series {
    fn from(c: ResidueElem) -> Self {
        Series::constant(c)
    }
}

impl From<i64> for Series {
    fn from(n: i64) -> Self {
        Series::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ResidueElem {
        ResidueElem::ratio(n, d)
    }

    fn poly(offset: i64, cs: &[i64]) -> Series {
        Series::from_coeffs(offset, cs.iter().map(|&c| ResidueElem::int(c)).collect(), Precision::Exact)
            .unwrap()
    }

    #[test]
    fn make_examples() {
        let s = Series::from_map([(0, ResidueElem::one()), (1, ResidueElem::one())], Precision::Exact)
            .unwrap();
        assert_eq!(s, poly(0, &[1, 1]));
        assert_eq!(s.to_string(), "1 + t");
        let s = Series::from_map([(-2, q(3, 2))], Precision::Exact).unwrap();
        assert_eq!(s.to_string(), "3/2*t^-2");
        let s = Series::from_map([], Precision::Bounded(5)).unwrap();
        assert_eq!(s, Series::big_o(5));
        assert_eq!(s.to_string(), "O(t^5)");
        assert_eq!(
            Series::from_map([(5, ResidueElem::one())], Precision::Bounded(5)),
            Err(Error::ExponentBeyondPrecision { exponent: 5, prec: 5 })
        );
    }

    #[test]
    fn arith_examples() {
        let a = poly(0, &[1, 1]);
        let b = poly(0, &[1, -1]);
        assert_eq!(&a * &b, poly(0, &[1, 0, -1]));
        let s = &Series::monomial(ResidueElem::one(), -1) + &Series::t();
        assert_eq!(s.to_string(), "t^-1 + t");
        assert!(s.is_exact());
        let approx = &Series::one() + &Series::big_o(3);
        let prod = &approx * &a;
        assert_eq!(prod.to_string(), "1 + t + O(t^3)");
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(Series::zero().valuation(), Ok(Valuation::Infinity));
        assert_eq!(poly(-2, &[1, 0, 1]).valuation(), Ok(Valuation::Finite(-2)));
        assert_eq!(Series::big_o(5).valuation(), Err(Error::PrecisionExhausted(5)));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(poly(0, &[2, 3]).residue(), Ok(ResidueElem::int(2)));
        assert_eq!(Series::t().residue(), Ok(ResidueElem::zero()));
        assert_eq!(
            Series::monomial(ResidueElem::one(), -1).residue(),
            Err(Error::NotInValuationRing)
        );
        assert_eq!(Series::big_o(2).residue(), Ok(ResidueElem::zero()));
        assert_eq!(Series::big_o(0).residue(), Err(Error::PrecisionExhausted(0)));
    }

    #[test]
    fn inverse_examples() {
        let r = poly(0, &[1, -1]).inv(4).unwrap();
        assert_eq!(r.to_string(), "1 + t + t^2 + t^3 + O(t^4)");
        assert_eq!(Series::t().inv(3).unwrap(), Series::monomial(ResidueElem::one(), -1));
        assert_eq!(Series::int(2).inv(1).unwrap(), Series::constant(q(1, 2)));
        assert_eq!(Series::zero().inv(3), Err(Error::DivisionByZero));
        let inexact = &poly(0, &[1, 1]) + &Series::big_o(2);
        assert_eq!(inexact.inv(5), Err(Error::PrecisionExhausted(2)));
    }

    #[test]
    fn inverse_with_valuation() {
        let a = poly(2, &[1, 1]); // t^2 + t^3
        let r = a.inv(5).unwrap();
        assert_eq!(r.valuation(), Ok(Valuation::Finite(-2)));
        let prod = &a * &r;
        assert!(prod.agrees_with(&Series::one()));
        assert_eq!(prod.prec(), Precision::Bounded(5));
    }

    #[test]
    fn tower_coefficients_print() {
        let u1 = ResidueElem::var(1);
        let s = Series::from_map([(0, ResidueElem::one()), (3, u1.clone())], Precision::Exact)
            .unwrap();
        assert_eq!(s.to_string(), "1 + u1*t^3");
        let s = Series::monomial(&u1 + &ResidueElem::one(), 1);
        assert_eq!(s.to_string(), "(u1+1)*t");
        let s = Series::monomial(-&u1, 2);
        assert_eq!(s.to_string(), "-u1*t^2");
    }
}
