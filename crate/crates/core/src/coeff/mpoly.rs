//! Sparse multivariate polynomials over the rationals in the tower variables
//! `u1, u2, ...`, with graded-lex term order and a recursive gcd.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector; slot `i` holds the exponent of `u{i+1}`.
///
/// Trailing zero exponents are never stored, so a monomial keeps the same
/// representation when the tower is extended.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// The monomial `u{index}` (1-based).
    pub fn var(index: usize) -> Self {
        assert!(index >= 1, "tower variables are 1-based");
        let mut exps = vec![0; index];
        exps[index - 1] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Exponent of `u{index}` (1-based).
    pub fn exp(&self, index: usize) -> u32 {
        self.0.get(index - 1).copied().unwrap_or(0)
    }

    /// Highest variable index occurring, 0 for the constant monomial.
    pub fn max_var(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let exps = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&0) + other.0.get(i).unwrap_or(&0))
            .collect();
        Monomial(exps)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut exps = self.0.clone();
        for (i, e) in other.0.iter().enumerate() {
            if exps[i] < *e {
                return None;
            }
            exps[i] -= e;
        }
        Some(Monomial::from_exponents(exps))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exponents(exps)
    }

    fn without_var(&self, index: usize) -> (Monomial, u32) {
        let e = self.exp(index);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut exps = self.0.clone();
        exps[index - 1] = 0;
        (Monomial::from_exponents(exps), e)
    }

    fn with_var(&self, index: usize, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        let mut exps = self.0.clone();
        if exps.len() < index {
            exps.resize(index, 0);
        }
        exps[index - 1] += e;
        Monomial(exps)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order with `u1 > u2 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let a = self.0.get(i).unwrap_or(&0);
                let b = other.0.get(i).unwrap_or(&0);
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, e) in self.0.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "u{}", i + 1)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A polynomial in `Q[u1, ..., um]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        MPoly::term(c, Monomial::one())
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(index: usize) -> Self {
        MPoly::term(BigRational::one(), Monomial::var(index))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// The value if this is a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Monomial::is_one)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Leading term under graded lex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Monomial::max_var).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, c: &BigRational, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(mm, x)| (mm.mul(m), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut out = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (dm, dc) = divisor.leading()?;
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = rc / dc;
            rem = rem.sub(&divisor.mul_term(&c, &m));
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one();
        }
        if self.terms.len() == 1 || other.terms.len() == 1 {
            let mono = self
                .terms
                .keys()
                .chain(other.terms.keys())
                .skip(1)
                .fold(
                    self.terms.keys().next().cloned().unwrap_or_default(),
                    |acc, m| acc.gcd(m),
                );
            return MPoly::term(BigRational::one(), mono);
        }
        let v = self.max_var().max(other.max_var());
        let a_has = self.terms.keys().any(|m| m.exp(v) > 0);
        let b_has = other.terms.keys().any(|m| m.exp(v) > 0);
        match (a_has, b_has) {
            (true, false) => return content(&to_univariate(self, v)).gcd(other),
            (false, true) => return self.gcd(&content(&to_univariate(other, v))),
            _ => {}
        }
        let ua = to_univariate(self, v);
        let ub = to_univariate(other, v);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ca.gcd(&cb);
        let mut pa = integral_primitive(divide_coeffs(&ua, &ca));
        let mut pb = integral_primitive(divide_coeffs(&ub, &cb));
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_empty() {
            let r = pseudo_rem(&pa, &pb);
            pa = pb;
            pb = if r.is_empty() {
                r
            } else {
                let cr = content(&r);
                integral_primitive(divide_coeffs(&r, &cr))
            };
        }
        let g = from_univariate(&pa, v);
        c.mul(&g).monic()
    }

    /// Least common multiple, monic.
    pub fn lcm(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let g = self.gcd(other);
        self.div_exact(&g).expect("gcd divides").mul(other).monic()
    }

    /// Substitute rational values for some variables; unspecified variables
    /// are left symbolic.
    pub fn eval_rational(&self, values: &[(usize, BigRational)]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = m.exponents().to_vec();
            for (idx, val) in values {
                if let Some(e) = exps.get_mut(idx - 1) {
                    if *e > 0 {
                        coef *= num_traits::pow(val.clone(), *e as usize);
                        *e = 0;
                    }
                }
            }
            out.add_term(Monomial::from_exponents(exps), coef);
        }
        out
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

// Dense univariate view in `u{var}`; coefficient `i` multiplies `u{var}^i`.
// Trailing zero coefficients are trimmed so `len() - 1` is the degree.
pub(crate) fn to_univariate(p: &MPoly, var: usize) -> Vec<MPoly> {
    let mut coeffs: Vec<MPoly> = Vec::new();
    for (m, c) in &p.terms {
        let (rest, e) = m.without_var(var);
        let e = e as usize;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, MPoly::zero());
        }
        coeffs[e].add_term(rest, c.clone());
    }
    trim(&mut coeffs);
    coeffs
}

pub(crate) fn from_univariate(coeffs: &[MPoly], var: usize) -> MPoly {
    let mut out = MPoly::zero();
    for (e, c) in coeffs.iter().enumerate() {
        for (m, x) in &c.terms {
            out.add_term(m.with_var(var, e as u32), x.clone());
        }
    }
    out
}

fn trim(coeffs: &mut Vec<MPoly>) {
    while coeffs.last().is_some_and(MPoly::is_zero) {
        coeffs.pop();
    }
}

fn content(coeffs: &[MPoly]) -> MPoly {
    let mut g = MPoly::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(coeffs: &[MPoly], d: &MPoly) -> Vec<MPoly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(d).expect("content divides every coefficient"))
        .collect()
}

// Scale so the rational coefficients are coprime integers; keeps the
// pseudo-remainder sequence from growing its numbers.
fn integral_primitive(coeffs: Vec<MPoly>) -> Vec<MPoly> {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs.iter().flat_map(|p| p.terms.values()) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return coeffs;
    }
    let f = BigRational::new(den, num);
    coeffs.iter().map(|p| p.scale(&f)).collect()
}

// lc(b)^k * a mod b for univariate polynomials with MPoly coefficients.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[i + shift] = r[i + shift].sub(&t);
        }
        trim(&mut r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn u(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_exponents(vec![2]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 3]);
        assert!(a > b);
        assert!(c > a);
        assert!(Monomial::one() < Monomial::var(5));
    }

    #[test]
    fn gcd_univariate() {
        // (u1 - 1)(u1 + 2) and (u1 - 1)^2
        let a = u(1).sub(&MPoly::one()).mul(&u(1).add(&MPoly::constant(q(2))));
        let b = u(1).sub(&MPoly::one()).pow(2);
        assert_eq!(a.gcd(&b), u(1).sub(&MPoly::one()));
    }

    #[test]
    fn gcd_multivariate() {
        let common = u(1).mul(&u(2)).add(&u(3)).add(&MPoly::one());
        let a = common.mul(&u(1).add(&u(2)));
        let b = common.mul(&u(2).sub(&u(3))).scale(&q(3));
        assert_eq!(a.gcd(&b), common.monic());
        let coprime = u(1).add(&u(2)).gcd(&u(1).sub(&u(2)));
        assert!(coprime.is_one());
    }

    #[test]
    fn exact_division() {
        let a = u(1).pow(2).sub(&MPoly::one());
        let b = u(1).sub(&MPoly::one());
        assert_eq!(a.div_exact(&b), Some(u(1).add(&MPoly::one())));
        assert_eq!(u(1).div_exact(&u(2)), None);
    }

    #[test]
    fn display() {
        let p = u(1).pow(2).add(&MPoly::constant(q(-1))).add(&u(2).scale(&q(3)));
        assert_eq!(p.to_string(), "u1^2+3*u2-1");
    }
}
