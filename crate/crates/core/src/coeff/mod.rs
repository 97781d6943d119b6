//! The residue field model: rational functions in formal transcendentals
//! `u1, u2, ...` over the rationals.
//!
//! Sending each `u_i` to algebraically independent complex numbers embeds
//! `Q(u1, ..., um)` into `C`, and that embedding preserves every zero test
//! made here. Truth values computed over the tower are therefore truth
//! values in `C`.

mod mpoly;
mod rpoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

pub use mpoly::{MPoly, Monomial};
pub use rpoly::ResiduePoly;



use crate::error::{Error, Result};

/// An ordered list of transcendental variable names.
///
/// Towers are values: [`Tower::fresh`] returns an extended copy and leaves
/// the original alone, so a tower can be threaded through a computation
/// without shared state.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tower {
    vars: Vec<String>,
}

impl Tower {
    pub fn new() -> Self {
        Tower::default()
    }

    /// A tower `u1, ..., um`.
    pub fn with_len(m: usize) -> Self {
        Tower {
            vars: (1..=m).map(|i| format!("u{i}")).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    /// Extend by one variable; returns the new tower and the 1-based index
    /// of the variable just added.
    pub fn fresh(&self) -> (Tower, usize) {
        let index = self.vars.len() + 1;
        let mut vars = self.vars.clone();
        vars.push(format!("u{index}"));
        (Tower { vars }, index)
    }

    /// The element `u{index}` of this tower.
    pub fn var(&self, index: usize) -> ResidueElem {
        assert!(index >= 1 && index <= self.len(), "variable outside tower");
        ResidueElem::var(index)
    }
}

/// An element of `Q(u1, ..., um)`, kept as a reduced fraction.
///
/// Normal form: numerator and denominator are coprime and the graded-lex
/// leading coefficient of the denominator is 1, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueElem {
    num: MPoly,
    den: MPoly,
}

impl ResidueElem {
    pub fn zero() -> Self {
        ResidueElem {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        ResidueElem::from_poly(MPoly::one())
    }

    pub fn var(index: usize) -> Self {
        ResidueElem::from_poly(MPoly::var(index))
    }

    pub fn from_poly(num: MPoly) -> Self {
        ResidueElem {
            num,
            den: MPoly::one(),
        }
    }

    pub fn rational(q: BigRational) -> Self {
        ResidueElem::from_poly(MPoly::constant(q))
    }

    pub fn int(n: i64) -> Self {
        ResidueElem::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ResidueElem::rational(BigRational::new(n.into(), d.into()))
    }

    /// Build `num / den` in normal form.
    pub fn fraction(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return ResidueElem::zero();
        }
        if let Some(c) = den.as_constant() {
            return ResidueElem::from_poly(num.scale(&c.recip()));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if lc.is_one() {
            ResidueElem { num, den }
        } else {
            let inv = lc.recip();
            ResidueElem {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value when this element is a rational constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Highest tower variable index occurring, 0 for rationals.
    pub fn max_var(&self) -> usize {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        ResidueElem {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inv()
        } else {
            Ok(p)
        }
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return ResidueElem::from_poly(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&other.num), self.den.clone());
        }
        Self::normalize(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ResidueElem::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return ResidueElem::from_poly(self.num.mul(&other.num));
        }
        Self::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// True when printing needs parentheses inside a product.
    pub(crate) fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.len() > 1
    }

    /// Single-term numerator with negative coefficient and unit denominator.
    pub(crate) fn is_negative_term(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

impl Default for ResidueElem {
    fn default() -> Self {
        ResidueElem::zero()
    }
}

impl From<i64> for ResidueElem {
    fn from(n: i64) -> Self {
        ResidueElem::int(n)
    }
}

impl From<BigRational> for ResidueElem {
    fn from(q: BigRational) -> Self {
        ResidueElem::rational(q)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&ResidueElem> for &ResidueElem {
            type Output = ResidueElem;
            fn $method(self, rhs: &ResidueElem) -> ResidueElem {
                let f: fn(&ResidueElem, &ResidueElem) -> ResidueElem = $body;
                f(self, rhs)
            }
        }
        impl $tr for ResidueElem {
            type Output = ResidueElem;
            fn $method(self, rhs: ResidueElem) -> ResidueElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_ref(b));
forward_binop!(Sub, sub, |a, b| a.add_ref(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_ref(b));
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero in residue field"));

impl Neg for &ResidueElem {
    type Output = ResidueElem;
    fn neg(self) -> ResidueElem {
        ResidueElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for ResidueElem {
    type Output = ResidueElem;
    fn neg(self) -> ResidueElem {
        -&self
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let single_var = self.den.len() == 1
            && self
                .den
                .leading()
                .is_some_and(|(m, c)| c.is_one() && m.exponents().iter().filter(|e| **e > 0).count() == 1);
        if !single_var {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(i: usize) -> ResidueElem {
        ResidueElem::var(i)
    }

    #[test]
    fn tower_fresh_appends() {
        let (t1, i1) = Tower::new().fresh();
        assert_eq!((t1.len(), i1), (1, 1));
        let (t2, i2) = t1.fresh();
        assert_eq!((t2.names(), i2), (&["u1".to_string(), "u2".to_string()][..], 2));
        assert_eq!(t1.len(), 1);
        let mut t = Tower::new();
        for _ in 0..9 {
            t = t.fresh().0;
        }
        assert_eq!(t, Tower::with_len(9));
    }

    #[test]
    fn field_ops() {
        let half = ResidueElem::ratio(1, 2);
        assert_eq!(&half + &half, ResidueElem::one());
        assert_eq!(&u(1) * &u(1).inv().unwrap(), ResidueElem::one());
        let num = &(&u(1) * &u(1)) - &ResidueElem::one();
        let den = &u(1) - &ResidueElem::one();
        assert_eq!(num.checked_div(&den).unwrap(), &u(1) + &ResidueElem::one());
        assert_eq!(
            ResidueElem::one().checked_div(&ResidueElem::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn zero_tests() {
        assert!(ResidueElem::zero().is_zero());
        assert!((&u(1) - &u(1)).is_zero());
        assert!(!(&u(1) - &u(2)).is_zero());
    }

    #[test]
    fn normal_form_is_canonical() {
        // (2 u1) / (4 u1^2) == 1 / (2 u1)
        let a = ResidueElem::fraction(
            MPoly::var(1).scale(&BigRational::from_integer(2.into())),
            MPoly::var(1).pow(2).scale(&BigRational::from_integer(4.into())),
        )
        .unwrap();
        let b = ResidueElem::one().checked_div(&(&ResidueElem::int(2) * &u(1))).unwrap();
        assert_eq!(a, b);
        assert!(a.denom().leading().unwrap().1.is_one());
    }
}
