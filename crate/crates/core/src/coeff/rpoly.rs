use std::fmt;

use super::mpoly::{from_univariate, to_univariate};
use super::{MPoly, ResidueElem};
use crate::error::{Error, Result};

/// A univariate polynomial in `y` over the residue tower.
///
/// Coefficient `i` multiplies `y^i`; the zero polynomial has no stored
/// coefficients and a nonzero polynomial never ends in a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ResiduePoly {
    coeffs: Vec<ResidueElem>,
}

impl ResiduePoly {
    pub fn new(mut coeffs: Vec<ResidueElem>) -> Self {
        while coeffs.last().is_some_and(ResidueElem::is_zero) {
            coeffs.pop();
        }
        ResiduePoly { coeffs }
    }

    pub fn zero() -> Self {
        ResiduePoly::default()
    }

    pub fn one() -> Self {
        ResiduePoly::constant(ResidueElem::one())
    }

    pub fn constant(c: ResidueElem) -> Self {
        ResiduePoly::new(vec![c])
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        ResiduePoly::new(vec![ResidueElem::zero(), ResidueElem::one()])
    }

    /// `y - root`.
    pub fn linear(root: ResidueElem) -> Self {
        ResiduePoly::new(vec![-root, ResidueElem::one()])
    }

    pub fn coeffs(&self) -> &[ResidueElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&ResidueElem> {
        self.coeffs.last()
    }

    pub fn max_var(&self) -> usize {
        self.coeffs.iter().map(ResidueElem::max_var).max().unwrap_or(0)
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, a: &ResidueElem) -> ResidueElem {
        self.coeffs
            .iter()
            .rev()
            .fold(ResidueElem::zero(), |acc, c| &(&acc * a) + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = ResidueElem::zero();
        ResiduePoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        ResiduePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ResiduePoly::zero();
        }
        let mut out = vec![ResidueElem::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        ResiduePoly::new(out)
    }

    pub fn scale(&self, c: &ResidueElem) -> Self {
        ResiduePoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        ResiduePoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &ResidueElem::int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Euclidean division over the residue field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![ResidueElem::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = &rem[dr] * &lc_inv;
            if !c.is_zero() {
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    let idx = dr - dd + i;
                    rem[idx] = &rem[idx] - &(&c * b);
                }
                quot[dr - dd] = c;
            }
            rem.pop();
        }
        Ok((ResiduePoly::new(quot), ResiduePoly::new(rem)))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    ///
    /// Denominators are cleared and the gcd is taken in `Q[u1, .., um, y]`;
    /// by Gauss's lemma it agrees with the gcd over the fraction field up to
    /// a unit. This avoids the coefficient swell of Euclid over `Q(u)`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return ResiduePoly::one();
        }
        let y = self.max_var().max(other.max_var()) + 1;
        let g = self.cleared(y).gcd(&other.cleared(y));
        let coeffs = to_univariate(&g, y).into_iter().map(ResidueElem::from_poly).collect();
        ResiduePoly::new(coeffs).monic()
    }

    // Numerator after clearing denominators, with `y` as the variable `u{y}`.
    fn cleared(&self, y: usize) -> MPoly {
        let l = self.coeffs.iter().fold(MPoly::one(), |l, c| l.lcm(c.denom()));
        let coeffs: Vec<MPoly> = self
            .coeffs
            .iter()
            .map(|c| c.numer().mul(&l.div_exact(c.denom()).expect("lcm of denominators")))
            .collect();
        from_univariate(&coeffs, y)
    }

    /// Monic squarefree part: same roots in any extension, each simple.
    pub fn squarefree(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(ResiduePoly::one());
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    /// Squarefree part of `self * other` for squarefree monic inputs,
    /// computed as their lcm so the degree never doubles up.
    pub fn squarefree_union(&self, other: &Self) -> Self {
        if other.is_constant() {
            return self.monic();
        }
        if self.is_constant() {
            return other.monic();
        }
        let g = self.gcd(other);
        let (q, _) = other.div_rem(&g).expect("gcd is nonzero");
        self.mul(&q).monic()
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = if c.is_negative_term() {
                (true, (-c).to_string())
            } else {
                (false, c.to_string())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = if c.is_compound() { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    write!(f, "y")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> ResidueElem {
        ResidueElem::int(n)
    }

    fn poly(cs: &[i64]) -> ResiduePoly {
        ResiduePoly::new(cs.iter().map(|&n| c(n)).collect())
    }

    #[test]
    fn eval_examples() {
        assert!(poly(&[-1, 0, 1]).eval(&c(1)).is_zero());
        let u1 = ResidueElem::var(1);
        assert_eq!(ResiduePoly::y().eval(&u1), u1);
        let v = poly(&[1, 0, 1]).eval(&u1);
        assert!(!v.is_zero());
        assert_eq!(v, &(&u1 * &u1) + &c(1));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(poly(&[0, 0, 1]).squarefree().unwrap(), ResiduePoly::y());
        // (y-1)^2 (y+2) -> (y-1)(y+2) = y^2 + y - 2
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        assert_eq!(p.squarefree().unwrap(), poly(&[-2, 1, 1]));
        assert_eq!(poly(&[1, 0, 1]).squarefree().unwrap(), poly(&[1, 0, 1]));
        assert_eq!(ResiduePoly::zero().squarefree(), Err(Error::ZeroPolynomial));
        assert_eq!(poly(&[5]).squarefree().unwrap(), ResiduePoly::one());
    }

    #[test]
    fn squarefree_over_tower() {
        let u1 = ResidueElem::var(1);
        let lin = ResiduePoly::linear(u1.clone());
        let p = lin.mul(&lin).scale(&c(3));
        assert_eq!(p.squarefree().unwrap(), lin);
        assert_eq!(lin.to_string(), "y-u1");
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, 0, 1]).to_string(), "y^2+1");
        assert_eq!(poly(&[0, -1, 1]).to_string(), "y^2-y");
        assert_eq!(ResiduePoly::one().to_string(), "1");
    }
}
