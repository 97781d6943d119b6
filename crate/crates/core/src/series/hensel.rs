//! Newton-Hensel lifting of simple residue roots and the n-th power test.

use super::{KPoly, Series, Valuation};
use crate::coeff::ResidueElem;
use crate::error::{Error, Result};

/// Lift a simple residue root of `f` to a root modulo `t^prec`.
///
/// Requires `f ∈ O[x]`, `v(alpha) ≥ 0`, `v(f(alpha)) ≥ 1` and
/// `v(f'(alpha)) = 0`. Newton steps run at working precision
/// 1, 2, 4, ... up to `prec`, starting from the constant `res(alpha)`.
///
/// The result satisfies `v(f(r)) ≥ prec` and `res(r) = res(alpha)`; it is
/// exact when the iteration lands on an exact root.
pub fn hensel_lift(f: &KPoly, alpha: &Series, prec: i64) -> Result<Series> {
    let coeffs = f.univariate_coeffs()?;
    for c in &coeffs {
        if !c.in_valuation_ring()? {
            return Err(Error::HenselPreconditionFailed("coefficient outside O"));
        }
    }
    if !alpha.in_valuation_ring()? {
        return Err(Error::HenselPreconditionFailed("alpha outside O"));
    }
    let df = f.derivative(1);
    let fa = f.eval(std::slice::from_ref(alpha))?;
    if fa.residue()? != ResidueElem::zero() {
        return Err(Error::HenselPreconditionFailed("f(alpha) is not in m"));
    }
    let rho = alpha.residue()?;
    if df.eval(std::slice::from_ref(alpha))?.residue()?.is_zero() {
        return Err(Error::HenselPreconditionFailed("f'(alpha) is in m"));
    }

    let mut r = Series::constant(rho.clone());
    if f.eval(std::slice::from_ref(&r))?.is_exact_zero() {
        return Ok(r);
    }
    let mut work = 1;
    while work < prec {
        let next = (work * 2).min(prec);
        // r is right modulo t^work; evaluating at its truncation is enough
        // to get f(r) modulo t^next
        let rb = r.truncate(next);
        let fr = f.eval(std::slice::from_ref(&rb))?;
        if fr.coeffs().iter().all(ResidueElem::is_zero) {
            if f.eval(std::slice::from_ref(&r))?.is_exact_zero() {
                return Ok(r);
            }
            work = next;
            continue;
        }
        let dfr = df.eval(std::slice::from_ref(&rb))?;
        let step = &fr * &dfr.inv(next)?;
        r = (&r - &step).truncate(next).to_exact();
        work = next;
    }

    let out = r.truncate(prec);
    check_lift(f, &out, &rho, prec)?;
    Ok(out)
}

fn check_lift(f: &KPoly, r: &Series, rho: &ResidueElem, prec: i64) -> Result<()> {
    let fr = f.eval(std::slice::from_ref(r))?;
    let ok = match fr.valuation() {
        Ok(Valuation::Infinity) => true,
        Ok(Valuation::Finite(v)) => v >= prec,
        Err(Error::PrecisionExhausted(p)) => p >= prec,
        Err(e) => return Err(e),
    };
    if !ok {
        return Err(Error::PrecisionExhausted(prec));
    }
    debug_assert_eq!(&r.residue()?, rho);
    Ok(())
}

/// An n-th root of the unit `a` with residue `rho`, modulo `t^prec`.
pub fn nth_root(a: &Series, n: u32, rho: &ResidueElem, prec: i64) -> Result<Series> {
    assert!(n >= 1, "root degree must be positive");
    match a.valuation()? {
        Valuation::Finite(0) => {}
        Valuation::Finite(v) => return Err(Error::NotAUnit(v)),
        Valuation::Infinity => return Err(Error::ZeroElement),
    }
    if rho.pow(n) != a.residue()? {
        return Err(Error::ResidueRootInvalid);
    }
    let mut coeffs = vec![Series::zero(); n as usize + 1];
    coeffs[0] = -a;
    coeffs[n as usize] = Series::one();
    let f = KPoly::from_coeffs(coeffs);
    hensel_lift(&f, &Series::constant(rho.clone()), prec)
}

/// Whether `a` is an n-th power in `C((t))`: exactly when `n | v(a)`.
pub fn is_nth_power(a: &Series, n: u32) -> Result<bool> {
    assert!(n >= 1, "power must be positive");
    let v = a.valuation_nonzero()?;
    Ok(v.rem_euclid(n as i64) == 0)
}

impl Series {
    /// `self^n ≡ a (mod t^prec)`, used to check root outputs.
    pub fn is_nth_root_of(&self, a: &Series, n: u32, prec: i64) -> bool {
        let diff = &self.to_exact().pow(n) - &a.to_exact();
        match diff.valuation() {
            Ok(Valuation::Infinity) => true,
            Ok(Valuation::Finite(v)) => v >= prec,
            Err(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ResidueElem {
        ResidueElem::ratio(n, d)
    }

    fn s(cs: &[(i64, i64)]) -> Series {
        Series::from_coeffs(0, cs.iter().map(|&(n, d)| q(n, d)).collect(), crate::series::Precision::Exact).unwrap()
    }

    fn x_pow(n: usize) -> KPoly {
        KPoly::x().pow(n as u32)
    }

    #[test]
    fn sqrt_one_plus_t() {
        let f = x_pow(2).sub(&KPoly::constant(s(&[(1, 1), (1, 1)])));
        let r = hensel_lift(&f, &Series::one(), 3).unwrap();
        // the oracle: square and compare with 1 + t modulo t^3
        assert!(r.is_nth_root_of(&s(&[(1, 1), (1, 1)]), 2, 3));
        let expected = &s(&[(1, 1), (1, 2), (-1, 8)]) + &Series::big_o(3);
        assert_eq!(r, expected);
        assert_eq!(r.to_string(), "1 + 1/2*t - 1/8*t^2 + O(t^3)");
    }

    #[test]
    fn cubic_lift() {
        // x^3 - x - 3t from alpha = 1
        let f = x_pow(3).sub(&KPoly::x()).sub(&KPoly::constant(Series::t().scale(&3.into())));
        let r = hensel_lift(&f, &Series::one(), 2).unwrap();
        let fr = f.eval(&[r.to_exact()]).unwrap();
        assert!(fr.valuation().unwrap() >= Valuation::Finite(2));
        assert_eq!(r, &s(&[(1, 1), (3, 2)]) + &Series::big_o(2));
    }

    #[test]
    fn exact_fixpoint() {
        let f = x_pow(2).sub(&KPoly::constant(Series::one()));
        let r = hensel_lift(&f, &Series::one(), 10).unwrap();
        assert_eq!(r, Series::one());
        assert!(r.is_exact());
    }

    #[test]
    fn precondition_failures() {
        let f = x_pow(2).sub(&KPoly::constant(Series::int(2)));
        assert!(matches!(
            hensel_lift(&f, &Series::one(), 4),
            Err(Error::HenselPreconditionFailed(_))
        ));
        // double root: f'(0) = 0
        let f = x_pow(2).sub(&KPoly::constant(Series::t()));
        assert!(matches!(
            hensel_lift(&f, &Series::zero(), 4),
            Err(Error::HenselPreconditionFailed(_))
        ));
    }

    #[test]
    fn nth_root_examples() {
        let a = s(&[(1, 1), (1, 1)]);
        let r = nth_root(&a, 2, &ResidueElem::one(), 3).unwrap();
        assert_eq!(r.to_string(), "1 + 1/2*t - 1/8*t^2 + O(t^3)");
        assert_eq!(nth_root(&Series::int(4), 2, &ResidueElem::int(2), 1).unwrap(), Series::int(2));
        assert_eq!(nth_root(&a, 2, &ResidueElem::int(2), 3), Err(Error::ResidueRootInvalid));
        assert_eq!(nth_root(&Series::t(), 2, &ResidueElem::zero(), 3), Err(Error::NotAUnit(1)));
    }

    #[test]
    fn nth_root_over_tower() {
        let u1 = ResidueElem::var(1);
        let a = &Series::constant(u1.pow(3)) + &Series::t();
        let r = nth_root(&a, 3, &u1, 6).unwrap();
        assert!(r.is_nth_root_of(&a, 3, 6));
        assert_eq!(r.residue().unwrap(), u1);
    }

    #[test]
    fn nth_power_examples() {
        assert!(!is_nth_power(&Series::monomial(ResidueElem::one(), 3), 2).unwrap());
        let a = &Series::monomial(ResidueElem::one(), 4) * &s(&[(1, 1), (1, 1)]);
        assert!(is_nth_power(&a, 2).unwrap());
        let u = Series::constant(ResidueElem::var(1));
        for n in 1..6 {
            assert!(is_nth_power(&u, n).unwrap());
        }
        assert!(is_nth_power(&Series::monomial(ResidueElem::one(), -6), 3).unwrap());
        assert_eq!(is_nth_power(&Series::zero(), 2), Err(Error::ZeroElement));
    }
}
