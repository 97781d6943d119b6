//! The parameter-side formulas `d_phi`: whether an atom built from a
//! coefficient tuple lies in the generic type, read off from valuations of
//! the coefficients alone.

use crate::error::Result;
use crate::formula::Formula;
use crate::series::{KPoly, Series, Valuation};

/// An atom schema with its coefficient tuples, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Template {
    /// `Σ b_i x^i = 0`
    Zero(Vec<Series>),
    /// `v(Σ b_i x^i) <= v(Σ c_j x^j)`
    Div(Vec<Series>, Vec<Series>),
    /// `P_n(Σ b_i x^i)`
    Power(u32, Vec<Series>),
}

impl Template {
    /// The atom this template stands for.
    pub fn instantiate(&self) -> Formula {
        let poly = |b: &[Series]| KPoly::from_coeffs(b.to_vec());
        match self {
            Template::Zero(b) => Formula::eq(poly(b)),
            Template::Div(b, c) => Formula::div(poly(b), poly(c)),
            Template::Power(n, b) => Formula::pn(*n, poly(b)),
        }
    }
}

fn valuations(b: &[Series]) -> Result<Vec<Valuation>> {
    b.iter().map(Series::valuation).collect()
}

fn min_val(b: &[Series]) -> Result<Valuation> {
    Ok(valuations(b)?.into_iter().min().unwrap_or(Valuation::Infinity))
}

/// Evaluate `d_phi` at the template's coefficients.
pub fn d_phi(template: &Template) -> Result<bool> {
    Ok(match template {
        Template::Zero(b) => min_val(b)? == Valuation::Infinity,
        Template::Div(b, c) => min_val(b)? <= min_val(c)?,
        Template::Power(n, b) => {
            let vals = valuations(b)?;
            // first index attaining the minimum
            let best = vals.iter().copied().enumerate().min_by_key(|&(i, v)| (v, i));
            match best.map(|(_, v)| v) {
                None | Some(Valuation::Infinity) => true,
                Some(Valuation::Finite(v)) => v.rem_euclid(*n as i64) == 0,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::in_p_trans;

    fn s(text: &str) -> Series {
        crate::parse_series(text).unwrap()
    }

    #[test]
    fn examples() {
        assert!(d_phi(&Template::Zero(vec![Series::zero(), Series::zero()])).unwrap());
        assert!(!d_phi(&Template::Zero(vec![Series::one(), Series::zero()])).unwrap());
        assert!(d_phi(&Template::Div(vec![Series::one()], vec![s("t")])).unwrap());
        assert!(d_phi(&Template::Power(2, vec![s("t^2"), s("t^3")])).unwrap());
        assert!(!d_phi(&Template::Power(2, vec![s("t^3"), s("t")])).unwrap());
        assert!(d_phi(&Template::Power(5, vec![])).unwrap());
    }

    #[test]
    fn agrees_with_classifier() {
        let cases = [
            Template::Zero(vec![s("t"), s("1")]),
            Template::Div(vec![s("t"), s("t^2")], vec![s("t^-1")]),
            Template::Div(vec![s("u1")], vec![s("t"), s("0"), s("1")]),
            Template::Power(3, vec![s("t^3"), s("t^4")]),
            Template::Power(2, vec![s("t^2"), s("t")]),
        ];
        for tpl in cases {
            let phi = tpl.instantiate();
            assert_eq!(d_phi(&tpl).unwrap(), in_p_trans(&phi).unwrap(), "{phi}");
        }
    }
}
