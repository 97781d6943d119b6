//! Exact decision procedures for quantifier-free definable subsets of the
//! valuation ring of `C((t))`.
//!
//! The residue field `C` is modelled by the tower `Q(u1, ..., um)` of
//! rational functions in formal transcendentals ([`coeff`]); field elements
//! are truncated Laurent series over it ([`series`]). On top of that sit
//! the formula language ([`formula`]), the res-finite / res-cofinite
//! classifier and the generic type `p_trans` ([`classify`]), the generic
//! type of `GL(n, O)` ([`realize`]) and the seeded property suites that
//! tie everything together ([`check`]).
//!
//! ```
//! use valring::{classify::classify_formula, formula::parse};
//!
//! let phi = parse("P_2(x) & !(x = 0)").unwrap();
//! let c = classify_formula(&phi).unwrap();
//! assert!(c.is_cofinite());
//! assert_eq!(c.witness.to_string(), "y");
//! ```

pub mod check;
pub mod classify;
pub mod coeff;
pub mod error;
pub mod formula;
pub mod realize;
pub mod series;
mod syntax;

pub use error::{Error, ParseError, Result};
pub use syntax::{parse_kpoly, parse_residue, parse_series};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/residue-tower.md")]
    mod residue_tower {}
    #[doc = include_str!("../../../book/src/laurent-series.md")]
    mod laurent_series {}
    #[doc = include_str!("../../../book/src/hensel.md")]
    mod hensel {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    mod formulas {}
    #[doc = include_str!("../../../book/src/dichotomy.md")]
    mod dichotomy {}
    #[doc = include_str!("../../../book/src/p-trans.md")]
    mod p_trans {}
    #[doc = include_str!("../../../book/src/gl-generic.md")]
    mod gl_generic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
