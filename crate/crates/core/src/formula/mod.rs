//! Quantifier-free formulas of the valued-field language: atoms of the four
//! shapes `f = 0`, `v(f) <= v(g)`, `P_n(f)` and `N(f)`, closed under
//! `&`, `|` and `!`.

mod eval;
mod parse;

use std::fmt;

use serde_json::{json, Value};

pub use eval::{evaluate, Truth};
pub use parse::parse;

use crate::error::Result;
use crate::series::{KPoly, Series};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atomic {
    /// `f(x) = 0`
    Eq(KPoly),
    /// `v(f(x)) <= v(g(x))`
    Div(KPoly, KPoly),
    /// `f(x)` is an n-th power
    Pn(u32, KPoly),
    /// `v(f(x)) = 1`
    Nv(KPoly),
}

impl Atomic {
    pub fn polys(&self) -> Vec<&KPoly> {
        match self {
            Atomic::Eq(f) | Atomic::Pn(_, f) | Atomic::Nv(f) => vec![f],
            Atomic::Div(f, g) => vec![f, g],
        }
    }

    fn map_polys(&self, mut m: impl FnMut(&KPoly) -> Result<KPoly>) -> Result<Atomic> {
        Ok(match self {
            Atomic::Eq(f) => Atomic::Eq(m(f)?),
            Atomic::Div(f, g) => Atomic::Div(m(f)?, m(g)?),
            Atomic::Pn(n, f) => Atomic::Pn(*n, m(f)?),
            Atomic::Nv(f) => Atomic::Nv(m(f)?),
        })
    }

    fn to_json(&self) -> Value {
        match self {
            Atomic::Eq(f) => json!({"atom": "eq", "f": f.to_string()}),
            Atomic::Div(f, g) => json!({"atom": "div", "f": f.to_string(), "g": g.to_string()}),
            Atomic::Pn(n, f) => json!({"atom": "pn", "n": n, "f": f.to_string()}),
            Atomic::Nv(f) => json!({"atom": "n", "f": f.to_string()}),
        }
    }
}

impl fmt::Display for Atomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atomic::Eq(p) => write!(f, "{p} = 0"),
            Atomic::Div(p, q) => write!(f, "v({p}) <= v({q})"),
            Atomic::Pn(n, p) => write!(f, "P_{n}({p})"),
            Atomic::Nv(p) => write!(f, "N({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Atomic),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

/// An atom of the first three shapes, possibly negated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub atomic: Atomic,
    pub negated: bool,
}

/// Negation normal form: `And`/`Or` over literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Nnf {
    Lit(Literal),
    And(Box<Nnf>, Box<Nnf>),
    Or(Box<Nnf>, Box<Nnf>),
}

impl Formula {
    pub fn atom(a: Atomic) -> Formula {
        Formula::Atom(a)
    }

    pub fn eq(f: KPoly) -> Formula {
        Formula::Atom(Atomic::Eq(f))
    }

    pub fn div(f: KPoly, g: KPoly) -> Formula {
        Formula::Atom(Atomic::Div(f, g))
    }

    pub fn pn(n: u32, f: KPoly) -> Formula {
        assert!(n >= 1, "P_n needs n >= 1");
        Formula::Atom(Atomic::Pn(n, f))
    }

    pub fn nv(f: KPoly) -> Formula {
        Formula::Atom(Atomic::Nv(f))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// Every atom, left to right.
    pub fn atoms(&self) -> Vec<&Atomic> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atomic>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::Not(p) => p.collect_atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Number of free variables (highest `x` index mentioned).
    pub fn arity(&self) -> usize {
        self.atoms()
            .iter()
            .flat_map(|a| a.polys())
            .map(KPoly::arity)
            .max()
            .unwrap_or(0)
    }

    /// Highest tower variable in any coefficient.
    pub fn max_tower_var(&self) -> usize {
        self.atoms()
            .iter()
            .flat_map(|a| a.polys())
            .map(KPoly::max_tower_var)
            .max()
            .unwrap_or(0)
    }

    pub fn is_exact(&self) -> bool {
        self.atoms().iter().flat_map(|a| a.polys()).all(KPoly::is_exact)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Not(p) => p.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Rewrite `N(f)` as `v(t) <= v(f) & v(f) <= v(t)` and push negations
    /// down to the atoms.
    pub fn normalize(&self) -> Nnf {
        self.nnf(false)
    }

    fn nnf(&self, neg: bool) -> Nnf {
        match self {
            Formula::Atom(Atomic::Nv(f)) => {
                let t = KPoly::constant(Series::t());
                let lower = Formula::div(t.clone(), f.clone());
                let upper = Formula::div(f.clone(), t);
                lower.and(upper).nnf(neg)
            }
            Formula::Atom(a) => Nnf::Lit(Literal {
                atomic: a.clone(),
                negated: neg,
            }),
            Formula::Not(p) => p.nnf(!neg),
            Formula::And(a, b) => {
                let (a, b) = (Box::new(a.nnf(neg)), Box::new(b.nnf(neg)));
                if neg {
                    Nnf::Or(a, b)
                } else {
                    Nnf::And(a, b)
                }
            }
            Formula::Or(a, b) => {
                let (a, b) = (Box::new(a.nnf(neg)), Box::new(b.nnf(neg)));
                if neg {
                    Nnf::And(a, b)
                } else {
                    Nnf::Or(a, b)
                }
            }
        }
    }

    /// Compose every polynomial with `x{i+1} ↦ map[i]`.
    pub fn substitute(&self, map: &[KPoly]) -> Result<Formula> {
        Ok(match self {
            Formula::Atom(a) => Formula::Atom(a.map_polys(|p| p.substitute(map))?),
            Formula::Not(p) => p.substitute(map)?.not(),
            Formula::And(a, b) => a.substitute(map)?.and(b.substitute(map)?),
            Formula::Or(a, b) => a.substitute(map)?.or(b.substitute(map)?),
        })
    }

    /// JSON AST: `{"op":"and","args":[...]}` with atoms as
    /// `{"atom":"div","f":"...","g":"..."}`.
    pub fn to_json(&self) -> Value {
        match self {
            Formula::Atom(a) => a.to_json(),
            Formula::Not(p) => json!({"op": "not", "args": [p.to_json()]}),
            Formula::And(a, b) => json!({"op": "and", "args": [a.to_json(), b.to_json()]}),
            Formula::Or(a, b) => json!({"op": "or", "args": [a.to_json(), b.to_json()]}),
        }
    }
}

impl Nnf {
    pub fn literals(&self) -> Vec<&Literal> {
        match self {
            Nnf::Lit(l) => vec![l],
            Nnf::And(a, b) | Nnf::Or(a, b) => {
                let mut v = a.literals();
                v.extend(b.literals());
                v
            }
        }
    }

    /// Evaluate the tree with a truth value per literal.
    pub fn fold(&self, value: &mut impl FnMut(&Literal) -> Truth) -> Truth {
        match self {
            Nnf::Lit(l) => value(l),
            Nnf::And(a, b) => a.fold(value).and(b.fold(value)),
            Nnf::Or(a, b) => a.fold(value).or(b.fold(value)),
        }
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            Nnf::Lit(l) => {
                let f = Formula::Atom(l.atomic.clone());
                if l.negated {
                    f.not()
                } else {
                    f
                }
            }
            Nnf::And(a, b) => a.to_formula().and(b.to_formula()),
            Nnf::Or(a, b) => a.to_formula().or(b.to_formula()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(p) => write!(f, "!({p})"),
            Formula::And(a, b) => {
                fmt_operand(f, a, matches!(**a, Formula::Or(..)))?;
                write!(f, " & ")?;
                fmt_operand(f, b, matches!(**b, Formula::Or(..) | Formula::And(..)))
            }
            Formula::Or(a, b) => {
                fmt_operand(f, a, false)?;
                write!(f, " | ")?;
                fmt_operand(f, b, matches!(**b, Formula::Or(..)))
            }
        }
    }
}

fn fmt_operand(f: &mut fmt::Formatter<'_>, p: &Formula, paren: bool) -> fmt::Result {
    if paren {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for Nnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> KPoly {
        KPoly::x()
    }

    #[test]
    fn normalize_n_atom() {
        let t = KPoly::constant(Series::t());
        let nnf = Formula::nv(x()).normalize();
        let expected = Formula::div(t.clone(), x()).and(Formula::div(x(), t)).normalize();
        assert_eq!(nnf, expected);
        assert_eq!(nnf.to_string(), "v(t) <= v(x) & v(x) <= v(t)");
    }

    #[test]
    fn normalize_de_morgan() {
        let a = Formula::eq(x());
        let b = Formula::pn(2, x());
        let nnf = a.clone().and(b.clone()).not().normalize();
        assert_eq!(nnf, a.clone().not().or(b.not()).normalize());
        assert_eq!(a.clone().not().not().normalize(), a.normalize());
    }

    #[test]
    fn substitute_examples() {
        let one = KPoly::constant(Series::one());
        let shifted = Formula::eq(x()).substitute(&[x().add(&one)]).unwrap();
        assert_eq!(shifted, Formula::eq(x().add(&one)));
        let u1 = Series::constant(crate::coeff::ResidueElem::var(1));
        let scaled = Formula::pn(2, x()).substitute(&[x().scale(&u1)]).unwrap();
        assert_eq!(scaled, Formula::pn(2, x().scale(&u1)));
        let t = Series::t();
        let d = Formula::div(x(), KPoly::constant(t.clone()))
            .substitute(&[x().scale(&t)])
            .unwrap();
        assert_eq!(d, Formula::div(x().scale(&t), KPoly::constant(t)));
    }

    #[test]
    fn json_export() {
        let phi = Formula::div(x(), KPoly::constant(Series::t())).and(Formula::pn(2, x()).not());
        let j = phi.to_json();
        assert_eq!(j["op"], "and");
        assert_eq!(j["args"][0], json!({"atom": "div", "f": "x", "g": "t"}));
        assert_eq!(j["args"][1]["op"], "not");
        assert_eq!(j["args"][1]["args"][0], json!({"atom": "pn", "n": 2, "f": "x"}));
    }
}
