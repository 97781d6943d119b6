use super::{Atomic, Formula};
use crate::error::{Error, Result};
use crate::series::{KPoly, Series, Valuation};

/// Kleene three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    pub fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn to_bool(self) -> Option<bool> {
        match self {
            Truth::True => Some(true),
            Truth::False => Some(false),
            Truth::Unknown => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }
}

impl std::fmt::Display for Truth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Truth::True => "True",
            Truth::False => "False",
            Truth::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

fn value(f: &KPoly, point: &[Series]) -> Result<Series> {
    f.eval(point)
}

// Valuation of a computed value; undecidable ones become `None`.
fn val(s: &Series) -> Option<Valuation> {
    s.valuation().ok()
}

fn atom_truth(a: &Atomic, point: &[Series]) -> Result<Truth> {
    Ok(match a {
        Atomic::Eq(f) => {
            let y = value(f, point)?;
            match val(&y) {
                Some(Valuation::Infinity) => Truth::True,
                Some(Valuation::Finite(_)) => Truth::False,
                None => Truth::Unknown,
            }
        }
        Atomic::Div(f, g) => {
            let (a, b) = (value(f, point)?, value(g, point)?);
            match (val(&a), val(&b)) {
                (Some(va), Some(vb)) => Truth::from_bool(va <= vb),
                // an undecided side is only known to lie at or above its offset
                (None, Some(Valuation::Infinity)) => Truth::True,
                (None, Some(Valuation::Finite(vb))) if a.offset() > vb => Truth::False,
                (Some(Valuation::Finite(va)), None) if va <= b.offset() => Truth::True,
                _ => Truth::Unknown,
            }
        }
        Atomic::Pn(n, f) => {
            let y = value(f, point)?;
            match val(&y) {
                Some(Valuation::Infinity) => Truth::True,
                Some(Valuation::Finite(v)) => Truth::from_bool(v.rem_euclid(*n as i64) == 0),
                None => Truth::Unknown,
            }
        }
        Atomic::Nv(f) => {
            let y = value(f, point)?;
            match val(&y) {
                Some(v) => Truth::from_bool(v == Valuation::Finite(1)),
                None if y.offset() > 1 => Truth::False,
                None => Truth::Unknown,
            }
        }
    })
}

/// Truth value of `phi` at `point` in `C((t))`.
///
/// `point[i]` is the value of `x{i+1}`. With exact inputs the answer is
/// always decided; inexact coefficients can yield [`Truth::Unknown`].
pub fn evaluate(phi: &Formula, point: &[Series]) -> Result<Truth> {
    let arity = phi.arity();
    if point.len() < arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: point.len(),
        });
    }
    eval_rec(phi, point)
}

fn eval_rec(phi: &Formula, point: &[Series]) -> Result<Truth> {
    Ok(match phi {
        Formula::Atom(a) => atom_truth(a, point)?,
        Formula::Not(p) => eval_rec(p, point)?.not(),
        Formula::And(a, b) => {
            let l = eval_rec(a, point)?;
            if l == Truth::False {
                return Ok(Truth::False);
            }
            l.and(eval_rec(b, point)?)
        }
        Formula::Or(a, b) => {
            let l = eval_rec(a, point)?;
            if l == Truth::True {
                return Ok(Truth::True);
            }
            l.or(eval_rec(b, point)?)
        }
    })
}
