//! ```text
//! formula := disj
//! disj    := conj { "|" conj }
//! conj    := unary { "&" unary }
//! unary   := "!" unary | "(" formula ")" | atomic
//! atomic  := "v(" poly ")" "<=" "v(" poly ")" | poly "=" "0"
//!          | "P_" INT "(" poly ")" | "N(" poly ")"
//! ```

use num_traits::Zero;

use super::{Atomic, Formula};
use crate::error::ParseError;
use crate::series::KPoly;
use crate::syntax::{Cursor, Tok};

/// Parse a formula; errors carry the line and column of the offending token.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut cur = Cursor::new(text)?;
    let phi = disj(&mut cur)?;
    cur.expect_end()?;
    Ok(phi)
}

fn disj(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = conj(cur)?;
    while cur.eat(&Tok::Pipe) {
        acc = acc.or(conj(cur)?);
    }
    Ok(acc)
}

fn conj(cur: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = unary(cur)?;
    while cur.eat(&Tok::Amp) {
        acc = acc.and(unary(cur)?);
    }
    Ok(acc)
}

fn unary(cur: &mut Cursor) -> Result<Formula, ParseError> {
    if cur.eat(&Tok::Bang) {
        return Ok(unary(cur)?.not());
    }
    if *cur.peek() == Tok::LParen {
        // `(x + 1)*x = 0` and `(x = 0 | ...)` both open with a parenthesis:
        // try the atom first, then the grouped formula, and report whichever
        // attempt got further.
        let start = cur.pos;
        let atom_err = match atomic(cur) {
            Ok(a) => return Ok(Formula::Atom(a)),
            Err(e) => (cur.pos, e),
        };
        cur.pos = start;
        cur.bump();
        let grouped = disj(cur).and_then(|phi| {
            cur.expect(&Tok::RParen)?;
            Ok(phi)
        });
        return match grouped {
            Ok(phi) => Ok(phi),
            Err(e) => {
                let e2 = (cur.pos, e);
                Err(if further(&atom_err.1, &e2.1) { atom_err.1 } else { e2.1 })
            }
        };
    }
    atomic(cur).map(Formula::Atom)
}

fn further(a: &ParseError, b: &ParseError) -> bool {
    (a.line, a.column) > (b.line, b.column)
}

fn atomic(cur: &mut Cursor) -> Result<Atomic, ParseError> {
    if let Tok::Ident(name) = cur.peek().clone() {
        if *cur.peek_at(1) == Tok::LParen {
            if name == "v" {
                let f = wrapped(cur)?;
                cur.expect(&Tok::Le)?;
                match cur.peek() {
                    Tok::Ident(s) if s == "v" => {}
                    _ => return Err(cur.unexpected("'v('")),
                }
                let g = wrapped(cur)?;
                return Ok(Atomic::Div(f, g));
            }
            if name == "N" {
                return Ok(Atomic::Nv(wrapped(cur)?));
            }
            if let Some(n) = name.strip_prefix("P_") {
                let n: u32 = match n.parse() {
                    Ok(n) if n >= 1 => n,
                    _ => return Err(cur.error_here("P_n needs a positive integer n")),
                };
                return Ok(Atomic::Pn(n, wrapped(cur)?));
            }
        }
    }
    let f = cur.expr()?;
    cur.expect(&Tok::Eq)?;
    match cur.peek() {
        Tok::Num(n) if n.is_zero() => {
            cur.bump();
            Ok(Atomic::Eq(f))
        }
        _ => Err(cur.unexpected("'0'")),
    }
}

// name "(" poly ")"
fn wrapped(cur: &mut Cursor) -> Result<KPoly, ParseError> {
    cur.bump();
    cur.expect(&Tok::LParen)?;
    let p = cur.expr()?;
    cur.expect(&Tok::RParen)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Series;

    #[test]
    fn examples() {
        assert_eq!(parse("x = 0").unwrap(), Formula::eq(KPoly::x()));
        let tx1 = KPoly::x().scale(&Series::t()).add(&KPoly::constant(Series::one()));
        let t = KPoly::constant(Series::t());
        assert_eq!(
            parse("v(t*x+1) <= v(t) & !P_2(x)").unwrap(),
            Formula::div(tx1, t).and(Formula::pn(2, KPoly::x()).not())
        );
        let e = parse("v(x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
    }

    #[test]
    fn parenthesized_forms() {
        let a = parse("(x + 1)*x = 0").unwrap();
        assert!(matches!(a, Formula::Atom(Atomic::Eq(_))));
        let b = parse("(x = 0 | x - 1 = 0) & !(x = 0)").unwrap();
        assert!(matches!(b, Formula::And(..)));
        let c = parse("!((x+1) = 0)").unwrap();
        assert!(matches!(c, Formula::Not(_)));
    }

    #[test]
    fn rejects() {
        assert!(parse("x = 1").is_err());
        assert!(parse("P_0(x)").is_err());
        assert!(parse("x = 0 &").is_err());
        assert!(parse("v(x) <= t").is_err());
        let e = parse("x = 0\n& y = 0").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn print_round_trip() {
        for text in [
            "x = 0",
            "v(t*x + 1) <= v(t) & !P_2(x)",
            "(x = 0 | x - 1 = 0) & N(x^2 + u1)",
            "x = 0 | (x - 1 = 0 | P_3(3/2*t^-1*x))",
            "x = 0 & (x - 1 = 0 & !(!(v(x + O(t^4)) <= v((1 + t)*x^2))))",
            "v(x1*x2 - u1*x3) <= v(t)",
        ] {
            let phi = parse(text).unwrap();
            let again = parse(&phi.to_string()).unwrap();
            assert_eq!(phi, again, "{text} printed as {phi}");
        }
    }
}
