//! Lexer and arithmetic-expression parser shared by the residue, series and
//! formula readers.
//!
//! Expressions evaluate straight to a [`KPoly`]; callers narrow the result
//! to a residue element or a series when the input must not mention `x`
//! or `t`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::ResidueElem;
use crate::error::ParseError;
use crate::series::{KPoly, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Le,
    Eq,
    Bang,
    Amp,
    Pipe,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Le => "'<='".into(),
            Tok::Eq => "'='".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: start.0,
                column: start.1,
            })
        };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            push(&mut out, Tok::Num(s.parse().expect("digits")));
            col += j - i;
            i = j;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            push(&mut out, Tok::Ident(s));
            col += j - i;
            i = j;
            continue;
        }
        let (tok, width) = match c {
            '+' => (Tok::Plus, 1),
            '-' => (Tok::Minus, 1),
            '*' => (Tok::Star, 1),
            '/' => (Tok::Slash, 1),
            '^' => (Tok::Caret, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '=' => (Tok::Eq, 1),
            '!' => (Tok::Bang, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Pipe, 1),
            ',' => (Tok::Comma, 1),
            '<' if chars.get(i + 1) == Some(&'=') => (Tok::Le, 2),
            _ => {
                return Err(ParseError {
                    line,
                    column: col,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        push(&mut out, tok);
        col += width;
        i += width;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

/// Recursive-descent cursor over a token stream.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    pub pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor {
            toks: lex(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        }
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.describe()))
        }
    }

    pub fn expect_end(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    /// `expr := ["-"|"+"] term { ("+"|"-") term }`
    pub fn expr(&mut self) -> Result<KPoly, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.term()?.neg()
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.add(&self.term()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc.mul(&self.factor()?);
            } else if *self.peek() == Tok::Slash {
                let here = self.error_here("");
                self.bump();
                let d = self.factor()?;
                let inv = invert_monomial(&d).ok_or(ParseError {
                    message: "can only divide by a nonzero single term c*t^k".into(),
                    ..here
                })?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<KPoly, ParseError> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let neg = self.eat(&Tok::Minus);
        let here = self.error_here("");
        let Tok::Num(n) = self.bump() else {
            return Err(ParseError {
                message: "expected integer exponent".into(),
                ..here
            });
        };
        let e: u32 = n.try_into().map_err(|_| ParseError {
            message: "exponent too large".into(),
            ..here.clone()
        })?;
        if neg {
            let inv = invert_monomial(&base).ok_or(ParseError {
                message: "negative power of a non-invertible term".into(),
                ..here
            })?;
            Ok(KPoly::constant(inv.pow(e)))
        } else {
            Ok(base.pow(e))
        }
    }

    fn primary(&mut self) -> Result<KPoly, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                Ok(KPoly::constant(Series::constant(ResidueElem::rational(
                    BigRational::from_integer(n),
                ))))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if name == "O" && *self.peek_at(1) == Tok::LParen {
                    let here = self.error_here("");
                    self.bump();
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(&Tok::RParen)?;
                    let p = big_o_bound(&inner).ok_or(ParseError {
                        message: "O(...) takes a power of t".into(),
                        ..here
                    })?;
                    return Ok(KPoly::constant(Series::big_o(p)));
                }
                let v = ident_value(&name).ok_or_else(|| self.unexpected("a term"))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

fn ident_value(name: &str) -> Option<KPoly> {
    if name == "t" {
        return Some(KPoly::constant(Series::t()));
    }
    if name == "x" {
        return Some(KPoly::x());
    }
    let index = |rest: &str| -> Option<usize> {
        if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        rest.parse().ok().filter(|&i: &usize| i >= 1)
    };
    if let Some(rest) = name.strip_prefix('u') {
        return index(rest).map(|i| KPoly::constant(Series::constant(ResidueElem::var(i))));
    }
    if let Some(rest) = name.strip_prefix('x') {
        return index(rest).map(KPoly::var);
    }
    None
}

// 1/(c t^k) for an x-free exact single term.
fn invert_monomial(p: &KPoly) -> Option<Series> {
    let c = p.as_constant()?;
    let (coef, k) = c.as_monomial()?;
    Some(Series::monomial(coef.inv().ok()?, -k))
}

fn big_o_bound(p: &KPoly) -> Option<i64> {
    let c = p.as_constant()?;
    let (coef, k) = c.as_monomial()?;
    coef.is_one().then_some(k)
}

/// Parse a residue-field element such as `(u1^2+1)/(2*u1)`.
pub fn parse_residue(text: &str) -> Result<ResidueElem, ParseError> {
    let mut cur = Cursor::new(text)?;
    let p = cur.expr()?;
    cur.expect_end()?;
    let s = p.as_constant().ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "residue elements cannot mention x".into(),
    })?;
    s.as_constant().ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "residue elements cannot mention t".into(),
    })
}

/// Parse a series literal such as `3/2*t^-1 + 1 + u1*t^3 + O(t^5)`.
pub fn parse_series(text: &str) -> Result<Series, ParseError> {
    let mut cur = Cursor::new(text)?;
    let p = cur.expr()?;
    cur.expect_end()?;
    p.as_constant().ok_or_else(|| ParseError {
        line: 1,
        column: 1,
        message: "series literals cannot mention x".into(),
    })
}

/// Parse a polynomial in `x` (or `x1, x2, ...`) with series coefficients.
pub fn parse_kpoly(text: &str) -> Result<KPoly, ParseError> {
    let mut cur = Cursor::new(text)?;
    let p = cur.expr()?;
    cur.expect_end()?;
    Ok(p)
}
