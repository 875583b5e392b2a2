//! Expression trees over π and e, and their text syntax.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' exponent)?
//! primary := 'pi' | 'e' | integer | '(' expr ')'
//!          | 'sqrt' '(' expr ')' | 'root' '(' integer ',' expr ')' | 'exp' '(' expr ')'
//! exponent:= '-'? integer | '(' '-'? integer ')'
//! ```
//!
//! `^` binds tightest, so `-pi^2` is `-(pi^2)`; `-` and `/` associate to the
//! left. Unary minus is stored as `0 − x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::bignum::Rational;
use crate::error::{Error, Result};

/// Maximum nesting accepted by the parser.
pub const MAX_DEPTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Pi,
    E,
    Int(BigInt),
    Rat(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    PowInt(Box<Expr>, i64),
    Root(Box<Expr>, u32),
    Exp(Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn int(n: impl Into<BigInt>) -> Expr {
        Expr::Int(n.into())
    }

    pub fn rat(q: Rational) -> Expr {
        Expr::Rat(q)
    }

    pub fn add(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, k: i64) -> Expr {
        Expr::PowInt(Box::new(self), k)
    }

    pub fn root(self, k: u32) -> Expr {
        Expr::Root(Box::new(self), k)
    }

    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }

    pub fn exp(self) -> Expr {
        Expr::Exp(Box::new(self))
    }

    pub fn depth(&self) -> usize {
        match self {
            Expr::Pi | Expr::E | Expr::Int(_) | Expr::Rat(_) => 1,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => 1 + a.depth().max(b.depth()),
            Expr::PowInt(a, _) | Expr::Root(a, _) | Expr::Exp(a) | Expr::Sqrt(a) => 1 + a.depth(),
        }
    }

    /// Whether the tree mentions π, e, a root or `exp`; if not, it is an
    /// exact rational.
    pub fn is_rational_form(&self) -> bool {
        match self {
            Expr::Pi | Expr::E | Expr::Root(..) | Expr::Exp(_) | Expr::Sqrt(_) => false,
            Expr::Int(_) | Expr::Rat(_) => true,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.is_rational_form() && b.is_rational_form()
            }
            Expr::PowInt(a, _) => a.is_rational_form(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::PowInt(..) => 3,
            Expr::Int(n) if n.is_negative() => 0,
            Expr::Rat(q) if !q.is_integer() || q.is_negative() => 0,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        // operators parse left-associatively, so a right operand of equal
        // precedence keeps its parentheses and the tree round-trips exactly
        let binary = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            child(f, a, p)?;
            write!(f, " {op} ")?;
            child(f, b, p + 1)
        };
        match self {
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rat(q) => write!(f, "{q}"),
            Expr::Add(a, b) => binary(f, a, "+", b, 1),
            Expr::Sub(a, b) => binary(f, a, "-", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
            Expr::Div(a, b) => binary(f, a, "/", b, 2),
            Expr::PowInt(a, k) => {
                child(f, a, 4)?;
                if *k < 0 {
                    write!(f, "^({k})")
                } else {
                    write!(f, "^{k}")
                }
            }
            Expr::Root(a, k) => write!(f, "root({k}, {a})"),
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, depth: 0, len: text.len() };
    let e = p.expr()?;
    p.skip_ws();
    if let Some(&(at, c)) = p.chars.get(p.pos) {
        return Err(p.error_at(at, format!("unexpected `{c}`")));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    depth: usize,
    len: usize,
}

impl Parser {
    fn error_at(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }

    fn here(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        self.error_at(self.here(), msg)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{want}`")))
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(format!("expression nested deeper than {MAX_DEPTH}")));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs.add(self.term()?);
            } else if self.eat('-') {
                lhs = lhs.sub(self.term()?);
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs.mul(self.unary()?);
            } else if self.eat('/') {
                lhs = lhs.div(self.unary()?);
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            self.enter()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::int(0).sub(inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let k = if self.eat('(') {
                let k = self.signed_integer()?;
                self.expect(')')?;
                k
            } else {
                self.signed_integer()?
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let at = self.here();
        let n = self.integer()?;
        let n = if neg { -n } else { n };
        i64::try_from(&n).map_err(|_| self.error_at(at, "exponent out of range"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().map(|&(_, c)| c).collect()
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Int(self.integer()?)),
            Some('π') => {
                self.pos += 1;
                Ok(Expr::Pi)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.here();
                let name = self.ident();
                match name.as_str() {
                    "pi" => Ok(Expr::Pi),
                    "e" => Ok(Expr::E),
                    "sqrt" | "exp" => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(if name == "sqrt" { arg.sqrt() } else { arg.exp() })
                    }
                    "root" => {
                        self.expect('(')?;
                        let k_at = self.here();
                        let k = self.integer()?;
                        let k = u32::try_from(&k)
                            .ok()
                            .filter(|k| *k >= 1)
                            .ok_or_else(|| self.error_at(k_at, "root index must be a positive integer"))?;
                        self.expect(',')?;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        Ok(arg.root(k))
                    }
                    _ => Err(self.error_at(at, format!("unknown name `{name}`"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("1-2-3").unwrap(), Expr::int(1).sub(Expr::int(2)).sub(Expr::int(3)));
        assert_eq!(parse("8/4/2").unwrap(), Expr::int(8).div(Expr::int(4)).div(Expr::int(2)));
        assert_eq!(parse("-pi^2").unwrap(), Expr::int(0).sub(Expr::Pi.pow(2)));
        assert_eq!(parse("2*pi^2+1").unwrap(), Expr::int(2).mul(Expr::Pi.pow(2)).add(Expr::int(1)));
        assert_eq!(parse("e^(-2)").unwrap(), Expr::E.pow(-2));
        assert_eq!(parse("e^-2").unwrap(), Expr::E.pow(-2));
    }

    #[test]
    fn functions() {
        let r06 = parse("pi^2*sqrt((pi-e)^3)/e").unwrap();
        let want = Expr::Pi.pow(2).mul(Expr::Pi.sub(Expr::E).pow(3).sqrt()).div(Expr::E);
        assert_eq!(r06, want);
        assert_eq!(parse("root(3, 27)").unwrap(), Expr::int(27).root(3));
        assert_eq!(parse("exp(pi*sqrt(163))").unwrap(), Expr::Pi.mul(Expr::int(163).sqrt()).exp());
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "pi^2 / (4 * e - 1)",
            "163 * (pi - e)",
            "(pi^4 + pi^5) / e^6",
            "exp(pi * sqrt(163))",
            "1 - (2 - 3)",
            "pi^(-2)",
            "(0 - pi)^3",
            "root(3, pi + 1)",
        ] {
            let e = parse(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("pi +").unwrap_err(), Error::Parse { pos: 4, msg: "unexpected end of input".into() });
        assert!(matches!(parse("tau"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("(pi"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("root(0, 2)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse("pi pi"), Err(Error::Parse { pos: 3, .. })));
    }

    #[test]
    fn depth_guard() {
        let deep = format!("{}1{}", "(".repeat(70), ")".repeat(70));
        assert!(matches!(parse(&deep), Err(Error::Parse { .. })));
        let ok = format!("{}1{}", "(".repeat(60), ")".repeat(60));
        assert!(parse(&ok).is_ok());
    }
}
