//! Certified evaluation of expressions.
//!
//! Each evaluation runs the whole tree in interval arithmetic at a working
//! scale `digits + guard`. If the final interval is too wide, or a division
//! or root meets an interval that straddles zero, the guard is doubled and
//! the tree evaluated again from scratch.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::expr::Expr;
use crate::bignum::rational::{pow10, rational_pow, Rational};
use crate::bignum::{Ball, BigFixed};
use crate::error::{Error, Result};
use crate::oracle::{e_ball, exp_interval, pi_ball, EXP_RANGE};

const INITIAL_GUARD: u32 = 10;

/// Largest guard tried before giving up.
pub const MAX_GUARD: u32 = 640;

/// A value with a certified bound: `|value − exact| ≤ error_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BigFixed,
    pub error_bound: BigFixed,
}

impl Evaluation {
    pub fn lower(&self) -> Rational {
        self.value.to_rational() - self.error_bound.to_rational()
    }

    pub fn upper(&self) -> Rational {
        self.value.to_rational() + self.error_bound.to_rational()
    }

    pub fn overlaps(&self, other: &Evaluation) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }
}

/// Evaluates `expr` with `error_bound ≤ 10^-digits`.
///
/// The value is reported at scale `digits + 2`.
pub fn eval_expr(expr: &Expr, digits: u32) -> Result<Evaluation> {
    let out_scale = digits + 2;
    if expr.is_rational_form() {
        let q = eval_rational(expr)?;
        let value = BigFixed::from_rational(&q, out_scale);
        let exact = value.to_rational() == q;
        let error_bound = BigFixed::new(BigInt::from(u8::from(!exact)), out_scale);
        return Ok(Evaluation { value, error_bound });
    }
    // rescaling widens the radius to cover the rounded midpoint
    let ball = eval_certified(expr, digits + 1)?.rescale(out_scale);
    Ok(Evaluation { value: ball.mid_fixed(), error_bound: ball.rad_fixed() })
}

/// A ball around `expr` with radius at most `10^-digits`.
pub fn eval_certified(expr: &Expr, digits: u32) -> Result<Ball> {
    let mut guard = INITIAL_GUARD;
    loop {
        let w = digits + guard;
        match ball(expr, w) {
            Ok(b) if b.radius_within(digits) => return Ok(b),
            Ok(_) | Err(Retry::Loose(_)) if guard < MAX_GUARD => guard *= 2,
            Ok(_) => {
                return Err(Error::PrecisionCap { cap: w, what: format!("evaluation of {expr}") });
            }
            Err(Retry::Loose(e)) | Err(Retry::Hard(e)) => return Err(e),
        }
    }
}

/// Ball around `expr` at scale `w` without any width target.
pub fn eval_ball(expr: &Expr, w: u32) -> Result<Ball> {
    ball(expr, w).map_err(Retry::into_error)
}

/// Failures during one pass: `Loose` ones may vanish at higher precision.
enum Retry {
    Loose(Error),
    Hard(Error),
}

impl Retry {
    fn into_error(self) -> Error {
        match self {
            Retry::Loose(e) | Retry::Hard(e) => e,
        }
    }
}

impl From<Error> for Retry {
    fn from(e: Error) -> Self {
        Retry::Hard(e)
    }
}

fn ball(expr: &Expr, w: u32) -> std::result::Result<Ball, Retry> {
    Ok(match expr {
        Expr::Pi => pi_ball(w),
        Expr::E => e_ball(w),
        Expr::Int(n) => Ball::exact_int(n.clone(), w),
        Expr::Rat(q) => Ball::from_rational(q, w),
        Expr::Add(a, b) => ball(a, w)?.add(&ball(b, w)?),
        Expr::Sub(a, b) => ball(a, w)?.sub(&ball(b, w)?),
        Expr::Mul(a, b) => ball(a, w)?.mul(&ball(b, w)?),
        Expr::Div(a, b) => {
            let num = ball(a, w)?;
            let den = ball(b, w)?;
            guard_zero(&den)?;
            num.div(&den)?
        }
        Expr::PowInt(a, k) => {
            let base = ball(a, w)?;
            if *k < 0 {
                guard_zero(&base)?;
            }
            base.pow_int(*k)?
        }
        Expr::Root(a, k) => root(&ball(a, w)?, *k)?,
        Expr::Sqrt(a) => root(&ball(a, w)?, 2)?,
        Expr::Exp(a) => {
            let x = ball(a, w)?;
            let limit = BigInt::from(EXP_RANGE) * pow10(w);
            if (x.mid() - x.rad()).abs() > limit || (x.mid() + x.rad()).abs() > limit {
                return Err(Retry::Hard(Error::Range(format!("exp argument outside [-{EXP_RANGE}, {EXP_RANGE}]"))));
            }
            exp_interval(&x)?
        }
    })
}

fn guard_zero(b: &Ball) -> std::result::Result<(), Retry> {
    if b.mid().is_zero() && b.rad().is_zero() {
        return Err(Retry::Hard(Error::DivisionByZero));
    }
    if b.contains_zero() {
        return Err(Retry::Loose(Error::DivisionByZero));
    }
    Ok(())
}

fn root(b: &Ball, k: u32) -> std::result::Result<Ball, Retry> {
    if b.is_negative() {
        return Err(Retry::Hard(Error::Domain("root of a negative value".into())));
    }
    let exact_zero = b.mid().is_zero() && b.rad().is_zero();
    if b.contains_zero() && !exact_zero {
        return Err(Retry::Loose(Error::Domain("root argument not separated from zero".into())));
    }
    Ok(b.root(k)?)
}

/// Exact value of an expression without π, e, roots or `exp`.
pub fn eval_rational(expr: &Expr) -> Result<Rational> {
    Ok(match expr {
        Expr::Int(n) => Rational::from_integer(n.clone()),
        Expr::Rat(q) => q.clone(),
        Expr::Add(a, b) => eval_rational(a)? + eval_rational(b)?,
        Expr::Sub(a, b) => eval_rational(a)? - eval_rational(b)?,
        Expr::Mul(a, b) => eval_rational(a)? * eval_rational(b)?,
        Expr::Div(a, b) => {
            let d = eval_rational(b)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval_rational(a)? / d
        }
        Expr::PowInt(a, k) => {
            let base = eval_rational(a)?;
            if base.is_zero() && *k < 0 {
                return Err(Error::DivisionByZero);
            }
            let k = i32::try_from(*k).map_err(|_| Error::Argument("exponent too large".into()))?;
            rational_pow(&base, k)
        }
        other => return Err(Error::Argument(format!("{other} is not a rational expression"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coincidence::expr::parse;

    fn ev(text: &str, digits: u32) -> Evaluation {
        eval_expr(&parse(text).unwrap(), digits).unwrap()
    }

    #[test]
    fn examples() {
        let zero = ev("pi - pi", 10);
        assert!(zero.value.to_rational().abs() <= zero.error_bound.to_rational());
        assert!(zero.error_bound.to_rational() <= Rational::new(1.into(), pow10(10)));
        assert!(ev("163*(pi-e)", 10).value.to_string().starts_with("68.99966"));
        let r07 = ev("exp(pi*sqrt(163))", 20);
        let s = r07.value.to_string();
        assert!(s.starts_with("262537412640768743.999999999999"), "{s}");
    }

    #[test]
    fn exact_path() {
        let q = ev("22/7", 5);
        assert_eq!(q.value.to_string(), "3.1428571");
        assert_eq!(q.error_bound.to_string(), "0.0000001");
        let n = ev("640320^3+744", 3);
        assert_eq!(n.value.to_string(), "262537412640768744.00000");
        assert!(n.error_bound.is_zero());
    }

    #[test]
    fn errors() {
        let e = |t: &str| eval_expr(&parse(t).unwrap(), 10).unwrap_err();
        assert_eq!(e("1/(pi-pi)"), Error::DivisionByZero);
        assert_eq!(e("1/0"), Error::DivisionByZero);
        assert!(matches!(e("sqrt(e-pi)"), Error::Domain(_)));
        assert!(matches!(e("exp(101)"), Error::Range(_)));
        assert!(matches!(e("exp(40*pi)"), Error::Range(_)));
    }

    #[test]
    fn roots() {
        assert_eq!(ev("root(3, 27)", 8).value.round_to(3).to_string(), "3.000");
        assert!(matches!(eval_expr(&parse("root(3, 0-27)").unwrap(), 8), Err(Error::Domain(_))));
        assert!(ev("sqrt(0)", 8).value.is_zero());
        // an argument that never separates from zero cannot be certified
        assert!(matches!(eval_expr(&parse("sqrt(pi-pi)").unwrap(), 8), Err(Error::Domain(_))));
    }
}
