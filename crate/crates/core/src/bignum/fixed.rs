//! Base-10 fixed-point numbers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::rational::{div_round, pow10, sqrt_scaled_floor, Rational};
use crate::error::{Error, Result};

/// `mantissa × 10^(-scale)`.
///
/// Equality is representational: `1.0` and `1.00` are different values of
/// this type. Use [`BigFixed::cmp_value`] to compare numerically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigFixed {
    mantissa: BigInt,
    scale: u32,
}

/// The four operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BigFixed {
    pub fn new(mantissa: BigInt, scale: u32) -> Self {
        BigFixed { mantissa, scale }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        BigFixed::new(n.into(), 0)
    }

    pub fn zero(scale: u32) -> Self {
        BigFixed::new(BigInt::zero(), scale)
    }

    pub fn one(scale: u32) -> Self {
        BigFixed::new(pow10(scale), scale)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn abs(&self) -> BigFixed {
        BigFixed::new(self.mantissa.abs(), self.scale)
    }

    pub fn neg(&self) -> BigFixed {
        BigFixed::new(-&self.mantissa, self.scale)
    }

    /// The exact value as a rational.
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.scale))
    }

    /// Nearest value at `scale` (ties away from zero).
    pub fn from_rational(q: &Rational, scale: u32) -> BigFixed {
        BigFixed::new(div_round(&(q.numer() * pow10(scale)), q.denom()), scale)
    }

    /// Mantissa this value would have at `scale`, rounded to nearest.
    pub fn mantissa_at(&self, scale: u32) -> BigInt {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * pow10(scale - self.scale),
            Ordering::Less => div_round(&self.mantissa, &pow10(self.scale - scale)),
        }
    }

    /// Rounds (or exactly extends) to `scale`.
    pub fn round_to(&self, scale: u32) -> BigFixed {
        BigFixed::new(self.mantissa_at(scale), scale)
    }

    /// Truncates toward zero at `scale` (extends exactly if `scale` is larger).
    pub fn trunc_to(&self, scale: u32) -> BigFixed {
        if scale >= self.scale {
            return self.round_to(scale);
        }
        let d = pow10(self.scale - scale);
        let q = self.mantissa.abs() / d;
        BigFixed::new(if self.is_negative() { -q } else { q }, scale)
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        self.mantissa.div_floor(&pow10(self.scale))
    }

    pub fn cmp_value(&self, other: &BigFixed) -> Ordering {
        let s = self.scale.max(other.scale);
        self.mantissa_at(s).cmp(&other.mantissa_at(s))
    }

    pub fn add(&self, other: &BigFixed, scale: u32) -> BigFixed {
        let s = self.scale.max(other.scale);
        BigFixed::new(self.mantissa_at(s) + other.mantissa_at(s), s).round_to(scale)
    }

    pub fn sub(&self, other: &BigFixed, scale: u32) -> BigFixed {
        self.add(&other.neg(), scale)
    }

    /// Product rounded to `scale`: error ≤ half a unit in the last place.
    pub fn mul(&self, other: &BigFixed, scale: u32) -> BigFixed {
        BigFixed::new(&self.mantissa * &other.mantissa, self.scale + other.scale).round_to(scale)
    }

    /// Quotient rounded to `scale`: error ≤ half a unit in the last place.
    pub fn div(&self, other: &BigFixed, scale: u32) -> Result<BigFixed> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a/b · 10^scale = ma · 10^(scale + sb) / (mb · 10^sa)
        let num = &self.mantissa * pow10(scale + other.scale);
        let den = &other.mantissa * pow10(self.scale);
        Ok(BigFixed::new(div_round(&num, &den), scale))
    }

    /// Square root at `scale`, within one unit in the last place.
    ///
    /// Two guard digits are carried through an exact integer square root
    /// (Newton iteration on the scaled radicand) before the final rounding.
    pub fn sqrt(&self, scale: u32) -> Result<BigFixed> {
        if self.is_negative() {
            return Err(Error::Domain(format!("sqrt of negative value {self}")));
        }
        let guard = scale + 2;
        let root = sqrt_scaled_floor(&self.to_rational(), guard);
        Ok(BigFixed::new(root, guard).round_to(scale))
    }

    /// `self^k` rounded to `scale`.
    ///
    /// The power is formed exactly (binary exponentiation on the integer
    /// mantissa) and rounded once, so the result is within half a unit in
    /// the last place of the exact power of this decimal value.
    pub fn pow_int(&self, k: i64, scale: u32) -> Result<BigFixed> {
        if k == 0 {
            return Ok(BigFixed::one(scale));
        }
        if self.is_zero() && k < 0 {
            return Err(Error::Domain("zero raised to a negative power".into()));
        }
        let e = u32::try_from(k.unsigned_abs())
            .map_err(|_| Error::Argument(format!("exponent {k} too large")))?;
        let num = self.mantissa.pow(e);
        let exact_scale = self
            .scale
            .checked_mul(e)
            .ok_or_else(|| Error::Argument(format!("exponent {k} too large")))?;
        if k > 0 {
            Ok(BigFixed::new(num, exact_scale).round_to(scale))
        } else {
            // 10^(scale·e) / m^e at `scale`
            let n = pow10(exact_scale + scale);
            Ok(BigFixed::new(div_round(&n, &num), scale))
        }
    }
}

/// `a op b` at `scale`. The result is within one unit of the last place of
/// the exact result.
pub fn arith(a: &BigFixed, b: &BigFixed, op: ArithOp, scale: i64) -> Result<BigFixed> {
    let scale = check_scale(scale)?;
    match op {
        ArithOp::Add => Ok(a.add(b, scale)),
        ArithOp::Sub => Ok(a.sub(b, scale)),
        ArithOp::Mul => Ok(a.mul(b, scale)),
        ArithOp::Div => a.div(b, scale),
    }
}

pub fn sqrt(x: &BigFixed, scale: i64) -> Result<BigFixed> {
    x.sqrt(check_scale(scale)?)
}

pub fn pow_int(x: &BigFixed, k: i64, scale: i64) -> Result<BigFixed> {
    x.pow_int(k, check_scale(scale)?)
}

/// Nearest decimal at `scale`; within half a unit of the last place of `q`.
pub fn rational_to_fixed(q: &Rational, scale: i64) -> Result<BigFixed> {
    Ok(BigFixed::from_rational(q, check_scale(scale)?))
}

/// Smallest decimal at `scale` that is ≥ `q`. Used to render certificates.
pub fn rational_to_fixed_ceil(q: &Rational, scale: u32) -> BigFixed {
    BigFixed::new(super::rational::scaled_ceil(q, scale), scale)
}

fn check_scale(scale: i64) -> Result<u32> {
    u32::try_from(scale).map_err(|_| Error::Argument(format!("scale must be non-negative, got {scale}")))
}

impl fmt::Display for BigFixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.mantissa.magnitude().to_str_radix(10);
        let sign = if self.is_negative() { "-" } else { "" };
        if self.scale == 0 {
            return write!(f, "{sign}{digits}");
        }
        let s = self.scale as usize;
        let padded = if digits.len() <= s {
            format!("{}{}", "0".repeat(s + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - s);
        write!(f, "{sign}{int}.{frac}")
    }
}

impl FromStr for BigFixed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: format!("{msg} in decimal `{s}`") };
        let (neg, body) = match s.as_bytes().first() {
            Some(b'-') => (true, &s[1..]),
            Some(b'+') => (false, &s[1..]),
            _ => (false, s),
        };
        let (int, frac) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad("malformed digits"));
        }
        let scale = u32::try_from(frac.len()).map_err(|_| bad("too many digits"))?;
        let mut mantissa: BigInt = format!("{int}{frac}").parse().map_err(|_| bad("malformed digits"))?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(BigFixed::new(mantissa, scale))
    }
}

impl Serialize for BigFixed {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl From<i64> for BigFixed {
    fn from(n: i64) -> Self {
        BigFixed::from_int(n)
    }
}

impl std::ops::Mul for BigFixed {
    type Output = BigFixed;

    /// Exact product (scales add).
    fn mul(self, rhs: BigFixed) -> BigFixed {
        BigFixed::new(self.mantissa * rhs.mantissa, self.scale + rhs.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::{int, ratio};

    fn fx(s: &str) -> BigFixed {
        s.parse().unwrap()
    }

    #[test]
    fn add_exact_decimals() {
        assert_eq!(arith(&fx("1.50"), &fx("2.25"), ArithOp::Add, 2).unwrap(), fx("3.75"));
    }

    #[test]
    fn div_one_third() {
        let r = arith(&fx("1"), &fx("3"), ArithOp::Div, 5).unwrap();
        assert_eq!(r, fx("0.33333"));
        let err = (r.to_rational() - ratio(1, 3)).abs();
        assert!(err <= ratio(1, 100_000));
    }

    #[test]
    fn mul_back_to_one() {
        // 22/7 - 3 = 1/7 at scale 20, times 7, at scale 18: within one ulp of 1
        let seventh = rational_to_fixed(&(ratio(22, 7) - int(3)), 20).unwrap();
        let r = arith(&seventh, &fx("7"), ArithOp::Mul, 18).unwrap();
        let err = (r.to_rational() - int(1)).abs();
        assert!(err <= Rational::new(1.into(), pow10(18)), "{r}");
    }

    #[test]
    fn errors() {
        assert_eq!(arith(&fx("1"), &fx("0.000"), ArithOp::Div, 3), Err(Error::DivisionByZero));
        assert!(matches!(arith(&fx("1"), &fx("1"), ArithOp::Add, -1), Err(Error::Argument(_))));
        assert!(matches!(sqrt(&fx("-2"), 3), Err(Error::Domain(_))));
        assert!(matches!(pow_int(&fx("0.0"), -1, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt(&fx("4"), 10).unwrap(), fx("2.0000000000"));
        let s51 = sqrt(&fx("51"), 8).unwrap();
        assert_eq!(s51.sub(&fx("4"), 8).trunc_to(4), fx("3.1414"));
        // |v^2 - 163| < 1e-29, squared with exact integer mantissas
        let v = sqrt(&fx("163"), 30).unwrap();
        let sq = v.clone() * v;
        let err = (sq.to_rational() - int(163)).abs();
        assert!(err < Rational::new(1.into(), pow10(29)));
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow_int(&fx("123.456"), 0, 4).unwrap(), fx("1.0000"));
        let pi30 = fx("3.141592653589793238462643383279");
        assert_eq!(pow_int(&pi30, 3, 3).unwrap(), fx("31.006"));
        let p = pow_int(&fx("2"), 9, 0).unwrap();
        assert_eq!(p, fx("512"));
        assert_eq!(p.div(&fx("163"), 6).unwrap().trunc_to(4), fx("3.1411"));
        assert_eq!(pow_int(&fx("2"), -2, 3).unwrap(), fx("0.250"));
    }

    #[test]
    fn rational_conversion() {
        assert_eq!(rational_to_fixed(&ratio(22, 7), 3).unwrap(), fx("3.143"));
        assert_eq!(rational_to_fixed(&ratio(49, 18), 2).unwrap(), fx("2.72"));
        assert_eq!(rational_to_fixed(&int(1), 5).unwrap(), fx("1.00000"));
        assert_eq!(rational_to_fixed_ceil(&ratio(1, 3), 2), fx("0.34"));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(fx("-0.05").to_string(), "-0.05");
        assert_eq!(fx("0.000").to_string(), "0.000");
        assert_eq!(fx("-0.000").to_string(), "0.000");
        assert_eq!(fx("12").to_string(), "12");
        assert_eq!(BigFixed::new(BigInt::from(-5), 3).to_string(), "-0.005");
        assert!("1e5".parse::<BigFixed>().is_err());
        assert!(".5".parse::<BigFixed>().is_err());
        assert!("".parse::<BigFixed>().is_err());
    }

    #[test]
    fn floor_and_trunc() {
        assert_eq!(fx("-1.5").floor(), BigInt::from(-2));
        assert_eq!(fx("2.999").floor(), BigInt::from(2));
        assert_eq!(fx("-1.59").trunc_to(1), fx("-1.5"));
    }
}
