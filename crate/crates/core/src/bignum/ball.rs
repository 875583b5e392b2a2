//! Midpoint-radius interval arithmetic at a fixed decimal scale.
//!
//! A [`Ball`] at scale `s` denotes every real in
//! `[(mid - rad)·10^-s, (mid + rad)·10^-s]`. Each operation rounds its
//! midpoint and widens the radius so that the result always contains the
//! exact result of applying the operation to any pair of members.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fixed::BigFixed;
use super::rational::{div_ceil, div_round, iroot, pow10, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigInt,
    scale: u32,
}

impl Ball {
    pub fn new(mid: BigInt, rad: BigInt, scale: u32) -> Ball {
        debug_assert!(!rad.is_negative());
        Ball { mid, rad, scale }
    }

    pub fn exact_int(n: impl Into<BigInt>, scale: u32) -> Ball {
        Ball::new(n.into() * pow10(scale), BigInt::zero(), scale)
    }

    /// Encloses a rational: radius 0 when it is representable, else 1.
    pub fn from_rational(q: &Rational, scale: u32) -> Ball {
        let num = q.numer() * pow10(scale);
        let mid = div_round(&num, q.denom());
        let rad = if &mid * q.denom() == num { BigInt::zero() } else { BigInt::one() };
        Ball::new(mid, rad, scale)
    }

    pub fn from_fixed(x: &BigFixed, scale: u32) -> Ball {
        let mid = x.mantissa_at(scale);
        let rad = if x.scale() <= scale { BigInt::zero() } else { BigInt::one() };
        Ball::new(mid, rad, scale)
    }

    /// A rational midpoint with a rational error bound.
    pub fn from_rational_with_error(q: &Rational, err: &Rational, scale: u32) -> Ball {
        let b = Ball::from_rational(q, scale);
        let extra = div_ceil(&(err.numer() * pow10(scale)), err.denom());
        Ball::new(b.mid, b.rad + extra, scale)
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mid_fixed(&self) -> BigFixed {
        BigFixed::new(self.mid.clone(), self.scale)
    }

    pub fn rad_fixed(&self) -> BigFixed {
        BigFixed::new(self.rad.clone(), self.scale)
    }

    pub fn lower(&self) -> BigFixed {
        BigFixed::new(&self.mid - &self.rad, self.scale)
    }

    pub fn upper(&self) -> BigFixed {
        BigFixed::new(&self.mid + &self.rad, self.scale)
    }

    pub fn lower_rational(&self) -> Rational {
        self.lower().to_rational()
    }

    pub fn upper_rational(&self) -> Rational {
        self.upper().to_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.abs() <= self.rad
    }

    /// True when the radius is at most `10^-digits`.
    pub fn radius_within(&self, digits: u32) -> bool {
        if digits >= self.scale {
            return self.rad.is_zero() || (digits == self.scale && self.rad <= BigInt::one());
        }
        self.rad <= pow10(self.scale - digits)
    }

    /// Re-expresses the ball at a coarser or finer scale.
    pub fn rescale(&self, scale: u32) -> Ball {
        if scale >= self.scale {
            let k = pow10(scale - self.scale);
            return Ball::new(&self.mid * &k, &self.rad * &k, scale);
        }
        let d = pow10(self.scale - scale);
        let mid = div_round(&self.mid, &d);
        let rounded = &mid * &d != self.mid;
        let rad = div_ceil(&self.rad, &d) + if rounded { 1 } else { 0 };
        Ball::new(mid, rad, scale)
    }

    /// Smallest ball at `scale` that contains `[lo, hi]` (mantissas at `scale`).
    pub fn hull(lo: BigInt, hi: BigInt, scale: u32) -> Ball {
        debug_assert!(lo <= hi);
        let sum = &lo + &hi;
        let mid = num_integer::Integer::div_floor(&sum, &BigInt::from(2));
        let rad = &hi - &mid;
        Ball::new(mid, rad, scale)
    }

    pub fn neg(&self) -> Ball {
        Ball::new(-&self.mid, self.rad.clone(), self.scale)
    }

    pub fn add(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.scale, other.scale);
        Ball::new(&self.mid + &other.mid, &self.rad + &other.rad, self.scale)
    }

    pub fn sub(&self, other: &Ball) -> Ball {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Ball) -> Ball {
        debug_assert_eq!(self.scale, other.scale);
        let unit = pow10(self.scale);
        let prod = &self.mid * &other.mid;
        let mid = div_round(&prod, &unit);
        let rounded = &mid * &unit != prod;
        // |xy - x'y'| ≤ |x|r' + |x'|r + rr'
        let spread = self.mid.abs() * &other.rad + other.mid.abs() * &self.rad + &self.rad * &other.rad;
        let rad = div_ceil(&spread, &unit) + if rounded { 1 } else { 0 };
        Ball::new(mid, rad, self.scale)
    }

    /// Multiplies by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> Ball {
        let num = &self.mid * q.numer();
        let mid = div_round(&num, q.denom());
        let rounded = &mid * q.denom() != num;
        let rad = div_ceil(&(&self.rad * q.numer().abs()), q.denom()) + if rounded { 1 } else { 0 };
        Ball::new(mid, rad, self.scale)
    }

    /// Fails with [`Error::DivisionByZero`] when the divisor's interval
    /// contains zero.
    pub fn div(&self, other: &Ball) -> Result<Ball> {
        debug_assert_eq!(self.scale, other.scale);
        if other.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let unit = pow10(self.scale);
        let num = &self.mid * &unit;
        let mid = div_round(&num, &other.mid);
        let rounded = &mid * &other.mid != num;
        // |a'/b' - a/b| ≤ (ra|b| + |a|rb) / (|b|(|b| - rb))
        let b_abs = other.mid.abs();
        let spread = (&self.rad * &b_abs + self.mid.abs() * &other.rad) * &unit;
        let denom = &b_abs * (&b_abs - &other.rad);
        let rad = div_ceil(&spread, &denom) + if rounded { 1 } else { 0 };
        Ok(Ball::new(mid, rad, self.scale))
    }

    pub fn pow_int(&self, k: i64) -> Result<Ball> {
        if k < 0 {
            let one = Ball::exact_int(1, self.scale);
            return one.div(&self.pow_int(-k)?);
        }
        let mut result = Ball::exact_int(1, self.scale);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Principal `k`-th root. The lower end is clamped at zero; an interval
    /// lying entirely below zero is a domain error.
    pub fn root(&self, k: u32) -> Result<Ball> {
        if k == 0 {
            return Err(Error::Argument("root index must be positive".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let hi = &self.mid + &self.rad;
        if hi.is_negative() {
            return Err(Error::Domain("root of a negative value".into()));
        }
        let lo = (&self.mid - &self.rad).max(BigInt::zero());
        // root(m·10^-s) at scale s = (m·10^(s(k-1)))^(1/k)
        let shift = pow10(self.scale * (k - 1));
        let lo_root = iroot(&(&lo * &shift), k);
        let hi_arg = &hi * &shift;
        let hi_floor = iroot(&hi_arg, k);
        let hi_root = if hi_floor.pow(k) == hi_arg { hi_floor } else { hi_floor + 1 };
        Ok(Ball::hull(lo_root, hi_root, self.scale))
    }

    /// Whether the whole ball lies strictly below zero.
    pub fn is_negative(&self) -> bool {
        &self.mid + &self.rad < BigInt::zero()
    }

    /// Nearest integer to every member, if they all share one.
    pub fn certified_round(&self) -> Option<BigInt> {
        let unit = pow10(self.scale);
        let lo = div_round(&(&self.mid - &self.rad), &unit);
        let hi = div_round(&(&self.mid + &self.rad), &unit);
        (lo == hi).then_some(lo)
    }

    /// Digits of every member truncated toward zero at `digits`, if they agree
    /// and the ball does not straddle zero.
    pub fn certified_truncation(&self, digits: u32) -> Option<BigFixed> {
        if self.contains_zero() && !self.mid.is_zero() {
            return None;
        }
        let lo = self.lower().trunc_to(digits);
        let hi = self.upper().trunc_to(digits);
        (lo == hi && self.lower().is_negative() == self.upper().is_negative()).then_some(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::{int, ratio};

    fn contains(b: &Ball, q: &Rational) -> bool {
        b.lower_rational() <= *q && *q <= b.upper_rational()
    }

    #[test]
    fn arithmetic_encloses_exact_results() {
        let s = 12;
        let a = Ball::from_rational(&ratio(1, 3), s);
        let b = Ball::from_rational(&ratio(-2, 7), s);
        assert!(contains(&a.add(&b), &(ratio(1, 3) + ratio(-2, 7))));
        assert!(contains(&a.mul(&b), &(ratio(1, 3) * ratio(-2, 7))));
        assert!(contains(&a.div(&b).unwrap(), &(ratio(1, 3) / ratio(-2, 7))));
        assert!(contains(&a.pow_int(5).unwrap(), &ratio(1, 243)));
        assert!(contains(&b.pow_int(-3).unwrap(), &(ratio(-343, 8))));
    }

    #[test]
    fn roots() {
        let two = Ball::exact_int(2, 20);
        let r = two.root(2).unwrap();
        let sq_lo = r.lower_rational() * r.lower_rational();
        let sq_hi = r.upper_rational() * r.upper_rational();
        assert!(sq_lo <= int(2) && int(2) <= sq_hi);
        assert!(r.rad() <= &BigInt::one());
        let c = Ball::exact_int(27, 10).root(3).unwrap();
        assert!(contains(&c, &int(3)));
        assert!(Ball::exact_int(-4, 5).root(2).is_err());
    }

    #[test]
    fn division_by_interval_containing_zero() {
        let z = Ball::new(BigInt::from(1), BigInt::from(2), 3);
        assert_eq!(Ball::exact_int(1, 3).div(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn rescale_keeps_enclosure() {
        let a = Ball::from_rational(&ratio(2, 3), 30);
        let coarse = a.rescale(7);
        assert!(contains(&coarse, &ratio(2, 3)));
        assert_eq!(coarse.certified_truncation(5), Some("0.66666".parse().unwrap()));
    }
}
