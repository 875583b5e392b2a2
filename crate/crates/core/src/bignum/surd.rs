//! Quadratic surds `a + b·√r`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::fixed::BigFixed;
use super::rational::{sqrt_scaled_floor, Rational};

/// Trial division limit used when pulling square factors out of a radicand.
const SQUARE_FACTOR_SEARCH: u64 = 1_000_000;

/// Exact value `a + b·√r`.
///
/// Canonical form: either `r` is square-free and greater than one, or the
/// surd is rational and stored as `b = 0, r = 1`. Square factors are found by
/// trial division up to 10⁶, which covers every radicand this crate builds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rational,
    b: Rational,
    r: BigUint,
}

impl Surd {
    pub fn new(a: Rational, b: Rational, r: impl Into<BigUint>) -> Surd {
        let r: BigUint = r.into();
        if r.is_zero() || b.is_zero() {
            return Surd::rational(a);
        }
        let (outside, inside) = extract_square(&r);
        let b = b * Rational::from_integer(BigInt::from(outside));
        if inside.is_one() {
            Surd::rational(a + b)
        } else {
            Surd { a, b, r: inside }
        }
    }

    pub fn rational(a: Rational) -> Surd {
        Surd { a, b: Rational::zero(), r: BigUint::one() }
    }

    /// `√q` for a non-negative rational `q`, via `√(p/q) = √(pq)/q`.
    pub fn sqrt_of(q: &Rational) -> Surd {
        assert!(!q.is_negative(), "square root of a negative rational");
        let radicand = (q.numer() * q.denom()).to_biguint().expect("non-negative");
        Surd::new(Rational::zero(), Rational::new(BigInt::one(), q.denom().clone()), radicand)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn r(&self) -> &BigUint {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    /// `(a + b√r)² = a² + b²r + 2ab√r`.
    pub fn square(&self) -> Surd {
        let r = Rational::from_integer(BigInt::from(self.r.clone()));
        let a = &self.a * &self.a + &self.b * &self.b * r;
        let b = Rational::from_integer(BigInt::from(2)) * &self.a * &self.b;
        Surd::new(a, b, self.r.clone())
    }

    /// Multiplies both parts by a rational.
    pub fn scale_by(&self, k: &Rational) -> Surd {
        Surd::new(&self.a * k, &self.b * k, self.r.clone())
    }

    /// `a + b√r` at `scale`, within one unit in the last place.
    pub fn eval(&self, scale: u32) -> BigFixed {
        let guard = scale + 2;
        let a = BigFixed::from_rational(&self.a, guard);
        if self.is_rational() {
            return a.round_to(scale);
        }
        // b√r = sign(b)·√(b²r)
        let r = Rational::from_integer(BigInt::from(self.r.clone()));
        let mag = sqrt_scaled_floor(&(&self.b * &self.b * r), guard);
        let root = BigFixed::new(if self.b.is_negative() { -mag } else { mag }, guard);
        a.add(&root, scale)
    }
}

/// Splits `r = outside² · inside` with `inside` square-free up to the search
/// limit (a leftover perfect square is also folded out).
fn extract_square(r: &BigUint) -> (BigUint, BigUint) {
    let mut outside = BigUint::one();
    let mut inside = r.clone();
    let mut p = 2u64;
    while p <= SQUARE_FACTOR_SEARCH {
        let pp = BigUint::from(p * p);
        if pp > inside {
            break;
        }
        while (&inside % &pp).is_zero() {
            inside /= &pp;
            outside *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = num_integer::Roots::sqrt(&inside);
    if &root * &root == inside {
        outside *= root;
        inside = BigUint::one();
    }
    (outside, inside)
}

impl fmt::Display for Surd {
    /// Renders as expression text, e.g. `-4 + sqrt(51)` or `sqrt(2)*7/6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.r);
        let mag = self.b.abs();
        let term = if mag.is_one() {
            root
        } else if mag.denom().is_one() {
            format!("{}*{root}", mag.numer())
        } else {
            format!("{root}*{mag}")
        };
        match (self.a.is_zero(), self.b.is_negative()) {
            (true, false) => write!(f, "{term}"),
            (true, true) => write!(f, "-{term}"),
            (false, false) => write!(f, "{} + {term}", self.a),
            (false, true) => write!(f, "{} - {term}", self.a),
        }
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
    fn canonical_form() {
        let s = Surd::new(int(0), int(1), 12u32);
        assert_eq!((s.b().clone(), s.r().clone()), (int(2), BigUint::from(3u32)));
        let nine = Surd::new(int(0), int(1), 9u32);
        assert_eq!(nine.as_rational(), Some(&int(3)));
        let half53 = Surd::sqrt_of(&ratio(53, 4));
        assert_eq!((half53.b().clone(), half53.r().clone()), (ratio(1, 2), BigUint::from(53u32)));
    }

    #[test]
    fn evaluation() {
        assert_eq!(Surd::new(int(-4), int(1), 51u32).eval(4).trunc_to(4), fx("3.1414"));
        assert_eq!(Surd::new(ratio(-1, 2), ratio(1, 2), 53u32).eval(3), fx("3.140"));
        assert_eq!(Surd::new(int(0), int(1), 2u32).eval(5), fx("1.41421"));
        assert_eq!(Surd::new(int(1), int(-1), 2u32).eval(3), fx("-0.414"));
    }

    #[test]
    fn squaring() {
        let s = Surd::new(int(0), ratio(7, 6), 2u32);
        assert_eq!(s.square().as_rational(), Some(&ratio(49, 18)));
        assert_eq!(s.to_string(), "sqrt(2)*7/6");
        assert_eq!(Surd::new(int(-4), int(1), 51u32).to_string(), "-4 + sqrt(51)");
    }
}
