//! Exact rational helpers.
//!
//! [`Rational`] is `num_rational::BigRational`, which always stores its value
//! reduced with a positive denominator. The helpers here cover the integer
//! plumbing the rest of the crate needs: powers of ten, rounding divisions and
//! square roots of exact rationals.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `10^k` as a big integer.
pub fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Shorthand for the rational `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` rounded to nearest, ties away from zero. `d` must be non-zero.
pub fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (d_abs, n_adj) = if d.is_negative() { (-d, -n) } else { (d.clone(), n.clone()) };
    let (q, r) = n_adj.abs().div_rem(&d_abs);
    let q = if (&r << 1usize) >= d_abs { q + 1u32 } else { q };
    if n_adj.is_negative() {
        -q
    } else {
        q
    }
}

/// `ceil(n / d)` for `d > 0`.
pub fn div_ceil(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    -(-n).div_floor(d)
}

/// `q · 10^scale` rounded to nearest; the mantissa of `q` at `scale`.
pub fn scaled_round(q: &Rational, scale: u32) -> BigInt {
    div_round(&(q.numer() * pow10(scale)), q.denom())
}

/// `ceil(q · 10^scale)`.
pub fn scaled_ceil(q: &Rational, scale: u32) -> BigInt {
    div_ceil(&(q.numer() * pow10(scale)), q.denom())
}

/// `floor(q · 10^scale)`.
pub fn scaled_floor(q: &Rational, scale: u32) -> BigInt {
    (q.numer() * pow10(scale)).div_floor(q.denom())
}

/// Integer square root of a non-negative big integer (floor).
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    BigInt::from_biguint(Sign::Plus, n.magnitude().sqrt())
}

/// Floor of the `k`-th root of a non-negative big integer.
pub fn iroot(n: &BigInt, k: u32) -> BigInt {
    debug_assert!(!n.is_negative() && k >= 1);
    BigInt::from_biguint(Sign::Plus, n.magnitude().nth_root(k))
}

/// Floor of `sqrt(q) · 10^scale` for `q ≥ 0`.
///
/// Uses `sqrt(p/q) = sqrt(p·q)/q`, so the only inexact steps are the integer
/// square root and the final floor division: the result is within one unit of
/// the true scaled root, from below.
pub fn sqrt_scaled_floor(q: &Rational, scale: u32) -> BigInt {
    debug_assert!(!q.is_negative());
    let radicand = q.numer() * q.denom() * pow10(2 * scale);
    isqrt(&radicand).div_floor(q.denom())
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = n.sqrt();
    &r * &r == *n
}

/// Rounds a rational to the nearest integer, ties away from zero.
pub fn round_rational(q: &Rational) -> BigInt {
    div_round(q.numer(), q.denom())
}

/// Exact `q^k` for any integer `k` (`q ≠ 0` when `k < 0`).
pub fn rational_pow(q: &Rational, k: i32) -> Rational {
    if k >= 0 {
        Rational::new(q.numer().pow(k as u32), q.denom().pow(k as u32))
    } else {
        Rational::new(q.denom().pow((-k) as u32), q.numer().pow((-k) as u32))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of decimal digits in `|n|` (1 for zero).
pub fn decimal_len(n: &BigInt) -> u32 {
    if n.is_zero() {
        1
    } else {
        n.magnitude().to_str_radix(10).len() as u32
    }
}

/// Largest `d` with `q ≤ 10^-d` for `q > 0`. Negative for `q > 1`; callers clamp.
pub fn neg_log10_floor(q: &Rational) -> i64 {
    debug_assert!(q.is_positive());
    // Estimate from digit lengths, then correct by exact comparison.
    let est = decimal_len(q.denom()) as i64 - decimal_len(q.numer()) as i64;
    let holds = |d: i64| -> bool {
        // q ≤ 10^-d  <=>  numer·10^d ≤ denom (d ≥ 0) or numer ≤ denom·10^-d
        if d >= 0 {
            q.numer() * pow10(d as u32) <= *q.denom()
        } else {
            *q.numer() <= q.denom() * pow10((-d) as u32)
        }
    };
    let mut d = est + 1;
    while !holds(d) {
        d -= 1;
    }
    while holds(d + 1) {
        d += 1;
    }
    d
}
