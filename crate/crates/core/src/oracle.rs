//! High-precision reference values for π, e and exp(x).
//!
//! These are the trusted side of every comparison in the crate, so none of
//! them reuses the slow π series from [`crate::series`]:
//!
//! * π from Machin's formula `π/4 = 4·arctan(1/5) − arctan(1/239)`, each
//!   arctangent an exact-rational partial sum certified by the alternating
//!   remainder `1/((2K+1)·x^(2K+1))`;
//! * e from `Σ 1/n!` with the tail bound `2/(N+1)!`;
//! * `exp(x)` for `|x| ≤ 100` by splitting `x = k + f`, `k = floor(x)`,
//!   `f ∈ [0, 1)`: `e^k` is an integer power of the e ball and `e^f` a Taylor
//!   sum with a factorial tail.
//!
//! π and e balls are memoised per scale behind a mutex; a cached ball is
//! bit-identical to a fresh computation at the same scale.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::bignum::rational::{factorial, pow10, ratio, Rational};
use crate::bignum::{Ball, BigFixed};
use crate::error::{Error, Result};

/// Largest `|x|` accepted by the exponential.
pub const EXP_RANGE: i64 = 100;

/// Guard digits are doubled from 10 up to this before giving up.
const MAX_GUARD: u32 = 1280;

/// A decimal value whose first `certified_digits` fractional digits are
/// exactly those of the constant: `|value − constant| < 10^-certified_digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleValue {
    pub value: BigFixed,
    pub certified_digits: u32,
}

impl OracleValue {
    /// Ball at scale `certified_digits` containing the constant.
    pub fn enclosure(&self) -> Ball {
        Ball::new(self.value.mantissa().clone(), BigInt::one(), self.value.scale())
    }

    /// The same value truncated to fewer digits (still certified).
    pub fn truncated(&self, digits: u32) -> OracleValue {
        let digits = digits.min(self.certified_digits);
        OracleValue { value: self.value.trunc_to(digits), certified_digits: digits }
    }
}

/// Constants a series can describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constant {
    E,
    Pi,
    TwoPi,
    Pi6,
    Pi8,
}

impl Constant {
    pub fn name(self) -> &'static str {
        match self {
            Constant::E => "e",
            Constant::Pi => "pi",
            Constant::TwoPi => "2pi",
            Constant::Pi6 => "pi^6",
            Constant::Pi8 => "pi^8",
        }
    }

    /// Enclosing ball at `scale`.
    pub fn ball(self, scale: u32) -> Ball {
        match self {
            Constant::E => e_ball(scale),
            Constant::Pi => pi_ball(scale),
            Constant::TwoPi => pi_ball(scale).mul_rational(&Rational::from_integer(2.into())),
            Constant::Pi6 | Constant::Pi8 => {
                let k = if self == Constant::Pi6 { 6 } else { 8 };
                // Power of a wider ball, rescaled down.
                pi_ball(scale + 10).pow_int(k).expect("non-negative power").rescale(scale)
            }
        }
    }

    pub fn oracle(self, digits: u32) -> Result<OracleValue> {
        certify(digits, |w| Ok(self.ball(w)))
    }
}

/// π to `digits` certified fractional digits.
pub fn pi_oracle(digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    Constant::Pi.oracle(digits)
}

/// e to `digits` certified fractional digits.
pub fn e_oracle(digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    Constant::E.oracle(digits)
}

/// `exp(x)` to `digits` certified fractional digits, for `|x| ≤ 100`.
pub fn exp_oracle(x: &BigFixed, digits: u32) -> Result<OracleValue> {
    check_digits(digits)?;
    check_exp_range(x)?;
    if x.is_zero() {
        return Ok(OracleValue { value: BigFixed::one(digits), certified_digits: digits });
    }
    certify(digits, |w| exp_ball(x, w))
}

fn check_digits(digits: u32) -> Result<()> {
    if digits == 0 {
        return Err(Error::Argument("digits must be at least 1".into()));
    }
    Ok(())
}

fn check_exp_range(x: &BigFixed) -> Result<()> {
    if x.abs().cmp_value(&BigFixed::from_int(EXP_RANGE)).is_gt() {
        return Err(Error::Range(format!("exp argument {x} outside [-{EXP_RANGE}, {EXP_RANGE}]")));
    }
    Ok(())
}

/// Truncates a ball to `digits` once all of its members agree on them.
fn certify<F>(digits: u32, mut f: F) -> Result<OracleValue>
where
    F: FnMut(u32) -> Result<Ball>,
{
    let mut guard = 10;
    loop {
        if let Some(value) = f(digits + guard)?.certified_truncation(digits) {
            return Ok(OracleValue { value, certified_digits: digits });
        }
        if guard >= MAX_GUARD {
            return Err(Error::PrecisionCap { cap: digits + guard, what: "oracle truncation".into() });
        }
        guard *= 2;
    }
}

fn cache() -> &'static Mutex<HashMap<(Constant, u32), Ball>> {
    static CACHE: OnceLock<Mutex<HashMap<(Constant, u32), Ball>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn memoised(c: Constant, scale: u32, compute: impl FnOnce() -> Ball) -> Ball {
    let mut map = cache().lock().unwrap_or_else(|poisoned| poisoned.into_inner());
    map.entry((c, scale)).or_insert_with(compute).clone()
}

/// `Σ_{k<terms} (-1)^k / ((2k+1)·x^(2k+1))` and its remainder bound.
pub fn arctan_inv(x: u64, terms: u64) -> (Rational, Rational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x);
    let mut sum = Rational::zero();
    for k in 0..terms {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * k + 1) * &power);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
    }
    let remainder = Rational::new(BigInt::one(), BigInt::from(2 * terms + 1) * power);
    (sum, remainder)
}

/// Terms needed for `weight · remainder < 10^-(scale + 2)`.
fn arctan_terms(x: u64, weight: u64, scale: u32) -> u64 {
    let target = pow10(scale + 2) * weight;
    let x2 = BigInt::from(x * x);
    let mut power = BigInt::from(x);
    let mut k = 0u64;
    while BigInt::from(2 * k + 1) * &power <= target {
        power *= &x2;
        k += 1;
    }
    k
}

/// Ball around π at `scale` from Machin's formula.
pub fn pi_ball(scale: u32) -> Ball {
    memoised(Constant::Pi, scale, || {
        let (a5, r5) = arctan_inv(5, arctan_terms(5, 16, scale));
        let (a239, r239) = arctan_inv(239, arctan_terms(239, 4, scale));
        let sixteen = Rational::from_integer(16.into());
        let four = Rational::from_integer(4.into());
        let sum = &sixteen * a5 - &four * a239;
        let err = sixteen * r5 + four * r239;
        Ball::from_rational_with_error(&sum, &err, scale)
    })
}

/// `Σ_{n=0}^{last} 1/n!` exactly, with the tail bound `2/(last+1)!`.
pub fn e_partial(last: u64) -> (Rational, Rational) {
    // Σ N!/n! over N!
    let mut numer = BigInt::zero();
    let mut falling = BigInt::one();
    for n in (0..=last).rev() {
        numer += &falling;
        falling *= BigInt::from(n.max(1));
    }
    let sum = Rational::new(numer, factorial(last));
    let tail = Rational::new(BigInt::from(2), factorial(last + 1));
    (sum, tail)
}

/// Ball around e at `scale`.
pub fn e_ball(scale: u32) -> Ball {
    memoised(Constant::E, scale, || {
        let target = pow10(scale + 2) * 2;
        let mut last = 1u64;
        let mut fact = BigInt::from(2); // (last+1)!
        while fact <= target {
            last += 1;
            fact *= last + 1;
        }
        let (sum, tail) = e_partial(last);
        Ball::from_rational_with_error(&sum, &tail, scale)
    })
}

/// Ball around `exp(x)` at `scale` for an exact `x` with `|x| ≤ 100`.
pub fn exp_ball(x: &BigFixed, scale: u32) -> Result<Ball> {
    check_exp_range(x)?;
    if x.is_zero() {
        return Ok(Ball::exact_int(1, scale));
    }
    let k = x.floor();
    let frac = x.sub(&BigFixed::from_int(k.clone()), x.scale());
    let k = k.to_i64().expect("bounded by EXP_RANGE");
    // e^|k| has about 0.4343·|k| integer digits; carry that many extra.
    let w = scale + 12 + (k.unsigned_abs() as u32 * 4343).div_ceil(10_000);
    let ef = exp_frac_ball(&frac, w);
    let ek = if k == 0 { Ball::exact_int(1, w) } else { e_ball(w).pow_int(k)? };
    Ok(ef.mul(&ek).rescale(scale))
}

/// Taylor sum for `e^f`, `0 ≤ f < 1`, at scale `w`.
///
/// Terms are formed by the recurrence `T_n = round(T_{n-1}·f/n)`; each carries
/// under one unit of accumulated error because the factor `f/n` is below one.
/// The tail past term `N` is under `2/(N+1)!`, kept below one unit.
fn exp_frac_ball(f: &BigFixed, w: u32) -> Ball {
    debug_assert!(!f.is_negative());
    if f.is_zero() {
        return Ball::exact_int(1, w);
    }
    let unit = pow10(f.scale());
    let mut term = pow10(w);
    let mut sum = term.clone();
    let limit = pow10(w) * 2;
    let mut fact = BigInt::one();
    let mut n = 0u64;
    loop {
        n += 1;
        fact *= n;
        term = crate::bignum::rational::div_round(&(&term * f.mantissa()), &(&unit * BigInt::from(n)));
        sum += &term;
        // tail after n: < 2/(n+1)!
        if &fact * (n + 1) > limit {
            break;
        }
    }
    let rad = BigInt::from(2 * (n + 1) + 1);
    Ball::new(sum, rad, w)
}

/// `exp` over a ball: the hull of the endpoint exponentials.
pub fn exp_interval(x: &Ball) -> Result<Ball> {
    if x.rad().is_zero() {
        return exp_ball(&x.mid_fixed(), x.scale());
    }
    let lo = exp_ball(&x.lower(), x.scale())?;
    let hi = exp_ball(&x.upper(), x.scale())?;
    Ok(Ball::hull(lo.mid() - lo.rad(), hi.mid() + hi.rad(), x.scale()))
}

/// `|e − Σ_{n≤last} 1/n!| ≤ 2/(last+1)!`, exposed for checks.
pub fn e_tail_bound(last: u64) -> Rational {
    ratio(2, 1) / Rational::from_integer(factorial(last + 1))
}
