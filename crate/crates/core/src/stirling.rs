//! Stirling-series approximants for `eⁿ`, e and `e^{n+1/2}`, and the
//! `e⁸ ≈ 96π³` decomposition.
//!
//! The series `n! ≈ √(2πn)(n/e)ⁿ(1 + 1/(12n) + 1/(288n²) − 139/(51840n³) + ⋯)`
//! is truncated at the fourth coefficient. Half-integer arguments enter
//! through `Γ(1/2) = √π`, which cancels in the approximant for `e^{n+1/2}`
//! and leaves a pure surd.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bignum::rational::{factorial, int, ratio, rational_pow, Rational};
use crate::bignum::{settle, Ball, BigFixed, Surd};
use crate::error::{Error, Result};
use crate::oracle::{pi_ball, Constant};

/// Stirling coefficients of `n^0, n^-1, n^-2, n^-3`.
pub fn coefficients() -> [Rational; 4] {
    [int(1), ratio(1, 12), ratio(1, 288), ratio(-139, 51840)]
}

pub const MAX_CORRECTION_TERMS: u32 = 4;

/// Correction terms available for the half-integer approximant.
pub const MAX_HALF_INTEGER_TERMS: u32 = 2;

const MAX_GUARD: u32 = 2560;

/// `k!! = k(k−2)(k−4)⋯`, with `(−1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigInt> {
    if k < -1 {
        return Err(Error::Argument(format!("double factorial of {k}")));
    }
    let mut acc = BigInt::one();
    let mut j = k;
    while j > 1 {
        acc *= j;
        j -= 2;
    }
    Ok(acc)
}

/// `Σ_{i<k} c_i / nⁱ` exactly.
pub fn stirling_factor(n: &Rational, k: u32) -> Result<Rational> {
    if !n.is_positive() {
        return Err(Error::Argument("argument must be positive".into()));
    }
    check_terms(k, MAX_CORRECTION_TERMS)?;
    Ok(coefficients()
        .iter()
        .take(k as usize)
        .enumerate()
        .map(|(i, c)| c * rational_pow(n, -(i as i32)))
        .sum())
}

fn check_terms(k: u32, max: u32) -> Result<()> {
    if k == 0 || k > max {
        return Err(Error::Argument(format!("correction terms must be in 1..={max}, got {k}")));
    }
    Ok(())
}

fn check_n(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::Argument(format!("n must be at least {min}")));
    }
    Ok(())
}

/// An approximant in the exact form `surd · π^(pi_half_power/2)` together
/// with its decimal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StirlingApprox {
    #[serde(serialize_with = "crate::render::rational_str")]
    pub n: Rational,
    #[serde(serialize_with = "crate::render::display_str")]
    pub correction_terms: u32,
    #[serde(serialize_with = "crate::render::display_str")]
    pub surd: Surd,
    #[serde(serialize_with = "crate::render::display_str")]
    pub pi_half_power: u32,
    pub value: BigFixed,
}

impl StirlingApprox {
    fn evaluate(n: Rational, correction_terms: u32, surd: Surd, pi_half_power: u32, scale: u32) -> Result<Self> {
        let (value, _) = settle(scale, MAX_GUARD, |w| {
            let mut ball = Ball::new(surd.eval(w).mantissa().clone(), BigInt::one(), w);
            if pi_half_power > 0 {
                let root_pi = pi_ball(w).root(2)?;
                ball = ball.mul(&root_pi.pow_int(pi_half_power as i64)?);
            }
            Ok(ball)
        })?;
        Ok(StirlingApprox { n, correction_terms, surd, pi_half_power, value })
    }

    /// `eⁿ ≈ √(2πn) · nⁿ/n! · F(n)`.
    pub fn power(n: u64, k: u32, scale: u32) -> Result<Self> {
        check_n(n, 1)?;
        let nq = Rational::from_integer(n.into());
        let factor = stirling_factor(&nq, k)?;
        let coeff = Rational::new(BigInt::from(n).pow(n as u32), factorial(n)) * factor;
        let surd = Surd::sqrt_of(&(int(2) * &nq)).scale_by(&coeff);
        Self::evaluate(nq, k, surd, 1, scale)
    }

    /// `e ≈ (1 + 1/n)^{n+1/2} · F(n+1)/F(n)`; free of π.
    pub fn ratio(n: u64, k: u32, scale: u32) -> Result<Self> {
        check_n(n, 1)?;
        let nq = Rational::from_integer(n.into());
        let base = (&nq + int(1)) / &nq;
        let factor = stirling_factor(&(&nq + int(1)), k)? / stirling_factor(&nq, k)?;
        let coeff = rational_pow(&base, n as i32) * factor;
        let surd = Surd::sqrt_of(&base).scale_by(&coeff);
        Self::evaluate(nq, k, surd, 0, scale)
    }

    /// `e^{n+1/2} ≈ √2 (2n+1)^{n+1}/(2n+1)!! · (1 + 1/(6(2n+1)))`.
    pub fn half_integer(n: u64, k: u32, scale: u32) -> Result<Self> {
        let surd = e_half_integer(n, k)?;
        Self::evaluate(ratio(2 * n as i64 + 1, 2), k, surd, 0, scale)
    }
}

impl fmt::Display for StirlingApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_half_power {
            0 => write!(f, "{} = {}", self.surd, self.value),
            1 => write!(f, "({})*sqrt(pi) = {}", self.surd, self.value),
            p => write!(f, "({})*sqrt(pi)^{p} = {}", self.surd, self.value),
        }
    }
}

pub fn e_power_approx(n: u64, k: u32, scale: u32) -> Result<BigFixed> {
    Ok(StirlingApprox::power(n, k, scale)?.value)
}

pub fn e_from_ratio(n: u64, k: u32, scale: u32) -> Result<BigFixed> {
    Ok(StirlingApprox::ratio(n, k, scale)?.value)
}

/// The half-integer approximant as an exact `√2 × rational`. Only the first
/// correction `1/(6(2n+1))` is known here, so `k ≤ 2`.
pub fn e_half_integer(n: u64, k: u32) -> Result<Surd> {
    check_terms(k, MAX_HALF_INTEGER_TERMS)?;
    let odd = 2 * n + 1;
    let mut coeff = Rational::new(BigInt::from(odd).pow(n as u32 + 1), double_factorial(odd as i64)?);
    if k == 2 {
        coeff *= int(1) + ratio(1, 6 * odd as i64);
    }
    Ok(Surd::new(Rational::zero(), coeff, 2u32))
}

/// `e⁸ = (e¹)⁴(e²)²` with the two-term approximants `e ≈ √(2π)·13/12` and
/// `e² ≈ 2√(4π)·25/24` gives `64π³` times a correction close to 3/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E8Decomposition {
    pub base: BigFixed,
    #[serde(serialize_with = "crate::render::rational_str")]
    pub correction: Rational,
    #[serde(serialize_with = "crate::render::rational_str")]
    pub approx_3_over_2_gap: Rational,
    pub value_96pi3: BigFixed,
    pub e8_oracle: BigFixed,
    pub ratio: BigFixed,
}

pub fn stirling_e8_decomposition(scale: u32) -> Result<E8Decomposition> {
    let correction = rational_pow(&ratio(13, 12), 4) * rational_pow(&ratio(25, 24), 2);
    let gap = &correction - ratio(3, 2);
    let pi3 = |w: u32| -> Result<Ball> { pi_ball(w).pow_int(3) };
    let (base, _) = settle(scale, MAX_GUARD, |w| Ok(pi3(w)?.mul_rational(&int(64))))?;
    let (value_96pi3, _) = settle(scale, MAX_GUARD, |w| Ok(pi3(w)?.mul_rational(&int(96))))?;
    let (e8_oracle, _) = settle(scale, MAX_GUARD, |w| Constant::E.ball(w + 4).pow_int(8).map(|b| b.rescale(w)))?;
    let (ratio_value, _) = settle(scale, MAX_GUARD, |w| {
        let e8 = Constant::E.ball(w + 4).pow_int(8)?.rescale(w);
        e8.div(&pi3(w)?.mul_rational(&int(96)))
    })?;
    Ok(E8Decomposition { base, correction, approx_3_over_2_gap: gap, value_96pi3, e8_oracle, ratio: ratio_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::e_oracle;

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(7).unwrap(), BigInt::from(105));
        assert_eq!(double_factorial(0).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial(-1).unwrap(), BigInt::from(1));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(stirling_factor(&int(1), 3).unwrap(), ratio(313, 288));
        assert_eq!(stirling_factor(&int(2), 2).unwrap(), ratio(25, 24));
        assert_eq!(stirling_factor(&int(1), 1).unwrap(), int(1));
        assert!(stirling_factor(&int(1), 5).is_err());
        assert!(stirling_factor(&int(0), 2).is_err());
    }

    #[test]
    fn power_approximant() {
        assert_eq!(e_power_approx(1, 3, 4).unwrap().to_string(), "2.7242");
        assert_eq!(e_power_approx(1, 1, 4).unwrap().to_string(), "2.5066");
        let s = StirlingApprox::power(1, 3, 10).unwrap();
        assert_eq!(s.surd.to_string(), "sqrt(2)*313/288");
        assert_eq!(s.pi_half_power, 1);
    }

    #[test]
    fn ratio_approximant() {
        assert_eq!(e_from_ratio(1, 1, 4).unwrap().to_string(), "2.8284");
        let s = StirlingApprox::ratio(1, 2, 4).unwrap();
        assert_eq!(s.surd, Surd::new(Rational::zero(), ratio(25, 13), 2u32));
        assert_eq!(s.value.to_string(), "2.7196");
        let e = e_oracle(20).unwrap().value.to_rational();
        let err = (e_from_ratio(10, 2, 20).unwrap().to_rational() - e).abs();
        assert!(err < ratio(1, 10_000));
    }

    #[test]
    fn half_integer_approximant() {
        let s = e_half_integer(0, 2).unwrap();
        assert_eq!(s.to_string(), "sqrt(2)*7/6");
        assert_eq!(s.square().as_rational(), Some(&ratio(49, 18)));
        assert_eq!(e_half_integer(0, 1).unwrap().eval(3).to_string(), "1.414");
        let s2 = e_half_integer(2, 2).unwrap();
        assert_eq!(s2.b(), &(ratio(125, 15) * ratio(31, 30)));
        assert!(e_half_integer(0, 3).is_err());
    }

    #[test]
    fn e8_decomposition() {
        let d = stirling_e8_decomposition(12).unwrap();
        assert_eq!(d.correction, ratio(17_850_625, 11_943_936));
        assert!(d.approx_3_over_2_gap.abs() < ratio(6, 1000));
        assert!(d.ratio.to_string().starts_with("1.00146"));
        assert!(d.base.to_string().starts_with("1984.40"));
    }
}
