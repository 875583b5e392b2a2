//! Small exact derivations: a quadratic for π, first-order binomial
//! linearisation of a surd, and a 2×2 linear system in π and e.

use num_traits::{Signed, Zero};

use crate::bignum::rational::{int, ratio, Rational};
use crate::bignum::Surd;
use crate::error::{Error, Result};

/// Positive root of `x² + b·x = c`, i.e. `−b/2 + √(c + b²/4)`.
pub fn solve_pi_quadratic(b: i64, c: i64) -> Result<Surd> {
    let half_b = ratio(b, 2);
    let disc = int(c) + &half_b * &half_b;
    if !disc.is_positive() {
        return Err(Error::Domain(format!("x^2 + {b}x = {c} has no positive real root")));
    }
    let root = Surd::sqrt_of(&disc);
    Ok(Surd::new(-half_b + root.a(), root.b().clone(), root.r().clone()))
}

/// Replaces `√r` in `a + b√r` by `base + (r − base²)/(2·base)`.
///
/// `base` should approximate the square root of the surd's canonical
/// (square-free) radicand.
pub fn binomial_linearize(s: &Surd, base: &Rational) -> Result<Rational> {
    if !base.is_positive() {
        return Err(Error::Argument("base must be positive".into()));
    }
    if s.is_rational() {
        return Ok(s.a().clone());
    }
    let r = Rational::from_integer(s.r().clone().into());
    let linear = base + (&r - base * base) / (int(2) * base);
    Ok(s.a() + s.b() * linear)
}

/// `|b|·(r − base²)²/(8·base³)`: the linearisation error bound, valid when
/// `r ≥ base²` (the square root is concave, so the tangent overshoots by at
/// most the second-order term).
pub fn binomial_remainder_bound(s: &Surd, base: &Rational) -> Rational {
    if s.is_rational() {
        return Rational::zero();
    }
    let r = Rational::from_integer(s.r().clone().into());
    let delta = &r - base * base;
    s.b().abs() * &delta * &delta / (int(8) * base * base * base)
}

/// Solves `a11·x + a12·y = b1`, `a21·x + a22·y = b2` by Cramer's rule.
pub fn solve_linear_2x2(
    a11: &Rational,
    a12: &Rational,
    b1: &Rational,
    a21: &Rational,
    a22: &Rational,
    b2: &Rational,
) -> Result<(Rational, Rational)> {
    let det = a11 * a22 - a12 * a21;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let x = (b1 * a22 - a12 * b2) / &det;
    let y = (a11 * b2 - b1 * a21) / &det;
    Ok((x, y))
}

/// `e + 2π = 9` and `4e + π = 14`, solved for `(π, e)`.
pub fn archimedes_system() -> Result<(Rational, Rational)> {
    solve_linear_2x2(&int(2), &int(1), &int(9), &int(1), &int(4), &int(14))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics() {
        let s = solve_pi_quadratic(8, 35).unwrap();
        assert_eq!(s.to_string(), "-4 + sqrt(51)");
        assert!(s.eval(6).to_string().starts_with("3.1414"));
        let s = solve_pi_quadratic(1, 13).unwrap();
        assert_eq!(s, Surd::new(ratio(-1, 2), ratio(1, 2), 53u32));
        assert!(s.eval(6).to_string().starts_with("3.1400"));
        assert_eq!(solve_pi_quadratic(0, 9).unwrap(), Surd::rational(int(3)));
        assert!(solve_pi_quadratic(2, -1).is_err());
    }

    #[test]
    fn linearisation() {
        let base = int(7);
        assert_eq!(binomial_linearize(&solve_pi_quadratic(8, 35).unwrap(), &base).unwrap(), ratio(22, 7));
        assert_eq!(binomial_linearize(&solve_pi_quadratic(1, 13).unwrap(), &base).unwrap(), ratio(22, 7));
        let four = Surd::new(int(0), int(1), 4u32);
        assert_eq!(binomial_linearize(&four, &int(2)).unwrap(), int(2));
        assert!(binomial_linearize(&four, &int(0)).is_err());
    }

    #[test]
    fn linear_systems() {
        assert_eq!(archimedes_system().unwrap(), (ratio(22, 7), ratio(19, 7)));
        let (one, zero) = (int(1), int(0));
        assert_eq!(solve_linear_2x2(&one, &zero, &int(5), &zero, &one, &int(-2)).unwrap(), (int(5), int(-2)));
        assert_eq!(solve_linear_2x2(&one, &one, &one, &int(2), &int(2), &one), Err(Error::Singular));
        // back-substitution: 2π = 9 − e with e = 19/7
        assert_eq!((int(9) - ratio(19, 7)) / int(2), ratio(22, 7));
    }
}
