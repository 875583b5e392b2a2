//! Certified continued-fraction expansion.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::eval::{eval_certified, eval_rational};
use super::expr::Expr;
use crate::bignum::Rational;
use crate::error::{Error, Result};

/// Working digits are doubled up to this limit.
pub const MAX_CFRAC_DIGITS: u32 = 4096;

/// The expansion of `e^π` as it is commonly quoted, `[23; 7, 9, 1, 1, 591, …]`.
/// The true expansion has a 3 after the 9, which this list leaves out.
pub const QUOTED_EXP_PI: [i64; 6] = [23, 7, 9, 1, 1, 591];

/// The first `n_terms` partial quotients `[a0; a1, …]` of `expr`.
///
/// Quotients are read off both ends of a certified interval and emitted only
/// while the two ends agree; when they part, the interval is narrowed by
/// doubling the working digits. Exact rationals are expanded by Euclid's
/// algorithm and may return fewer terms when the expansion ends.
pub fn cfrac(expr: &Expr, n_terms: usize, digits: u32) -> Result<Vec<BigInt>> {
    if n_terms == 0 {
        return Err(Error::Argument("at least one term is required".into()));
    }
    if expr.is_rational_form() {
        let q = eval_rational(expr)?;
        return Ok(shared_quotients(&q, &q, n_terms));
    }
    let mut d = digits.max(10);
    loop {
        let ball = eval_certified(expr, d)?;
        let terms = shared_quotients(&ball.lower_rational(), &ball.upper_rational(), n_terms);
        if terms.len() >= n_terms {
            return Ok(terms);
        }
        if d >= MAX_CFRAC_DIGITS {
            return Err(Error::PrecisionCap {
                cap: d,
                what: format!("{} of {n_terms} partial quotients certified", terms.len()),
            });
        }
        d = (d * 2).min(MAX_CFRAC_DIGITS);
    }
}

/// Partial quotients shared by every number in `[lo, hi]`.
pub fn shared_quotients(lo: &Rational, hi: &Rational, n_terms: usize) -> Vec<BigInt> {
    debug_assert!(lo <= hi);
    let exact = lo == hi;
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let mut out = Vec::new();
    while out.len() < n_terms {
        let a = lo.floor();
        if hi.floor() != a {
            break;
        }
        let a_int = a.to_integer();
        out.push(a_int);
        let (fl, fh) = (&lo - &a, &hi - &a);
        if fl.is_zero() {
            // an exact value ends here; an interval touching an integer is undecided
            if !exact {
                out.pop();
            }
            break;
        }
        (lo, hi) = (fh.recip(), fl.recip());
    }
    out
}

/// Convergents `p_k/q_k` of a partial-quotient list.
pub fn convergents(terms: &[BigInt]) -> Vec<Rational> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    terms
        .iter()
        .map(|a| {
            let p = a * &p0 + &p1;
            let q = a * &q0 + &q1;
            (p1, q1) = (std::mem::replace(&mut p0, p.clone()), std::mem::replace(&mut q0, q.clone()));
            Rational::new(p, q)
        })
        .collect()
}

/// Index of the first position where two expansions differ, if any within
/// their common length.
pub fn first_divergence(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    a.iter().zip(b).position(|(x, y)| x != y)
}

pub fn quoted_exp_pi() -> Vec<BigInt> {
    QUOTED_EXP_PI.iter().map(|&a| BigInt::from(a)).collect()
}

/// Whether `[lo, hi]` lies between the last two convergents, as it must when
/// every point of it shares the expansion `terms`.
pub fn bracketed_by_convergents(terms: &[BigInt], lo: &Rational, hi: &Rational) -> bool {
    let c = convergents(terms);
    match c.len() {
        0 => false,
        1 => &c[0] <= lo && (hi - &c[0]) < Rational::one(),
        n => {
            let (x, y) = (&c[n - 2], &c[n - 1]);
            let (min, max) = if x < y { (x, y) } else { (y, x) };
            min <= lo && hi <= max
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::ratio;
    use crate::coincidence::expr::parse;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn exact_rationals_terminate() {
        assert_eq!(cfrac(&parse("22/7").unwrap(), 3, 10).unwrap(), ints(&[3, 7]));
        assert_eq!(cfrac(&Expr::rat(ratio(415, 93)), 10, 10).unwrap(), ints(&[4, 2, 6, 7]));
        assert_eq!(cfrac(&Expr::int(5), 4, 10).unwrap(), ints(&[5]));
        assert_eq!(cfrac(&parse("0-7/3").unwrap(), 4, 10).unwrap(), ints(&[-3, 1, 2]));
    }

    #[test]
    fn gelfond_constant() {
        let e = parse("exp(pi)").unwrap();
        assert_eq!(cfrac(&e, 3, 20).unwrap(), ints(&[23, 7, 9]));
        let seven = cfrac(&e, 7, 20).unwrap();
        assert_eq!(seven, ints(&[23, 7, 9, 3, 1, 1, 591]));
        assert_eq!(first_divergence(&seven, &quoted_exp_pi()), Some(3));
    }

    #[test]
    fn pi_expansion() {
        let terms = cfrac(&Expr::Pi, 5, 10).unwrap();
        assert_eq!(terms, ints(&[3, 7, 15, 1, 292]));
        assert_eq!(convergents(&terms)[1], ratio(22, 7));
        assert_eq!(convergents(&terms)[3], ratio(355, 113));
    }

    #[test]
    fn interval_touching_an_integer_stops() {
        assert_eq!(shared_quotients(&int_r(3), &ratio(31, 10), 3), Vec::<BigInt>::new());
        assert_eq!(shared_quotients(&ratio(29, 10), &int_r(3), 3), Vec::<BigInt>::new());
    }

    fn int_r(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn zero_terms_rejected() {
        assert!(cfrac(&Expr::Pi, 0, 10).is_err());
    }
}
