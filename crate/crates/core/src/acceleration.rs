//! The two acceleration steps from Gregory–Leibniz to the paired Nilakantha
//! form, as exact transforms, and the side-by-side e / 2π expansion table.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bignum::rational::{int, Rational};
use crate::bignum::BigFixed;
use crate::error::{Error, Result};
use crate::series::{builtin, e_regrouped, SeriesSpec};

/// Number of leading terms checked before a series is accepted as alternating.
const ALTERNATION_PROBE: u64 = 64;

fn q(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The three forms of the n-th Nilakantha term magnitude, each computed
/// from its own formula:
/// `1/(n+1) + 1/n − 4/(2n+1)`, `1/(n(2n+1)(n+1))`, `4/((2n+1)³ − (2n+1))`.
pub fn gl_regroup_term(n: u64) -> Result<(Rational, Rational, Rational)> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let one = int(1);
    let form_a = &one / q(n + 1) + &one / q(n) - int(4) / q(2 * n + 1);
    let form_b = &one / (q(n) * q(2 * n + 1) * q(n + 1));
    let odd = q(2 * n + 1);
    let form_c = int(4) / (&odd * &odd * &odd - &odd);
    Ok((form_a, form_b, form_c))
}

/// `2·(t_{2n} + t_{2n+1})` from the Nilakantha terms, and the closed form
/// `−3/(n(n+1)(4n+1)(4n+3))`.
pub fn paired_term_identity(n: u64) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let nil = builtin("NILAKANTHA")?;
    let grouped = int(2) * (nil.term(2 * n) + nil.term(2 * n + 1));
    let closed = int(-3) / (q(n) * q(n + 1) * q(4 * n + 1) * q(4 * n + 3));
    Ok((grouped, closed))
}

/// Sums adjacent pairs of an alternating series.
///
/// The first `folded` terms join the offset; the remaining terms are
/// grouped as `(t_{s+f}, t_{s+f+1}), (t_{s+f+2}, t_{s+f+3}), …` where `s` is
/// the start index. `folded = 1` reproduces the paired Nilakantha form.
/// The tail after `k` pairs is the original tail after the last paired
/// index, so the new certificate is inherited from the alternating bound.
pub fn pair_transform(spec: &SeriesSpec, folded: u64) -> Result<SeriesSpec> {
    if !spec.is_alternating() || !spec.check_alternating(ALTERNATION_PROBE) {
        return Err(Error::NotAlternating(spec.name().to_string()));
    }
    let first = spec.start() + folded;
    let offset = (spec.start()..first).fold(spec.offset().clone(), |acc, n| acc + spec.term(n));
    let (a, b) = (spec.clone(), spec.clone());
    Ok(SeriesSpec::new(
        format!("paired({})", spec.name()),
        spec.constant(),
        offset,
        1,
        false,
        Arc::new(move |k| a.term(first + 2 * (k - 1)) + a.term(first + 2 * k - 1)),
        Arc::new(move |k| b.tail_bound(first + 2 * k - 1)),
    ))
}

/// Default fold count for [`pair_transform`].
pub const DEFAULT_FOLD: u64 = 1;

/// One row of the e / 2π comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionRow {
    #[serde(serialize_with = "crate::render::display_str")]
    pub k: u64,
    #[serde(serialize_with = "crate::render::rational_str")]
    pub e_term: Rational,
    #[serde(serialize_with = "crate::render::rational_str")]
    pub two_pi_term: Rational,
    /// Sum of both expansions through row `k`.
    pub running_sum: BigFixed,
    /// `running_sum − 9`.
    pub distance_to_9: BigFixed,
}

/// Row 1 holds the offsets (3 and 6), row 2 the `∓1/3` pair, and row
/// `k ≥ 3` the terms `1/(k+1)!` and `−3/((k−2)(k−1)(4k−7)(4k−5))`.
pub fn compare_expansions(rows: u64, scale: u32) -> Result<Vec<ExpansionRow>> {
    if rows == 0 {
        return Err(Error::Argument("rows must be at least 1".into()));
    }
    let e = e_regrouped();
    let paired = builtin("NILAKANTHA_PAIRED")?;
    let two_pi_term = |k: u64| match k {
        1 => int(6),
        2 => Rational::new(1.into(), 3.into()),
        _ => paired.term(k - 2),
    };
    let mut running = Rational::zero();
    let nine = BigFixed::from_int(9);
    Ok((1..=rows)
        .map(|k| {
            let (et, pt) = (e.term(k), two_pi_term(k));
            running += &et + &pt;
            let sum = BigFixed::from_rational(&running, scale);
            let distance = sum.sub(&nine, scale);
            ExpansionRow { k, e_term: et, two_pi_term: pt, running_sum: sum, distance_to_9: distance }
        })
        .collect())
}

/// Exact sum of both expansions through `rows` rows and a certified bound on
/// its distance from `e + 2π`.
pub fn expansion_limit_bound(rows: u64) -> Result<(Rational, Rational)> {
    if rows < 3 {
        return Err(Error::Argument("rows must be at least 3".into()));
    }
    let e = crate::series::partial_sum(&e_regrouped(), rows)?;
    let two_pi = crate::series::partial_sum(&builtin("NILAKANTHA_PAIRED")?, rows - 2)?;
    Ok((e.value + two_pi.value, e.bound + two_pi.bound))
}
