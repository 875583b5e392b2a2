//! Scan of integer combinations `nπ + me` for near-integers.
//!
//! From `e + 2π ≈ 9` and `4e + π ≈ 14`, that is `π ≈ 22/7` and
//! `e ≈ 19/7`, every combination `nπ + me` sits near `(22n + 19m)/7`. That
//! number is an integer exactly when `n − 2m ≡ 0 (mod 7)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bignum::rational::{pow10, Rational};
use crate::bignum::{Ball, BigFixed};
use crate::error::{Error, Result};
use crate::oracle::{e_ball, pi_ball};

/// Threshold under which every `n − 2m ≡ 0 (mod 7)` row with coefficients
/// up to 10 falls; the largest such residual is about 0.0501.
pub fn default_threshold() -> Rational {
    Rational::new(6.into(), 100.into())
}

/// `3π − 2e ≈ 4`, `3e − π ≈ 5`, `5e − 4π ≈ 1`, in order of decreasing accuracy.
pub const DISPLAYED_FAMILY: [(i64, i64); 3] = [(3, -2), (-1, 3), (-4, 5)];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(serialize_with = "crate::render::display_str")]
    pub n: i64,
    #[serde(serialize_with = "crate::render::display_str")]
    pub m: i64,
    pub value: BigFixed,
    #[serde(serialize_with = "crate::render::display_str")]
    pub nearest: BigInt,
    /// Distance from `value` to `nearest`.
    pub residual: BigFixed,
    pub seven_k: bool,
    /// `(22n + 19m)/7` when it is an integer.
    #[serde(serialize_with = "crate::render::opt_display_str")]
    pub predicted: Option<BigInt>,
    pub flagged: bool,
    /// For flagged `7k` rows: whether `nearest` equals the prediction.
    pub consistent: Option<bool>,
}

impl ScanRow {
    pub fn is_seven_k(n: i64, m: i64) -> bool {
        (n - 2 * m).rem_euclid(7) == 0
    }
}

pub fn linear_combo_scan(max_coeff: i64, digits: u32, threshold: &Rational) -> Result<Vec<ScanRow>> {
    if max_coeff < 1 {
        return Err(Error::Argument("max coefficient must be at least 1".into()));
    }
    // |nπ + me| < 6·max, so a few guard digits keep the rounding certain
    let w = digits + 10;
    let (pi, e) = (pi_ball(w), e_ball(w));
    let unit = Rational::new(1.into(), pow10(w));
    let mut rows = Vec::new();
    for n in -max_coeff..=max_coeff {
        for m in -max_coeff..=max_coeff {
            if n == 0 && m == 0 {
                continue;
            }
            let ball = pi.mul(&Ball::exact_int(n, w)).add(&e.mul(&Ball::exact_int(m, w)));
            let exact_ish = Rational::new(ball.mid().clone(), pow10(w));
            let nearest = ball
                .certified_round()
                .ok_or_else(|| Error::InsufficientPrecision { have: digits, need: digits + 1 })?;
            let residual = (&exact_ish - Rational::from_integer(nearest.clone())).abs();
            let residual_bound = &residual + &unit * Rational::from_integer(ball.rad().clone());
            let seven_k = ScanRow::is_seven_k(n, m);
            let predicted = seven_k.then(|| {
                let (q, r) = BigInt::from(22 * n + 19 * m).div_rem(&BigInt::from(7));
                debug_assert!(r.is_zero());
                q
            });
            let flagged = &residual_bound < threshold;
            let consistent = (flagged && seven_k).then(|| predicted.as_ref() == Some(&nearest));
            rows.push(ScanRow {
                n,
                m,
                value: BigFixed::from_rational(&exact_ish, digits),
                residual: BigFixed::from_rational(&residual, digits),
                nearest,
                seven_k,
                predicted,
                flagged,
                consistent,
            });
        }
    }
    Ok(rows)
}
