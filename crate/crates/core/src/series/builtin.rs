//! The built-in series and their tail bounds.
//!
//! Tail bounds, with `N` the last summed index:
//!
//! * alternating series with decreasing terms: `|term(N+1)|`;
//! * `Σ 1/n!`: `Σ_{n>N} 1/n! ≤ (1/(N+1)!)·Σ_k (N+2)^-k ≤ 2/(N+1)!`;
//! * `960·Σ 1/(2n+1)^6`: the terms decrease, so each is at most the integral
//!   over the unit interval before it, and the tail is at most
//!   `960·∫_N^∞ (2x+1)^-6 dx = 96/(2N+1)^5`;
//! * `9450·Σ 1/n^8`: likewise at most `9450·∫_N^∞ x^-8 dx = 1350/N^7`;
//! * the paired form `19/3 − Σ 3/(n(n+1)(4n+1)(4n+3))`: every term is below
//!   `3/(16n^4)`, and `Σ_{n>N} n^-4 ≤ 1/(3N^3)`, giving `1/(16N^3)`.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Signed;

use super::SeriesSpec;
use crate::bignum::rational::{factorial, int, ratio, Rational};
use crate::error::{Error, Result};
use crate::oracle::{e_tail_bound, Constant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinSeries {
    EFactorial,
    GregoryLeibniz,
    Nilakantha,
    NilakanthaPaired,
    Lambda6,
    Zeta8,
}

impl BuiltinSeries {
    pub const ALL: [BuiltinSeries; 6] = [
        BuiltinSeries::EFactorial,
        BuiltinSeries::GregoryLeibniz,
        BuiltinSeries::Nilakantha,
        BuiltinSeries::NilakanthaPaired,
        BuiltinSeries::Lambda6,
        BuiltinSeries::Zeta8,
    ];

    /// Canonical upper-case identifier.
    pub fn id(self) -> &'static str {
        match self {
            BuiltinSeries::EFactorial => "E_FACTORIAL",
            BuiltinSeries::GregoryLeibniz => "GREGORY_LEIBNIZ",
            BuiltinSeries::Nilakantha => "NILAKANTHA",
            BuiltinSeries::NilakanthaPaired => "NILAKANTHA_PAIRED",
            BuiltinSeries::Lambda6 => "LAMBDA6",
            BuiltinSeries::Zeta8 => "ZETA8",
        }
    }

    /// Command-line spelling, e.g. `nilakantha-paired`.
    pub fn cli_name(self) -> String {
        self.id().to_ascii_lowercase().replace('_', "-")
    }

    pub fn spec(self) -> SeriesSpec {
        match self {
            BuiltinSeries::EFactorial => SeriesSpec::new(
                self.id(),
                Constant::E,
                int(0),
                0,
                false,
                Arc::new(|n| Rational::new(1.into(), factorial(n))),
                Arc::new(e_tail_bound),
            ),
            BuiltinSeries::GregoryLeibniz => {
                let term = |n: u64| {
                    let mag = Rational::new(4.into(), BigInt::from(2 * n - 1));
                    if n % 2 == 1 {
                        mag
                    } else {
                        -mag
                    }
                };
                SeriesSpec::new(
                    self.id(),
                    Constant::Pi,
                    int(0),
                    1,
                    true,
                    Arc::new(term),
                    Arc::new(move |n| term(n + 1).abs()),
                )
            }
            BuiltinSeries::Nilakantha => SeriesSpec::new(
                self.id(),
                Constant::Pi,
                int(3),
                1,
                true,
                Arc::new(nilakantha_term),
                Arc::new(|n| nilakantha_term(n + 1).abs()),
            ),
            BuiltinSeries::NilakanthaPaired => SeriesSpec::new(
                self.id(),
                Constant::TwoPi,
                ratio(19, 3),
                1,
                false,
                Arc::new(paired_term),
                Arc::new(|n| Rational::new(1.into(), BigInt::from(16) * BigInt::from(n).pow(3))),
            ),
            BuiltinSeries::Lambda6 => SeriesSpec::new(
                self.id(),
                Constant::Pi6,
                int(0),
                0,
                false,
                Arc::new(|n| Rational::new(960.into(), BigInt::from(2 * n + 1).pow(6))),
                Arc::new(|n| Rational::new(96.into(), BigInt::from(2 * n + 1).pow(5))),
            ),
            BuiltinSeries::Zeta8 => SeriesSpec::new(
                self.id(),
                Constant::Pi8,
                int(0),
                1,
                false,
                Arc::new(|n| Rational::new(9450.into(), BigInt::from(n).pow(8))),
                Arc::new(|n| Rational::new(1350.into(), BigInt::from(n).pow(7))),
            ),
        }
    }
}

impl FromStr for BuiltinSeries {
    type Err = Error;

    /// Accepts `NILAKANTHA_PAIRED`, `nilakantha-paired` and similar spellings.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        BuiltinSeries::ALL
            .into_iter()
            .find(|b| b.id() == norm)
            .ok_or_else(|| Error::UnknownSeries(s.to_string()))
    }
}

pub fn builtin(name: &str) -> Result<SeriesSpec> {
    Ok(name.parse::<BuiltinSeries>()?.spec())
}

/// `(-1)^(n+1) / (n(2n+1)(n+1))`
pub(crate) fn nilakantha_term(n: u64) -> Rational {
    let n = BigInt::from(n);
    let den = &n * (&n * 2 + 1) * (&n + 1);
    let mag = Rational::new(1.into(), den);
    if (&n % 2u32) == BigInt::from(1) {
        mag
    } else {
        -mag
    }
}

/// `-3 / (n(n+1)(4n+1)(4n+3))`
pub(crate) fn paired_term(n: u64) -> Rational {
    let n = BigInt::from(n);
    let den = &n * (&n + 1) * (&n * 4 + 1) * (&n * 4 + 3);
    Rational::new((-3).into(), den)
}

/// The factorial series for e regrouped for side-by-side display:
/// `3 − 1/3 + 1/24 + 1/120 + …`, i.e. `1 + 1 + 1/2 + 1/6` folded into
/// `3 − 1/3`, then `1/(k+1)!` for `k ≥ 3`. The tail after index `N ≥ 2` is the
/// factorial tail after `(N+1)!`.
pub fn e_regrouped() -> SeriesSpec {
    SeriesSpec::new(
        "E_FACTORIAL_REGROUPED",
        Constant::E,
        int(0),
        1,
        false,
        Arc::new(|k| match k {
            1 => int(3),
            2 => ratio(-1, 3),
            _ => Rational::new(1.into(), factorial(k + 1)),
        }),
        Arc::new(|k| match k {
            1 => ratio(1, 2),
            _ => e_tail_bound(k + 1),
        }),
    )
}
