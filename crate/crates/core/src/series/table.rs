use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{partial_sum, SeriesSpec};
use crate::bignum::rational::{neg_log10_floor, pow10, Rational};
use crate::bignum::{rational_to_fixed_ceil, BigFixed};
use crate::error::{Error, Result};
use crate::oracle::OracleValue;

/// One checkpoint of a convergence table. Columns render as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceRow {
    #[serde(serialize_with = "crate::render::display_str")]
    pub terms: u64,
    pub value: BigFixed,
    /// `|partial − reference|`.
    pub error: BigFixed,
    /// Certified tail bound (rounded up).
    pub bound: BigFixed,
    /// `floor(−log10(error / |reference|))`.
    #[serde(serialize_with = "crate::render::display_str")]
    pub digits_correct: u32,
}

/// `floor(-log10(|error| / |reference|))`, clamped at zero.
pub fn digits_correct(error: &Rational, reference: &Rational) -> u32 {
    if error.is_zero() {
        return u32::MAX;
    }
    neg_log10_floor(&(error.abs() / reference.abs())).max(0) as u32
}

/// Partial sums at each checkpoint (counted in terms), compared against the
/// reference constant.
///
/// Fails with [`Error::InsufficientPrecision`] when an error is too small for
/// the reference to resolve, and with [`Error::BoundViolation`] if the
/// measured error provably exceeds the certified bound.
pub fn convergence_table(spec: &SeriesSpec, checkpoints: &[u64], reference: &OracleValue) -> Result<Vec<ConvergenceRow>> {
    let d = reference.certified_digits;
    let reference_q = reference.value.to_rational();
    let ulp = Rational::new(BigInt::from(1), pow10(d));
    let resolvable = &ulp * Rational::from_integer(100.into());
    checkpoints
        .iter()
        .map(|&terms| {
            if terms == 0 {
                return Err(Error::Argument("checkpoints count terms and must be positive".into()));
            }
            let sum = partial_sum(spec, spec.last_index(terms))?;
            let measured = (&sum.value - &reference_q).abs();
            if measured < resolvable {
                let order = if measured.is_zero() { d } else { neg_log10_floor(&measured).max(0) as u32 };
                return Err(Error::InsufficientPrecision { have: d, need: order });
            }
            // The true error is at least measured − ulp.
            if &measured - &ulp > sum.bound {
                return Err(Error::BoundViolation { series: spec.name().to_string(), terms });
            }
            Ok(ConvergenceRow {
                terms,
                value: BigFixed::from_rational(&sum.value, d),
                error: BigFixed::from_rational(&measured, d),
                bound: rational_to_fixed_ceil(&sum.bound, d),
                digits_correct: digits_correct(&measured, &reference_q),
            })
        })
        .collect()
}
