//! Evaluating registry relations and reporting how closely they hold.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::eval::{eval_expr, Evaluation};
use super::registry::{registry, Relation, RelationKind};
use crate::bignum::rational::{neg_log10_floor, round_rational, Rational};
use crate::bignum::{rational_to_fixed_ceil, BigFixed};
use crate::error::{Error, Result};

/// Fewest digits a verification may run at.
pub const MIN_DIGITS: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    #[serde(rename = "id")]
    pub relation_id: String,
    #[serde(rename = "paper_eq")]
    pub formula: String,
    /// Rounded to `precision_used` decimals, as are the other values.
    #[serde(rename = "lhs")]
    pub lhs_value: BigFixed,
    #[serde(rename = "rhs")]
    pub rhs_value: BigFixed,
    /// Signed `lhs − rhs`.
    pub abs_residual: BigFixed,
    /// `(lhs − rhs)/|rhs|`.
    pub rel_residual: BigFixed,
    #[serde(serialize_with = "crate::render::display_str")]
    pub digits_of_agreement: u32,
    #[serde(serialize_with = "crate::render::display_str")]
    pub precision_used: u32,
    pub certified: bool,
    /// Bound on the combined evaluation error of `lhs − rhs`, before the
    /// final rounding to `precision_used` decimals.
    #[serde(skip)]
    pub error_bound: BigFixed,
}

/// `floor(−log10(|a − b|/|b|))`, clamped to `0..=cap`; equal inputs give `cap`.
pub fn digits_of_agreement(a: &BigFixed, b: &BigFixed, cap: u32) -> Result<u32> {
    digits_of_agreement_rational(&a.to_rational(), &b.to_rational(), cap)
}

fn digits_of_agreement_rational(a: &Rational, b: &Rational, cap: u32) -> Result<u32> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let diff = (a - b).abs();
    if diff.is_zero() {
        return Ok(cap);
    }
    let d = neg_log10_floor(&(diff / b.abs()));
    Ok(d.clamp(0, cap as i64) as u32)
}

pub fn verify(relation: &Relation, digits: u32) -> Result<VerificationReport> {
    if digits < MIN_DIGITS {
        return Err(Error::Argument(format!("verification needs at least {MIN_DIGITS} digits")));
    }
    let lhs = eval_expr(&relation.lhs, digits)?;
    let rhs = match relation.kind {
        RelationKind::NearEqual => eval_expr(&relation.rhs, digits)?,
        RelationKind::NearInteger => nearest_integer(&lhs, digits)?,
    };
    let (l, r) = (lhs.value.to_rational(), rhs.value.to_rational());
    if r.is_zero() {
        return Err(Error::Domain(format!("{}: right-hand side is zero", relation.id)));
    }
    let residual = &l - &r;
    let error = lhs.error_bound.to_rational() + rhs.error_bound.to_rational();
    let certified = Rational::from_integer(10.into()) * &error < residual.abs();
    let at = |q: &Rational| BigFixed::from_rational(q, digits);
    Ok(VerificationReport {
        relation_id: relation.id.to_string(),
        formula: relation.formula.to_string(),
        lhs_value: at(&l),
        rhs_value: at(&r),
        abs_residual: at(&residual),
        rel_residual: at(&(&residual / r.abs())),
        digits_of_agreement: digits_of_agreement_rational(&l, &r, digits)?,
        precision_used: digits,
        certified,
        error_bound: rational_to_fixed_ceil(&error, digits + 2),
    })
}

/// The integer closest to every point of the evaluated interval.
fn nearest_integer(v: &Evaluation, digits: u32) -> Result<Evaluation> {
    let n = round_rational(&v.value.to_rational());
    let half = Rational::new(1.into(), 2.into());
    let gap = (v.value.to_rational() - Rational::from_integer(n.clone())).abs();
    if gap + v.error_bound.to_rational() >= half {
        return Err(Error::InsufficientPrecision { have: digits, need: digits + 1 });
    }
    Ok(Evaluation { value: BigFixed::new(n, 0), error_bound: BigFixed::zero(0) })
}

/// Every relation at `digits`, in registry order. A failure in one relation
/// does not stop the others.
pub fn verify_all(digits: u32) -> Vec<Result<VerificationReport>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = registry().iter().map(|r| s.spawn(move || verify(r, digits))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    })
}
