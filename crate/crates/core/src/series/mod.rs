//! Series as exact rational term streams with certified tail bounds.
//!
//! A [`SeriesSpec`] is `offset + Σ_{n ≥ start} term(n)`, together with a
//! function `tail_bound(N)` bounding `|Σ_{n > N} term(n)|`. Partial sums are
//! exact rationals up to [`SumConfig::exact_threshold`] terms; longer runs
//! accumulate at fixed point and add the rounding to the certificate.

mod builtin;
mod table;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bignum::rational::{pow10, round_rational, Rational};
use crate::error::{Error, Result};
use crate::oracle::Constant;

pub use builtin::{builtin, e_regrouped, BuiltinSeries};
pub use table::{convergence_table, digits_correct, ConvergenceRow};

pub type TermFn = Arc<dyn Fn(u64) -> Rational + Send + Sync>;

/// Default cap on the number of terms any request may need.
pub const DEFAULT_MAX_TERMS: u64 = 100_000_000;

#[derive(Clone)]
pub struct SeriesSpec {
    name: String,
    constant: Constant,
    offset: Rational,
    start: u64,
    alternating: bool,
    term: TermFn,
    tail: TermFn,
}

impl fmt::Debug for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeriesSpec")
            .field("name", &self.name)
            .field("constant", &self.constant)
            .field("offset", &self.offset)
            .field("start", &self.start)
            .field("alternating", &self.alternating)
            .finish_non_exhaustive()
    }
}

impl SeriesSpec {
    pub fn new(
        name: impl Into<String>,
        constant: Constant,
        offset: Rational,
        start: u64,
        alternating: bool,
        term: TermFn,
        tail: TermFn,
    ) -> SeriesSpec {
        SeriesSpec { name: name.into(), constant, offset, start, alternating, term, tail }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn constant(&self) -> Constant {
        self.constant
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn term(&self, n: u64) -> Rational {
        (self.term)(n)
    }

    /// Bound on `|Σ_{n > last} term(n)|`.
    pub fn tail_bound(&self, last: u64) -> Rational {
        (self.tail)(last)
    }

    /// Index of the last term when `count` terms are summed.
    pub fn last_index(&self, count: u64) -> u64 {
        self.start + count - 1
    }

    /// The same series multiplied by `factor`, now describing `constant`.
    pub fn scaled(&self, factor: &Rational, constant: Constant) -> SeriesSpec {
        let (t, b) = (self.term.clone(), self.tail.clone());
        let (f1, f2) = (factor.clone(), factor.abs());
        SeriesSpec {
            name: format!("{}*{}", factor, self.name),
            constant,
            offset: &self.offset * factor,
            start: self.start,
            alternating: self.alternating,
            term: Arc::new(move |n| t(n) * &f1),
            tail: Arc::new(move |n| b(n) * &f2),
        }
    }

    /// Checks sign alternation and non-increasing magnitude over the first
    /// `count` terms.
    pub fn check_alternating(&self, count: u64) -> bool {
        let mut prev: Option<Rational> = None;
        for n in self.start..self.start + count {
            let t = self.term(n);
            if t.is_zero() {
                return false;
            }
            if let Some(p) = &prev {
                if p.is_positive() == t.is_positive() || t.abs() > p.abs() {
                    return false;
                }
            }
            prev = Some(t);
        }
        true
    }

    /// Running exact partial sums from the first term onward.
    pub fn running(&self) -> Running<'_> {
        Running { spec: self, next: self.start, sum: self.offset.clone() }
    }
}

/// An evaluated prefix of a series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumResult {
    /// Offset plus the summed terms.
    pub value: Rational,
    pub terms_used: u64,
    /// Certified `|value − limit|`.
    pub bound: Rational,
}

/// Where exact summation stops and fixed-point accumulation begins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumConfig {
    pub exact_threshold: u64,
    /// Decimal scale of the fixed-point accumulator.
    pub fixed_scale: u32,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig { exact_threshold: 10_000, fixed_scale: 40 }
    }
}

pub struct Running<'a> {
    spec: &'a SeriesSpec,
    next: u64,
    sum: Rational,
}

impl Iterator for Running<'_> {
    type Item = SumResult;

    fn next(&mut self) -> Option<SumResult> {
        let n = self.next;
        self.sum += self.spec.term(n);
        self.next += 1;
        Some(SumResult {
            value: self.sum.clone(),
            terms_used: n - self.spec.start + 1,
            bound: self.spec.tail_bound(n),
        })
    }
}

/// Sum of `offset` and `term(start..=last)` with its certificate.
pub fn partial_sum(spec: &SeriesSpec, last: u64) -> Result<SumResult> {
    partial_sum_with(spec, last, &SumConfig::default())
}

pub fn partial_sum_with(spec: &SeriesSpec, last: u64, config: &SumConfig) -> Result<SumResult> {
    check_last(spec, last)?;
    let count = last - spec.start + 1;
    if count <= config.exact_threshold {
        let value = sum_exact(spec, spec.start, last) + &spec.offset;
        return Ok(SumResult { value, terms_used: count, bound: spec.tail_bound(last) });
    }
    let (value, rounding) = sum_fixed(spec, spec.start, last, config.fixed_scale);
    Ok(SumResult {
        value: value + &spec.offset,
        terms_used: count,
        bound: spec.tail_bound(last) + rounding,
    })
}

/// [`partial_sum_with`] split over `threads` disjoint index ranges.
///
/// Chunk results are merged in index order; exact rational sums and sums of
/// rounded mantissas are both associative, so the result is bit-identical
/// to the sequential one.
pub fn partial_sum_parallel(spec: &SeriesSpec, last: u64, threads: usize, config: &SumConfig) -> Result<SumResult> {
    check_last(spec, last)?;
    let count = last - spec.start + 1;
    let threads = (threads.max(1) as u64).min(count);
    let chunk = count.div_ceil(threads);
    let ranges: Vec<(u64, u64)> = (0..threads)
        .map(|i| (spec.start + i * chunk, (spec.start + (i + 1) * chunk - 1).min(last)))
        .filter(|(a, b)| a <= b)
        .collect();
    let exact = count <= config.exact_threshold;
    let parts: Vec<(Rational, Rational)> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .iter()
            .map(|&(a, b)| {
                s.spawn(move || {
                    if exact {
                        (sum_exact(spec, a, b), Rational::zero())
                    } else {
                        sum_fixed(spec, a, b, config.fixed_scale)
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("summation thread panicked")).collect()
    });
    let mut value = spec.offset.clone();
    let mut rounding = Rational::zero();
    for (v, r) in parts {
        value += v;
        rounding += r;
    }
    Ok(SumResult { value, terms_used: count, bound: spec.tail_bound(last) + rounding })
}

fn check_last(spec: &SeriesSpec, last: u64) -> Result<()> {
    if last < spec.start {
        return Err(Error::Argument(format!(
            "series `{}` starts at index {}, cannot stop at {last}",
            spec.name, spec.start
        )));
    }
    Ok(())
}

/// Exact sum by pairwise splitting, which keeps the operands of each
/// addition of similar size instead of growing one accumulator.
fn sum_exact(spec: &SeriesSpec, first: u64, last: u64) -> Rational {
    if last - first < 16 {
        return (first..=last).fold(Rational::zero(), |acc, n| acc + spec.term(n));
    }
    let mid = first + (last - first) / 2;
    sum_exact(spec, first, mid) + sum_exact(spec, mid + 1, last)
}

/// Sum of terms each rounded to `scale`; returns the sum and the total
/// rounding bound (half a unit per term).
fn sum_fixed(spec: &SeriesSpec, first: u64, last: u64, scale: u32) -> (Rational, Rational) {
    let unit = pow10(scale);
    let mantissa = (first..=last).fold(BigInt::zero(), |acc, n| {
        let t = spec.term(n);
        acc + round_rational(&(t * Rational::from_integer(unit.clone())))
    });
    let count = last - first + 1;
    let rounding = Rational::new(BigInt::from(count), unit.clone() * 2);
    (Rational::new(mantissa, unit), rounding)
}

/// Smallest last index `N` with `tail_bound(N) < 10^-digits`.
///
/// Searches by doubling then bisection, so closed-form bounds are only
/// evaluated near the answer (which matters for factorial tails).
pub fn terms_needed(spec: &SeriesSpec, digits: u32, max_terms: u64) -> Result<u64> {
    if digits == 0 {
        return Err(Error::Argument("digits must be at least 1".into()));
    }
    let target = Rational::new(BigInt::from(1), pow10(digits));
    let ok = |n: u64| spec.tail_bound(n) < target;
    let cap = spec.start + max_terms.max(1) - 1;
    let infeasible = || Error::Infeasible { series: spec.name.clone(), digits, cap: max_terms };
    let mut lo = spec.start;
    if ok(lo) {
        return Ok(lo);
    }
    let mut hi = spec.start + 1;
    loop {
        if hi >= cap {
            if !ok(cap) {
                return Err(infeasible());
            }
            hi = cap;
            break;
        }
        if ok(hi) {
            break;
        }
        lo = hi;
        hi = spec.start + 2 * (hi - spec.start);
    }
    // ok(hi), !ok(lo)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::ratio;

    #[test]
    fn gregory_leibniz_prefix() {
        let gl = builtin("GREGORY_LEIBNIZ").unwrap();
        let s = partial_sum(&gl, 4).unwrap();
        assert_eq!(s.value, ratio(304, 105));
        assert_eq!(s.terms_used, 4);
        assert_eq!(s.bound, ratio(4, 9));
    }

    #[test]
    fn regrouped_e_prefix() {
        let s = partial_sum(&e_regrouped(), 5).unwrap();
        assert_eq!(s.value, ratio(1957, 720));
    }

    #[test]
    fn terms_needed_examples() {
        let gl = builtin("GREGORY_LEIBNIZ").unwrap();
        // 4/(2N+1) < 1/100  <=>  N ≥ 200
        assert_eq!(terms_needed(&gl, 2, DEFAULT_MAX_TERMS).unwrap(), 200);
        let nil = builtin("NILAKANTHA").unwrap();
        assert!(terms_needed(&nil, 6, DEFAULT_MAX_TERMS).unwrap() <= 100);
        let e = builtin("E_FACTORIAL").unwrap();
        let n = terms_needed(&e, 10, DEFAULT_MAX_TERMS).unwrap();
        assert!(n <= 14, "{n}");
        assert_eq!(n, 13);
        assert!(matches!(terms_needed(&gl, 12, DEFAULT_MAX_TERMS), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn fixed_mode_certificate_covers_exact_sum() {
        let gl = builtin("GREGORY_LEIBNIZ").unwrap();
        let cfg = SumConfig { exact_threshold: 10, fixed_scale: 20 };
        let fixed = partial_sum_with(&gl, 500, &cfg).unwrap();
        let exact = partial_sum(&gl, 500).unwrap();
        let rounding = &fixed.bound - &exact.bound;
        assert!((&fixed.value - &exact.value).abs() <= rounding);
    }

    #[test]
    fn parallel_matches_sequential() {
        let nil = builtin("NILAKANTHA").unwrap();
        let seq = partial_sum(&nil, 300).unwrap();
        for threads in [1, 3, 8] {
            assert_eq!(partial_sum_parallel(&nil, 300, threads, &SumConfig::default()).unwrap(), seq);
        }
        let cfg = SumConfig { exact_threshold: 10, fixed_scale: 30 };
        let seq = partial_sum_with(&nil, 5000, &cfg).unwrap();
        assert_eq!(partial_sum_parallel(&nil, 5000, 4, &cfg).unwrap(), seq);
    }

    #[test]
    fn rejects_empty_prefix() {
        let nil = builtin("NILAKANTHA").unwrap();
        assert!(partial_sum(&nil, 0).is_err());
    }
}
