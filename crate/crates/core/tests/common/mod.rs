//! Second, independent reference values for π and e.
//!
//! These use a different arctangent formula and their own integer
//! arithmetic so that they share no code with the library oracle.

#![allow(dead_code)]

use eplab::bignum::rational::pow10;
use eplab::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// `arctan(1/x)·10^w` by truncated fixed-point Taylor terms. Each term is
/// off by less than one unit, so the result is within `terms + 1` units.
fn arctan_inv_fixed(x: u32, w: u32) -> (BigInt, u64) {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = pow10(w) / &x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k + 1)
}

/// An interval of width `2·10^-digits` around π from
/// `π/4 = 12·arctan(1/18) + 8·arctan(1/57) − 5·arctan(1/239)`.
pub fn pi_interval(digits: u32) -> (Rational, Rational) {
    let w = digits + 12;
    let parts = [(12i64, 18u32), (8, 57), (-5, 239)];
    let mut mid = BigInt::zero();
    let mut slack: u64 = 0;
    for (c, x) in parts {
        let (v, err) = arctan_inv_fixed(x, w);
        mid += v * c;
        slack += err * c.unsigned_abs();
    }
    mid *= 4;
    let slack = BigInt::from(4 * slack);
    assert!(slack < pow10(12), "guard digits exhausted");
    let one = Rational::new(BigInt::from(1), pow10(digits));
    let centre = Rational::new(mid, pow10(w));
    (&centre - &one, centre + one)
}

/// An interval of width `2·10^-digits` around e from `Σ 1/k!` in integers.
pub fn e_interval(digits: u32) -> (Rational, Rational) {
    let w = digits + 12;
    let mut term = pow10(w);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term /= BigInt::from(k);
    }
    // each truncation loses under one unit and the omitted tail is below one
    assert!(BigInt::from(k + 2) < pow10(12));
    let one = Rational::new(BigInt::from(1), pow10(digits));
    let centre = Rational::new(sum, pow10(w));
    (&centre - &one, centre + one)
}

pub fn contains(interval: &(Rational, Rational), x: &Rational) -> bool {
    &interval.0 <= x && x <= &interval.1
}

/// Whether `[lo, hi]` meets `interval`.
pub fn meets(interval: &(Rational, Rational), lo: &Rational, hi: &Rational) -> bool {
    lo <= &interval.1 && &interval.0 <= hi
}

/// Closed rational interval, rounded outward to a fixed decimal scale after
/// every operation.
#[derive(Clone, Debug)]
pub struct Iv {
    pub lo: Rational,
    pub hi: Rational,
}

pub struct IvEval {
    scale: u32,
    pi: (Rational, Rational),
    e: (Rational, Rational),
}

fn floor_at(q: &Rational, scale: u32) -> Rational {
    let m = (q * Rational::from_integer(pow10(scale))).floor().to_integer();
    Rational::new(m, pow10(scale))
}

fn ceil_at(q: &Rational, scale: u32) -> Rational {
    let m = (q * Rational::from_integer(pow10(scale))).ceil().to_integer();
    Rational::new(m, pow10(scale))
}

impl IvEval {
    pub fn new(scale: u32) -> IvEval {
        IvEval { scale, pi: pi_interval(scale + 5), e: e_interval(scale + 5) }
    }

    fn out(&self, lo: Rational, hi: Rational) -> Iv {
        Iv { lo: floor_at(&lo, self.scale), hi: ceil_at(&hi, self.scale) }
    }

    /// `None` where the interval method cannot decide (division by an
    /// interval containing zero, a root of a possibly negative number).
    pub fn eval(&self, expr: &eplab::coincidence::Expr) -> Option<Iv> {
        use eplab::coincidence::Expr;
        Some(match expr {
            Expr::Pi => Iv { lo: self.pi.0.clone(), hi: self.pi.1.clone() },
            Expr::E => Iv { lo: self.e.0.clone(), hi: self.e.1.clone() },
            Expr::Int(n) => Iv { lo: Rational::from_integer(n.clone()), hi: Rational::from_integer(n.clone()) },
            Expr::Rat(q) => Iv { lo: q.clone(), hi: q.clone() },
            Expr::Add(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.out(a.lo + b.lo, a.hi + b.hi)
            }
            Expr::Sub(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.out(a.lo - b.hi, a.hi - b.lo)
            }
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?),
            Expr::Div(a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                let inv = self.recip(&b)?;
                self.mul(&a, &inv)
            }
            Expr::PowInt(a, k) => {
                let a = self.eval(a)?;
                let base = if *k < 0 { self.recip(&a)? } else { a };
                let mut acc = Iv { lo: Rational::from_integer(1.into()), hi: Rational::from_integer(1.into()) };
                for _ in 0..k.unsigned_abs() {
                    acc = self.mul(&acc, &base);
                }
                acc
            }
            Expr::Sqrt(a) => self.root(&self.eval(a)?, 2)?,
            Expr::Root(a, k) => self.root(&self.eval(a)?, *k)?,
            Expr::Exp(a) => {
                let a = self.eval(a)?;
                Iv { lo: self.exp_bound(&a.lo, false), hi: self.exp_bound(&a.hi, true) }
            }
        })
    }

    fn mul(&self, a: &Iv, b: &Iv) -> Iv {
        let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        self.out(lo, hi)
    }

    fn recip(&self, a: &Iv) -> Option<Iv> {
        if a.lo <= Rational::zero() && a.hi >= Rational::zero() {
            return None;
        }
        Some(self.out(a.hi.recip(), a.lo.recip()))
    }

    fn root(&self, a: &Iv, k: u32) -> Option<Iv> {
        if a.lo < Rational::zero() {
            return None;
        }
        let s = self.scale;
        let unit = Rational::new(BigInt::from(1), pow10(s));
        let scaled = |q: &Rational, up: bool| {
            let m = q * Rational::from_integer(pow10(s * k));
            if up { m.ceil().to_integer() } else { m.floor().to_integer() }
        };
        let lo = Rational::new(scaled(&a.lo, false).nth_root(k), pow10(s));
        let hi = Rational::new(scaled(&a.hi, true).nth_root(k), pow10(s)) + unit;
        Some(Iv { lo, hi })
    }

    /// A lower (`upper == false`) or upper bound on `exp(x)` from the Taylor
    /// series in directed-rounded fixed point.
    fn exp_bound(&self, x: &Rational, upper: bool) -> Rational {
        if x < &Rational::zero() {
            let r = self.exp_bound(&-x, !upper);
            return if upper { ceil_at(&r.recip(), self.scale) } else { floor_at(&r.recip(), self.scale) };
        }
        let w = self.scale + 10;
        let unit = pow10(w);
        let (num, den) = (x.numer().clone(), x.denom().clone());
        let step = |t: &BigInt, k: u64| {
            let q = Rational::new(t * &num, &den * BigInt::from(k));
            if upper { q.ceil().to_integer() } else { q.floor().to_integer() }
        };
        let mut term = unit.clone();
        let mut sum = BigInt::zero();
        let mut k: u64 = 0;
        loop {
            sum += &term;
            k += 1;
            term = step(&term, k);
            // past the peak, once a term is negligible the tail is at most twice it
            if Rational::from_integer(BigInt::from(k)) > x * Rational::from_integer(2.into()) && term <= BigInt::from(1) {
                break;
            }
        }
        if upper {
            sum += BigInt::from(2) * (term + 1);
        }
        Rational::new(sum, unit)
    }
}
