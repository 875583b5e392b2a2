//! Properties of exact rationals, fixed-point decimals and surds.

use eplab::bignum::rational::{int, pow10};
use eplab::bignum::{arith, pow_int, sqrt, ArithOp, BigFixed};
use eplab::{Rational, Surd};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..i64::MAX, 0u32..30).prop_map(|(n, d, k)| Rational::new(BigInt::from(n) * pow10(k), BigInt::from(d)))
}

fn fixed(max_scale: u32) -> impl Strategy<Value = BigFixed> {
    (any::<i128>(), 0..=max_scale).prop_map(|(m, s)| BigFixed::new(BigInt::from(m), s))
}

/// Mantissa distance of two values at the same scale.
fn ulps(a: &BigFixed, b: &BigFixed) -> BigInt {
    assert_eq!(a.scale(), b.scale());
    (a.mantissa() - b.mantissa()).abs()
}

const OPS: [ArithOp; 4] = [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div];

fn exact(a: &BigFixed, b: &BigFixed, op: ArithOp) -> Rational {
    let (x, y) = (a.to_rational(), b.to_rational());
    match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x / y,
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rational_arithmetic_is_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a.clone());
        }
        let sum = &a + &b;
        prop_assert!(sum.denom().is_positive());
        prop_assert!(sum.numer().gcd(sum.denom()).is_one());
    }

    #[test]
    fn decimal_string_round_trip(x in fixed(60)) {
        let back: BigFixed = x.to_string().parse().unwrap();
        prop_assert_eq!(back.mantissa(), x.mantissa());
        prop_assert_eq!(back.scale(), x.scale());
    }

    #[test]
    fn guard_digits_change_at_most_one_ulp(a in fixed(25), b in fixed(25), op in 0usize..4, s in 0u32..30) {
        let op = OPS[op];
        prop_assume!(!(op == ArithOp::Div && b.is_zero()));
        let at_s = arith(&a, &b, op, s as i64).unwrap();
        let guarded = arith(&a, &b, op, s as i64 + 10).unwrap().round_to(s);
        prop_assert!(ulps(&at_s, &guarded) <= BigInt::one());
        // and each is faithful to the exact result
        let err = (at_s.to_rational() - exact(&a, &b, op)).abs();
        prop_assert!(err < Rational::new(BigInt::one(), pow10(s)));
    }

    #[test]
    fn sqrt_residual(whole in 0u64..1_000_000, frac in 0u64..1_000_000, s in 0u32..30) {
        let x = BigFixed::new(BigInt::from(whole * 1_000_000 + frac), 6);
        let xr = x.to_rational();
        let y = sqrt(&x, s as i64).unwrap().to_rational();
        let bound = Rational::new(BigInt::from(3), pow10(s)) * std::cmp::max(int(1), xr.clone());
        prop_assert!((&y * &y - &xr).abs() <= bound);
    }

    #[test]
    fn pow_int_splits(m in -10_000_000i64..10_000_000, j in 0i64..8, k in 0i64..8, s in 0u32..20) {
        let x = BigFixed::new(BigInt::from(m), 6);
        let whole = pow_int(&x, j + k, s as i64).unwrap();
        let g = s as i64 + 10;
        let parts = arith(&pow_int(&x, j, g).unwrap(), &pow_int(&x, k, g).unwrap(), ArithOp::Mul, s as i64).unwrap();
        prop_assert!(ulps(&whole, &parts) <= BigInt::from(2));
    }

    #[test]
    fn negative_powers_are_reciprocals(m in 1i64..1_000_000, k in 1i64..6, s in 0u32..20) {
        let x = BigFixed::new(BigInt::from(m), 3);
        let neg = pow_int(&x, -k, s as i64).unwrap();
        let exact = Rational::one() / eplab::bignum::rational::rational_pow(&x.to_rational(), k as i32);
        prop_assert!((neg.to_rational() - exact).abs() < Rational::new(BigInt::one(), pow10(s)));
    }

    #[test]
    fn surds_are_canonical(a in -1000i64..1000, b in 1i64..1000, sq in 1u32..50, free in prop::sample::select(vec![2u32, 3, 5, 6, 7, 10, 11, 13, 14, 15])) {
        let s = Surd::new(int(a), int(b), BigUint::from(sq * sq * free));
        prop_assert_eq!(s.r(), &BigUint::from(free));
        prop_assert_eq!(s.b(), &int(b * sq as i64));
        let direct = Surd::new(int(a), int(b * sq as i64), BigUint::from(free));
        prop_assert_eq!(s, direct);
    }
}

#[test]
fn perfect_squares_collapse() {
    let s = Surd::new(int(1), int(2), BigUint::from(49u32));
    assert_eq!(s.as_rational(), Some(&int(15)));
}

#[test]
fn negative_scale_rejected() {
    let one = BigFixed::from_int(1);
    assert!(arith(&one, &one, ArithOp::Add, -1).is_err());
    assert!(sqrt(&one, -3).is_err());
    assert!(pow_int(&one, 2, -1).is_err());
}

#[test]
fn division_by_zero_is_an_error() {
    let one = BigFixed::from_int(1);
    assert!(arith(&one, &BigFixed::zero(4), ArithOp::Div, 10).is_err());
    assert!(pow_int(&BigFixed::zero(2), -1, 10).is_err());
}
