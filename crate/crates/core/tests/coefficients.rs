use iqschur::coeffs::quantum::{binomial, bracket, double_bracket, factorial};
use iqschur::{LaurentPoly, RatFunc};
use proptest::prelude::*;

/// Independent binomial: the defining product evaluated factor by factor in `Q(v)`.
fn binomial_by_quotient(s: i64, t: i64) -> LaurentPoly {
    let mut x = RatFunc::one();
    for i in 1..=t {
        let num = &LaurentPoly::v_pow(s - i + 1) - &LaurentPoly::v_pow(-(s - i + 1));
        let den = &LaurentPoly::v_pow(i) - &LaurentPoly::v_pow(-i);
        x = &x * &RatFunc::new(num, den).unwrap();
    }
    x.into_laurent().expect("binomial is a Laurent polynomial")
}

#[test]
fn double_bracket_vs_bracket() {
    for n in 1..=20 {
        assert_eq!(double_bracket(n), bracket(n).shift(n - 1));
        assert_eq!(double_bracket(n).bar(), bracket(n).shift(-(n - 1)));
    }
}

#[test]
fn binomials_bar_invariant_and_pascal() {
    for s in 0..=10 {
        for t in 0..=s {
            let b = binomial(s, t).unwrap();
            assert_eq!(b.bar(), b, "bar invariance at ({s}, {t})");
            assert_eq!(b, binomial_by_quotient(s, t), "product formula at ({s}, {t})");
            if t >= 1 {
                let rhs = &binomial(s - 1, t).unwrap().shift(t) + &binomial(s - 1, t - 1).unwrap().shift(-(s - t));
                assert_eq!(b, rhs, "Pascal at ({s}, {t})");
            }
        }
    }
}

#[test]
fn four_choose_two_by_division() {
    let expected = LaurentPoly::from_terms([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
    assert_eq!(binomial_by_quotient(4, 2), expected);
}

#[test]
fn overline_reading_matches_factorial() {
    // v * bar([[2]]) = [2]!
    assert_eq!(double_bracket(2).bar().shift(1), factorial(2).unwrap());
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
}

fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_laurent(), arb_laurent())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
    }

    #[test]
    fn ratfunc_field_axioms(a in arb_ratfunc(), b in arb_ratfunc(), c in arb_ratfunc()) {
        prop_assert_eq!(a.canonical(), a.clone());
        prop_assert_eq!(a.canonical().canonical(), a.canonical());
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(a.checked_div(&b).unwrap() * b.clone(), a.clone());
        }
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn ratfunc_eval_is_a_homomorphism(a in arb_ratfunc(), b in arb_ratfunc()) {
        use num_rational::BigRational;
        let x = BigRational::new(7.into(), 3.into());
        if let (Some(ea), Some(eb)) = (a.eval(&x), b.eval(&x)) {
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&x).unwrap(), ea + eb);
        }
    }
}
