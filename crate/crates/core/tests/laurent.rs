mod common;

use common::*;
use pmgraph::laurent::{int, rat};
use pmgraph::{LaurentError, LaurentPoly, Monomial, PolyFraction, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn arb_poly(m: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, m), -5i64..=5, 1i64..=3), 0..=max_terms).prop_map(
        move |ts| {
            LaurentPoly::from_terms(
                m,
                ts.into_iter().map(|(e, n, d)| (Monomial::new(e), rat(n, d))),
            )
        },
    )
}

fn random_poly(rng: &mut impl Rng, m: usize, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        m,
        (0..terms).map(|_| {
            let e: Vec<i32> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            (Monomial::new(e), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        }),
    )
}

fn abs_eval(a: &LaurentPoly, t: &[f64]) -> f64 {
    a.terms()
        .map(|(m, c)| {
            let c: f64 = num_traits::ToPrimitive::to_f64(c).unwrap().abs();
            c * m.exps().iter().zip(t).map(|(&e, x)| x.powi(e)).product::<f64>()
        })
        .sum()
}

#[test]
fn addition_examples() {
    let m = 2;
    assert_eq!(&p("z1 + z2", m) + &p("-z2", m), p("z1", m));
    let q = p("3*z1^-1*z2 - 1/2", m);
    assert_eq!(&LaurentPoly::zero(m) + &q, q);
    assert_eq!(&p("z2 - z1^2", m) + &p("z1^2", m), p("z2", m));
    assert!(matches!(
        p("z1", 1).checked_add(&p("z1", 2)),
        Err(LaurentError::VariableMismatch { left: 1, right: 2 })
    ));
}

#[test]
fn multiplication_examples() {
    let m = 2;
    // (X+1)(X^2 - X - z1 - z2) with X as a third variable.
    let x = |s: &str| p(s, 3);
    let prod = &x("z3 + 1") * &x("z3^2 - z3 - z1 - z2");
    assert_eq!(prod, x("z3^3 - z1*z3 - z2*z3 - z3 - z1 - z2"));
    assert_eq!(&p("z1^-1", m) * &p("z1", m), LaurentPoly::one(m));
    assert!((&p("z1 + 7", m) * &LaurentPoly::zero(m)).is_zero());
}

#[test]
fn exact_division_examples() {
    let m = 2;
    let d = p("z2 - z1^2", m);
    let q = p("z1 + 1", m);
    assert_eq!((&d * &q).exact_divide(&d).unwrap(), q);
    assert_eq!(p("z1 + z2", m).exact_divide(&p("z1", m)).unwrap(), p("1 + z1^-1*z2", m));
    assert_eq!(p("z1 + z2", m).exact_divide(&p("z1 - z2", m)), Err(LaurentError::NotDivisible));
    assert_eq!(p("z1", m).exact_divide(&LaurentPoly::zero(m)), Err(LaurentError::DivisionByZero));
    // The quotient would vanish at z1 = z2 but the dividend does not.
    let f = PolyFraction::new(p("z1 + z2", m), p("z1 - z2", m)).unwrap();
    assert!(f.to_laurent().is_none());
}

#[test]
fn predicates() {
    let m = 2;
    assert!(p("z1 + 2*z2", m).is_nonneg());
    assert!(!p("z2 - z1^2", m).is_nonneg());
    assert!(LaurentPoly::zero(m).is_nonneg());
    assert!(p("3*z1^-1*z2", m).is_positive_monomial());
    assert!(!p("z1 + z2", m).is_positive_monomial());
    assert!(!LaurentPoly::zero(m).is_positive_monomial());
    assert!(!p("-z1", m).is_positive_monomial());
}

#[test]
fn evaluation() {
    assert_eq!(p("z1 + z2", 2).evaluate(&[1.0, 1.0]).unwrap(), 2.0);
    assert_eq!(p("z1^-2", 1).evaluate(&[2.0]).unwrap(), 0.25);
    assert_eq!(p("z2 - z1^2", 2).evaluate(&[1.0, 1.0]).unwrap(), 0.0);
    assert!(matches!(
        p("z1", 2).evaluate(&[1.0]),
        Err(LaurentError::PointLength { expected: 2, got: 1 })
    ));
    assert!(matches!(p("z1", 1).evaluate(&[0.0]), Err(LaurentError::NonPositivePoint { .. })));
    let t = [rat(1, 2), int(3)];
    assert_eq!(p("z1^-1*z2 + 1/3", 2).evaluate_exact(&t).unwrap(), rat(19, 3));
    assert_eq!(p("z1*z2 + z2^2", 2).substitute(1, &int(2)), p("2*z1 + 4", 2));
}

#[test]
fn printing() {
    let n = names(2);
    let cases = [
        ("-z1^2 + z2", "z2 - z1^2"),
        ("3/2*z1", "3/2*z1"),
        ("z1^-2", "z1^(-2)"),
        ("0", "z1 - z1"),
        ("-1/3", "-2/6"),
        ("z1*z2^-1 + 1", "1 + z1 * z2^-1"),
    ];
    for (want, input) in cases {
        let q = LaurentPoly::parse(input, &n).unwrap();
        assert_eq!(q.to_string_with(&n), want);
        assert_eq!(LaurentPoly::parse(&q.to_string_with(&n), &n).unwrap(), q);
    }
    let custom = vec!["a".to_string(), "q".to_string()];
    assert_eq!(LaurentPoly::parse("q^2*a + 1", &custom).unwrap().to_string_with(&custom), "a*q^2 + 1");
}

#[test]
fn parse_errors() {
    let n = names(2);
    for bad in ["z3", "z1 +", "1/0", "z1^", "2**z1", "(z1)", "z1^x"] {
        let e = LaurentPoly::parse(bad, &n);
        assert!(e.is_err(), "{bad} parsed");
    }
    let e = LaurentPoly::parse("z1 + w", &n).unwrap_err();
    assert_eq!(e.column, 6);
}

#[test]
fn fractions() {
    let m = 2;
    let a = PolyFraction::new(p("z1", m), p("z1 + z2", m)).unwrap();
    let b = PolyFraction::new(p("2*z1", m), p("2*z1 + 2*z2", m)).unwrap();
    assert_eq!(a, b);
    let s = &a + &PolyFraction::new(p("z2", m), p("z1 + z2", m)).unwrap();
    assert_eq!(s, PolyFraction::one(m));
    assert_eq!(PolyFraction::new(p("z1 + z2", m), p("z1", m)).unwrap().denom(), &LaurentPoly::one(m));
    assert!(PolyFraction::new(p("1", m), LaurentPoly::zero(m)).is_err());
    let r = Rational::new(3.into(), 4.into());
    assert_eq!(PolyFraction::constant(m, r).evaluate(&[1.0, 1.0]).unwrap(), 0.75);
}

#[test]
fn exact_divide_round_trips() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    let mut done = 0;
    while done < 1000 {
        let m = rng.gen_range(1..=3);
        let (tq, td) = (rng.gen_range(1..=5), rng.gen_range(1..=4));
        let q = random_poly(&mut rng, m, tq);
        let d = random_poly(&mut rng, m, td);
        if d.is_zero() {
            continue;
        }
        let prod = &q * &d;
        assert_eq!(prod.exact_divide(&d).unwrap(), q);
        if !q.is_zero() {
            assert_eq!(prod.exact_divide(&q).unwrap(), d);
        }
        done += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in arb_poly(2, 4), b in arb_poly(2, 4), c in arb_poly(2, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!((&a + &(-&a)).num_terms(), 0);
        prop_assert_eq!(&a - &a, LaurentPoly::zero(2));
    }

    #[test]
    fn evaluate_is_multiplicative(a in arb_poly(2, 4), b in arb_poly(2, 4), t1 in 0.2f64..3.0, t2 in 0.2f64..3.0) {
        let t = [t1, t2];
        let lhs = (&a * &b).evaluate(&t).unwrap();
        let rhs = a.evaluate(&t).unwrap() * b.evaluate(&t).unwrap();
        // Relative to the cancellation-free magnitude.
        let scale = abs_eval(&a, &t) * abs_eval(&b, &t);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn print_parse_round_trip(a in arb_poly(3, 5)) {
        let n = names(3);
        prop_assert_eq!(LaurentPoly::parse(&a.to_string_with(&n), &n).unwrap(), a);
    }

    #[test]
    fn divide_product(a in arb_poly(2, 4), d in arb_poly(2, 3)) {
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&a * &d).exact_divide(&d).unwrap(), a);
    }
}
