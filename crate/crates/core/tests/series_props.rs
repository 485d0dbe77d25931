use hurwitz_core::properties::agree;
use hurwitz_core::scalar::rational;
use hurwitz_core::{QSeries, Rational, EXACT};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rational(n, d))
}

prop_compose! {
    fn laurent()(start in -3i64..=2, coeffs in prop::collection::vec(coeff(), 0..7), extra in 1i64..=4)
        -> QSeries {
        let trunc = start + coeffs.len() as i64 + extra;
        QSeries::new(start, coeffs, trunc)
    }
}

prop_compose! {
    fn positive_valuation()(coeffs in prop::collection::vec(coeff(), 1..7)) -> QSeries {
        let trunc = 1 + coeffs.len() as i64;
        QSeries::new(1, coeffs, trunc)
    }
}

prop_compose! {
    fn unit_linear()(lead in 1i64..=4, sign in prop::bool::ANY, rest in prop::collection::vec(coeff(), 0..6))
        -> QSeries {
        let mut coeffs = vec![rational(if sign { lead } else { -lead }, 1)];
        coeffs.extend(rest);
        let trunc = 1 + coeffs.len() as i64;
        QSeries::new(1, coeffs, trunc)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_commutes(a in laurent(), b in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes_and_associates(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn distributes(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn zero_and_one_are_identities(a in laurent()) {
        prop_assert_eq!(&a + &QSeries::zero(EXACT), a.clone());
        prop_assert_eq!(&a * &QSeries::one(EXACT), a);
    }

    #[test]
    fn additive_inverse(a in laurent()) {
        let z = &a - &a;
        prop_assert!(z.is_zero());
        prop_assert_eq!(z.trunc_order(), a.trunc_order());
    }

    #[test]
    fn reversion_round_trips(a in unit_linear()) {
        let b = a.reversion().unwrap();
        prop_assert!(agree(&a.compose(&b).unwrap(), &QSeries::variable(EXACT)));
        prop_assert!(agree(&b.compose(&a).unwrap(), &QSeries::variable(EXACT)));
        prop_assert!(agree(&b.reversion().unwrap(), &a));
    }

    #[test]
    fn exp_and_log1p_invert(a in positive_valuation()) {
        let one = QSeries::one(EXACT);
        prop_assert!(agree(&a.log1p().unwrap().exp().unwrap(), &(&one + &a)));
        prop_assert!(agree(&(&a.exp().unwrap() - &one).log1p().unwrap(), &a));
    }

    #[test]
    fn derivatives_have_no_residue(a in laurent()) {
        prop_assume!(a.trunc_order() > 0);
        prop_assert_eq!(a.derivative().residue(), Ok(rational(0, 1)));
    }

    #[test]
    fn unit_inverse(a in laurent()) {
        prop_assume!(!a.is_zero());
        let inv = a.invert_unit().unwrap_or_else(|_| QSeries::zero(EXACT));
        prop_assume!(!inv.is_zero());
        prop_assert!(agree(&(&a * &inv), &QSeries::one(EXACT)));
    }

    #[test]
    fn operations_are_deterministic(a in unit_linear()) {
        prop_assert_eq!(a.reversion(), a.reversion());
        prop_assert_eq!(a.exp(), a.exp());
        prop_assert_eq!(a.log1p(), a.log1p());
    }

    #[test]
    fn never_reports_undetermined_coefficients(a in laurent(), b in laurent()) {
        let p = &a * &b;
        prop_assert!(p.coeff(p.trunc_order()).is_err());
        prop_assert!(p.trunc_order() <= a.trunc_order() + b.trunc_order());
    }
}

#[test]
fn float_series_track_exact_ones() {
    let exact = QSeries::variable(10).exp().unwrap();
    let approx = hurwitz_core::FSeries::variable(10).exp().unwrap();
    for n in 0..10 {
        let q = exact.coeff(n).unwrap();
        let f = num_traits::ToPrimitive::to_f64(&q).unwrap();
        assert!((approx.coeff(n).unwrap() - f).abs() < 1e-12);
    }
}
