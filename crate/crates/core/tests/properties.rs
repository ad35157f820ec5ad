use proptest::prelude::*;
use qcert::psers::{inf_poch, inf_poch_recip, QSeries};
use qcert::qcore::{qbinom, qpoch, QRational};

fn rational() -> impl Strategy<Value = QRational> {
    (-60i64..=60, 1i64..=60).prop_map(|(p, r)| QRational::new(p, r).unwrap())
}

fn base() -> impl Strategy<Value = QRational> {
    rational().prop_filter("q outside {0, 1, -1}", |q| !q.is_zero() && q.abs() != QRational::one())
}

fn series(order: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(rational(), order + 1).prop_map(move |c| QSeries::from_coeffs(c, order))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_then_truncate_equals_truncate_then_product(a in series(12), b in series(12), m in 0usize..=12) {
        prop_assert_eq!((&a * &b).truncate(m), &a.truncate(m) * &b.truncate(m));
    }

    #[test]
    fn series_ring_laws(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn unit_inverse(a in series(10)) {
        prop_assume!(!a.coeff(0).is_zero());
        prop_assert_eq!(&a * &a.invert().unwrap(), QSeries::one(10));
    }

    #[test]
    fn infinite_product_times_reciprocal(c in rational(), e0 in 0i64..4, d in 1i64..4) {
        prop_assume!(e0 > 0 || !c.is_one());
        let p = inf_poch(&c, e0, d, 20).unwrap();
        let r = inf_poch_recip(&c, e0, d, 20).unwrap();
        prop_assert_eq!(&p * &r, QSeries::one(20));
    }

    #[test]
    fn pochhammer_splits(a in rational(), q in base(), m in -4i64..6, n in -4i64..6) {
        // (a;q)_{m+n} = (a;q)_m (aq^m;q)_n wherever both sides are finite.
        let aqm = &a * &q.pow(m).unwrap();
        let lhs = qpoch(&a, &q, m + n);
        let rhs = qpoch(&a, &q, m).and_then(|x| Ok(x * qpoch(&aqm, &q, n)?));
        if let (Ok(l), Ok(r)) = (lhs, rhs) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn qbinom_symmetry_and_pascal(q in base(), n in 1i64..10, k in 0i64..10) {
        prop_assert_eq!(qbinom(n, k, &q).unwrap(), qbinom(n, n - k, &q).unwrap());
        let pascal = qbinom(n - 1, k - 1, &q).unwrap() + qbinom(n - 1, k, &q).unwrap() * q.pow(k).unwrap();
        prop_assert_eq!(qbinom(n, k, &q).unwrap(), pascal);
    }
}
