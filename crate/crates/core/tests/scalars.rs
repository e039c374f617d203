//! Field axioms and the textual grammar on random exact scalars.

use proptest::prelude::*;
use solenoid::scalars::{Cyclotomic, Scalar};

fn leaf() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-6i64..=6, 1i64..=5).prop_map(|(n, d)| Scalar::from_ratio(n, d)),
        (0usize..2).prop_map(Scalar::gamma),
        (0usize..2).prop_map(Scalar::alpha),
        Just(Scalar::beta()),
        (prop::sample::select(vec![2u32, 3, 4, 6]), 0i64..6)
            .prop_map(|(k, e)| Scalar::from_cyclotomic(Cyclotomic::root_of_unity(k, e))),
    ]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    leaf().prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a + &b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| &a * &b),
            (inner.clone(), inner).prop_map(|(a, b)| if b.is_zero() { a } else { a.checked_div(&b).unwrap() }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_is_an_abelian_group(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in scalar()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn printing_parses_back(a in scalar()) {
        let text = a.to_string();
        let back: Scalar = text.parse().unwrap();
        prop_assert_eq!(&back, &a, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn json_round_trip(a in scalar()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }
}
