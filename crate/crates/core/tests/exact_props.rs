use bpw::exact::{binom_general, binom_int, rat, Scalar, Var};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-9..=9i64, 1..=6i64).prop_map(|(n, d)| Scalar::rat(n, d))
}

/// Random rational functions of low degree in `k` and `x`.
fn scalar() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        small_rational(),
        Just(Scalar::var(Var::K)),
        Just(Scalar::var(Var::X)),
    ];
    let poly = prop::collection::vec((atom.clone(), atom), 1..3).prop_map(|ts| {
        ts.iter().fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
    });
    (poly.clone(), poly, any::<bool>()).prop_map(|(p, q, div)| {
        if div && !q.is_zero() {
            &p / &q
        } else {
            p
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        } else {
            prop_assert!(a.recip().is_err());
        }
    }

    #[test]
    fn binomial_matches_factorials(n in 0..=20i64, j in 0..=20u32) {
        prop_assume!(j as i64 <= n);
        let fact = |m: i64| (1..=m).fold(num_bigint::BigInt::from(1), |a, b| a * b);
        let want = num_rational::BigRational::new(fact(n), fact(j as i64) * fact(n - j as i64));
        prop_assert_eq!(binom_int(n, j), want.clone());
        prop_assert_eq!(binom_general(&Scalar::int(n), j), Scalar::from(want));
    }
}

#[test]
fn pascal_symbolic() {
    let t = Scalar::var(Var::K);
    let t1 = &t - &Scalar::one();
    for j in 1..=8 {
        assert_eq!(binom_general(&t, j), &binom_general(&t1, j) + &binom_general(&t1, j - 1), "j={j}");
    }
    assert_eq!(binom_int(-1, 5), rat(-1, 1));
}
