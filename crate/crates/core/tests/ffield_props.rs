use bpw::exact::{rat, Scalar};
use bpw::exprio::Report;
use bpw::ffield::{
    axiom_suite, borcherds_sides, clifford_f, clifford_half, lattice_minus1, osp12, register_algebra,
    sample_states, skew_sides, translation_sides, Algebra, AlgebraSpec, FockOracle,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::{Arc, OnceLock};

fn algebras() -> &'static Vec<Arc<Algebra>> {
    static A: OnceLock<Vec<Arc<Algebra>>> = OnceLock::new();
    A.get_or_init(|| {
        [clifford_f(), clifford_half(), lattice_minus1(), osp12(Scalar::rat(-5, 4))]
            .into_iter()
            .map(|f| register_algebra(&AlgebraSpec::new(&f.name.clone(), vec![f])).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn axioms_on_random_triples(which in 0..4usize, seed in any::<u64>(), m in -2..=2i64, n in -2..=2i64, k in 0..=2i64) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = sample_states(alg, &mut rng, 3, 3);
        prop_assume!(pool.len() == 3);
        let (a, b, c) = (&pool[0], &pool[1], &pool[2]);
        // commutator formula is the k = 0 case of the Borcherds identity
        let (l, r) = borcherds_sides(alg, a, b, c, m, k, n).unwrap();
        prop_assert_eq!(l, r);
        let (l, r) = skew_sides(alg, a, b, n).unwrap();
        prop_assert_eq!(l, r);
        let (l, r) = translation_sides(alg, a, b, n).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn products_are_graded(which in 0..4usize, seed in any::<u64>(), n in -3..=3i64) {
        let alg = &algebras()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = sample_states(alg, &mut rng, 2, 3);
        prop_assume!(pool.len() == 2);
        let (a, b) = (&pool[0], &pool[1]);
        let p = alg.nth_product(a, n, b).unwrap();
        if !p.is_zero() {
            let want = alg.weight(a).unwrap() + alg.weight(b).unwrap() - rat(n + 1, 1);
            prop_assert_eq!(alg.weight(&p), Some(want));
            let ca = alg.charges(a).unwrap();
            let cb = alg.charges(b).unwrap();
            let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(alg.charges(&p), Some(sum));
            let par = alg.parity(a).unwrap() ^ alg.parity(b).unwrap();
            prop_assert_eq!(alg.parity(&p), Some(par));
        }
    }

    #[test]
    fn fock_oracle_agrees(which in 0..2usize, seed in any::<u64>(), n in -3..=3i64) {
        let alg = &algebras()[which];
        let o = FockOracle::new(alg, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = sample_states(alg, &mut rng, 2, 3);
        prop_assume!(pool.len() == 2);
        let (a, b) = (&pool[0], &pool[1]);
        let e = alg.nth_product(a, n, b).unwrap();
        prop_assert_eq!(o.from_state(&e), o.nth_product(a, n, b));
    }
}

#[test]
fn seeded_suite_has_enough_instances() {
    let mut r = Report::new("engine-axioms", "");
    for (i, alg) in algebras().iter().enumerate() {
        axiom_suite(alg, 11 + i as u64, 30, &mut r).unwrap();
    }
    assert!(r.checks.len() >= 100);
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn oracle_is_not_the_identity_map() {
    let alg = &algebras()[0];
    let o = FockOracle::new(alg, 0).unwrap();
    let p = alg.gen("F.psi+").unwrap();
    let m = alg.gen("F.psi-").unwrap();
    // psi+_(0) psi- = 1 but psi+_(0) psi+ = 0
    assert_eq!(o.nth_product(&p, 0, &m), o.from_state(&alg.vacuum()));
    assert!(o.nth_product(&p, 0, &p).is_empty());
    assert!(FockOracle::new(&algebras()[2], 0).is_none());
}
