use bpw::classify::{
    check_lemma_ij, eval_h, eval_h_at, h_average, relaxed_weight, special_orbit_closed_form, vacuum_orbit,
    vacuum_orbit_recursive, witnesses_in_sk, Level, RelaxedParams, RelaxedSector, Weight,
};
use bpw::exact::{Scalar, Var};
use proptest::prelude::*;

#[test]
fn h_expanded_equals_average_at_symbolic_level() {
    let lv = Level::symbolic();
    let w = Weight::symbolic();
    // k + 4 at k = 4 covers the range used elsewhere
    for i in 1..=8 {
        assert_eq!(eval_h(i, &lv, &w), h_average(i, &lv, &w), "i={i}");
    }
}

#[test]
fn ij_duality_for_small_levels() {
    for k in 1..=4 {
        for i in 1..=(k + 2) as u32 {
            assert!(check_lemma_ij(&Level::int(k), i, &Weight::symbolic()).unwrap(), "k={k} i={i}");
        }
    }
}

#[test]
fn vacuum_orbit_top_dims_alternate() {
    for k in 1..=4i64 {
        let lv = Level::int(k);
        for n in -50..=50i64 {
            let w = vacuum_orbit(&lv, n).unwrap().weight;
            let ws = witnesses_in_sk(&lv, &w).unwrap();
            assert!(!ws.is_empty(), "k={k} n={n}");
            // h_1 on even entries, h_{k+2} on odd ones, for n >= 0
            if n >= 0 {
                let want = if n % 2 == 0 { 1 } else { (k + 2) as u32 };
                assert!(ws.contains(&want), "k={k} n={n} {ws:?}");
            }
        }
        let up = vacuum_orbit_recursive(&lv, 50).unwrap();
        let down = vacuum_orbit_recursive(&lv, -50).unwrap();
        for e in up.iter().chain(&down) {
            assert_eq!(vacuum_orbit(&lv, e.n).unwrap().weight, e.weight, "k={k} n={}", e.n);
        }
    }
}

#[test]
fn special_orbit_factorizations_symbolic_in_j() {
    let j = Scalar::var(Var::named("j"));
    for k in 1..=3i64 {
        let lv = Level::int(k);
        let kk = Scalar::int(k);
        for i in 1..=k + 2 {
            let si = Scalar::int(i);
            for n in 0..=20i64 {
                let sn = Scalar::int(n);
                let we = special_orbit_closed_form(&lv, &si, &sn, false).unwrap();
                let even = &(&si - &j) * &(&(&(&Scalar::int(-2) + &j) - &Scalar::int(3 * n)) - &(&kk * &Scalar::int(1 + n)));
                assert_eq!(eval_h_at(&j, &lv, &we), even, "k={k} i={i} n={n}");
                let wo = special_orbit_closed_form(&lv, &si, &sn, true).unwrap();
                let ij = &si + &j;
                let f1 = &(&ij - &Scalar::int(3)) - &kk;
                let f2 = &(&(&ij - &Scalar::int(5)) - &Scalar::int(2 * k + 3 * n)) - &(&kk * &sn);
                assert_eq!(eval_h_at(&j, &lv, &wo), -(&f1 * &f2), "k={k} i={i} n={n} odd");
            }
        }
    }
}

#[test]
fn relaxed_weights_on_curves() {
    let lv = Level::int(1);
    let lam = Scalar::var(Var::LAMBDA);
    let u = relaxed_weight(&lv, &RelaxedParams::new(lam.clone(), RelaxedSector::UntwistedTop));
    assert!(eval_h(2, &lv, &u).is_zero());
    let t = relaxed_weight(&lv, &RelaxedParams::new(lam, RelaxedSector::TwistedTop));
    assert!(eval_h(1, &lv, &t).is_zero());
    assert!(!eval_h(2, &lv, &t).is_zero());
}

proptest! {
    #[test]
    fn h_average_matches_at_rational_points(
        k in -1..=6i64, i in 1..=8u32, xn in -20..=20i64, yn in -20..=20i64, d in 1..=7i64,
    ) {
        let lv = Level::int(k);
        let w = Weight::rat(xn, d, yn, d);
        prop_assert_eq!(eval_h(i, &lv, &w), h_average(i, &lv, &w));
    }
}
