use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::engine::{Algebra, EngineError, Field};
use super::oracle::FockOracle;
use super::spec::FactorKind;
use super::state::FState;
use crate::exact::{binom_int, Rational, Scalar};
use crate::exprio::Report;

fn koszul(alg: &Algebra, a: &FState, b: &FState) -> Scalar {
    match (alg.parity(a), alg.parity(b)) {
        (Some(true), Some(true)) => Scalar::int(-1),
        _ => Scalar::one(),
    }
}

fn alt(j: i64) -> Scalar {
    Scalar::int(if j % 2 == 0 { 1 } else { -1 })
}

/// Both sides of the Borcherds identity for `(a, b, c)` and `m, n, k`, `n >= 0`.
pub fn borcherds_sides(
    alg: &Algebra,
    a: &FState,
    b: &FState,
    c: &FState,
    m: i64,
    n: i64,
    k: i64,
) -> Result<(FState, FState), EngineError> {
    assert!(n >= 0);
    let top = alg
        .pole_bound(a, b)
        .ok_or_else(|| EngineError::Invalid("inhomogeneous state".into()))?;
    let mut lhs = FState::zero();
    for j in 0..=(top - n).max(-1) {
        let ab = alg.nth_product(a, n + j, b)?;
        let coef = Scalar::from(binom_int(m, j as u32));
        if !ab.is_zero() && !coef.is_zero() {
            lhs.add_scaled(&coef, &alg.nth_product(&ab, m + k - j, c)?);
        }
    }
    let eps = &alt(n) * &koszul(alg, a, b);
    let mut rhs = FState::zero();
    for j in 0..=n {
        let coef = &alt(j) * &Scalar::from(binom_int(n, j as u32));
        let t1 = alg.nth_product(a, m + n - j, &alg.nth_product(b, k + j, c)?)?;
        let t2 = alg.nth_product(b, n + k - j, &alg.nth_product(a, m + j, c)?)?;
        rhs.add_scaled(&coef, &t1.minus(&t2.scaled(&eps)));
    }
    Ok((lhs, rhs))
}

/// `b_(n) a` against `p(a,b) sum_j (-1)^{n+j+1} D^{(j)}(a_(n+j) b)`.
pub fn skew_sides(alg: &Algebra, a: &FState, b: &FState, n: i64) -> Result<(FState, FState), EngineError> {
    let lhs = alg.nth_product(b, n, a)?;
    let top = alg
        .pole_bound(a, b)
        .ok_or_else(|| EngineError::Invalid("inhomogeneous state".into()))?;
    let mut rhs = FState::zero();
    for j in 0..=(top - n).max(-1) {
        let p = alg.nth_product(a, n + j, b)?;
        if !p.is_zero() {
            let d = alg.divided_deriv(&p, j as u32)?;
            rhs.add_scaled(&(&alt(n + j + 1) * &koszul(alg, a, b)), &d);
        }
    }
    Ok((lhs, rhs))
}

/// `(Da)_(n) b` against `-n a_(n-1) b`.
pub fn translation_sides(alg: &Algebra, a: &FState, b: &FState, n: i64) -> Result<(FState, FState), EngineError> {
    let lhs = alg.nth_product(&alg.deriv(a)?, n, b)?;
    let rhs = alg.nth_product(a, n - 1, b)?.scaled(&Scalar::int(-n));
    Ok((lhs, rhs))
}

/// `|0>_(n) a = delta_{n,-1} a`, `a_(-1)|0> = a`, `a_(n)|0> = 0` for `n >= 0`.
pub fn vacuum_axiom(alg: &Algebra, a: &FState) -> Result<bool, EngineError> {
    let v = alg.vacuum();
    for n in -3..=2 {
        let want = if n == -1 { a.clone() } else { FState::zero() };
        if alg.nth_product(&v, n, a)? != want {
            return Ok(false);
        }
        if n >= 0 && !alg.nth_product(a, n, &v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(alg.nth_product(a, -1, &v)? == *a)
}

/// Random states of weight at most `max_weight`: small words of creation
/// modes on the vacuum or a lattice vector, with small integer coefficients.
pub fn sample_states(alg: &Algebra, rng: &mut ChaCha8Rng, count: usize, max_weight: i64) -> Vec<FState> {
    let mut fields = Vec::new();
    let mut lattice = Vec::new();
    for (fi, f) in alg.factors().iter().enumerate() {
        for g in 0..f.spec.generators.len() {
            fields.push(Field::Gen { factor: fi, gen: g });
        }
        if f.spec.kind == FactorKind::LatticeRank1 {
            lattice.push(fi);
        }
    }
    let bound = Rational::from_integer(max_weight.into());
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < 50 * count {
        tries += 1;
        let mut s = match lattice.first() {
            Some(&fi) if rng.gen_bool(0.7) => alg.lattice_vector(fi, rng.gen_range(-1..=1)),
            _ => alg.vacuum(),
        };
        let terms = rng.gen_range(1..=2);
        let mut acc = FState::zero();
        for _ in 0..terms {
            let mut t = s.clone();
            for _ in 0..rng.gen_range(0..=2) {
                if fields.is_empty() {
                    break;
                }
                let fl = fields[rng.gen_range(0..fields.len())];
                t = alg.mode(fl, rng.gen_range(-3..=-1), &t);
            }
            acc.add_scaled(&Scalar::int(rng.gen_range(1..=3)), &t);
        }
        s = acc;
        if s.is_zero() {
            continue;
        }
        // keep homogeneous states so the sums above have a clear truncation
        match (alg.weight(&s), alg.parity(&s)) {
            (Some(w), Some(_)) if w <= bound => out.push(s),
            _ => {}
        }
    }
    out
}

fn state_label(alg: &Algebra, s: &FState) -> String {
    crate::exprio::state_to_expr(alg, s).to_string()
}

/// Runs `instances` seeded random checks of the vertex-algebra axioms on `alg`.
///
/// Instances cycle through Borcherds, skew-symmetry, translation and vacuum;
/// on Clifford factors every product is also compared with [`FockOracle`].
pub fn axiom_suite(alg: &Algebra, seed: u64, instances: usize, report: &mut Report) -> Result<(), EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = sample_states(alg, &mut rng, 12, 3);
    if pool.len() < 3 {
        return Err(EngineError::Invalid(format!("{}: could not sample states", alg.name)));
    }
    let oracle = if alg.nfactors() == 1 { FockOracle::new(alg, 0) } else { None };
    let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
    for i in 0..instances {
        let id = format!("{}/{i}", alg.name);
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let n = rng.gen_range(-2..=2i64);
        match i % 4 {
            0 => {
                let c = pick(&mut rng);
                let nn = rng.gen_range(0..=2i64);
                let k = rng.gen_range(-1..=1i64);
                let (l, r) = borcherds_sides(alg, &a, &b, &c, n, nn, k)?;
                report.check(
                    &format!("{id}/borcherds"),
                    l == r,
                    l.to_string(),
                    r.to_string(),
                    format!("m={n} n={nn} k={k} a={} b={}", state_label(alg, &a), state_label(alg, &b)),
                );
            }
            1 => {
                let (l, r) = skew_sides(alg, &a, &b, n)?;
                report.check(&format!("{id}/skew"), l == r, l.to_string(), r.to_string(), format!("n={n}"));
            }
            2 => {
                let (l, r) = translation_sides(alg, &a, &b, n)?;
                report.check(&format!("{id}/translation"), l == r, l.to_string(), r.to_string(), format!("n={n}"));
            }
            _ => {
                let ok = vacuum_axiom(alg, &a)?;
                report.check(&format!("{id}/vacuum"), ok, a.to_string(), "", "");
            }
        }
        if let Some(o) = &oracle {
            let wsum = alg.weight(&a).zip(alg.weight(&b)).map(|(x, y)| x + y);
            if wsum.is_some_and(|w| w <= Rational::from_integer(6.into())) {
                let e = alg.nth_product(&a, n, &b)?;
                let ok = o.from_state(&e) == o.nth_product(&a, n, &b);
                report.check(&format!("{id}/fock"), ok, e.to_string(), "", format!("n={n}"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{clifford_f, clifford_half, lattice_minus1, osp12, register_algebra, AlgebraSpec};

    #[test]
    fn axioms_hold_on_free_fields() {
        for f in [clifford_f(), clifford_half(), lattice_minus1(), osp12(Scalar::rat(-5, 4))] {
            let alg = register_algebra(&AlgebraSpec::new(&f.name.clone(), vec![f])).unwrap();
            let mut r = Report::new("engine-axioms", "");
            axiom_suite(&alg, 7, 24, &mut r).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn broken_sign_is_caught() {
        let alg = register_algebra(&AlgebraSpec::new("f", vec![clifford_f()])).unwrap();
        let p = alg.gen("F.psi+").unwrap();
        let m = alg.gen("F.psi-").unwrap();
        let (l, r) = skew_sides(&alg, &p, &m, 0).unwrap();
        assert_eq!(l, r);
        assert_ne!(l, r.scaled(&Scalar::int(-1)));
    }
}
