use std::collections::BTreeMap;

use super::engine::{Algebra, EngineError, Field};
use super::spec::FactorKind;
use super::state::{FState, TensorMono};
use crate::exact::{rat, EchelonBasis, Rational, Scalar};

fn affine_field(alg: &Algebra, factor: usize, name: &str) -> Result<FState, EngineError> {
    let f = &alg.factors()[factor];
    let g = f
        .gen_index(name)
        .ok_or_else(|| EngineError::UnknownField(format!("{}.{name}", f.spec.name)))?;
    Ok(alg.field_state(Field::Gen { factor, gen: g }))
}

/// Sugawara vector `(1/(2k'+3))(:ef: + :fe: + 1/2 :hh: - 1/2 :xy: + 1/2 :yx:)`
/// of an `osp(1|2)` factor.
pub fn sugawara(alg: &Algebra, factor: usize) -> Result<FState, EngineError> {
    let f = &alg.factors()[factor];
    if f.spec.kind != FactorKind::AffineSuper {
        return Err(EngineError::Invalid(format!("{} is not an affine factor", f.spec.name)));
    }
    let denom = &(&Scalar::int(2) * &f.level) + &Scalar::int(3);
    if denom.is_zero() {
        return Err(EngineError::Invalid("critical level 2k'+3 = 0".into()));
    }
    let pre = denom
        .recip()
        .map_err(|e| EngineError::Invalid(e.to_string()))?;
    let g = |n: &str| affine_field(alg, factor, n);
    let (e, fv, h, x, y) = (g("e")?, g("f")?, g("h")?, g("x")?, g("y")?);
    let half = Scalar::rat(1, 2);
    let mut w = alg.nop(&e, &fv)?;
    w.add_scaled(&Scalar::one(), &alg.nop(&fv, &e)?);
    w.add_scaled(&half, &alg.nop(&h, &h)?);
    w.add_scaled(&-half.clone(), &alg.nop(&x, &y)?);
    w.add_scaled(&half, &alg.nop(&y, &x)?);
    Ok(w.scaled(&pre))
}

/// Results of the Virasoro checks on a candidate conformal vector.
#[derive(Clone, Debug)]
pub struct VirasoroChecks {
    pub zero: bool,
    pub one: bool,
    pub two: bool,
    pub three_scalar: bool,
    pub central_charge: Scalar,
}

impl VirasoroChecks {
    pub fn all(&self) -> bool {
        self.zero && self.one && self.two && self.three_scalar
    }
}

/// `w_(0)w = Dw`, `w_(1)w = 2w`, `w_(2)w = 0`, `w_(3)w = (c/2)|0>`.
pub fn virasoro_checks(alg: &Algebra, w: &FState) -> Result<VirasoroChecks, EngineError> {
    let p = |n| alg.nth_product(w, n, w);
    let three = p(3)?;
    let c2 = three.vacuum_coeff();
    Ok(VirasoroChecks {
        zero: p(0)? == alg.deriv(w)?,
        one: p(1)? == w.scaled(&Scalar::int(2)),
        two: p(2)?.is_zero(),
        three_scalar: three == alg.vacuum().scaled(&c2),
        central_charge: &Scalar::int(2) * &c2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingularStateCheck {
    pub singular: bool,
    pub degenerate: bool,
}

/// Whether all positive modes of the factor's generators kill `state` and
/// `state` has no vacuum component.
pub fn singular_state_check(alg: &Algebra, factor: usize, state: &FState) -> SingularStateCheck {
    if state.is_zero() {
        return SingularStateCheck {
            singular: true,
            degenerate: true,
        };
    }
    let top = alg
        .weight(state)
        .map(|w| w.ceil().to_integer())
        .and_then(|w| num_traits::ToPrimitive::to_i64(&w))
        .unwrap_or(1)
        .max(1);
    let ngen = alg.factors()[factor].spec.generators.len();
    let killed = (0..ngen).all(|g| {
        (1..=top).all(|n| alg.mode(Field::Gen { factor, gen: g }, n, state).is_zero())
    });
    SingularStateCheck {
        singular: killed && state.vacuum_coeff().is_zero(),
        degenerate: false,
    }
}

fn weight_key(w: &Rational) -> (i64, i64) {
    let n = num_traits::ToPrimitive::to_i64(w.numer()).unwrap_or(i64::MAX);
    let d = num_traits::ToPrimitive::to_i64(w.denom()).unwrap_or(1);
    (n, d)
}

/// Descendants of singular generators up to a weight, row reduced per weight.
pub struct DescendantSpan {
    pub max_weight: Rational,
    bases: BTreeMap<(i64, i64), EchelonBasis<TensorMono>>,
}

impl DescendantSpan {
    /// Spans `U(creation) U(zero modes of factor) gens` in every factor
    /// without a lattice.
    pub fn build(
        alg: &Algebra,
        factor: usize,
        gens: &[FState],
        max_weight: Rational,
        max_dim: usize,
    ) -> Result<Self, EngineError> {
        let nf = alg.factors()[factor].spec.generators.len();
        let mut closure: EchelonBasis<TensorMono> = EchelonBasis::new();
        let mut queue: Vec<FState> = gens.to_vec();
        let mut seeds = Vec::new();
        while let Some(s) = queue.pop() {
            if s.is_zero() || !closure.insert(&s.terms) {
                continue;
            }
            if closure.rank() > max_dim {
                return Err(EngineError::Resource("zero-mode closure too large".into()));
            }
            for g in 0..nf {
                queue.push(alg.mode(Field::Gen { factor, gen: g }, 0, &s));
            }
            seeds.push(s);
        }
        let mut creation: Vec<(Field, i64, Rational)> = Vec::new();
        for (fi, f) in alg.factors().iter().enumerate() {
            if f.spec.kind == FactorKind::LatticeRank1 {
                continue;
            }
            for g in 0..f.spec.generators.len() {
                let wt = f.weights[g].clone();
                let mut n = -1;
                loop {
                    let gain = &wt - rat(n + 1, 1);
                    if gain > max_weight {
                        break;
                    }
                    creation.push((Field::Gen { factor: fi, gen: g }, n, gain));
                    n -= 1;
                }
            }
        }
        let mut bases: BTreeMap<(i64, i64), EchelonBasis<TensorMono>> = BTreeMap::new();
        let mut total = 0usize;
        fn walk(
            alg: &Algebra,
            creation: &[(Field, i64, Rational)],
            start: usize,
            s: &FState,
            budget: &Rational,
            bases: &mut BTreeMap<(i64, i64), EchelonBasis<TensorMono>>,
            total: &mut usize,
            max_dim: usize,
        ) -> Result<(), EngineError> {
            if s.is_zero() {
                return Ok(());
            }
            if let Some(w) = alg.weight(s) {
                if bases.entry(weight_key(&w)).or_default().insert(&s.terms) {
                    *total += 1;
                }
            }
            if *total > max_dim {
                return Err(EngineError::Resource("descendant span too large".into()));
            }
            for (i, (fl, n, gain)) in creation.iter().enumerate().skip(start) {
                if gain > budget {
                    continue;
                }
                let t = alg.mode(*fl, *n, s);
                walk(alg, creation, i, &t, &(budget - gain), bases, total, max_dim)?;
            }
            Ok(())
        }
        for s in &seeds {
            let Some(w0) = alg.weight(s) else { continue };
            let budget = &max_weight - &w0;
            if budget < rat(0, 1) {
                continue;
            }
            walk(alg, &creation, 0, s, &budget, &mut bases, &mut total, max_dim)?;
        }
        Ok(DescendantSpan { max_weight, bases })
    }

    pub fn dimension(&self) -> usize {
        self.bases.values().map(|b| b.rank()).sum()
    }

    /// Residue of `s` modulo the span; errors above the span's weight.
    pub fn reduce(&self, alg: &Algebra, s: &FState) -> Result<FState, EngineError> {
        let mut by_weight: BTreeMap<(i64, i64), FState> = BTreeMap::new();
        for (m, c) in &s.terms {
            let w = alg.basis_weight(m);
            if w > self.max_weight {
                return Err(EngineError::Resource(format!(
                    "weight {w} above reduction bound {}",
                    self.max_weight
                )));
            }
            by_weight
                .entry(weight_key(&w))
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        let mut out = FState::zero();
        for (k, part) in by_weight {
            let r = match self.bases.get(&k) {
                Some(b) => FState { terms: b.reduce(&part.terms) },
                None => part,
            };
            out.add_scaled(&Scalar::one(), &r);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Var;
    use crate::ffield::{clifford_f, osp12, osp12_symbolic, register_algebra, AlgebraSpec};

    #[test]
    fn sugawara_virasoro() {
        let a = register_algebra(&AlgebraSpec::new("o", vec![osp12(Scalar::rat(-5, 4))])).unwrap();
        let w = sugawara(&a, 0).unwrap();
        let v = virasoro_checks(&a, &w).unwrap();
        assert!(v.all());
        assert_eq!(v.central_charge, Scalar::int(-5));
        let kp = Scalar::rat(-5, 4);
        let sdim = &kp / &(&kp + &Scalar::rat(3, 2));
        assert_eq!(v.central_charge, sdim);

        let a = register_algebra(&AlgebraSpec::new("o", vec![osp12_symbolic()])).unwrap();
        let w = sugawara(&a, 0).unwrap();
        let v = virasoro_checks(&a, &w).unwrap();
        assert!(v.all());
        let k = Scalar::var(Var::KP);
        assert_eq!(v.central_charge, &k / &(&k + &Scalar::rat(3, 2)));

        let a = register_algebra(&AlgebraSpec::new("o", vec![osp12(Scalar::rat(-3, 2))])).unwrap();
        assert!(sugawara(&a, 0).is_err());
    }

    fn witness(a: &Algebra) -> FState {
        let w = sugawara(a, 0).unwrap();
        let xy = a.nop(&a.gen("osp.x").unwrap(), &a.gen("osp.y").unwrap()).unwrap();
        let dh = a.deriv(&a.gen("osp.h").unwrap()).unwrap();
        w.minus(&xy.minus(&dh.scaled(&Scalar::rat(1, 2))))
    }

    #[test]
    fn embedding_witness() {
        let a = register_algebra(&AlgebraSpec::new("o", vec![osp12(Scalar::rat(-5, 4))])).unwrap();
        let r = singular_state_check(&a, 0, &witness(&a));
        assert!(r.singular && !r.degenerate);
        let b = register_algebra(&AlgebraSpec::new("o", vec![osp12(Scalar::rat(-7, 6))])).unwrap();
        assert!(!singular_state_check(&b, 0, &witness(&b)).singular);
        assert!(singular_state_check(&a, 0, &FState::zero()).degenerate);
    }

    #[test]
    fn descendant_span_contains_witness_images() {
        let a = register_algebra(&AlgebraSpec::new("o", vec![osp12(Scalar::rat(-5, 4)), clifford_f()])).unwrap();
        let w = witness(&a);
        let span = DescendantSpan::build(&a, 0, std::slice::from_ref(&w), rat(3, 1), 20000).unwrap();
        assert!(span.reduce(&a, &w).unwrap().is_zero());
        let d = a.deriv(&w).unwrap();
        assert!(span.reduce(&a, &d).unwrap().is_zero());
        let psi = a.gen("F.psi+").unwrap();
        let t = a.nop(&psi, &w).unwrap();
        assert!(!span.reduce(&a, &t).is_err());
        let hw = a.gen("osp.h").unwrap();
        assert!(!span.reduce(&a, &hw).unwrap().is_zero());
    }
}
