use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::module::{mono_charge, BPModule, BPState, Head, Mono};
use super::modes::BPMode;
use crate::classify::{eval_h, Level, Weight};
use crate::exact::{EchelonBasis, Polynomial, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WmodError {
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("state is not homogeneous")]
    NotHomogeneous,
    #[error("{0}")]
    Invalid(String),
}

/// Bounds that turn blowups into errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub max_weight: i64,
    pub max_slice_dim: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_weight: 8,
            max_slice_dim: 20000,
        }
    }
}

/// Ordered PBW basis of one shifted-weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSlice {
    pub weight: i64,
    pub basis: Vec<Mono>,
}

impl GradedSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Creation modes of shifted degree exactly `d`.
fn creation_modes_of_degree(head: &Head, d: i64) -> Vec<BPMode> {
    let mut out = Vec::new();
    let vac = matches!(head, Head::Vacuum);
    if d >= 1 {
        out.push(BPMode::j(-d));
        out.push(BPMode::gp(-d));
        if !vac || d >= 2 {
            out.push(BPMode::l(-d));
        }
        // G-_n has degree 1 - n
        if !vac || d >= 2 {
            out.push(BPMode::gm(1 - d));
        }
    } else if d == 0 && !vac {
        out.push(BPMode::gp(0));
    }
    out.sort();
    out
}

/// PBW basis of the weight-`n` space. On a highest-weight head the free
/// `G+_0` is capped at `g0_bound` factors.
pub fn verma_slice(
    module: &BPModule,
    n: i64,
    g0_bound: u32,
    guards: &Guards,
) -> Result<GradedSlice, WmodError> {
    if n < 0 || n > guards.max_weight {
        return Err(WmodError::Resource(format!("slice weight {n} outside 0..={}", guards.max_weight)));
    }
    let mut modes: Vec<BPMode> = Vec::new();
    for d in 0..=n {
        modes.extend(creation_modes_of_degree(module.head(), d));
    }
    modes.sort();
    let mut basis = Vec::new();
    let mut cur = Vec::new();
    enumerate(&modes, 0, n, g0_bound, &mut cur, &mut basis, guards)?;
    basis.sort();
    let distinct: BTreeSet<&Mono> = basis.iter().collect();
    if distinct.len() != basis.len() {
        return Err(WmodError::Invalid("PBW enumeration produced a repeated monomial".into()));
    }
    Ok(GradedSlice { weight: n, basis })
}

fn enumerate(
    modes: &[BPMode],
    start: usize,
    remaining: i64,
    g0_left: u32,
    cur: &mut Vec<BPMode>,
    out: &mut Vec<Mono>,
    guards: &Guards,
) -> Result<(), WmodError> {
    if remaining == 0 {
        out.push(cur.clone());
        if out.len() > guards.max_slice_dim {
            return Err(WmodError::Resource(format!(
                "slice dimension above {}",
                guards.max_slice_dim
            )));
        }
    }
    for i in start..modes.len() {
        let m = modes[i];
        let d = m.degree();
        if d > remaining {
            continue;
        }
        let is_g0 = d == 0;
        if is_g0 && g0_left == 0 {
            continue;
        }
        cur.push(m);
        enumerate(
            modes,
            i,
            remaining - d,
            if is_g0 { g0_left - 1 } else { g0_left },
            cur,
            out,
            guards,
        )?;
        cur.pop();
    }
    Ok(())
}

/// A nonzero image of a raising mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub mode: BPMode,
    pub image: BPState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub is_singular: bool,
    pub bidegree: Option<(i64, i64)>,
    pub obstructions: Vec<Obstruction>,
}

/// Modes of negative shifted degree that suffice to test a weight-`w`
/// vector: `J_n, L_n, G+_n` for `1 <= n <= w` and `G-_n` for `2 <= n <= w+1`,
/// together with the zero mode `G-_1`.
pub fn raising_modes(w: i64) -> Vec<BPMode> {
    let mut out = Vec::new();
    for n in 1..=w.max(1) {
        out.push(BPMode::j(n));
        out.push(BPMode::l(n));
        out.push(BPMode::gp(n));
        out.push(BPMode::gm(n + 1));
    }
    out.push(BPMode::gm(1));
    out
}

pub fn singular_check(module: &BPModule, state: &BPState) -> SingularReport {
    let bidegree = state.bidegree();
    if !state.is_zero() && bidegree.is_none() {
        return SingularReport {
            is_singular: false,
            bidegree,
            obstructions: vec![],
        };
    }
    let w = bidegree.map_or(0, |b| b.0);
    let obstructions: Vec<Obstruction> = raising_modes(w)
        .into_iter()
        .filter_map(|m| {
            let image = module.act_mode(m, state);
            (!image.is_zero()).then_some(Obstruction { mode: m, image })
        })
        .collect();
    SingularReport {
        is_singular: obstructions.is_empty(),
        bidegree,
        obstructions,
    }
}

/// `G+_{-1}^n 1` and `G-_{-1}^n 1` (in shifted labels `G+(-1)^n`, `G-(-2)^n`).
pub fn vacuum_power_vectors(module: &BPModule, n: u32) -> (BPState, BPState) {
    let plus = module.state(&vec![BPMode::gp(-1); n as usize]);
    let minus = module.state(&vec![BPMode::gm(-1); n as usize]);
    (plus, minus)
}

#[derive(Clone, Debug)]
pub struct VacuumSingularResult {
    pub n: u32,
    pub plus: SingularReport,
    pub minus: SingularReport,
}

impl VacuumSingularResult {
    pub fn passed(&self) -> bool {
        self.plus.is_singular && self.minus.is_singular
    }
}

/// Checks both vectors at `n = k + 2`. A non-integral level uses `n = 3`,
/// the power that would apply at `k = 1`.
pub fn vacuum_singular_suite(level: &Level) -> VacuumSingularResult {
    let n = level.integral().map_or(3, |k| (k + 2) as u32);
    let module = BPModule::vacuum(level.clone());
    let (p, m) = vacuum_power_vectors(&module, n);
    VacuumSingularResult {
        n,
        plus: singular_check(&module, &p),
        minus: singular_check(&module, &m),
    }
}

/// `G+_a (G-_{-1})^n 1` computed by the engine and by the closed forms
/// `a = 2: 2n(k-(n-2))(k-(n-2)+n/2) (G-)^{n-1}` and
/// `a = 1: 3n(k-(n-2)) J_{-1}(G-)^{n-1} + n(n-1)(k-(n-2)) G-_{-2}(G-)^{n-2}`.
pub fn gplus_on_gminus_power(module: &BPModule, a: i64, n: u32) -> Result<(BPState, BPState), WmodError> {
    if !matches!(module.head(), Head::Vacuum) {
        return Err(WmodError::Invalid("needs the vacuum module".into()));
    }
    let k = module.level().k().clone();
    let gm = |p: u32| vec![BPMode::gm(-1); p as usize];
    let computed = module.apply(&[BPMode::gp(a)], &module.state(&gm(n)));
    let nn = Scalar::int(n as i64);
    let kk = &k - &Scalar::int(n as i64 - 2);
    let expected = match a {
        2 => {
            let c = &(&(&Scalar::int(2) * &nn) * &kk) * &(&kk + &Scalar::rat(n as i64, 2));
            module.state(&gm(n - 1)).scaled(&c)
        }
        1 => {
            let c1 = &(&Scalar::int(3) * &nn) * &kk;
            let mut s = module.apply(&[BPMode::j(-1)], &module.state(&gm(n - 1))).scaled(&c1);
            if n >= 2 {
                let c2 = &(&nn * &Scalar::int(n as i64 - 1)) * &kk;
                let t = module.apply(&[BPMode::gm(-2)], &module.state(&gm(n - 2)));
                s.add_scaled(&c2, &t);
            }
            s
        }
        _ => return Err(WmodError::Invalid(format!("mode index {a} not covered by a closed form"))),
    };
    Ok((computed, expected))
}

/// `G-_1 (G+_0)^i v` on a highest-weight vector, as a multiple of
/// `(G+_0)^{i-1} v`. Returns the multiple.
pub fn top_pairing(level: &Level, w: &Weight, i: u32) -> Result<Scalar, WmodError> {
    if i == 0 {
        return Err(WmodError::Invalid("i must be positive".into()));
    }
    let module = BPModule::hwv(level.clone(), w.clone());
    let top = vec![BPMode::gp(0); i as usize];
    let r = module.apply(&[BPMode::gm(1)], &module.state(&top));
    let target: Mono = vec![BPMode::gp(0); i as usize - 1];
    let c = r.coeff(&target);
    if r.terms.len() > 1 || (r.terms.len() == 1 && c.is_zero()) {
        return Err(WmodError::Invalid("image is not proportional to (G+_0)^(i-1) v".into()));
    }
    Ok(c)
}

/// Polynomial quotient `top_pairing / h_i` when the division is exact.
pub fn top_pairing_quotient(level: &Level, i: u32) -> Result<Option<Polynomial>, WmodError> {
    let c = top_pairing(level, &Weight::symbolic(), i)?;
    let h = eval_h(i, level, &Weight::symbolic());
    let (Some(cp), Some(hp)) = (c.as_polynomial(), h.as_polynomial()) else {
        return Ok(None);
    };
    Ok(cp.div_exact(&hp))
}

/// Modes of positive shifted degree, used to form descendants.
fn lowering_modes(d: i64) -> Vec<BPMode> {
    let mut v = vec![BPMode::j(-d), BPMode::l(-d), BPMode::gp(-d), BPMode::gm(1 - d)];
    v.sort();
    v
}

fn lowering_monomials(n: i64, guards: &Guards) -> Result<Vec<Mono>, WmodError> {
    let mut modes = Vec::new();
    for d in 1..=n {
        modes.extend(lowering_modes(d));
    }
    modes.sort();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    enumerate(&modes, 0, n, 0, &mut cur, &mut out, guards)?;
    Ok(out)
}

/// Closure of homogeneous generators under the zero modes `G+_0`, `G-_1`.
fn zero_mode_closure(module: &BPModule, gens: &[BPState], guards: &Guards) -> Result<Vec<BPState>, WmodError> {
    let mut out: Vec<BPState> = Vec::new();
    let mut spans: BTreeMap<(i64, i64), EchelonBasis<Mono>> = BTreeMap::new();
    let mut queue: Vec<BPState> = gens.to_vec();
    while let Some(s) = queue.pop() {
        let Some(bd) = s.bidegree() else {
            if s.is_zero() {
                continue;
            }
            return Err(WmodError::NotHomogeneous);
        };
        if !spans.entry(bd).or_default().insert(&s.terms) {
            continue;
        }
        if out.len() > guards.max_slice_dim {
            return Err(WmodError::Resource("zero-mode closure too large".into()));
        }
        for m in [BPMode::gp(0), BPMode::gm(1)] {
            let t = module.act_mode(m, &s);
            if !t.is_zero() {
                queue.push(t);
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Spanning sets, per shifted weight `<= n`, of the submodule generated by
/// singular `generators`.
pub fn ideal_span(
    module: &BPModule,
    generators: &[BPState],
    n: i64,
    guards: &Guards,
) -> Result<BTreeMap<i64, Vec<BPState>>, WmodError> {
    if n > guards.max_weight {
        return Err(WmodError::Resource(format!("weight {n} above {}", guards.max_weight)));
    }
    let closure = zero_mode_closure(module, generators, guards)?;
    let mut out: BTreeMap<i64, Vec<BPState>> = BTreeMap::new();
    for g in &closure {
        let w0 = g.bidegree().map(|b| b.0).unwrap_or(0);
        for w in w0..=n {
            for m in lowering_monomials(w - w0, guards)? {
                let d = module.apply(&m, g);
                if !d.is_zero() {
                    let slot = out.entry(w).or_default();
                    slot.push(d);
                    if slot.len() > guards.max_slice_dim {
                        return Err(WmodError::Resource("ideal slice too large".into()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Row-reduced bases of the ideal, one per `(weight, charge)`.
#[derive(Clone, Debug, Default)]
pub struct IdealBasis {
    pub max_weight: i64,
    pub bases: BTreeMap<(i64, i64), EchelonBasis<Mono>>,
}

impl IdealBasis {
    pub fn build(module: &BPModule, generators: &[BPState], n: i64, guards: &Guards) -> Result<Self, WmodError> {
        let span = ideal_span(module, generators, n, guards)?;
        let mut bases: BTreeMap<(i64, i64), EchelonBasis<Mono>> = BTreeMap::new();
        for states in span.values() {
            for s in states {
                for (bd, comp) in super::module::components(s) {
                    bases.entry(bd).or_default().insert(&comp.terms);
                }
            }
        }
        Ok(IdealBasis { max_weight: n, bases })
    }

    pub fn dimension(&self, weight: i64) -> usize {
        self.bases.iter().filter(|(k, _)| k.0 == weight).map(|(_, b)| b.rank()).sum()
    }

    /// Canonical representative modulo the ideal.
    pub fn reduce(&self, s: &BPState) -> Result<BPState, WmodError> {
        let mut out = BPState::zero();
        for (bd, comp) in super::module::components(s) {
            if bd.0 > self.max_weight {
                return Err(WmodError::Resource(format!(
                    "state weight {} above reduction bound {}",
                    bd.0, self.max_weight
                )));
            }
            let r = match self.bases.get(&bd) {
                Some(b) => b.reduce(&comp.terms),
                None => comp.terms,
            };
            out.add_scaled(&Scalar::one(), &BPState { terms: r });
        }
        Ok(out)
    }
}

/// Row-reduced basis of the ideal generated by singular `generators` in a
/// single `(weight, charge)` space.
pub fn ideal_slice(
    module: &BPModule,
    generators: &[BPState],
    weight: i64,
    charge: i64,
    guards: &Guards,
) -> Result<EchelonBasis<Mono>, WmodError> {
    let closure = zero_mode_closure(module, generators, guards)?;
    let mut basis = EchelonBasis::new();
    for g in &closure {
        let Some((w0, c0)) = g.bidegree() else { continue };
        if w0 > weight {
            continue;
        }
        for m in lowering_monomials(weight - w0, guards)? {
            if mono_charge(&m) != charge - c0 {
                continue;
            }
            let d = module.apply(&m, g);
            if !d.is_zero() {
                basis.insert(&d.terms);
            }
        }
    }
    Ok(basis)
}

/// Reduces `state` modulo the submodule generated by `generators`.
pub fn ideal_reduce(
    module: &BPModule,
    generators: &[BPState],
    state: &BPState,
    n: i64,
    guards: &Guards,
) -> Result<BPState, WmodError> {
    let w = state.max_weight();
    if w > n {
        return Err(WmodError::Resource(format!("state weight {w} above {n}")));
    }
    if n > guards.max_weight {
        return Err(WmodError::Resource(format!("weight {n} above {}", guards.max_weight)));
    }
    let mut out = BPState::zero();
    for ((wt, ch), comp) in super::module::components(state) {
        let b = ideal_slice(module, generators, wt, ch, guards)?;
        out.add_scaled(&Scalar::one(), &BPState { terms: b.reduce(&comp.terms) });
    }
    Ok(out)
}

/// Generators `G+_{-1}^{k+2} 1` and `G-_{-1}^{k+2} 1` of the
/// maximal ideal at integer level.
pub fn simple_quotient_generators(module: &BPModule) -> Result<Vec<BPState>, WmodError> {
    let k = module
        .level()
        .integral()
        .ok_or_else(|| WmodError::Invalid("integer level k >= -1 required".into()))?;
    let (p, m) = vacuum_power_vectors(module, (k + 2) as u32);
    Ok(vec![p, m])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slices() {
        let g = Guards::default();
        let v = BPModule::vacuum(Level::int(1));
        assert_eq!(verma_slice(&v, 0, 0, &g).unwrap().dimension(), 1);
        let s1 = verma_slice(&v, 1, 0, &g).unwrap();
        assert_eq!(s1.basis, vec![vec![BPMode::j(-1)], vec![BPMode::gp(-1)]]);
        let h = BPModule::hwv(Level::int(1), Weight::symbolic());
        assert_eq!(verma_slice(&h, 0, 5, &g).unwrap().dimension(), 6);
        assert!(verma_slice(&v, 9, 0, &g).is_err());
    }

    #[test]
    fn vacuum_power_vectors_are_singular() {
        for k in [-1, 0, 1] {
            let r = vacuum_singular_suite(&Level::int(k));
            assert!(r.passed(), "k={k}: {:?}", r.plus.obstructions.first().map(|o| o.mode));
        }
        for (n, d) in [(1, 2), (2, 3)] {
            let r = vacuum_singular_suite(&Level::new(Scalar::rat(n, d)));
            assert!(!r.passed());
            assert!(!r.plus.obstructions.is_empty());
        }
        assert!(singular_check(&BPModule::vacuum(Level::int(1)), &BPState::head()).is_singular);
    }

    #[test]
    fn gplus_gminus_examples() {
        let v = BPModule::vacuum(Level::int(1));
        let (c, e) = gplus_on_gminus_power(&v, 2, 1).unwrap();
        assert_eq!(c, BPState::head().scaled(&Scalar::int(10)));
        assert_eq!(c, e);
        let (c, _) = gplus_on_gminus_power(&v, 2, 2).unwrap();
        assert_eq!(c, v.state(&[BPMode::gm(-1)]).scaled(&Scalar::int(8)));
        let (c, _) = gplus_on_gminus_power(&v, 2, 3).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn gplus_gminus_symbolic() {
        let v = BPModule::vacuum(Level::symbolic());
        for n in 1..=4 {
            for a in [1, 2] {
                let (c, e) = gplus_on_gminus_power(&v, a, n).unwrap();
                assert_eq!(c, e, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn top_pairing_examples() {
        let k1 = Level::int(1);
        assert!(top_pairing(&k1, &Weight::rat(0, 1, 0, 1), 1).unwrap().is_zero());
        assert!(top_pairing(&k1, &Weight::rat(-1, 3, 0, 1), 2).unwrap().is_zero());
        let c = top_pairing(&k1, &Weight::symbolic(), 1).unwrap();
        assert_eq!(c, eval_h(1, &k1, &Weight::symbolic()));
        for k in [1, 2] {
            for i in 1..=3 {
                let q = top_pairing_quotient(&Level::int(k), i).unwrap();
                assert!(q.is_some(), "k={k} i={i}");
                assert_eq!(q.unwrap(), Polynomial::constant(crate::exact::rat(i as i64, 1)));
            }
        }
    }

    #[test]
    fn ideal_examples() {
        let g = Guards::default();
        let v = BPModule::vacuum(Level::int(1));
        let gens = simple_quotient_generators(&v).unwrap();
        let span = ideal_span(&v, &gens[..1], 3, &g).unwrap();
        assert_eq!(span.keys().copied().collect::<Vec<_>>(), vec![3]);
        let span = ideal_span(&v, &gens, 4, &g).unwrap();
        assert!(span.contains_key(&3) && span.contains_key(&4));
        assert!(ideal_span(&v, &[], 4, &g).unwrap().is_empty());

        let basis = IdealBasis::build(&v, &gens, 4, &g).unwrap();
        assert!(basis.reduce(&gens[0]).unwrap().is_zero());
        let j = v.state(&[BPMode::j(-1)]);
        assert_eq!(basis.reduce(&j).unwrap(), j);
        assert!(basis.reduce(&BPState::zero()).unwrap().is_zero());
    }
}
