use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::spec::{compile_factor, AlgebraSpec, CompiledFactor, FactorKind, SpecError};
use super::state::{FState, LocalMono, TensorMono};
use crate::classify::Level;
use crate::exact::{axpy, binom_int, rat, Rational, Scalar, SparseVec};
use crate::wmod::{BPMode, BPModule, BPState, Gen};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("unknown field {0}")]
    UnknownField(String),
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    #[error("{0}")]
    Invalid(String),
}

/// A field whose modes the engine applies directly: a generator of a
/// factor, or a lattice vertex operator `e^{charge phi}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Gen { factor: usize, gen: usize },
    Vertex { factor: usize, charge: i64 },
}

type LocalKey = (usize, u16, i64, LocalMono);
type ProductKey = (TensorMono, i64, TensorMono);

/// A registered tensor product of factors.
pub struct Algebra {
    pub name: String,
    factors: Vec<CompiledFactor>,
    bp: Vec<Option<BPModule>>,
    local_cache: Mutex<HashMap<LocalKey, SparseVec<LocalMono>>>,
    product_cache: Mutex<HashMap<ProductKey, FState>>,
    pub max_depth: usize,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra({})", self.name)
    }
}

/// Validates `spec` and compiles it into a handle.
pub fn register_algebra(spec: &AlgebraSpec) -> Result<Arc<Algebra>, EngineError> {
    let mut names = std::collections::BTreeSet::new();
    let mut factors = Vec::new();
    let mut bp = Vec::new();
    for f in &spec.factors {
        if !names.insert(f.name.clone()) {
            return Err(SpecError::DuplicateFactor(f.name.clone()).into());
        }
        let c = compile_factor(f)?;
        bp.push(if c.spec.kind == FactorKind::BpAbstract {
            Some(BPModule::vacuum(Level::new(c.level.clone())))
        } else {
            None
        });
        factors.push(c);
    }
    Ok(Arc::new(Algebra {
        name: spec.name.clone(),
        factors,
        bp,
        local_cache: Mutex::new(HashMap::new()),
        product_cache: Mutex::new(HashMap::new()),
        max_depth: 64,
    }))
}

fn floor(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("bound fits in i64")
}

fn sign_of(odd: bool) -> Scalar {
    if odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

impl Algebra {
    pub fn factors(&self) -> &[CompiledFactor] {
        &self.factors
    }

    pub fn factor_index(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.spec.name == name)
    }

    pub fn nfactors(&self) -> usize {
        self.factors.len()
    }

    /// Resolves `factor.gen`; lattice factors also accept `e+`, `e-`.
    pub fn field(&self, factor: &str, gen: &str) -> Result<Field, EngineError> {
        let unknown = || EngineError::UnknownField(format!("{factor}.{gen}"));
        let fi = self.factor_index(factor).ok_or_else(unknown)?;
        let f = &self.factors[fi];
        if f.spec.kind == FactorKind::LatticeRank1 {
            match gen {
                "e+" => return Ok(Field::Vertex { factor: fi, charge: 1 }),
                "e-" => return Ok(Field::Vertex { factor: fi, charge: -1 }),
                _ => {}
            }
        }
        let g = f.gen_index(gen).ok_or_else(unknown)?;
        Ok(Field::Gen { factor: fi, gen: g })
    }

    pub fn field_name(&self, fl: Field) -> String {
        match fl {
            Field::Gen { factor, gen } => {
                format!("{}.{}", self.factors[factor].spec.name, self.factors[factor].gen_name(gen))
            }
            Field::Vertex { factor, charge } => {
                format!("{}.e^{}", self.factors[factor].spec.name, charge)
            }
        }
    }

    pub fn vacuum(&self) -> FState {
        FState::vacuum(self.nfactors())
    }

    /// The state `g_(-1) |0>` of a generator, or `e^{c phi}` for a vertex operator.
    pub fn field_state(&self, fl: Field) -> FState {
        match fl {
            Field::Gen { .. } => self.mode(fl, -1, &self.vacuum()),
            Field::Vertex { factor, charge } => self.lattice_vector(factor, charge),
        }
    }

    pub fn lattice_vector(&self, factor: usize, charge: i64) -> FState {
        let mut m = vec![LocalMono::vacuum(); self.nfactors()];
        m[factor] = LocalMono::lattice(charge);
        FState::mono(m, Scalar::one())
    }

    /// Generator state by dotted name, e.g. `"osp.x"`.
    pub fn gen(&self, dotted: &str) -> Result<FState, EngineError> {
        let (f, g) = dotted
            .split_once('.')
            .ok_or_else(|| EngineError::UnknownField(dotted.to_string()))?;
        Ok(self.field_state(self.field(f, g)?))
    }

    pub fn field_parity(&self, fl: Field) -> bool {
        match fl {
            Field::Gen { factor, gen } => self.factors[factor].odd[gen],
            Field::Vertex { factor, charge } => {
                (self.factors[factor].lattice_norm * charge * charge).rem_euclid(2) == 1
            }
        }
    }

    pub fn field_weight(&self, fl: Field) -> Rational {
        match fl {
            Field::Gen { factor, gen } => self.factors[factor].weights[gen].clone(),
            Field::Vertex { factor, charge } => {
                rat(self.factors[factor].lattice_norm * charge * charge, 2)
            }
        }
    }

    fn local_weight(&self, f: usize, m: &LocalMono) -> Rational {
        let fac = &self.factors[f];
        let mut w = rat(fac.lattice_norm * m.charge * m.charge, 2);
        for &(g, n) in &m.modes {
            w += &fac.weights[g as usize] - rat(n + 1, 1);
        }
        w
    }

    fn local_parity(&self, f: usize, m: &LocalMono) -> bool {
        let fac = &self.factors[f];
        let mut p = (fac.lattice_norm * m.charge * m.charge).rem_euclid(2) == 1;
        for &(g, _) in &m.modes {
            p ^= fac.odd[g as usize];
        }
        p
    }

    pub fn mono_weight(&self, m: &TensorMono) -> Rational {
        m.iter()
            .enumerate()
            .fold(rat(0, 1), |acc, (f, lm)| acc + self.local_weight(f, lm))
    }

    pub fn mono_parity(&self, m: &TensorMono) -> bool {
        m.iter()
            .enumerate()
            .fold(false, |acc, (f, lm)| acc ^ self.local_parity(f, lm))
    }

    fn min_weight(&self, charges: &[i64]) -> Rational {
        charges
            .iter()
            .enumerate()
            .fold(rat(0, 1), |acc, (f, c)| acc + rat(self.factors[f].lattice_norm * c * c, 2))
    }

    /// Weight of a state when homogeneous.
    pub fn weight(&self, s: &FState) -> Option<Rational> {
        let mut it = s.terms.keys().map(|m| self.mono_weight(m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Parity of a state when homogeneous.
    pub fn parity(&self, s: &FState) -> Option<bool> {
        let mut it = s.terms.keys().map(|m| self.mono_parity(m));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Largest `n` with `a_(n) b` possibly nonzero, for homogeneous `a`, `b`.
    pub fn pole_bound(&self, a: &FState, b: &FState) -> Option<i64> {
        let (ca, cb) = (self.charges(a)?, self.charges(b)?);
        let c: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        let w = self.weight(a)? + self.weight(b)? - rat(1, 1) - self.min_weight(&c);
        Some(floor(&w))
    }

    /// Lattice charges per factor, when homogeneous.
    pub fn charges(&self, s: &FState) -> Option<Vec<i64>> {
        let mut it = s.terms.keys().map(|m| m.iter().map(|l| l.charge).collect::<Vec<_>>());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    fn bracket_linear(&self, f: usize, a: (u16, i64), b: (u16, i64)) -> Vec<(Scalar, Option<(u16, i64)>)> {
        let fac = &self.factors[f];
        let mut out = Vec::new();
        let Some(row) = fac.products.get(&(a.0 as usize, b.0 as usize)) else {
            return out;
        };
        let (m, n) = (a.1, b.1);
        for (&j, lc) in row {
            let c = Scalar::from(binom_int(m, j));
            if c.is_zero() {
                continue;
            }
            let idx = m + n - j as i64;
            for (g, d) in &lc.gens {
                out.push((&c * d, Some((*g as u16, idx))));
            }
            if idx == -1 && !lc.vac.is_zero() {
                out.push((&c * &lc.vac, None));
            }
        }
        out
    }

    fn act_linear(&self, f: usize, a: (u16, i64), m: &LocalMono) -> SparseVec<LocalMono> {
        let fac = &self.factors[f];
        let mut out = SparseVec::new();
        if m.modes.is_empty() {
            if a.1 <= -1 {
                out.insert(
                    LocalMono {
                        charge: m.charge,
                        modes: vec![a],
                    },
                    Scalar::one(),
                );
            } else if a.1 == 0 && fac.spec.kind == FactorKind::LatticeRank1 && m.charge != 0 {
                out.insert(m.clone(), Scalar::int(fac.lattice_norm * m.charge));
            }
            return out;
        }
        let first = m.modes[0];
        let odd_a = fac.odd[a.0 as usize];
        if a.1 <= -1 && (a < first || (a == first && !odd_a)) {
            let mut modes = Vec::with_capacity(m.modes.len() + 1);
            modes.push(a);
            modes.extend_from_slice(&m.modes);
            out.insert(
                LocalMono {
                    charge: m.charge,
                    modes,
                },
                Scalar::one(),
            );
            return out;
        }
        let key = (f, a.0, a.1, m.clone());
        if let Some(hit) = self.local_cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let rest = LocalMono {
            charge: m.charge,
            modes: m.modes[1..].to_vec(),
        };
        if a.1 <= -1 && a == first {
            // odd a: a_n a_n = 1/2 [a_n, a_n]
            for (c, t) in self.bracket_linear(f, a, a) {
                let c = &c * &Scalar::rat(1, 2);
                match t {
                    Some(b) => axpy(&mut out, &c, &self.act_linear(f, b, &rest)),
                    None => axpy(&mut out, &c, &SparseVec::from([(rest.clone(), Scalar::one())])),
                }
            }
        } else {
            let inner = self.act_linear(f, a, &rest);
            let s = sign_of(odd_a && fac.odd[first.0 as usize]);
            for (lm, c) in &inner {
                axpy(&mut out, &(&s * c), &self.act_linear(f, first, lm));
            }
            for (c, t) in self.bracket_linear(f, a, first) {
                match t {
                    Some(b) => axpy(&mut out, &c, &self.act_linear(f, b, &rest)),
                    None => axpy(&mut out, &c, &SparseVec::from([(rest.clone(), Scalar::one())])),
                }
            }
        }
        self.local_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn to_bp(m: &LocalMono) -> Vec<BPMode> {
        m.modes
            .iter()
            .map(|&(g, n)| match g {
                0 => BPMode::j(n),
                1 => BPMode::l(n - 1),
                2 => BPMode::gp(n),
                _ => BPMode::gm(n),
            })
            .collect()
    }

    fn from_bp(m: &[BPMode]) -> LocalMono {
        LocalMono {
            charge: 0,
            modes: m
                .iter()
                .map(|x| match x.gen {
                    Gen::J => (0, x.index),
                    Gen::L => (1, x.index + 1),
                    Gen::Gplus => (2, x.index),
                    Gen::Gminus => (3, x.index),
                })
                .collect(),
        }
    }

    fn act_bp(&self, f: usize, a: (u16, i64), m: &LocalMono) -> SparseVec<LocalMono> {
        let module = self.bp[f].as_ref().expect("bp factor");
        let mode = Self::to_bp(&LocalMono {
            charge: 0,
            modes: vec![a],
        })[0];
        let r = module.act_mode(mode, &BPState::mono(Self::to_bp(m), Scalar::one()));
        r.terms.iter().map(|(k, c)| (Self::from_bp(k), c.clone())).collect()
    }

    fn act_vertex(&self, f: usize, a: i64, n: i64, m: &LocalMono) -> SparseVec<LocalMono> {
        let fac = &self.factors[f];
        let phi = fac.gen_index("phi").expect("lattice factor has phi") as u16;
        let acn = a * m.charge * fac.lattice_norm;
        let dmax: i64 = m.modes.iter().map(|&(_, k)| -k).sum();
        // P_d = (1/d) sum_j (-a phi_(j)) P_{d-j}
        let mut p: Vec<SparseVec<LocalMono>> = vec![SparseVec::from([(m.clone(), Scalar::one())])];
        let mut out = SparseVec::new();
        for dminus in 0..=dmax {
            if dminus > 0 {
                let mut next = SparseVec::new();
                for j in 1..=dminus {
                    for (lm, c) in &p[(dminus - j) as usize] {
                        let img = self.act_linear(f, (phi, j), lm);
                        axpy(&mut next, &(&Scalar::int(-a) * c), &img);
                    }
                }
                let next: SparseVec<LocalMono> = next
                    .into_iter()
                    .map(|(k, c)| (k, &c * &Scalar::rat(1, dminus)))
                    .collect();
                p.push(next);
            }
            let dplus = -n - 1 - acn + dminus;
            if dplus < 0 || p[dminus as usize].is_empty() {
                continue;
            }
            let shifted: SparseVec<LocalMono> = p[dminus as usize]
                .iter()
                .map(|(k, c)| {
                    (
                        LocalMono {
                            charge: k.charge + a,
                            modes: k.modes.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect();
            // Q_d = (1/d) sum_j a phi_(-j) Q_{d-j}
            let mut q = vec![shifted];
            for d in 1..=dplus {
                let mut next = SparseVec::new();
                for j in 1..=d {
                    for (lm, c) in &q[(d - j) as usize] {
                        let img = self.act_linear(f, (phi, -j), lm);
                        axpy(&mut next, &(&Scalar::int(a) * c), &img);
                    }
                }
                q.push(
                    next.into_iter()
                        .map(|(k, c)| (k, &c * &Scalar::rat(1, d)))
                        .collect(),
                );
            }
            axpy(&mut out, &Scalar::one(), &q[dplus as usize]);
        }
        out
    }

    fn act_local(&self, fl: Field, n: i64, f: usize, m: &LocalMono) -> SparseVec<LocalMono> {
        match fl {
            Field::Vertex { charge, .. } => self.act_vertex(f, charge, n, m),
            Field::Gen { gen, .. } => {
                if self.factors[f].spec.kind == FactorKind::BpAbstract {
                    self.act_bp(f, (gen as u16, n), m)
                } else {
                    self.act_linear(f, (gen as u16, n), m)
                }
            }
        }
    }

    /// The mode `fl_(n)` applied to a state.
    pub fn mode(&self, fl: Field, n: i64, s: &FState) -> FState {
        let f = match fl {
            Field::Gen { factor, .. } | Field::Vertex { factor, .. } => factor,
        };
        let odd = self.field_parity(fl);
        let mut out = FState::zero();
        for (tm, c) in &s.terms {
            let before = tm[..f]
                .iter()
                .enumerate()
                .fold(false, |acc, (i, lm)| acc ^ self.local_parity(i, lm));
            let coef = &sign_of(odd && before) * c;
            for (lm, d) in self.act_local(fl, n, f, &tm[f]) {
                let mut t = tm.clone();
                t[f] = lm;
                axpy(&mut out.terms, &(&coef * &d), &FState::mono(t, Scalar::one()).terms);
            }
        }
        out
    }

    /// Splits a non-vacuum basis vector as `u_(m) v`.
    fn decompose(&self, am: &TensorMono) -> Option<(Field, i64, TensorMono)> {
        let f = am.iter().position(|l| !l.is_vacuum())?;
        let lm = &am[f];
        let mut v = am.clone();
        if let Some(&(g, n)) = lm.modes.first() {
            v[f] = LocalMono {
                charge: lm.charge,
                modes: lm.modes[1..].to_vec(),
            };
            Some((
                Field::Gen {
                    factor: f,
                    gen: g as usize,
                },
                n,
                v,
            ))
        } else {
            v[f] = LocalMono::vacuum();
            Some((
                Field::Vertex {
                    factor: f,
                    charge: lm.charge,
                },
                -1,
                v,
            ))
        }
    }

    fn truncation(&self, wt_a: &Rational, ch_a: &[i64], bm: &TensorMono) -> i64 {
        let ch: Vec<i64> = ch_a.iter().zip(bm).map(|(a, b)| a + b.charge).collect();
        floor(&(wt_a + &self.mono_weight(bm) - rat(1, 1) - self.min_weight(&ch)))
    }

    fn prod_basis(&self, am: &TensorMono, n: i64, bm: &TensorMono, depth: usize) -> Result<FState, EngineError> {
        if depth > self.max_depth {
            return Err(EngineError::Resource(format!("recursion depth above {}", self.max_depth)));
        }
        let Some((u, m, v)) = self.decompose(am) else {
            return Ok(if n == -1 {
                FState::mono(bm.clone(), Scalar::one())
            } else {
                FState::zero()
            });
        };
        let key = (am.clone(), n, bm.clone());
        if let Some(hit) = self.product_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let b = FState::mono(bm.clone(), Scalar::one());
        let nf = self.nfactors();
        let mut ch_u = vec![0; nf];
        if let Field::Vertex { factor, charge } = u {
            ch_u[factor] = charge;
        }
        let ch_v: Vec<i64> = v.iter().map(|l| l.charge).collect();
        let kmax_v = self.truncation(&self.mono_weight(&v), &ch_v, bm);
        let jmax_u = self.truncation(&self.field_weight(u), &ch_u, bm);
        let p_uv = self.field_parity(u) && self.mono_parity(&v);
        let vstate = FState::mono(v.clone(), Scalar::one());
        let mut out = FState::zero();
        let jcap = |j: i64| m < 0 || j <= m;
        let mut j = 0;
        while n + j <= kmax_v && jcap(j) {
            let c = Scalar::from(binom_int(m, j as u32));
            let c = if j.is_odd() { -c } else { c };
            let x = self.nth_product_depth(&vstate, n + j, &b, depth + 1)?;
            if !x.is_zero() {
                out.add_scaled(&c, &self.mode(u, m - j, &x));
            }
            j += 1;
        }
        let outer = sign_of((m.rem_euclid(2) == 1) ^ p_uv);
        for j in 0..=jmax_u {
            if !jcap(j) {
                break;
            }
            let c = Scalar::from(binom_int(m, j as u32));
            let c = if j.is_odd() { -c } else { c };
            let y = self.mode(u, j, &b);
            if y.is_zero() {
                continue;
            }
            let z = self.nth_product_depth(&vstate, m + n - j, &y, depth + 1)?;
            out.add_scaled(&-(&c * &outer), &z);
        }
        self.product_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn nth_product_depth(&self, a: &FState, n: i64, b: &FState, depth: usize) -> Result<FState, EngineError> {
        let mut out = FState::zero();
        for (am, ca) in &a.terms {
            for (bm, cb) in &b.terms {
                let r = self.prod_basis(am, n, bm, depth)?;
                out.add_scaled(&(ca * cb), &r);
            }
        }
        Ok(out)
    }

    /// `a_(n) b`.
    pub fn nth_product(&self, a: &FState, n: i64, b: &FState) -> Result<FState, EngineError> {
        self.nth_product_depth(a, n, b, 0)
    }

    /// Normally ordered product `a_(-1) b`.
    pub fn nop(&self, a: &FState, b: &FState) -> Result<FState, EngineError> {
        self.nth_product(a, -1, b)
    }

    /// Translation `D a = a_(-2) |0>`.
    pub fn deriv(&self, a: &FState) -> Result<FState, EngineError> {
        self.nth_product(a, -2, &self.vacuum())
    }

    /// `D^j a / j!`.
    pub fn divided_deriv(&self, a: &FState, j: u32) -> Result<FState, EngineError> {
        self.nth_product(a, -(j as i64) - 1, &self.vacuum())
    }

    pub fn clear_caches(&self) {
        self.local_cache.lock().unwrap().clear();
        self.product_cache.lock().unwrap().clear();
    }

    /// Weight of a basis vector, exposed for bounds in callers.
    pub fn basis_weight(&self, m: &TensorMono) -> Rational {
        self.mono_weight(m)
    }

    /// The mode engine behind a `bp-abstract` factor.
    pub fn bp_module(&self, factor: usize) -> Option<&BPModule> {
        self.bp.get(factor).and_then(|b| b.as_ref())
    }

    /// Converts between a `bp-abstract` local vector and mode-engine states.
    pub fn bp_local_to_state(m: &LocalMono) -> BPState {
        BPState::mono(Self::to_bp(m), Scalar::one())
    }

    pub fn bp_state_to_local(s: &BPState) -> SparseVec<LocalMono> {
        s.terms.iter().map(|(k, c)| (Self::from_bp(k), c.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Var;
    use crate::ffield::spec::*;

    fn alg(factors: Vec<FactorSpec>) -> Arc<Algebra> {
        register_algebra(&AlgebraSpec::new("t", factors)).unwrap()
    }

    #[test]
    fn free_field_basics() {
        let a = alg(vec![heisenberg("H", &["a"], &[("a", "a", Scalar::one())])]);
        let x = a.gen("H.a").unwrap();
        assert_eq!(a.nth_product(&x, 1, &x).unwrap(), a.vacuum());
        assert!(a.nth_product(&x, 0, &x).unwrap().is_zero());

        let c = alg(vec![clifford_half()]);
        let phi = c.field("Fh", "phi").unwrap();
        let s = c.mode(phi, -1, &c.vacuum());
        assert_eq!(c.mode(phi, 0, &s), c.vacuum());
        assert!(c.mode(phi, -1, &s).is_zero());
    }

    #[test]
    fn lattice_vertex_products() {
        let l = alg(vec![lattice_minus1()]);
        let phi = l.field("L", "phi").unwrap();
        let ep = l.field_state(l.field("L", "e+").unwrap());
        let em = l.field_state(l.field("L", "e-").unwrap());
        let s = l.mode(phi, -1, &l.vacuum());
        assert_eq!(l.mode(phi, 1, &s), l.vacuum().scaled(&Scalar::int(-1)));
        let two = l.mode(phi, -1, &l.lattice_vector(0, 2));
        assert_eq!(l.nth_product(&ep, -1, &ep).unwrap(), two);
        assert_eq!(l.nth_product(&ep, 0, &ep).unwrap(), l.lattice_vector(0, 2));
        assert_eq!(l.nth_product(&ep, -3, &em).unwrap(), s);
        assert_eq!(l.nth_product(&ep, -2, &em).unwrap(), l.vacuum());
        assert_eq!(l.weight(&ep), Some(rat(-1, 2)));
        assert_eq!(l.parity(&ep), Some(true));
    }

    #[test]
    fn tau_products() {
        let a = alg(vec![osp12_symbolic(), clifford_f()]);
        let tp = a.nop(&a.gen("F.psi+").unwrap(), &a.gen("osp.x").unwrap()).unwrap();
        let tm = a.nop(&a.gen("F.psi-").unwrap(), &a.gen("osp.y").unwrap()).unwrap();
        let kp = Scalar::var(Var::KP);
        let r = a.nth_product(&tp, 2, &tm).unwrap();
        assert_eq!(r, a.vacuum().scaled(&(&Scalar::int(-2) * &kp)));
        let alpha = a.nop(&a.gen("F.psi+").unwrap(), &a.gen("F.psi-").unwrap()).unwrap();
        let want = alpha
            .scaled(&(&Scalar::int(-2) * &kp))
            .minus(&a.gen("osp.h").unwrap());
        assert_eq!(a.nth_product(&tp, 1, &tm).unwrap(), want);
    }

    #[test]
    fn bp_factor_products() {
        let a = alg(vec![bp(Scalar::int(1))]);
        let gp = a.gen("W.G+").unwrap();
        let gm = a.gen("W.G-").unwrap();
        let j = a.gen("W.J").unwrap();
        assert_eq!(a.nth_product(&gp, 2, &gm).unwrap(), a.vacuum().scaled(&Scalar::int(10)));
        assert_eq!(a.nth_product(&gp, 1, &gm).unwrap(), j.scaled(&Scalar::int(6)));
        assert_eq!(a.nth_product(&j, 1, &j).unwrap(), a.vacuum().scaled(&Scalar::rat(5, 3)));
        let t = a.gen("W.T").unwrap();
        let c = a.nth_product(&t, 3, &t).unwrap();
        assert_eq!(c, a.vacuum().scaled(&Scalar::rat(-5, 2)));
    }
}
