use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use super::expr::{commutator, Atom, ModeExpr};
use super::modes::{BPMode, Gen};
use crate::classify::{Level, Weight};
use crate::exact::{axpy, Scalar, SparseVec};

/// A PBW monomial: creation modes in PBW order, leftmost applied last.
pub type Mono = Vec<BPMode>;

/// The vector the creation monomials act on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Head {
    Vacuum,
    /// `J_0 v = x v`, `L_0 v = (y + x/2) v`, so `y` is the eigenvalue of the
    /// shifted `L(0)`.
    Hwv(Weight),
}

impl fmt::Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Vacuum => f.write_str("vac"),
            Head::Hwv(w) => write!(f, "hwv({},{})", w.x, w.y),
        }
    }
}

/// A state of a [`BPModule`]: a combination of PBW monomials on the head.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BPState {
    pub terms: SparseVec<Mono>,
}

impl BPState {
    pub fn zero() -> Self {
        BPState::default()
    }

    pub fn head() -> Self {
        BPState::mono(vec![], Scalar::one())
    }

    pub fn mono(m: Mono, c: Scalar) -> Self {
        let mut s = BPState::zero();
        if !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &BPState) {
        axpy(&mut self.terms, c, &other.terms);
    }

    pub fn scaled(&self, c: &Scalar) -> BPState {
        let mut s = BPState::zero();
        s.add_scaled(c, self);
        s
    }

    pub fn sub(&self, other: &BPState) -> BPState {
        let mut s = self.clone();
        s.add_scaled(&Scalar::int(-1), other);
        s
    }

    pub fn plus(&self, other: &BPState) -> BPState {
        let mut s = self.clone();
        s.add_scaled(&Scalar::one(), other);
        s
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &[BPMode]) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest shifted weight among the monomials.
    pub fn max_weight(&self) -> i64 {
        self.terms.keys().map(|m| mono_weight(m)).max().unwrap_or(0)
    }

    /// `(shifted weight, charge)` when all monomials agree.
    pub fn bidegree(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| (mono_weight(m), mono_charge(m)));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for BPState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for x in m {
                write!(f, " {x}")?;
            }
        }
        Ok(())
    }
}

pub fn mono_weight(m: &[BPMode]) -> i64 {
    m.iter().map(|x| x.degree()).sum()
}

pub fn mono_charge(m: &[BPMode]) -> i64 {
    m.iter().map(|x| x.gen.charge()).sum()
}

/// The vacuum module of the universal algebra, or the Verma-type module on
/// a highest-weight vector, at a fixed level. Mode action is memoised.
pub struct BPModule {
    level: Level,
    head: Head,
    cache: Mutex<HashMap<(BPMode, Mono), BPState>>,
}

impl fmt::Debug for BPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPModule(k={}, {})", self.level.k(), self.head)
    }
}

impl BPModule {
    pub fn new(level: Level, head: Head) -> Self {
        BPModule {
            level,
            head,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn vacuum(level: Level) -> Self {
        BPModule::new(level, Head::Vacuum)
    }

    pub fn hwv(level: Level, w: Weight) -> Self {
        BPModule::new(level, Head::Hwv(w))
    }

    pub fn level(&self) -> &Level {
        &self.level
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn is_creation(&self, a: BPMode) -> bool {
        let n = a.index;
        match (&self.head, a.gen) {
            (Head::Vacuum, Gen::L) => n <= -2,
            (Head::Vacuum, _) => n <= -1,
            (Head::Hwv(_), Gen::J | Gen::L) => n <= -1,
            (Head::Hwv(_), Gen::Gplus | Gen::Gminus) => n <= 0,
        }
    }

    fn on_head(&self, a: BPMode) -> BPState {
        if self.is_creation(a) {
            return BPState::mono(vec![a], Scalar::one());
        }
        match (&self.head, a.gen, a.index) {
            (Head::Hwv(w), Gen::J, 0) => BPState::mono(vec![], w.x.clone()),
            (Head::Hwv(w), Gen::L, 0) => {
                BPState::mono(vec![], &w.y + &(&w.x * &Scalar::rat(1, 2)))
            }
            _ => BPState::zero(),
        }
    }

    fn act_mono(&self, a: BPMode, mono: &[BPMode]) -> BPState {
        if mono.is_empty() {
            return self.on_head(a);
        }
        let m1 = mono[0];
        if self.is_creation(a) && a <= m1 {
            let mut m = Vec::with_capacity(mono.len() + 1);
            m.push(a);
            m.extend_from_slice(mono);
            return BPState::mono(m, Scalar::one());
        }
        let key = (a, mono.to_vec());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let rest = &mono[1..];
        let inner = self.act_mono(a, rest);
        let mut out = self.act_mode(m1, &inner);
        let br = commutator(&self.level, a, m1);
        let tail = BPState::mono(rest.to_vec(), Scalar::one());
        out.add_scaled(&Scalar::one(), &self.act(&br, &tail));
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// A single mode applied to a state.
    pub fn act_mode(&self, a: BPMode, s: &BPState) -> BPState {
        let mut out = BPState::zero();
        for (m, c) in &s.terms {
            out.add_scaled(c, &self.act_mono(a, m));
        }
        out
    }

    /// `(J^2)_p = sum_{j<=-1} J_j J_{p-j} + sum_{j>=0} J_{p-j} J_j`, truncated
    /// by the weight of the state.
    pub fn act_jj(&self, p: i64, s: &BPState) -> BPState {
        let mut out = BPState::zero();
        for (m, c) in &s.terms {
            let w = mono_weight(m);
            let single = BPState::mono(m.clone(), c.clone());
            for j in (p - w)..=-1 {
                let t = self.act_mode(BPMode::j(p - j), &single);
                out.add_scaled(&Scalar::one(), &self.act_mode(BPMode::j(j), &t));
            }
            for j in 0..=w {
                let t = self.act_mode(BPMode::j(j), &single);
                out.add_scaled(&Scalar::one(), &self.act_mode(BPMode::j(p - j), &t));
            }
        }
        out
    }

    pub fn act_atom(&self, a: Atom, s: &BPState) -> BPState {
        match a {
            Atom::Mode(m) => self.act_mode(m, s),
            Atom::JJ(p) => self.act_jj(p, s),
        }
    }

    /// A mode expression applied to a state.
    pub fn act(&self, e: &ModeExpr, s: &BPState) -> BPState {
        let mut out = BPState::zero();
        for (c, atoms) in &e.terms {
            let mut t = s.clone();
            for a in atoms.iter().rev() {
                if t.is_zero() {
                    break;
                }
                t = self.act_atom(*a, &t);
            }
            out.add_scaled(c, &t);
        }
        out
    }

    /// Applies modes right to left: `apply(&[a, b], s) = a b s`.
    pub fn apply(&self, modes: &[BPMode], s: &BPState) -> BPState {
        let mut t = s.clone();
        for &m in modes.iter().rev() {
            t = self.act_mode(m, &t);
        }
        t
    }

    /// `modes` applied to the head.
    pub fn state(&self, modes: &[BPMode]) -> BPState {
        self.apply(modes, &BPState::head())
    }

    pub fn cache_len(&self) -> usize {
        self.cache.lock().unwrap().len()
    }
}

/// Groups a state's monomials by `(weight, charge)`.
pub fn components(s: &BPState) -> BTreeMap<(i64, i64), BPState> {
    let mut out: BTreeMap<(i64, i64), BPState> = BTreeMap::new();
    for (m, c) in &s.terms {
        out.entry((mono_weight(m), mono_charge(m)))
            .or_default()
            .terms
            .insert(m.clone(), c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wmod::expr::commutator;

    #[test]
    fn act_examples() {
        let v = BPModule::vacuum(Level::int(1));
        let gp = v.state(&[BPMode::gp(-1)]);
        assert_eq!(v.act_mode(BPMode::j(0), &gp), gp);
        let gm = v.state(&[BPMode::gm(-1)]);
        assert_eq!(v.act_mode(BPMode::gp(2), &gm), BPState::head().scaled(&Scalar::int(10)));
        let h = BPModule::hwv(Level::int(1), Weight::symbolic());
        assert!(h.act_mode(BPMode::l(1), &BPState::head()).is_zero());
    }

    #[test]
    fn smith_relation_on_top() {
        // G-_1 G+_0 v = g(x, y) v
        let lv = Level::symbolic();
        let h = BPModule::hwv(lv.clone(), Weight::symbolic());
        let r = h.state(&[BPMode::gm(1), BPMode::gp(0)]);
        let g = crate::classify::eval_g(&lv, &Weight::symbolic());
        assert_eq!(r, BPState::head().scaled(&g));
    }

    #[test]
    fn commutator_consistency_small() {
        let v = BPModule::vacuum(Level::int(1));
        let s = v.state(&[BPMode::gm(-1), BPMode::j(-1)]);
        for a in [BPMode::gp(1), BPMode::l(-1), BPMode::j(2)] {
            for b in [BPMode::gm(0), BPMode::gp(-1), BPMode::l(1)] {
                let lhs = v.act_mode(a, &v.act_mode(b, &s)).sub(&v.act_mode(b, &v.act_mode(a, &s)));
                let rhs = v.act(&commutator(v.level(), a, b), &s);
                assert_eq!(lhs, rhs, "{a} {b}");
            }
        }
    }
}
