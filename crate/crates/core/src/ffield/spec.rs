use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{rat, Rational, Scalar, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("factor {factor}: duplicate generator {name}")]
    DuplicateGenerator { factor: String, name: String },
    #[error("factor {factor}: undeclared symbol {name}")]
    Undeclared { factor: String, name: String },
    #[error("factor {factor}: generator {name} has no parity")]
    MissingParity { factor: String, name: String },
    #[error("factor {factor}: entry {entry}: {msg}")]
    BadEntry { factor: String, entry: String, msg: String },
    #[error("duplicate factor {0}")]
    DuplicateFactor(String),
    #[error("{0}")]
    Other(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Heisenberg,
    CliffordNeutral,
    CliffordCharged,
    LatticeRank1,
    AffineSuper,
    BpAbstract,
}

impl FactorKind {
    pub fn name(self) -> &'static str {
        match self {
            FactorKind::Heisenberg => "heisenberg",
            FactorKind::CliffordNeutral => "clifford-neutral",
            FactorKind::CliffordCharged => "clifford-charged",
            FactorKind::LatticeRank1 => "lattice-rank1",
            FactorKind::AffineSuper => "affine-super",
            FactorKind::BpAbstract => "bp-abstract",
        }
    }

    pub fn from_name(s: &str) -> Option<FactorKind> {
        [
            FactorKind::Heisenberg,
            FactorKind::CliffordNeutral,
            FactorKind::CliffordCharged,
            FactorKind::LatticeRank1,
            FactorKind::AffineSuper,
            FactorKind::BpAbstract,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }

    /// Clifford modes are labelled by half-integers in the surface syntax.
    pub fn half_integer_modes(self) -> bool {
        matches!(self, FactorKind::CliffordNeutral | FactorKind::CliffordCharged)
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub name: String,
    /// `None` only in unvalidated specs.
    pub odd: Option<bool>,
    pub weight: Rational,
}

impl GenSpec {
    pub fn new(name: &str, odd: bool, weight: Rational) -> Self {
        GenSpec {
            name: name.to_string(),
            odd: Some(odd),
            weight,
        }
    }
}

/// `[a, b] = sum c_i g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub a: String,
    pub b: String,
    pub rhs: Vec<(Scalar, String)>,
}

/// `(a, b) = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingEntry {
    pub a: String,
    pub b: String,
    pub value: Scalar,
}

/// Declarative description of one tensor factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSpec {
    pub name: String,
    pub kind: FactorKind,
    pub generators: Vec<GenSpec>,
    pub brackets: Vec<BracketEntry>,
    pub pairings: Vec<PairingEntry>,
    /// Multiplies the pairing for affine factors; the level of a `bp-abstract` factor.
    pub level: Option<Scalar>,
    /// `<phi, phi>` for a rank-one lattice.
    pub lattice_norm: Option<i64>,
}

impl FactorSpec {
    pub fn new(name: &str, kind: FactorKind) -> Self {
        FactorSpec {
            name: name.to_string(),
            kind,
            generators: vec![],
            brackets: vec![],
            pairings: vec![],
            level: None,
            lattice_norm: None,
        }
    }

    pub fn gen(mut self, name: &str, odd: bool, weight: Rational) -> Self {
        self.generators.push(GenSpec::new(name, odd, weight));
        self
    }

    pub fn bracket(mut self, a: &str, b: &str, rhs: &[(Scalar, &str)]) -> Self {
        self.brackets.push(BracketEntry {
            a: a.into(),
            b: b.into(),
            rhs: rhs.iter().map(|(c, g)| (c.clone(), g.to_string())).collect(),
        });
        self
    }

    pub fn pairing(mut self, a: &str, b: &str, value: Scalar) -> Self {
        self.pairings.push(PairingEntry {
            a: a.into(),
            b: b.into(),
            value,
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub factors: Vec<FactorSpec>,
}

impl AlgebraSpec {
    pub fn new(name: &str, factors: Vec<FactorSpec>) -> Self {
        AlgebraSpec {
            name: name.to_string(),
            factors,
        }
    }

    pub fn tensor(&self, other: &AlgebraSpec) -> AlgebraSpec {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        AlgebraSpec::new(&format!("{}*{}", self.name, other.name), f)
    }
}

/// `a_(j) b` for generators: a combination of generators plus a vacuum term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinComb {
    pub gens: Vec<(usize, Scalar)>,
    pub vac: Scalar,
}

impl LinComb {
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty() && self.vac.is_zero()
    }
}

/// Products `a_(j) b`, `j >= 0`, of generators of a linear factor.
pub type ProductTable = BTreeMap<(usize, usize), BTreeMap<u32, LinComb>>;

/// A validated factor with compiled product tables.
#[derive(Clone, Debug)]
pub struct CompiledFactor {
    pub spec: FactorSpec,
    pub odd: Vec<bool>,
    pub weights: Vec<Rational>,
    pub products: ProductTable,
    pub level: Scalar,
    pub lattice_norm: i64,
}

impl CompiledFactor {
    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.spec.generators.iter().position(|g| g.name == name)
    }

    pub fn gen_name(&self, i: usize) -> &str {
        &self.spec.generators[i].name
    }
}

fn sign(odd: bool) -> Scalar {
    if odd {
        Scalar::int(-1)
    } else {
        Scalar::one()
    }
}

fn bad(f: &FactorSpec, entry: String, msg: &str) -> SpecError {
    SpecError::BadEntry {
        factor: f.name.clone(),
        entry,
        msg: msg.to_string(),
    }
}

fn is_nonneg_integer(r: &Rational) -> Option<u32> {
    (r.is_integer() && *r >= rat(0, 1)).then(|| r.to_integer().try_into().ok()).flatten()
}

/// Validates `spec` and compiles its product tables.
pub fn compile_factor(spec: &FactorSpec) -> Result<CompiledFactor, SpecError> {
    let f = spec;
    let mut seen = std::collections::BTreeSet::new();
    for g in &f.generators {
        if !seen.insert(g.name.clone()) {
            return Err(SpecError::DuplicateGenerator {
                factor: f.name.clone(),
                name: g.name.clone(),
            });
        }
        if g.odd.is_none() {
            return Err(SpecError::MissingParity {
                factor: f.name.clone(),
                name: g.name.clone(),
            });
        }
    }
    let idx = |name: &str| -> Result<usize, SpecError> {
        f.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| SpecError::Undeclared {
                factor: f.name.clone(),
                name: name.to_string(),
            })
    };
    let odd: Vec<bool> = f.generators.iter().map(|g| g.odd.unwrap()).collect();
    let weights: Vec<Rational> = f.generators.iter().map(|g| g.weight.clone()).collect();
    let level = f.level.clone().unwrap_or_else(Scalar::one);
    let lattice_norm = f.lattice_norm.unwrap_or(0);

    match f.kind {
        FactorKind::CliffordNeutral | FactorKind::CliffordCharged => {
            for (i, g) in f.generators.iter().enumerate() {
                if !odd[i] || g.weight != rat(1, 2) {
                    return Err(bad(f, g.name.clone(), "Clifford generators are odd of weight 1/2"));
                }
            }
        }
        FactorKind::Heisenberg | FactorKind::AffineSuper => {
            for g in &f.generators {
                if g.weight != rat(1, 1) {
                    return Err(bad(f, g.name.clone(), "currents have weight 1"));
                }
            }
        }
        FactorKind::LatticeRank1 => {
            if lattice_norm == 0 {
                return Err(bad(f, "norm".into(), "lattice needs a nonzero norm"));
            }
        }
        FactorKind::BpAbstract => {
            if f.level.is_none() {
                return Err(bad(f, "level".into(), "bp-abstract needs a level"));
            }
        }
    }

    let mut products: ProductTable = BTreeMap::new();
    let mut bracket_seen = BTreeMap::new();
    for e in &f.brackets {
        let entry = format!("[{},{}]", e.a, e.b);
        if f.kind != FactorKind::AffineSuper {
            return Err(bad(f, entry, "brackets are only allowed in affine factors"));
        }
        let (a, b) = (idx(&e.a)?, idx(&e.b)?);
        let mut lc = LinComb::default();
        for (c, g) in &e.rhs {
            let gi = idx(g)?;
            if odd[gi] != (odd[a] ^ odd[b]) {
                return Err(bad(f, entry.clone(), "parity of the bracket is inconsistent"));
            }
            if !c.is_zero() {
                lc.gens.push((gi, c.clone()));
            }
        }
        if bracket_seen.insert((a, b), lc.clone()).is_some() {
            return Err(bad(f, entry, "bracket given twice"));
        }
    }
    // fill in missing brackets by super skew-symmetry, and check consistency
    let n = f.generators.len();
    let mut full: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let s = -sign(odd[a] && odd[b]);
            let ab = bracket_seen.get(&(a, b)).map(|l: &LinComb| l.gens.clone());
            let ba = bracket_seen.get(&(b, a)).map(|l: &LinComb| l.gens.clone());
            let v = match (ab, ba) {
                (Some(x), Some(y)) => {
                    let flipped: Vec<_> = y.iter().map(|(g, c)| (*g, &s * c)).collect();
                    if normalize(&x) != normalize(&flipped) {
                        return Err(bad(
                            f,
                            format!("[{},{}]", f.generators[a].name, f.generators[b].name),
                            "bracket is not super skew-symmetric",
                        ));
                    }
                    x
                }
                (Some(x), None) => x,
                (None, Some(y)) => y.iter().map(|(g, c)| (*g, &s * c)).collect(),
                (None, None) => vec![],
            };
            full.insert((a, b), normalize(&v));
        }
    }

    let mut pair_seen: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for e in &f.pairings {
        let entry = format!("({},{})", e.a, e.b);
        let (a, b) = (idx(&e.a)?, idx(&e.b)?);
        if odd[a] != odd[b] && !e.value.is_zero() {
            return Err(bad(f, entry, "pairing between generators of different parity"));
        }
        if pair_seen.insert((a, b), e.value.clone()).is_some() {
            return Err(bad(f, entry, "pairing given twice"));
        }
    }
    let mut pair_full: BTreeMap<(usize, usize), (u32, Scalar)> = BTreeMap::new();
    for a in 0..n {
        for b in 0..n {
            let jj = &(&weights[a] + &weights[b]) - &rat(1, 1);
            let Some(j) = is_nonneg_integer(&jj) else {
                if pair_seen.contains_key(&(a, b)) {
                    return Err(bad(
                        f,
                        format!("({},{})", f.generators[a].name, f.generators[b].name),
                        "weights admit no central term",
                    ));
                }
                continue;
            };
            // (b,a) = -(-1)^{p(a)p(b) + j} (a,b)
            let s = -sign((odd[a] && odd[b]) ^ (j % 2 == 1));
            let ab = pair_seen.get(&(a, b)).cloned();
            let ba = pair_seen.get(&(b, a)).cloned();
            let v = match (ab, ba) {
                (Some(x), Some(y)) => {
                    if x != &s * &y {
                        return Err(bad(
                            f,
                            format!("({},{})", f.generators[a].name, f.generators[b].name),
                            "pairing violates super-symmetry",
                        ));
                    }
                    x
                }
                (Some(x), None) => x,
                (None, Some(y)) => &s * &y,
                (None, None) => Scalar::zero(),
            };
            if !v.is_zero() {
                pair_full.insert((a, b), (j, v));
            }
        }
    }

    if f.kind == FactorKind::AffineSuper {
        check_affine(f, &odd, &full, &pair_full)?;
    }

    let scale = if f.kind == FactorKind::AffineSuper {
        level.clone()
    } else {
        Scalar::one()
    };
    for a in 0..n {
        for b in 0..n {
            let mut row: BTreeMap<u32, LinComb> = BTreeMap::new();
            let g = &full[&(a, b)];
            if !g.is_empty() {
                row.entry(0).or_default().gens = g.clone();
            }
            if let Some((j, v)) = pair_full.get(&(a, b)) {
                row.entry(*j).or_default().vac = &scale * v;
            }
            if !row.is_empty() {
                products.insert((a, b), row);
            }
        }
    }
    if f.kind == FactorKind::LatticeRank1 {
        // phi_(1) phi = <phi, phi>
        let phi = idx("phi")?;
        let mut row = BTreeMap::new();
        row.insert(
            1,
            LinComb {
                gens: vec![],
                vac: Scalar::int(lattice_norm),
            },
        );
        products.insert((phi, phi), row);
    }

    Ok(CompiledFactor {
        spec: f.clone(),
        odd,
        weights,
        products,
        level,
        lattice_norm,
    })
}

fn normalize(v: &[(usize, Scalar)]) -> Vec<(usize, Scalar)> {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (g, c) in v {
        *m.entry(*g).or_default() += c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn check_affine(
    f: &FactorSpec,
    odd: &[bool],
    br: &BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
    pair: &BTreeMap<(usize, usize), (u32, Scalar)>,
) -> Result<(), SpecError> {
    let n = odd.len();
    let bracket_of = |x: &[(usize, Scalar)], b: usize, left: bool| -> Vec<(usize, Scalar)> {
        // [x, b] or [b, x] for a combination x
        let mut out = vec![];
        for (g, c) in x {
            let key = if left { (*g, b) } else { (b, *g) };
            for (h, d) in &br[&key] {
                out.push((*h, c * d));
            }
        }
        normalize(&out)
    };
    let name = |i: usize| f.generators[i].name.clone();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // [a,[b,c]] = [[a,b],c] + (-1)^{p(a)p(b)} [b,[a,c]]
                let bc = &br[&(b, c)];
                let lhs = bracket_of(bc, a, false);
                let ab = &br[&(a, b)];
                let mut rhs = bracket_of(ab, c, true);
                let ac = &br[&(a, c)];
                let s = sign(odd[a] && odd[b]);
                for (h, d) in bracket_of(ac, b, false) {
                    rhs.push((h, &s * &d));
                }
                if lhs != normalize(&rhs) {
                    return Err(bad(
                        f,
                        format!("[{},[{},{}]]", name(a), name(b), name(c)),
                        "Jacobi identity fails",
                    ));
                }
                // ([a,b],c) = (a,[b,c])
                let form = |x: &[(usize, Scalar)], y: usize, left: bool| -> Scalar {
                    let mut acc = Scalar::zero();
                    for (g, cg) in x {
                        let key = if left { (*g, y) } else { (y, *g) };
                        if let Some((_, v)) = pair.get(&key) {
                            acc += &(cg * v);
                        }
                    }
                    acc
                };
                if form(ab, c, true) != form(bc, a, false) {
                    return Err(bad(
                        f,
                        format!("([{},{}],{})", name(a), name(b), name(c)),
                        "form is not invariant",
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Affine `osp(1|2)` at level `k'`.
pub fn osp12(level: Scalar) -> FactorSpec {
    let one = rat(1, 1);
    let s = Scalar::int;
    let mut f = FactorSpec::new("osp", FactorKind::AffineSuper)
        .gen("e", false, one.clone())
        .gen("f", false, one.clone())
        .gen("h", false, one.clone())
        .gen("x", true, one.clone())
        .gen("y", true, one)
        .bracket("e", "f", &[(s(1), "h")])
        .bracket("h", "e", &[(s(2), "e")])
        .bracket("h", "f", &[(s(-2), "f")])
        .bracket("h", "x", &[(s(1), "x")])
        .bracket("h", "y", &[(s(-1), "y")])
        .bracket("e", "x", &[])
        .bracket("f", "x", &[(s(-1), "y")])
        .bracket("e", "y", &[(s(-1), "x")])
        .bracket("f", "y", &[])
        .bracket("x", "x", &[(s(2), "e")])
        .bracket("x", "y", &[(s(1), "h")])
        .bracket("y", "y", &[(s(-2), "f")])
        .pairing("e", "f", s(1))
        .pairing("f", "e", s(1))
        .pairing("h", "h", s(2))
        .pairing("x", "y", s(2))
        .pairing("y", "x", s(-2));
    f.level = Some(level);
    f
}

pub fn osp12_symbolic() -> FactorSpec {
    osp12(Scalar::var(Var::KP))
}

/// Charged fermions `psi+`, `psi-` with `{psi+(r), psi-(s)} = delta_{r+s,0}`.
pub fn clifford_f() -> FactorSpec {
    FactorSpec::new("F", FactorKind::CliffordCharged)
        .gen("psi+", true, rat(1, 2))
        .gen("psi-", true, rat(1, 2))
        .pairing("psi+", "psi-", Scalar::one())
}

/// One neutral fermion `phi` with `{phi(r), phi(s)} = delta_{r+s,0}`.
pub fn clifford_half() -> FactorSpec {
    FactorSpec::new("Fh", FactorKind::CliffordNeutral)
        .gen("phi", true, rat(1, 2))
        .pairing("phi", "phi", Scalar::one())
}

/// Rank-one lattice `Z phi` with `<phi, phi> = -1`; vertex operators `e+`, `e-`.
pub fn lattice_minus1() -> FactorSpec {
    let mut f = FactorSpec::new("L", FactorKind::LatticeRank1).gen("phi", false, rat(1, 1));
    f.lattice_norm = Some(-1);
    f
}

/// Heisenberg currents with a symmetric pairing.
pub fn heisenberg(name: &str, gens: &[&str], pairing: &[(&str, &str, Scalar)]) -> FactorSpec {
    let mut f = FactorSpec::new(name, FactorKind::Heisenberg);
    for g in gens {
        f = f.gen(g, false, rat(1, 1));
    }
    for (a, b, v) in pairing {
        f = f.pairing(a, b, v.clone());
    }
    f
}

/// Abstract `W^k` factor; products come from the mode engine.
pub fn bp(level: Scalar) -> FactorSpec {
    let mut f = FactorSpec::new("W", FactorKind::BpAbstract)
        .gen("J", false, rat(1, 1))
        .gen("T", false, rat(2, 1))
        .gen("G+", false, rat(3, 2))
        .gen("G-", false, rat(3, 2));
    f.level = Some(level);
    f
}
