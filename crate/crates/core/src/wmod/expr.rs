use std::fmt;

use super::modes::{BPMode, Gen};
use crate::classify::Level;
use crate::exact::Scalar;

/// A factor of a mode product: a generator mode or a mode `(J^2)_p` of the
/// normally ordered square of `J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Mode(BPMode),
    JJ(i64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Mode(m) => write!(f, "{m}"),
            Atom::JJ(p) => write!(f, "(J^2)_{p}"),
        }
    }
}

/// A linear combination of mode products. Each product is listed left to
/// right as written, so the rightmost atom acts first; the empty product is
/// the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeExpr {
    pub terms: Vec<(Scalar, Vec<Atom>)>,
}

impl ModeExpr {
    pub fn zero() -> Self {
        ModeExpr::default()
    }

    pub fn identity(c: Scalar) -> Self {
        let mut e = ModeExpr::zero();
        e.push(c, vec![]);
        e
    }

    pub fn mode(m: BPMode) -> Self {
        let mut e = ModeExpr::zero();
        e.push(Scalar::one(), vec![Atom::Mode(m)]);
        e
    }

    pub fn push(&mut self, c: Scalar, atoms: Vec<Atom>) {
        if c.is_zero() {
            return;
        }
        if let Some(t) = self.terms.iter_mut().find(|t| t.1 == atoms) {
            t.0 += &c;
            if t.0.is_zero() {
                self.terms.retain(|t| !t.0.is_zero());
            }
        } else {
            self.terms.push((c, atoms));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> ModeExpr {
        let mut e = ModeExpr::zero();
        for (x, a) in &self.terms {
            e.push(x * c, a.clone());
        }
        e
    }

    pub fn add(&self, other: &ModeExpr) -> ModeExpr {
        let mut e = self.clone();
        for (x, a) in &other.terms {
            e.push(x.clone(), a.clone());
        }
        e
    }

    /// Product `self * other` (other acts first).
    pub fn compose(&self, other: &ModeExpr) -> ModeExpr {
        let mut e = ModeExpr::zero();
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let mut atoms = a.clone();
                atoms.extend(b.iter().copied());
                e.push(x * y, atoms);
            }
        }
        e
    }

    /// The terms sorted into a canonical order, for comparisons.
    pub fn canonical(&self) -> Vec<(Scalar, Vec<Atom>)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| format!("{:?}", a.1).cmp(&format!("{:?}", b.1)));
        t
    }
}

impl fmt::Display for ModeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, atoms)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if atoms.is_empty() {
                f.write_str("*id")?;
            }
            for a in atoms {
                write!(f, "*{a}")?;
            }
        }
        Ok(())
    }
}

/// Central charge `-(3k+1)(2k+3)/(k+3)` of the unshifted Virasoro field.
pub fn central_charge(level: &Level) -> Scalar {
    let k = level.k();
    let a = &(&Scalar::int(3) * k) + &Scalar::one();
    let b = &(&Scalar::int(2) * k) + &Scalar::int(3);
    let num = -(&a * &b);
    num.checked_div(&(k + &Scalar::int(3)))
        .expect("central charge needs k != -3")
}

fn delta(a: i64, b: i64) -> bool {
    a == b
}

/// `[a, b]` from the defining commutation relations.
pub fn commutator(level: &Level, a: BPMode, b: BPMode) -> ModeExpr {
    use Gen::*;
    let k = level.k();
    let (m, n) = (a.index, b.index);
    let s = Scalar::int;
    let mut e = ModeExpr::zero();
    match (a.gen, b.gen) {
        (J, J) => {
            if delta(m + n, 0) {
                e.push(&level.flow_shift() * &s(m), vec![]);
            }
        }
        (J, Gplus) => e.push(s(1), vec![Atom::Mode(BPMode::gp(m + n))]),
        (J, Gminus) => e.push(s(-1), vec![Atom::Mode(BPMode::gm(m + n))]),
        (L, J) => e.push(s(-n), vec![Atom::Mode(BPMode::j(m + n))]),
        (L, Gplus) | (L, Gminus) => {
            let c = &Scalar::rat(m - 2 * n + 1, 2) * &s(1);
            e.push(c, vec![Atom::Mode(BPMode::new(b.gen, m + n))]);
        }
        (L, L) => {
            e.push(s(m - n), vec![Atom::Mode(BPMode::l(m + n))]);
            if delta(m + n, 0) {
                let c = &central_charge(level) * &Scalar::rat(m * m * m - m, 12);
                e.push(c, vec![]);
            }
        }
        (Gplus, Gminus) => {
            let p = m + n - 1;
            e.push(s(3), vec![Atom::JJ(p)]);
            let c1 = &(&Scalar::rat(3, 2) * &(k + &s(1))) * &s(m - n);
            e.push(c1, vec![Atom::Mode(BPMode::j(p))]);
            e.push(-(k + &s(3)), vec![Atom::Mode(BPMode::l(p))]);
            if delta(m + n, 1) {
                let c = &(&(k + &s(1)) * &(&(&s(2) * k) + &s(3))) * &Scalar::rat((m - 1) * m, 2);
                e.push(c, vec![]);
            }
        }
        (Gplus, Gplus) | (Gminus, Gminus) => {}
        _ => return commutator(level, b, a).scaled(&s(-1)),
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_examples() {
        let k1 = Level::int(1);
        let e = commutator(&k1, BPMode::j(1), BPMode::j(-1));
        assert_eq!(e, ModeExpr::identity(Scalar::rat(5, 3)));
        let e = commutator(&k1, BPMode::l(1), BPMode::gp(-1));
        assert_eq!(e.terms, vec![(Scalar::int(2), vec![Atom::Mode(BPMode::gp(0))])]);
        let e = commutator(&k1, BPMode::gp(2), BPMode::gm(-1));
        let want = vec![
            (Scalar::int(3), vec![Atom::JJ(0)]),
            (Scalar::int(9), vec![Atom::Mode(BPMode::j(0))]),
            (Scalar::int(-4), vec![Atom::Mode(BPMode::l(0))]),
            (Scalar::int(10), vec![]),
        ];
        assert_eq!(e.terms, want);
    }

    #[test]
    fn antisymmetry() {
        let lv = Level::symbolic();
        for a in [BPMode::j(2), BPMode::l(-1), BPMode::gp(1), BPMode::gm(-2)] {
            for b in [BPMode::j(-2), BPMode::l(1), BPMode::gp(0), BPMode::gm(3)] {
                let ab = commutator(&lv, a, b);
                let ba = commutator(&lv, b, a).scaled(&Scalar::int(-1));
                assert_eq!(ab.canonical(), ba.canonical(), "{a} {b}");
            }
        }
    }

    #[test]
    fn central_charge_level_one() {
        assert_eq!(central_charge(&Level::int(1)), Scalar::int(-5));
    }
}
