use std::collections::BTreeMap;

use super::engine::Algebra;
use super::spec::FactorKind;
use super::state::FState;
use num_traits::ToPrimitive;

use crate::exact::{binom_general, rat, Rational, Scalar};

/// A fermion mode `psi^g(r)` with `r` a half-integer stored as `2r`.
type FMode = (usize, i64);

/// Vector in the fermionic Fock space: occupied creation modes, kept in
/// increasing order, each with a coefficient.
pub type FockVec = BTreeMap<Vec<FMode>, Scalar>;

/// Brute-force Fock-space model of a single Clifford factor.
///
/// Modes act by inserting or deleting entries of the occupation list with
/// the sign of the crossed entries, independent of the engine's
/// commutation algorithm.
pub struct FockOracle {
    /// Partner generator under the pairing and the pairing value.
    partner: Vec<(usize, Scalar)>,
}

impl FockOracle {
    pub fn new(alg: &Algebra, factor: usize) -> Option<Self> {
        let f = &alg.factors()[factor];
        if !matches!(f.spec.kind, FactorKind::CliffordNeutral | FactorKind::CliffordCharged) {
            return None;
        }
        let n = f.spec.generators.len();
        let mut partner = vec![(0, Scalar::zero()); n];
        for a in 0..n {
            for b in 0..n {
                if let Some(lc) = f.products.get(&(a, b)).and_then(|r| r.get(&0)) {
                    if !lc.vac.is_zero() {
                        partner[a] = (b, lc.vac.clone());
                    }
                }
            }
        }
        Some(FockOracle { partner })
    }

    /// `psi^g(r)` on a basis vector, `r = tr / 2`.
    pub fn act(&self, g: usize, tr: i64, v: &[FMode]) -> Option<(Scalar, Vec<FMode>)> {
        if tr < 0 {
            let m = (g, tr);
            let pos = v.partition_point(|x| *x < m);
            if v.get(pos) == Some(&m) {
                return None;
            }
            let mut out = v.to_vec();
            out.insert(pos, m);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            Some((Scalar::int(sign), out))
        } else {
            let (p, c) = &self.partner[g];
            let m = (*p, -tr);
            let pos = v.iter().position(|x| *x == m)?;
            let mut out = v.to_vec();
            out.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            Some((c * &Scalar::int(sign), out))
        }
    }

    pub fn act_vec(&self, g: usize, tr: i64, v: &FockVec) -> FockVec {
        let mut out = FockVec::new();
        for (b, c) in v {
            if let Some((s, nb)) = self.act(g, tr, b) {
                let e = out.entry(nb.clone()).or_insert_with(Scalar::zero);
                *e += &(c * &s);
                if e.is_zero() {
                    out.remove(&nb);
                }
            }
        }
        out
    }

    /// Engine state of a single-factor algebra, rebuilt by oracle modes.
    pub fn from_state(&self, s: &FState) -> FockVec {
        let mut out = FockVec::new();
        for (tm, c) in s.terms.iter() {
            let mut v = FockVec::from([(vec![], c.clone())]);
            for &(g, n) in tm[0].modes.iter().rev() {
                v = self.act_vec(g as usize, 2 * n + 1, &v);
            }
            for (b, d) in v {
                let e = out.entry(b.clone()).or_insert_with(Scalar::zero);
                *e += &d;
                if e.is_zero() {
                    out.remove(&b);
                }
            }
        }
        out
    }

    fn weight(v: &[FMode]) -> Rational {
        v.iter().fold(rat(0, 1), |acc, &(_, tr)| acc + rat(-tr, 2))
    }

    /// `a_(n) b` for a basis vector `a`, from the normally ordered product of
    /// the fields `D^{(m)} psi(z)` read off `a`.
    pub fn product(&self, a: &[FMode], n: i64, b: &FockVec) -> FockVec {
        let mut out = FockVec::new();
        if a.is_empty() {
            if n == -1 {
                return b.clone();
            }
            return out;
        }
        let bmax = b.keys().map(|k| Self::weight(k)).max().unwrap_or_else(|| rat(0, 1));
        // psi(-m-1/2) |0> gives D^{(m)} psi(z) = sum_r binom(-r-1/2, m) psi(r) z^{-r-1/2-m}
        let fields: Vec<(usize, i64)> = a.iter().map(|&(g, tr)| (g, (-tr - 1) / 2)).collect();
        let wa = Self::weight(a);
        let total_weight = &wa + &bmax;
        let rmax = total_weight.ceil().to_integer().to_i64().unwrap_or(20) * 2 + 2;
        // choose 2r_i for each field with sum of exponents -n-1
        let mut choice = vec![0i64; fields.len()];
        fn rec(
            o: &FockOracle,
            fields: &[(usize, i64)],
            i: usize,
            choice: &mut Vec<i64>,
            target2: i64,
            rmax: i64,
            b: &FockVec,
            out: &mut FockVec,
        ) {
            if i == fields.len() {
                // exponent sum: sum(-r_i - 1/2 - m_i) = -n-1, doubled
                let s: i64 = fields
                    .iter()
                    .zip(choice.iter())
                    .map(|(&(_, m), &tr)| -tr - 1 - 2 * m)
                    .sum();
                if s != target2 {
                    return;
                }
                let mut coef = Scalar::one();
                for (&(_, m), &tr) in fields.iter().zip(choice.iter()) {
                    let t = Scalar::rat(-tr - 1, 2);
                    coef = &coef * &binom_general(&t, m as u32);
                    if coef.is_zero() {
                        return;
                    }
                }
                // normal order: creators (tr < 0) left, annihilators right, stable
                let mut idx: Vec<usize> = (0..fields.len()).collect();
                idx.sort_by_key(|&k| choice[k] > 0);
                let mut sign = 1;
                for x in 0..idx.len() {
                    for y in x + 1..idx.len() {
                        if idx[x] > idx[y] {
                            sign = -sign;
                        }
                    }
                }
                let mut v = b.clone();
                for &k in idx.iter().rev() {
                    v = o.act_vec(fields[k].0, choice[k], &v);
                    if v.is_empty() {
                        return;
                    }
                }
                let c = &coef * &Scalar::int(sign);
                for (bb, d) in v {
                    let e = out.entry(bb.clone()).or_insert_with(Scalar::zero);
                    *e += &(&c * &d);
                    if e.is_zero() {
                        out.remove(&bb);
                    }
                }
                return;
            }
            if i + 1 == fields.len() {
                let partial: i64 = fields[..i]
                    .iter()
                    .zip(choice.iter())
                    .map(|(&(_, m), &tr)| -tr - 1 - 2 * m)
                    .sum();
                choice[i] = -(target2 - partial) - 1 - 2 * fields[i].1;
                rec(o, fields, i + 1, choice, target2, rmax, b, out);
                return;
            }
            let mut tr = -rmax - 1;
            while tr <= rmax + 1 {
                choice[i] = tr;
                rec(o, fields, i + 1, choice, target2, rmax, b, out);
                tr += 2;
            }
        }
        rec(self, &fields, 0, &mut choice, -2 * n - 2, rmax, b, &mut out);
        out
    }

    /// `a_(n) b` for engine states `a`, `b`.
    pub fn nth_product(&self, a: &FState, n: i64, b: &FState) -> FockVec {
        let av = self.from_state(a);
        let bv = self.from_state(b);
        let mut out = FockVec::new();
        for (am, c) in &av {
            for (k, d) in self.product(am, n, &bv) {
                let e = out.entry(k.clone()).or_insert_with(Scalar::zero);
                *e += &(c * &d);
                if e.is_zero() {
                    out.remove(&k);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{clifford_f, clifford_half, register_algebra, AlgebraSpec};

    #[test]
    fn oracle_matches_engine_on_small_products() {
        let a = register_algebra(&AlgebraSpec::new("f", vec![clifford_f()])).unwrap();
        let o = FockOracle::new(&a, 0).unwrap();
        let p = a.gen("F.psi+").unwrap();
        let m = a.gen("F.psi-").unwrap();
        let alpha = a.nop(&p, &m).unwrap();
        for n in -3..=2 {
            for (x, y) in [(&p, &m), (&alpha, &p), (&alpha, &alpha), (&m, &alpha)] {
                let e = a.nth_product(x, n, y).unwrap();
                assert_eq!(o.from_state(&e), o.nth_product(x, n, y), "n={n}");
            }
        }
        let h = register_algebra(&AlgebraSpec::new("h", vec![clifford_half()])).unwrap();
        let o = FockOracle::new(&h, 0).unwrap();
        let phi = h.field("Fh", "phi").unwrap();
        let w = h.mode(phi, -2, &h.mode(phi, -1, &h.vacuum())).scaled(&Scalar::rat(1, 2));
        for n in -2..=3 {
            let e = h.nth_product(&w, n, &w).unwrap();
            assert_eq!(o.from_state(&e), o.nth_product(&w, n, &w), "n={n}");
        }
    }
}
