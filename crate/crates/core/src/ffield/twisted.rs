use std::collections::BTreeMap;
use std::fmt;

use super::engine::{Algebra, EngineError, Field};
use super::spec::FactorKind;
use super::state::FState;
use crate::exact::{binom_general, rat, Rational, Scalar};

/// Finite Laurent expansion `sum_p z^p state_p`, keyed by the power `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentState {
    pub terms: BTreeMap<Rational, FState>,
}

impl LaurentState {
    pub fn add(&mut self, power: Rational, s: &FState) {
        let slot = self.terms.entry(power.clone()).or_default();
        slot.add_scaled(&Scalar::one(), s);
        if slot.is_zero() {
            self.terms.remove(&power);
        }
    }

    /// The coefficient of `z^p`.
    pub fn coeff(&self, p: i64) -> FState {
        self.terms.get(&rat(p, 1)).cloned().unwrap_or_default()
    }
}

impl fmt::Display for LaurentState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, s)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{s}] z^{p}")?;
        }
        Ok(())
    }
}

/// Checks `h_(n) h = delta_{n,1} gamma` for `n >= 0`, and
/// `w_(n+1) h = delta_{n,0} h` when a conformal vector is given.
pub fn validate_delta_vector(alg: &Algebra, h: &FState, omega: Option<&FState>) -> Result<Scalar, EngineError> {
    if alg.weight(h) != Some(rat(1, 1)) {
        return Err(EngineError::Invalid("h must be homogeneous of weight 1".into()));
    }
    if !alg.nth_product(h, 0, h)?.is_zero() {
        return Err(EngineError::Invalid("h_(0) h is nonzero".into()));
    }
    let one = alg.nth_product(h, 1, h)?;
    let gamma = one.vacuum_coeff();
    if one != alg.vacuum().scaled(&gamma) {
        return Err(EngineError::Invalid("h_(1) h is not a multiple of the vacuum".into()));
    }
    if let Some(w) = omega {
        if alg.nth_product(w, 1, h)? != *h {
            return Err(EngineError::Invalid("h is not of conformal weight 1".into()));
        }
        for n in 2..=3 {
            if !alg.nth_product(w, n, h)?.is_zero() {
                return Err(EngineError::Invalid("h is not primary".into()));
            }
        }
    }
    Ok(gamma)
}

/// `Delta(h,z) a = z^{h_(0)} exp(sum_{k>=1} h_(k)/(-k) (-z)^{-k}) a`.
pub fn delta_op(alg: &Algebra, h: &FState, a: &FState, omega: Option<&FState>) -> Result<LaurentState, EngineError> {
    validate_delta_vector(alg, h, omega)?;
    let top = alg
        .weight(a)
        .ok_or_else(|| EngineError::Invalid("a must be homogeneous".into()))?;
    let kmax = top.floor().to_integer();
    let kmax: i64 = num_traits::ToPrimitive::to_i64(&kmax).unwrap_or(0).max(0);
    // X^j a / j!, tracked by the total power of z
    let mut exp = LaurentState::default();
    let mut layer: BTreeMap<i64, FState> = BTreeMap::from([(0, a.clone())]);
    let mut j = 0i64;
    while !layer.is_empty() {
        for (p, s) in &layer {
            exp.add(rat(*p, 1), s);
        }
        j += 1;
        let mut next: BTreeMap<i64, FState> = BTreeMap::new();
        for (p, s) in &layer {
            for k in 1..=kmax {
                let c = Scalar::rat(if k % 2 == 0 { -1 } else { 1 }, k * j);
                let t = alg.nth_product(h, k, s)?;
                if !t.is_zero() {
                    next.entry(p - k).or_default().add_scaled(&c, &t);
                }
            }
        }
        next.retain(|_, s| !s.is_zero());
        layer = next;
    }
    let mut out = LaurentState::default();
    for (p, s) in &exp.terms {
        for (m, c) in &s.terms {
            let mono = FState::mono(m.clone(), Scalar::one());
            let h0 = alg.nth_product(h, 0, &mono)?;
            let lam = if h0.is_zero() {
                Scalar::zero()
            } else {
                let l = h0.terms.get(m).cloned().unwrap_or_default();
                if h0 != mono.scaled(&l) {
                    return Err(EngineError::Invalid("h_(0) is not diagonal on a".into()));
                }
                l
            };
            let lam = lam
                .as_rational()
                .cloned()
                .ok_or_else(|| EngineError::Invalid("h_(0) eigenvalue is not rational".into()))?;
            out.add(p + &lam, &mono.scaled(c));
        }
    }
    Ok(out)
}

/// `C_{m,n} = 1/2 (m-n)/(m+n+1) binom(-1/2,m) binom(-1/2,n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedCoeff {
    pub m: u32,
    pub n: u32,
    pub value: Rational,
}

impl TwistedCoeff {
    pub fn new(m: u32, n: u32) -> Self {
        let mh = Scalar::rat(-1, 2);
        let b = &binom_general(&mh, m) * &binom_general(&mh, n);
        let pre = Scalar::rat(m as i64 - n as i64, 2 * (m as i64 + n as i64 + 1));
        let v = &pre * &b;
        TwistedCoeff {
            m,
            n,
            value: v.as_rational().cloned().expect("rational"),
        }
    }
}

/// `e^{Delta_z} a` for a state of a neutral fermion factor, with
/// `Delta_z = 1/2 sum C_{m,n} Phi(m+1/2) Phi(n+1/2) z^{-m-n-1}`.
pub fn twisted_correction_f12(alg: &Algebra, factor: usize, a: &FState) -> Result<LaurentState, EngineError> {
    let f = &alg.factors()[factor];
    if f.spec.kind != FactorKind::CliffordNeutral || f.spec.generators.len() != 1 {
        return Err(EngineError::Invalid("needs a single neutral fermion factor".into()));
    }
    let phi = Field::Gen { factor, gen: 0 };
    let top = alg
        .weight(a)
        .ok_or_else(|| EngineError::Invalid("a must be homogeneous".into()))?;
    let top: i64 = num_traits::ToPrimitive::to_i64(&top.floor().to_integer()).unwrap_or(0);
    let mut exp = LaurentState::default();
    let mut layer: BTreeMap<i64, FState> = BTreeMap::from([(0, a.clone())]);
    let mut j = 0i64;
    while !layer.is_empty() {
        for (p, s) in &layer {
            exp.add(rat(*p, 1), s);
        }
        j += 1;
        let mut next: BTreeMap<i64, FState> = BTreeMap::new();
        for (p, s) in &layer {
            for m in 0..top.max(0) {
                for n in 0..top.max(0) - m {
                    if m == n {
                        continue;
                    }
                    let c = TwistedCoeff::new(m as u32, n as u32).value;
                    let c = &Scalar::from(c) * &Scalar::rat(1, 2 * j);
                    let t = alg.mode(phi, m, &alg.mode(phi, n, s));
                    if !t.is_zero() {
                        next.entry(p - m - n - 1).or_default().add_scaled(&c, &t);
                    }
                }
            }
        }
        next.retain(|_, s| !s.is_zero());
        layer = next;
    }
    Ok(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{clifford_f, clifford_half, register_algebra, AlgebraSpec};

    #[test]
    fn twisted_coefficients() {
        assert_eq!(TwistedCoeff::new(0, 1).value, rat(1, 8));
        assert_eq!(TwistedCoeff::new(0, 0).value, rat(0, 1));
        for m in 0..=8 {
            for n in 0..=8 {
                assert_eq!(TwistedCoeff::new(m, n).value, -TwistedCoeff::new(n, m).value);
            }
        }
    }

    #[test]
    fn fermion_twist() {
        let a = register_algebra(&AlgebraSpec::new("h", vec![clifford_half()])).unwrap();
        let phi = a.field("Fh", "phi").unwrap();
        let w = a
            .mode(phi, -2, &a.mode(phi, -1, &a.vacuum()))
            .scaled(&Scalar::rat(1, 2));
        let r = twisted_correction_f12(&a, 0, &w).unwrap();
        assert_eq!(r.coeff(0), w);
        assert_eq!(r.coeff(-2), a.vacuum().scaled(&Scalar::rat(1, 16)));
        assert_eq!(r.terms.len(), 2);
        let s = a.mode(phi, -1, &a.vacuum());
        let r = twisted_correction_f12(&a, 0, &s).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.coeff(0), s);
    }

    #[test]
    fn charge_twist() {
        let a = register_algebra(&AlgebraSpec::new("f", vec![clifford_f()])).unwrap();
        let alpha = a.nop(&a.gen("F.psi+").unwrap(), &a.gen("F.psi-").unwrap()).unwrap();
        let h = alpha.scaled(&Scalar::rat(1, 2));
        let wf = a.nop(&alpha, &alpha).unwrap().scaled(&Scalar::rat(1, 2));
        let r = delta_op(&a, &h, &wf, Some(&wf)).unwrap();
        assert_eq!(r.coeff(0), wf);
        assert_eq!(r.coeff(-1), h);
        assert_eq!(r.coeff(-2), a.vacuum().scaled(&Scalar::rat(1, 8)));
        let r = delta_op(&a, &h, &alpha, None).unwrap();
        assert_eq!(r.coeff(0), alpha);
        assert_eq!(r.coeff(-1), a.vacuum().scaled(&Scalar::rat(1, 2)));
        let r = delta_op(&a, &h, &a.vacuum(), None).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert!(delta_op(&a, &wf, &alpha, None).is_err());
    }
}
