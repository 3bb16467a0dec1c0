use std::fmt;

use crate::exact::{axpy, Scalar, SparseVec};

/// One tensor factor of a basis vector: creation modes `(generator, n)` of
/// `a_(n)` in PBW order (leftmost applied last) on the factor's vacuum, or on
/// `e^{charge phi}` for a lattice factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalMono {
    pub charge: i64,
    pub modes: Vec<(u16, i64)>,
}

impl LocalMono {
    pub fn vacuum() -> Self {
        LocalMono::default()
    }

    pub fn lattice(charge: i64) -> Self {
        LocalMono {
            charge,
            modes: vec![],
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.charge == 0 && self.modes.is_empty()
    }
}

/// A basis vector of the tensor product.
pub type TensorMono = Vec<LocalMono>;

/// A finite combination of tensor basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FState {
    pub terms: SparseVec<TensorMono>,
}

impl FState {
    pub fn zero() -> Self {
        FState::default()
    }

    pub fn vacuum(nfactors: usize) -> Self {
        FState::mono(vec![LocalMono::vacuum(); nfactors], Scalar::one())
    }

    pub fn mono(m: TensorMono, c: Scalar) -> Self {
        let mut s = FState::zero();
        if !c.is_zero() {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &FState) {
        axpy(&mut self.terms, c, &other.terms);
    }

    pub fn scaled(&self, c: &Scalar) -> FState {
        let mut s = FState::zero();
        s.add_scaled(c, self);
        s
    }

    pub fn plus(&self, other: &FState) -> FState {
        let mut s = self.clone();
        s.add_scaled(&Scalar::one(), other);
        s
    }

    pub fn minus(&self, other: &FState) -> FState {
        let mut s = self.clone();
        s.add_scaled(&Scalar::int(-1), other);
        s
    }

    /// Coefficient of the tensor vacuum.
    pub fn vacuum_coeff(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(LocalMono::is_vacuum))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Substitutes parameters in every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> FState {
        let mut s = FState::zero();
        for (m, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                s.terms.insert(m.clone(), v);
            }
        }
        s
    }
}

impl fmt::Display for FState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (fi, lm) in m.iter().enumerate() {
                if lm.charge != 0 {
                    write!(f, " [{fi}]e^{}", lm.charge)?;
                }
                for (g, n) in &lm.modes {
                    write!(f, " [{fi}]{g}({n})")?;
                }
            }
        }
        Ok(())
    }
}
