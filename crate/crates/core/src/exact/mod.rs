//! Exact scalar arithmetic.
//!
//! Rationals are arbitrary precision; [`Polynomial`] and [`Scalar`] cover
//! multivariate polynomials and rational functions in named parameters
//! (`k`, `k'`, `lambda`, `x`, `y`, then user parameters). Everything is
//! immutable and canonical, so equality checks are structural.

mod linalg;
mod parse;
mod poly;
mod scalar;
mod var;

use std::collections::HashMap;

use thiserror::Error;

pub use num_rational::BigRational as Rational;
pub use linalg::{axpy, EchelonBasis, SparseVec};
pub use parse::{parse_rational, parse_scalar};
pub use poly::{Monomial, Polynomial};
pub use scalar::{binom_general, binom_int, eval_poly, Scalar};
pub use var::Var;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("unassigned parameter {0}")]
    Unassigned(String),
    #[error("cannot parse scalar at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Serialises a rational as `p/q` (or `p` when `q = 1`).
pub fn fmt_rat(r: &Rational) -> String {
    r.to_string()
}

/// Substitutes every parameter of `p`; fails if one is left unassigned.
pub fn poly_eval(p: &Polynomial, assignment: &HashMap<Var, Scalar>) -> Result<Scalar, ExactError> {
    if let Some(v) = p.vars().into_iter().find(|v| !assignment.contains_key(v)) {
        return Err(ExactError::Unassigned(v.name()));
    }
    Ok(eval_poly(p, assignment))
}

pub fn poly_equal(p: &Polynomial, q: &Polynomial) -> bool {
    (p - q).is_zero()
}

/// How symbolic identities are decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IdentityMode {
    /// Work in the rational-function field and test the difference for zero.
    Symbolic,
    /// Evaluate at `degree + 1` distinct rational points per parameter.
    #[default]
    Sampled,
}

/// Sample points used in [`IdentityMode::Sampled`]. Chosen off the integers
/// and off small half-integers so that poles like `k = -3` or `2k' + 3 = 0`
/// are never hit.
pub fn sample_point(i: u32) -> Rational {
    rat(7 * i as i64 + 2, 13) + rat(1, 101)
}

/// Decides whether `f` vanishes identically in the given parameters.
///
/// `params` pairs each parameter with a bound on the degree of the numerator
/// of `f` in that parameter. In sampled mode `f` is evaluated on the full
/// grid of `degree + 1` points per parameter; any evaluation error counts as
/// a failure.
pub fn identity_holds<F>(mode: IdentityMode, params: &[(Var, u32)], f: F) -> bool
where
    F: Fn(&HashMap<Var, Scalar>) -> Result<Scalar, ExactError>,
{
    match mode {
        IdentityMode::Symbolic => {
            let assign: HashMap<Var, Scalar> =
                params.iter().map(|&(v, _)| (v, Scalar::var(v))).collect();
            matches!(f(&assign), Ok(s) if s.is_zero())
        }
        IdentityMode::Sampled => {
            let mut idx = vec![0u32; params.len()];
            loop {
                let assign: HashMap<Var, Scalar> = params
                    .iter()
                    .zip(&idx)
                    .map(|(&(v, _), &i)| (v, Scalar::Rat(sample_point(i))))
                    .collect();
                match f(&assign) {
                    Ok(s) if s.is_zero() => {}
                    _ => return false,
                }
                let mut p = 0;
                loop {
                    if p == params.len() {
                        return true;
                    }
                    idx[p] += 1;
                    if idx[p] <= params[p].1 {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_eval_examples() {
        let x = Polynomial::var(Var::X);
        let mut a = HashMap::new();
        a.insert(Var::X, Scalar::int(3));
        assert_eq!(poly_eval(&(&x * &x), &a).unwrap(), Scalar::int(9));
        assert!(matches!(
            poly_eval(&Polynomial::var(Var::Y), &a),
            Err(ExactError::Unassigned(_))
        ));
    }

    #[test]
    fn identity_modes_agree() {
        // (x+1)^2 - x^2 - 2x - 1 == 0, but (x+1)^2 - x^2 != 0
        let zero = |a: &HashMap<Var, Scalar>| {
            let x = &a[&Var::X];
            let s = x + &Scalar::one();
            Ok(&(&(&s * &s) - &(x * x)) - &(&(&Scalar::int(2) * x) + &Scalar::one()))
        };
        let nonzero = |a: &HashMap<Var, Scalar>| {
            let x = &a[&Var::X];
            let s = x + &Scalar::one();
            Ok(&(&s * &s) - &(x * x))
        };
        for mode in [IdentityMode::Symbolic, IdentityMode::Sampled] {
            assert!(identity_holds(mode, &[(Var::X, 2)], zero));
            assert!(!identity_holds(mode, &[(Var::X, 2)], nonzero));
        }
    }

    #[test]
    fn rationals_serialize_as_p_over_q() {
        assert_eq!(fmt_rat(&rat(-5, 2)), "-5/2");
        assert_eq!(fmt_rat(&rat(4, 2)), "2");
    }
}
