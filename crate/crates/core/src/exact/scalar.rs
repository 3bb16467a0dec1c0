use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::var::Var;
use super::{ExactError, Rational};

/// An exact scalar: a rational number or a rational function over the
/// rationals in named parameters.
///
/// Rational functions are kept with `gcd(num, den) = 1` and a monic
/// denominator, so equality is structural. Values without parameters always
/// collapse to the `Rat` variant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(Rational),
    Frac { num: Polynomial, den: Polynomial },
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(Rational::from_integer(n.into()))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        Scalar::Rat(super::rat(n, d))
    }

    pub fn var(v: Var) -> Self {
        Scalar::Frac {
            num: Polynomial::var(v),
            den: Polynomial::one(),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Frac {
                num: p,
                den: Polynomial::one(),
            },
        }
    }

    /// Builds `num / den`, normalising.
    pub fn ratio(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(d) = den.as_constant() {
            let inv = d.recip();
            return Scalar::from_poly(num.scale(&inv));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").1.clone();
        let inv = lc.recip();
        let den = den.scale(&inv);
        let num = num.scale(&inv);
        if den.is_constant() {
            Scalar::from_poly(num)
        } else {
            Scalar::Frac { num, den }
        }
    }

    pub fn numer(&self) -> Polynomial {
        match self {
            Scalar::Rat(r) => Polynomial::constant(r.clone()),
            Scalar::Frac { num, .. } => num.clone(),
        }
    }

    pub fn denom(&self) -> Polynomial {
        match self {
            Scalar::Rat(_) => Polynomial::one(),
            Scalar::Frac { den, .. } => den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Frac { .. } => None,
        }
    }

    /// The polynomial, when the denominator is trivial.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match self {
            Scalar::Rat(r) => Some(Polynomial::constant(r.clone())),
            Scalar::Frac { num, den } if den.is_constant() => Some(num.clone()),
            Scalar::Frac { .. } => None,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.as_rational()
            .filter(|r| r.is_integer())
            .and_then(|r| r.to_integer().to_i64())
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Scalar::Frac { .. })
    }

    pub fn recip(&self) -> Result<Scalar, ExactError> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(ExactError::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Frac { num, den } => Scalar::ratio(den.clone(), num.clone()),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Substitutes scalars for parameters.
    pub fn eval(&self, assign: &HashMap<Var, Scalar>) -> Result<Scalar, ExactError> {
        match self {
            Scalar::Rat(_) => Ok(self.clone()),
            Scalar::Frac { num, den } => {
                let n = eval_poly(num, assign);
                let d = eval_poly(den, assign);
                if d.is_zero() {
                    return Err(ExactError::Normalization(format!(
                        "denominator {den} vanishes under substitution"
                    )));
                }
                n.checked_div(&d)
            }
        }
    }

    /// Substitutes a single parameter.
    pub fn subs(&self, v: Var, value: &Scalar) -> Result<Scalar, ExactError> {
        let mut m = HashMap::new();
        m.insert(v, value.clone());
        self.eval(&m)
    }
}

/// Evaluates a polynomial under an assignment (unassigned parameters stay symbolic).
pub fn eval_poly(p: &Polynomial, assign: &HashMap<Var, Scalar>) -> Scalar {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::Rat(c.clone());
        for &(v, e) in m.factors() {
            let base = assign.get(&v).cloned().unwrap_or_else(|| Scalar::var(v));
            t = &t * &base.pow(e);
        }
        acc += t;
    }
    acc
}

/// `t (t-1) ... (t-j+1) / j!`.
pub fn binom_general(t: &Scalar, j: u32) -> Scalar {
    let mut num = Scalar::one();
    let mut fact = Rational::one();
    for i in 0..j {
        num = &num * &(t - &Scalar::int(i as i64));
        fact *= Rational::from_integer((i as i64 + 1).into());
    }
    &num * &Scalar::Rat(fact.recip())
}

/// Integer-argument binomial `binom(m, j)` for any integer `m`.
pub fn binom_int(m: i64, j: u32) -> Rational {
    let mut num = Rational::one();
    let mut fact = Rational::one();
    for i in 0..j as i64 {
        num *= Rational::from_integer((m - i).into());
        fact *= Rational::from_integer((i + 1).into());
    }
    num / fact
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_poly(p)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Self {
        Scalar::var(v)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (an, ad) = (self.numer(), self.denom());
                let (bn, bd) = (rhs.numer(), rhs.denom());
                if ad == bd {
                    if ad.is_constant() {
                        return Scalar::from_poly(&an + &bn);
                    }
                    return Scalar::normalize(&an + &bn, ad);
                }
                Scalar::normalize(&(&an * &bd) + &(&bn * &ad), &ad * &bd)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a.clone()),
            Scalar::Frac { num, den } => Scalar::Frac {
                num: -num,
                den: den.clone(),
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Frac { num, den }) | (Scalar::Frac { num, den }, Scalar::Rat(a)) => {
                if a.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Frac {
                        num: num.scale(a),
                        den: den.clone(),
                    }
                }
            }
            _ => {
                let (an, ad) = (self.numer(), self.denom());
                let (bn, bd) = (rhs.numer(), rhs.denom());
                if ad.is_constant() && bd.is_constant() {
                    return Scalar::from_poly(&an * &bn);
                }
                Scalar::normalize(&an * &bn, &ad * &bd)
            }
        }
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for fallible division.
impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Frac { num, den } if den.is_constant() => write!(f, "{num}"),
            Scalar::Frac { num, den } => write!(f, "({num})/({den})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Scalar {
        Scalar::var(Var::K)
    }

    #[test]
    fn binomials() {
        assert_eq!(binom_general(&k(), 0), Scalar::one());
        assert_eq!(binom_general(&Scalar::int(-1), 2), Scalar::one());
        assert_eq!(binom_general(&Scalar::rat(-1, 2), 1), Scalar::rat(-1, 2));
        assert_eq!(binom_int(-1, 3), crate::exact::rat(-1, 1));
        assert_eq!(binom_int(5, 2), crate::exact::rat(10, 1));
        assert_eq!(binom_int(2, 3), crate::exact::rat(0, 1));
    }

    #[test]
    fn rational_functions_normalize() {
        let num = &(&k() * &k()) - &Scalar::one();
        let den = &k() - &Scalar::one();
        let q = num.checked_div(&den).unwrap();
        assert_eq!(q, &k() + &Scalar::one());
        let r = Scalar::one().checked_div(&(&Scalar::int(2) * &k() + Scalar::int(3))).unwrap();
        // denominator made monic: 1/(2k+3) = (1/2)/(k + 3/2)
        assert_eq!(r.to_string(), "(1/2)/(k + 3/2)");
        assert_eq!(&(&r * &(&Scalar::int(2) * &k())) + &(&r * &Scalar::int(3)), Scalar::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(Scalar::zero().recip().is_err());
        let f = Scalar::one().checked_div(&(&k() + &Scalar::int(3))).unwrap();
        assert!(f.subs(Var::K, &Scalar::int(-3)).is_err());
        assert_eq!(f.subs(Var::K, &Scalar::int(1)).unwrap(), Scalar::rat(1, 4));
    }
}
