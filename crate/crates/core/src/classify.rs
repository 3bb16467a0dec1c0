//! Highest-weight classification data for the simple quotient at
//! non-negative integer level: the curves `h_i`, the set `S_k`, spectral
//! flow of weights and modes, the orbits through the vacuum and through the
//! special points, and the weight formulas of the relaxed-module families
//! at `k = 1`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::exact::{ExactError, Rational, Scalar, Var};
use crate::wmod::{Gen, ShiftedMode};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("level must be a rational with k + 2 a positive integer, got {0}")]
    NonIntegralLevel(String),
    #[error("singular level k = -3")]
    SingularLevel,
    #[error("curve index {0} out of range")]
    BadIndex(i64),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The level `k`, rational or symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level(pub Scalar);

impl Level {
    pub fn new(k: Scalar) -> Self {
        Level(k)
    }

    pub fn int(k: i64) -> Self {
        Level(Scalar::int(k))
    }

    pub fn symbolic() -> Self {
        Level(Scalar::var(Var::K))
    }

    pub fn k(&self) -> &Scalar {
        &self.0
    }

    /// `k` as an integer when `k + 2` is a positive integer.
    pub fn integral(&self) -> Option<i64> {
        self.0.as_integer().filter(|&k| k >= -1)
    }

    fn require_integral(&self) -> Result<i64, ClassifyError> {
        self.integral()
            .ok_or_else(|| ClassifyError::NonIntegralLevel(self.0.to_string()))
    }

    fn require_regular(&self) -> Result<(), ClassifyError> {
        if (&self.0 + &Scalar::int(3)).is_zero() {
            Err(ClassifyError::SingularLevel)
        } else {
            Ok(())
        }
    }

    /// `(2k + 3)/3`, the shift that appears throughout spectral flow.
    pub fn flow_shift(&self) -> Scalar {
        &(&(&Scalar::int(2) * &self.0) + &Scalar::int(3)) * &Scalar::rat(1, 3)
    }
}

/// A highest weight: `x` is the `J(0)` eigenvalue, `y` the shifted `L(0)` eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub x: Scalar,
    pub y: Scalar,
}

impl Weight {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Weight { x, y }
    }

    pub fn rat(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Weight::new(Scalar::rat(xn, xd), Scalar::rat(yn, yd))
    }

    pub fn symbolic() -> Self {
        Weight::new(Scalar::var(Var::X), Scalar::var(Var::Y))
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `g(x, y) = -(3x^2 - (2k+3)x - (k+3)y)`.
pub fn eval_g(level: &Level, w: &Weight) -> Scalar {
    let k = level.k();
    let three = Scalar::int(3);
    let a = &three * &(&w.x * &w.x);
    let b = &(&(&Scalar::int(2) * k) + &three) * &w.x;
    let c = &(k + &three) * &w.y;
    -(&(&a - &b) - &c)
}

/// `h_i(x, y)` in expanded form; `i` may be symbolic.
pub fn eval_h_at(i: &Scalar, level: &Level, w: &Weight) -> Scalar {
    let k = level.k();
    let (x, y) = (&w.x, &w.y);
    let s = |n: i64| Scalar::int(n);
    let terms = [
        -(i * i),
        k * i,
        &s(-3) * &(x * i),
        &s(3) * i,
        &s(-3) * &(x * x),
        -k.clone(),
        &s(2) * &(k * x),
        &s(6) * x,
        k * y,
        &s(3) * y,
        s(-2),
    ];
    terms.iter().fold(Scalar::zero(), |acc, t| &acc + t)
}

pub fn eval_h(i: u32, level: &Level, w: &Weight) -> Scalar {
    eval_h_at(&Scalar::int(i as i64), level, w)
}

/// `(1/i) * sum_{j<i} g(x + j, y)`, the defining average.
pub fn h_average(i: u32, level: &Level, w: &Weight) -> Scalar {
    assert!(i >= 1, "curve index starts at 1");
    let mut acc = Scalar::zero();
    for j in 0..i {
        let shifted = Weight::new(&w.x + &Scalar::int(j as i64), w.y.clone());
        acc += eval_g(level, &shifted);
    }
    &acc * &Scalar::rat(1, i as i64)
}

/// All `1 <= i <= k+2` with `h_i(x, y) = 0`. Empty means `(x, y)` is not in `S_k`.
pub fn witnesses_in_sk(level: &Level, w: &Weight) -> Result<Vec<u32>, ClassifyError> {
    let k = level.require_integral()?;
    Ok((1..=(k + 2) as u32)
        .filter(|&i| eval_h(i, level, w).is_zero())
        .collect())
}

/// The unique `y` with `h_i(x, y) = 0`.
pub fn curve_solve_y(i: u32, level: &Level, x: &Scalar) -> Result<Scalar, ClassifyError> {
    level.require_regular()?;
    let at_zero = eval_h(i, level, &Weight::new(x.clone(), Scalar::zero()));
    let slope = level.k() + &Scalar::int(3);
    Ok((-at_zero).checked_div(&slope)?)
}

/// Weight of `psi(L(x, y))` when the top component of `L(x, y)` has dimension `i`.
pub fn sflow_weight(level: &Level, w: &Weight, i: &Scalar) -> Weight {
    let c = level.flow_shift();
    let i1 = i - &Scalar::one();
    let x = &(&w.x + &i1) - &c;
    let y = &(&(&w.y - &w.x) - &i1) + &c;
    Weight::new(x, y)
}

/// Inverse of [`sflow_weight`]: the weight `(x, y)` whose image under a step
/// with top dimension `i` is `w`.
pub fn sflow_weight_inverse(level: &Level, w: &Weight, i: &Scalar) -> Weight {
    let c = level.flow_shift();
    let i1 = i - &Scalar::one();
    let x = &(&w.x - &i1) + &c;
    let y = &w.y + &w.x;
    Weight::new(x, y)
}

/// `h_i(x, y) == h_{k+3-i}(sflow_weight(x, y, i))`.
pub fn check_lemma_ij(level: &Level, i: u32, w: &Weight) -> Result<bool, ClassifyError> {
    let k = level.require_integral()?;
    let j = k + 3 - i as i64;
    if i == 0 || j < 1 {
        return Err(ClassifyError::BadIndex(j));
    }
    let lhs = eval_h(i, level, w);
    let image = sflow_weight(level, w, &Scalar::int(i as i64));
    let rhs = eval_h(j as u32, level, &image);
    Ok(lhs == rhs)
}

/// Top dimension read off the smallest vanishing `h_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopDim {
    pub dim: Option<u32>,
    pub witnesses: Vec<u32>,
    /// Set when more than one curve passes through the weight; the minimum
    /// is reported but the module structure there is not asserted.
    pub multi_witness: bool,
}

pub fn top_dim(level: &Level, w: &Weight) -> Result<TopDim, ClassifyError> {
    let witnesses = witnesses_in_sk(level, w)?;
    Ok(TopDim {
        dim: witnesses.first().copied(),
        multi_witness: witnesses.len() > 1,
        witnesses,
    })
}

/// One point on a spectral-flow orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    pub n: i64,
    pub weight: Weight,
    /// Top dimension of this module, when known from the closed forms.
    pub top_dim: Option<u32>,
    /// Top dimension used by the flow step that produced this entry.
    pub applied_dim: Option<u32>,
}

fn third(a: Scalar) -> Scalar {
    &a * &Scalar::rat(1, 3)
}

/// Closed form of `Psi^n(W_k) = L(x_n, y_n)` for any integer `n`.
pub fn vacuum_orbit(level: &Level, n: i64) -> Result<OrbitEntry, ClassifyError> {
    level.require_regular()?;
    let k = level.k();
    let s = Scalar::int;
    let k3 = k + &s(3);
    let weight = if n >= 0 {
        let m = n / 2;
        let ms = s(m);
        if n % 2 == 0 {
            Weight::new(
                third(-&(&ms * &k3)),
                third(&ms * &(&(&s(3) + &(&s(2) * k)) + &(&k3 * &ms))),
            )
        } else {
            Weight::new(
                &(&(-&ms) - &s(1)) - &third(&(&ms + &s(2)) * k),
                third(&(&ms + &s(1)) * &(&(&ms * &k3) + &(&(&s(2) * k) + &s(3)))),
            )
        }
    } else if n % 2 == 0 {
        let ms = s(n / 2);
        Weight::new(
            third(-&(&ms * &k3)),
            third(-&(&ms * &(k - &(&k3 * &ms)))),
        )
    } else {
        // n = 2m - 1 with m <= 0
        let ms = s((n + 1) / 2);
        Weight::new(
            &(&s(1) - &ms) - &third(&(&ms - &s(2)) * k),
            third(-&(&ms * &(&(&(&s(2) * k) + &s(3)) - &(&ms * &k3)))),
        )
    };
    let top = level.integral().map(|kk| {
        let even = n % 2 == 0;
        if (n >= 0) == even {
            1
        } else {
            (kk + 2) as u32
        }
    });
    Ok(OrbitEntry {
        n,
        weight,
        top_dim: top,
        applied_dim: None,
    })
}

/// The vacuum orbit built by composing [`sflow_weight`] (or its inverse for
/// negative `n`), alternating top dimensions `1` and `k+2`.
pub fn vacuum_orbit_recursive(level: &Level, n: i64) -> Result<Vec<OrbitEntry>, ClassifyError> {
    level.require_regular()?;
    let kk = level.require_integral()?;
    let mut out = vec![OrbitEntry {
        n: 0,
        weight: Weight::new(Scalar::zero(), Scalar::zero()),
        top_dim: Some(1),
        applied_dim: None,
    }];
    let mut w = out[0].weight.clone();
    for step in 1..=n.unsigned_abs() as i64 {
        if n > 0 {
            // the source of step `step` is entry step-1
            let dim = if (step - 1) % 2 == 0 { 1 } else { (kk + 2) as u32 };
            w = sflow_weight(level, &w, &Scalar::int(dim as i64));
            let top = if step % 2 == 0 { 1 } else { (kk + 2) as u32 };
            out.push(OrbitEntry {
                n: step,
                weight: w.clone(),
                top_dim: Some(top),
                applied_dim: Some(dim),
            });
        } else {
            // preimage index -step; its own top dimension drives the step
            let m = -step;
            let dim = if m % 2 == 0 { (kk + 2) as u32 } else { 1 };
            w = sflow_weight_inverse(level, &w, &Scalar::int(dim as i64));
            out.push(OrbitEntry {
                n: m,
                weight: w.clone(),
                top_dim: Some(dim),
                applied_dim: Some(dim),
            });
        }
    }
    Ok(out)
}

/// `(x^i, y^i) = ((1-i)/3, (i-1)(i-1-k) / (3(3+k)))`.
pub fn special_point(level: &Level, i: u32) -> Result<Weight, ClassifyError> {
    level.require_regular()?;
    if i == 0 {
        return Err(ClassifyError::BadIndex(0));
    }
    if let Some(k) = level.integral() {
        if i as i64 > k + 2 {
            return Err(ClassifyError::BadIndex(i as i64));
        }
    }
    let k = level.k();
    let i1 = Scalar::int(i as i64 - 1);
    let x = third(-i1.clone());
    let num = &i1 * &(&i1 - k);
    let den = &Scalar::int(3) * &(k + &Scalar::int(3));
    Ok(Weight::new(x, num.checked_div(&den)?))
}

/// Closed form of `Psi^m(L(x^i, y^i))`; `i` and `m` may be symbolic via
/// [`special_orbit_closed_form`].
pub fn orbit_from_special(level: &Level, i: u32, m: u32) -> Result<OrbitEntry, ClassifyError> {
    let k = level.require_integral()?;
    if i == 0 || i as i64 > k + 2 {
        return Err(ClassifyError::BadIndex(i as i64));
    }
    let weight = special_orbit_closed_form(
        level,
        &Scalar::int(i as i64),
        &Scalar::int((m / 2) as i64),
        m % 2 == 1,
    )?;
    let top = if m.is_multiple_of(2) { i } else { (k + 3) as u32 - i };
    Ok(OrbitEntry {
        n: m as i64,
        weight,
        top_dim: Some(top),
        applied_dim: None,
    })
}

/// The closed forms for `x^i_{2n}, y^i_{2n}` (`odd = false`) or
/// `x^i_{2n+1}, y^i_{2n+1}` (`odd = true`) with `i`, `n` arbitrary scalars.
pub fn special_orbit_closed_form(
    level: &Level,
    i: &Scalar,
    n: &Scalar,
    odd: bool,
) -> Result<Weight, ClassifyError> {
    level.require_regular()?;
    let k = level.k();
    let s = Scalar::int;
    let den = &s(3) * &(k + &s(3));
    let sum = |ts: &[Scalar]| ts.iter().fold(Scalar::zero(), |a, t| &a + t);
    let m = |a: &Scalar, b: &Scalar| a * b;
    let (x, ynum) = if !odd {
        let x = &third(&s(1) - i) - &third(n * &(k + &s(3)));
        let ynum = sum(&[
            s(1),
            &s(-2) * i,
            m(i, i),
            k.clone(),
            -m(i, k),
            &s(12) * n,
            &s(-3) * &m(i, n),
            &s(10) * &m(k, n),
            -m(&m(i, k), n),
            &s(2) * &m(&m(k, k), n),
            &s(9) * &m(n, n),
            &s(6) * &m(k, &m(n, n)),
            m(&m(k, k), &m(n, n)),
        ]);
        (x, ynum)
    } else {
        let x = third(sum(&[s(-5), &s(2) * i, &s(-3) * n, -m(k, &(&s(2) + n))]));
        let ynum = sum(&[
            s(16),
            &s(-8) * i,
            m(i, i),
            &s(12) * k,
            &s(-3) * &m(i, k),
            &s(2) * &m(k, k),
            &s(21) * n,
            &s(-3) * &m(i, n),
            &s(16) * &m(k, n),
            -m(&m(i, k), n),
            &s(3) * &m(&m(k, k), n),
            &s(9) * &m(n, n),
            &s(6) * &m(k, &m(n, n)),
            m(&m(k, k), &m(n, n)),
        ]);
        (x, ynum)
    };
    Ok(Weight::new(x, ynum.checked_div(&den)?))
}

/// Orbit through the special point built by composing flow steps with top
/// dimensions `i` (from even entries) and `k+3-i` (from odd entries).
pub fn special_orbit_recursive(
    level: &Level,
    i: u32,
    steps: u32,
) -> Result<Vec<OrbitEntry>, ClassifyError> {
    let k = level.require_integral()?;
    let mut w = special_point(level, i)?;
    let mut out = vec![OrbitEntry {
        n: 0,
        weight: w.clone(),
        top_dim: Some(i),
        applied_dim: None,
    }];
    for step in 1..=steps {
        let dim = if (step - 1) % 2 == 0 { i } else { (k + 3) as u32 - i };
        w = sflow_weight(level, &w, &Scalar::int(dim as i64));
        let top = if step % 2 == 0 { i } else { (k + 3) as u32 - i };
        out.push(OrbitEntry {
            n: step as i64,
            weight: w.clone(),
            top_dim: Some(top),
            applied_dim: Some(dim),
        });
    }
    Ok(out)
}

/// Which twisted sector of the relaxed family a weight comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelaxedSector {
    /// `F ⊗ M_{F^{1/2}} ⊗ Pi(lambda)`: weights on `h_2 = 0`.
    UntwistedTop,
    /// `M_F^{tw} ⊗ F^{1/2} ⊗ Pi(lambda)`: weights on `h_1 = 0`.
    TwistedTop,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxedParams {
    pub lambda: Scalar,
    pub sector: RelaxedSector,
}

impl RelaxedParams {
    pub fn new(lambda: Scalar, sector: RelaxedSector) -> Self {
        RelaxedParams { lambda, sector }
    }

    /// The `h(0)`-grading offset `k - 2 lambda` (untwisted) or
    /// `1/2 + k - 2 lambda` (twisted).
    pub fn delta(&self, level: &Level) -> Scalar {
        let base = level.k() - &(&Scalar::int(2) * &self.lambda);
        match self.sector {
            RelaxedSector::UntwistedTop => base,
            RelaxedSector::TwistedTop => &base + &Scalar::rat(1, 2),
        }
    }
}

/// Highest weight `(x_lambda, y_lambda)` of the top vector of the relaxed family.
pub fn relaxed_weight(level: &Level, p: &RelaxedParams) -> Weight {
    let t = &(-level.k().clone()) + &(&Scalar::int(2) * &p.lambda);
    match p.sector {
        RelaxedSector::UntwistedTop => {
            let x = &Scalar::rat(-2, 3) * &t;
            let y = &(&Scalar::rat(-1, 4) + &third(&t * &t)) + &third(t.clone());
            Weight::new(x, y)
        }
        RelaxedSector::TwistedTop => {
            let x = &Scalar::rat(5, 6) - &(&Scalar::rat(2, 3) * &t);
            let four_t = &Scalar::int(4) * &t;
            let y = &(&(&four_t - &Scalar::int(5)) * &(&four_t + &Scalar::int(5))) * &Scalar::rat(1, 48);
            Weight::new(x, y)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub f_irred: bool,
    pub e0_irred: bool,
    pub e1_irred: bool,
}

fn is_int(r: &Rational) -> bool {
    r.is_integer()
}

/// Coset conditions: `F_lambda` needs `lambda ∉ 1/8 + Z/2`; `E^0` needs
/// `lambda ∉ Z ∪ (-1/4 + Z)`; `E^1` the same for `lambda + 1/2`.
pub fn irreducibility_predicates(lambda: &Rational) -> Irreducibility {
    let quarter = crate::exact::rat(1, 4);
    let half = crate::exact::rat(1, 2);
    let e_bad = |l: &Rational| is_int(l) || is_int(&(l + &quarter));
    let two = Rational::from_integer(2.into());
    Irreducibility {
        f_irred: !is_int(&((lambda - crate::exact::rat(1, 8)) * two)),
        e0_irred: !e_bad(lambda),
        e1_irred: !e_bad(&(lambda + half)),
    }
}

/// Image of a shifted mode under spectral flow `psi`: a linear combination
/// of shifted modes plus a multiple of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedImage {
    pub terms: Vec<(Scalar, ShiftedMode)>,
    pub constant: Scalar,
}

impl std::fmt::Display for ShiftedImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (c, m) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        if !self.constant.is_zero() || first {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({})*id", self.constant)?;
        }
        Ok(())
    }
}

/// `psi(J(n)) = J(n) - (2k+3)/3 δ_{n,0}`, `psi(L(n)) = L(n) - J(n) + (2k+3)/3 δ_{n,0}`,
/// `psi(G^+(n)) = G^+(n-1)`, `psi(G^-(n)) = G^-(n+1)`.
pub fn sflow_bp_mode(level: &Level, mode: ShiftedMode) -> ShiftedImage {
    let c = level.flow_shift();
    let delta = |n: i64, s: Scalar| if n == 0 { s } else { Scalar::zero() };
    match mode.gen {
        Gen::J => ShiftedImage {
            terms: vec![(Scalar::one(), mode)],
            constant: delta(mode.n, -c),
        },
        Gen::L => ShiftedImage {
            terms: vec![
                (Scalar::one(), mode),
                (Scalar::int(-1), ShiftedMode::new(Gen::J, mode.n)),
            ],
            constant: delta(mode.n, c),
        },
        Gen::Gplus => ShiftedImage {
            terms: vec![(Scalar::one(), ShiftedMode::new(Gen::Gplus, mode.n - 1))],
            constant: Scalar::zero(),
        },
        Gen::Gminus => ShiftedImage {
            terms: vec![(Scalar::one(), ShiftedMode::new(Gen::Gminus, mode.n + 1))],
            constant: Scalar::zero(),
        },
    }
}

/// Currents of the affine `osp(1|2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OspGen {
    E,
    F,
    H,
    X,
    Y,
}

impl OspGen {
    pub fn from_name(s: &str) -> Result<OspGen, ClassifyError> {
        Ok(match s {
            "e" => OspGen::E,
            "f" => OspGen::F,
            "h" => OspGen::H,
            "x" => OspGen::X,
            "y" => OspGen::Y,
            other => return Err(ClassifyError::UnknownGenerator(other.to_string())),
        })
    }

    fn flow_step(self) -> i64 {
        match self {
            OspGen::E => -2,
            OspGen::X => -1,
            OspGen::F => 2,
            OspGen::Y => 1,
            OspGen::H => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OspMode {
    pub gen: OspGen,
    pub n: i64,
}

/// A mode plus a multiple of the central element `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OspFlowImage {
    pub mode: OspMode,
    pub k_shift: i64,
}

/// `rho^power` applied to an `osp(1|2)` current mode.
pub fn sflow_osp_mode(mode: OspMode, power: i64) -> OspFlowImage {
    let k_shift = if mode.gen == OspGen::H && mode.n == 0 {
        -2 * power
    } else {
        0
    };
    OspFlowImage {
        mode: OspMode {
            gen: mode.gen,
            n: mode.n + mode.gen.flow_step() * power,
        },
        k_shift,
    }
}

/// Row of a classification CSV table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub k: Scalar,
    pub index: i64,
    pub weight: Weight,
    pub witnesses: Vec<u32>,
    pub top_dim: Option<u32>,
}

/// Sample points `(x, y)` on the curve `h_i = 0` at `x = 0, 1, ..., count-1`.
pub fn curve_samples(level: &Level, i: u32, count: u32) -> Result<Vec<TableRow>, ClassifyError> {
    (0..count)
        .map(|s| {
            let x = Scalar::int(s as i64);
            let y = curve_solve_y(i, level, &x)?;
            let weight = Weight::new(x, y);
            let td = top_dim(level, &weight)?;
            Ok(TableRow {
                k: level.k().clone(),
                index: i as i64,
                weight,
                witnesses: td.witnesses,
                top_dim: td.dim,
            })
        })
        .collect()
}

/// Orbit entries as table rows with witnesses recomputed.
pub fn orbit_rows(level: &Level, entries: &[OrbitEntry]) -> Result<Vec<TableRow>, ClassifyError> {
    entries
        .iter()
        .map(|e| {
            let w = witnesses_in_sk(level, &e.weight)?;
            Ok(TableRow {
                k: level.k().clone(),
                index: e.n,
                weight: e.weight.clone(),
                top_dim: e.top_dim,
                witnesses: w,
            })
        })
        .collect()
}

/// CSV with columns `k,index,x,y,witnesses,top_dim`; witnesses are `;`-separated.
pub fn to_csv(index_name: &str, rows: &[TableRow]) -> String {
    let mut s = format!("k,{index_name},x,y,witnesses,top_dim\n");
    for r in rows {
        let w: Vec<String> = r.witnesses.iter().map(u32::to_string).collect();
        let td = r.top_dim.map_or_else(|| "none".to_string(), |d| d.to_string());
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.k,
            r.index,
            r.weight.x,
            r.weight.y,
            w.join(";"),
            td
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn k1() -> Level {
        Level::int(1)
    }

    fn poly(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn g_examples() {
        assert!(eval_g(&k1(), &Weight::rat(0, 1, 0, 1)).is_zero());
        assert_eq!(eval_g(&k1(), &Weight::rat(1, 1, 0, 1)), Scalar::int(2));
        let g = eval_g(&Level::symbolic(), &Weight::symbolic());
        assert_eq!(g, poly("-3*x^2 + (2*k+3)*x + (k+3)*y"));
    }

    #[test]
    fn h_examples_at_level_one() {
        let w = Weight::symbolic();
        assert_eq!(eval_h(1, &k1(), &w), poly("-3*x^2+5*x+4*y"));
        assert_eq!(eval_h(2, &k1(), &w), poly("-3*x^2+2*x+1+4*y"));
        assert!(eval_h(3, &k1(), &Weight::rat(-2, 3, 1, 6)).is_zero());
        assert!(eval_h(1, &k1(), &Weight::rat(0, 1, 0, 1)).is_zero());
        assert!(eval_h(2, &k1(), &Weight::rat(0, 1, -1, 4)).is_zero());
    }

    #[test]
    fn h_expanded_matches_average_symbolically() {
        let w = Weight::symbolic();
        for i in 1..=6 {
            assert_eq!(eval_h(i, &Level::symbolic(), &w), h_average(i, &Level::symbolic(), &w));
        }
    }

    #[test]
    fn witnesses() {
        assert_eq!(witnesses_in_sk(&k1(), &Weight::rat(0, 1, 0, 1)).unwrap(), vec![1, 3]);
        assert_eq!(witnesses_in_sk(&k1(), &Weight::rat(-5, 3, 5, 3)).unwrap(), vec![3]);
        assert!(witnesses_in_sk(&k1(), &Weight::rat(1, 1, 2, 1)).unwrap().is_empty());
        assert!(witnesses_in_sk(&Level::symbolic(), &Weight::symbolic()).is_err());
        assert!(witnesses_in_sk(&Level::new(Scalar::rat(1, 2)), &Weight::symbolic()).is_err());
    }

    #[test]
    fn curve_solve() {
        assert!(curve_solve_y(1, &k1(), &Scalar::zero()).unwrap().is_zero());
        assert!(curve_solve_y(2, &k1(), &Scalar::rat(-1, 3)).unwrap().is_zero());
        let g1 = curve_solve_y(1, &Level::symbolic(), &Scalar::var(Var::X)).unwrap();
        assert_eq!(g1, poly("(-3*x - 2*k*x + 3*x^2)/(3+k)"));
        assert_eq!(
            curve_solve_y(1, &Level::int(-3), &Scalar::zero()),
            Err(ClassifyError::SingularLevel)
        );
    }

    #[test]
    fn sflow_weight_examples() {
        let w = sflow_weight(&k1(), &Weight::rat(0, 1, 0, 1), &Scalar::one());
        assert_eq!(w, Weight::rat(-5, 3, 5, 3));
        let w2 = sflow_weight(&k1(), &w, &Scalar::int(3));
        assert_eq!(w2, Weight::rat(-4, 3, 3, 1));
        let sym = sflow_weight(&Level::symbolic(), &Weight::symbolic(), &Scalar::var(Var::named("i")));
        assert_eq!(sym.x, poly("x + i - 1 - (2*k+3)/3"));
        assert_eq!(sym.y, poly("y - x - i + 1 + (2*k+3)/3"));
        let back = sflow_weight_inverse(&k1(), &w2, &Scalar::int(3));
        assert_eq!(back, w);
    }

    #[test]
    fn ij_duality() {
        assert!(check_lemma_ij(&k1(), 1, &Weight::symbolic()).unwrap());
        assert!(check_lemma_ij(&Level::int(2), 2, &Weight::symbolic()).unwrap());
        assert!(check_lemma_ij(&k1(), 1, &Weight::rat(7, 2, -2, 1)).unwrap());
        assert!(check_lemma_ij(&k1(), 4, &Weight::symbolic()).is_err());
    }

    #[test]
    fn top_dims() {
        let t = top_dim(&k1(), &Weight::rat(0, 1, 0, 1)).unwrap();
        assert_eq!(t.dim, Some(1));
        assert!(t.multi_witness);
        assert_eq!(top_dim(&k1(), &Weight::rat(-5, 3, 5, 3)).unwrap().dim, Some(3));
        assert_eq!(top_dim(&k1(), &Weight::rat(1, 1, 2, 1)).unwrap().dim, None);
    }

    #[test]
    fn vacuum_orbit_examples() {
        assert_eq!(vacuum_orbit(&k1(), 0).unwrap().weight, Weight::rat(0, 1, 0, 1));
        assert_eq!(vacuum_orbit(&k1(), 3).unwrap().weight, Weight::rat(-3, 1, 6, 1));
        assert_eq!(vacuum_orbit(&k1(), -1).unwrap().weight, Weight::rat(5, 3, 0, 1));
        assert_eq!(vacuum_orbit(&k1(), 1).unwrap().weight, Weight::rat(-5, 3, 5, 3));
        assert_eq!(vacuum_orbit(&k1(), 2).unwrap().weight, Weight::rat(-4, 3, 3, 1));
    }

    #[test]
    fn vacuum_orbit_closed_form_matches_recursion() {
        for kk in 1..=4 {
            let lv = Level::int(kk);
            for n in [-7i64, 7] {
                let rec = vacuum_orbit_recursive(&lv, n).unwrap();
                for e in &rec {
                    let cf = vacuum_orbit(&lv, e.n).unwrap();
                    assert_eq!(cf.weight, e.weight, "k={kk} n={}", e.n);
                    assert_eq!(cf.top_dim, e.top_dim, "k={kk} n={}", e.n);
                }
            }
        }
    }

    #[test]
    fn special_points() {
        assert_eq!(special_point(&k1(), 1).unwrap(), Weight::rat(0, 1, 0, 1));
        assert_eq!(special_point(&k1(), 2).unwrap(), Weight::rat(-1, 3, 0, 1));
        assert_eq!(special_point(&k1(), 3).unwrap(), Weight::rat(-2, 3, 1, 6));
        assert!(special_point(&k1(), 4).is_err());
        // h_j(x^i, y^i) = (i - j)(-2 + j - k), symbolic in j and k
        let j = Scalar::var(Var::named("j"));
        let lv = Level::symbolic();
        for i in 1..=5 {
            let p = special_point(&lv, i).unwrap();
            let lhs = eval_h_at(&j, &lv, &p);
            let rhs = &(&Scalar::int(i as i64) - &j) * &(&(&Scalar::int(-2) + &j) - lv.k());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn special_orbit_examples() {
        assert_eq!(orbit_from_special(&k1(), 2, 0).unwrap().weight, Weight::rat(-1, 3, 0, 1));
        let odd = orbit_from_special(&k1(), 2, 1).unwrap();
        assert_eq!(odd.weight, Weight::rat(-1, 1, 1, 1));
        let rec = special_orbit_recursive(&k1(), 2, 1).unwrap();
        assert_eq!(rec[1].weight, odd.weight);
    }

    #[test]
    fn relaxed() {
        let p = RelaxedParams::new(Scalar::rat(1, 2), RelaxedSector::UntwistedTop);
        assert_eq!(relaxed_weight(&k1(), &p), Weight::rat(0, 1, -1, 4));
        let p = RelaxedParams::new(Scalar::rat(1, 2), RelaxedSector::TwistedTop);
        assert_eq!(relaxed_weight(&k1(), &p), Weight::rat(5, 6, -25, 48));
        assert_eq!(p.delta(&k1()), Scalar::rat(1, 2));
        let l = Scalar::var(Var::LAMBDA);
        let wu = relaxed_weight(&k1(), &RelaxedParams::new(l.clone(), RelaxedSector::UntwistedTop));
        assert!(eval_h(2, &k1(), &wu).is_zero());
        let wt = relaxed_weight(&k1(), &RelaxedParams::new(l, RelaxedSector::TwistedTop));
        assert!(eval_h(1, &k1(), &wt).is_zero());
    }

    #[test]
    fn predicates() {
        assert!(!irreducibility_predicates(&rat(1, 8)).f_irred);
        assert!(!irreducibility_predicates(&rat(0, 1)).e0_irred);
        let t = irreducibility_predicates(&rat(1, 3));
        assert!(t.f_irred && t.e0_irred && t.e1_irred);
        assert!(!irreducibility_predicates(&rat(1, 2)).e1_irred);
        assert!(!irreducibility_predicates(&rat(3, 4)).e0_irred);
    }

    #[test]
    fn mode_flows() {
        let img = sflow_bp_mode(&k1(), ShiftedMode::new(Gen::J, 0));
        assert_eq!(img.constant, Scalar::rat(-5, 3));
        let img = sflow_bp_mode(&k1(), ShiftedMode::new(Gen::Gplus, 2));
        assert_eq!(img.terms, vec![(Scalar::one(), ShiftedMode::new(Gen::Gplus, 1))]);
        let img = sflow_bp_mode(&k1(), ShiftedMode::new(Gen::L, 0));
        assert_eq!(img.constant, Scalar::rat(5, 3));
        assert_eq!(img.terms[1], (Scalar::int(-1), ShiftedMode::new(Gen::J, 0)));

        let e0 = OspMode { gen: OspGen::E, n: 0 };
        assert_eq!(sflow_osp_mode(e0, 1).mode, OspMode { gen: OspGen::E, n: -2 });
        let h0 = OspMode { gen: OspGen::H, n: 0 };
        assert_eq!(sflow_osp_mode(h0, 1).k_shift, -2);
        let f2 = OspMode { gen: OspGen::F, n: 2 };
        assert_eq!(sflow_osp_mode(f2, -1).mode, OspMode { gen: OspGen::F, n: 0 });
        assert!(OspGen::from_name("z").is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = curve_samples(&k1(), 2, 3).unwrap();
        for r in &rows {
            assert!(r.witnesses.contains(&2));
        }
        let csv = to_csv("i", &rows);
        assert!(csv.starts_with("k,i,x,y,witnesses,top_dim\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
