use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::classify::{
    check_lemma_ij, eval_h, eval_h_at, h_average, irreducibility_predicates, orbit_from_special,
    relaxed_weight, sflow_weight, special_orbit_closed_form, special_orbit_recursive, special_point,
    top_dim, vacuum_orbit, vacuum_orbit_recursive, ClassifyError, Level, RelaxedParams, RelaxedSector, Weight,
};
use crate::exact::{identity_holds, rat, ExactError, IdentityMode, Rational, Scalar, Var};
use crate::exprio::Report;
use crate::ffield::{
    axiom_suite, clifford_f, clifford_half, delta_op, duality_map_suite_bounded, lattice_minus1, osp12,
    osp12_symbolic, phi_map_suite_bounded, register_algebra, singular_state_check, sugawara,
    twisted_correction_f12, twisted_top_eigen, virasoro_checks, Algebra, AlgebraSpec, EngineError, FState,
    TwistedCoeff,
};
use crate::wmod::vacuum_singular_suite;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    Singvec,
    PhiMap,
    DualityMap,
    ClassifyIdentities,
    Orbits,
    DeltaTwisted,
    Sugawara,
    EngineAxioms,
    RelaxedWeights,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::Singvec,
        SuiteName::PhiMap,
        SuiteName::DualityMap,
        SuiteName::ClassifyIdentities,
        SuiteName::Orbits,
        SuiteName::DeltaTwisted,
        SuiteName::Sugawara,
        SuiteName::EngineAxioms,
        SuiteName::RelaxedWeights,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Singvec => "singvec",
            SuiteName::PhiMap => "phi-map",
            SuiteName::DualityMap => "duality-map",
            SuiteName::ClassifyIdentities => "classify-identities",
            SuiteName::Orbits => "orbits",
            SuiteName::DeltaTwisted => "delta-twisted",
            SuiteName::Sugawara => "sugawara",
            SuiteName::EngineAxioms => "engine-axioms",
            SuiteName::RelaxedWeights => "relaxed-weights",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| SuiteError::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource guard: {0}")]
    Resource(String),
}

impl From<EngineError> for SuiteError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Resource(m) => SuiteError::Resource(m),
            other => SuiteError::Config(other.to_string()),
        }
    }
}

impl From<ClassifyError> for SuiteError {
    fn from(e: ClassifyError) -> Self {
        SuiteError::Config(e.to_string())
    }
}

/// Exit code for a finished report: 0 when every check passed, 1 otherwise.
pub fn exit_code(r: &Report) -> i32 {
    if r.passed() {
        0
    } else {
        1
    }
}

impl SuiteError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteDescriptor {
    pub name: SuiteName,
    pub level: Level,
    /// Upper bound on the conformal weight of compared states (map suites).
    pub max_weight: Option<i64>,
    /// Largest `|n|` for orbit comparisons.
    pub steps: u32,
    /// Largest `n` in the special-orbit factorizations.
    pub samples: u32,
    pub symbolic: bool,
    /// Randomized instances of the engine axioms.
    pub instances: usize,
    pub seed: u64,
}

impl SuiteDescriptor {
    pub fn new(name: SuiteName, level: Level) -> Self {
        SuiteDescriptor {
            name,
            level,
            max_weight: None,
            steps: 50,
            samples: 20,
            symbolic: false,
            instances: 120,
            seed: 0x5eed,
        }
    }

    fn mode(&self) -> IdentityMode {
        if self.symbolic {
            IdentityMode::Symbolic
        } else {
            IdentityMode::Sampled
        }
    }

    fn integral_level(&self) -> Result<i64, SuiteError> {
        self.level
            .integral()
            .ok_or_else(|| SuiteError::Config(format!("{} needs an integer level k >= -1, got {}", self.name, self.level.k())))
    }

    fn level_one(&self) -> Result<(), SuiteError> {
        if self.level.integral() != Some(1) {
            return Err(SuiteError::Config(format!("{} is implemented at k = 1 only", self.name)));
        }
        Ok(())
    }
}

/// Parses a level written as an exact rational `p/q`.
pub fn parse_level(s: &str) -> Result<Level, SuiteError> {
    crate::exact::parse_rational(s)
        .map(|r| Level::new(Scalar::from(r)))
        .ok_or_else(|| SuiteError::Config(format!("level must be an exact rational p/q, got {s:?}")))
}

/// Runs one suite. `Err` means the run could not be configured or hit a
/// resource guard; check failures are reported inside the `Report`.
pub fn run_suite(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    if let Some(m) = d.max_weight {
        if m < 0 || m > crate::wmod::Guards::default().max_weight {
            return Err(SuiteError::Config(format!("--max-weight {m} outside 0..=8")));
        }
    }
    if (&d.level.0 + &Scalar::int(3)).is_zero() {
        return Err(SuiteError::Config("level k = -3 is singular".into()));
    }
    let mut r = match d.name {
        SuiteName::Singvec => singvec(d),
        SuiteName::PhiMap => {
            d.level_one()?;
            Ok(phi_map_suite_bounded(&d.level, d.max_weight)?)
        }
        SuiteName::DualityMap => {
            d.level_one()?;
            Ok(duality_map_suite_bounded(&d.level, d.max_weight)?)
        }
        SuiteName::ClassifyIdentities => classify_identities(d),
        SuiteName::Orbits => orbits(d),
        SuiteName::DeltaTwisted => delta_twisted(d),
        SuiteName::Sugawara => sugawara_suite(d),
        SuiteName::EngineAxioms => engine_axioms(d),
        SuiteName::RelaxedWeights => relaxed_weights(d),
    }?;
    r.suite = d.name.name().to_string();
    r.level = d.level.k().to_string();
    Ok(r)
}

fn singvec(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    let mut r = Report::new("singvec", d.level.k());
    let res = vacuum_singular_suite(&d.level);
    let n = res.n;
    for (id, rep) in [(format!("G+(-1)^{n} 1"), &res.plus), (format!("G-(-2)^{n} 1"), &res.minus)] {
        let detail = match rep.obstructions.first() {
            Some(o) => format!("{} obstructions; first {} -> {}", rep.obstructions.len(), o.mode, o.image),
            None => "annihilated by all raising modes".to_string(),
        };
        r.check(&format!("{id} singular"), rep.is_singular, rep.is_singular, true, detail);
    }
    Ok(r)
}

fn sc(a: &HashMap<Var, Scalar>, v: Var) -> Scalar {
    a[&v].clone()
}

fn classify_identities(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    let k = d.integral_level()?;
    let lv = &d.level;
    let mode = d.mode();
    let how = if d.symbolic { "rational-function identity" } else { "degree+1 sample points" };
    let mut r = Report::new("classify-identities", lv.k());
    let xy = [(Var::X, 2), (Var::Y, 1)];
    let w_of = |a: &HashMap<Var, Scalar>| Weight::new(sc(a, Var::X), sc(a, Var::Y));
    let top = (k + 2) as u32;
    for i in 1..=top {
        let ok = identity_holds(mode, &xy, |a| {
            let w = w_of(a);
            Ok(&eval_h(i, lv, &w) - &h_average(i, lv, &w))
        });
        r.check(&format!("h_{i} average = expanded"), ok, ok, true, how);
    }
    for i in 1..=top {
        let j = k + 3 - i as i64;
        let ok = identity_holds(mode, &xy, |a| {
            let w = w_of(a);
            let image = sflow_weight(lv, &w, &Scalar::int(i as i64));
            Ok(&eval_h(i, lv, &w) - &eval_h(j as u32, lv, &image))
        });
        let sym = check_lemma_ij(lv, i, &Weight::symbolic())?;
        r.check(
            &format!("h_{i}(x,y) = h_{j}(sflow_{i}(x,y))"),
            ok && sym,
            ok,
            sym,
            format!("{how}; symbolic weight"),
        );
    }
    let jv = Var::named("j");
    let sj = |a: &HashMap<Var, Scalar>| sc(a, jv);
    for i in 1..=top {
        let pt = special_point(lv, i)?;
        let ok = identity_holds(mode, &[(jv, 2)], |a| {
            let j = sj(a);
            let want = &(&Scalar::int(i as i64) - &j) * &(&(&Scalar::int(-2) + &j) - lv.k());
            Ok(&eval_h_at(&j, lv, &pt) - &want)
        });
        r.check(&format!("h_j(x^{i},y^{i}) = (i-j)(-2+j-k)"), ok, ok, true, how);
    }
    let kk = lv.k();
    for i in 1..=top {
        let si = Scalar::int(i as i64);
        let mut even_ok = true;
        let mut odd_ok = true;
        for n in 0..=d.samples as i64 {
            let sn = Scalar::int(n);
            let we = special_orbit_closed_form(lv, &si, &sn, false)?;
            let wo = special_orbit_closed_form(lv, &si, &sn, true)?;
            even_ok &= identity_holds(mode, &[(jv, 2)], |a| {
                let j = sj(a);
                // (i-j)(-2+j-3n-k(1+n))
                let f2 = &(&(&(&Scalar::int(-2) + &j) - &Scalar::int(3 * n)) - &(kk * &Scalar::int(1 + n)));
                Ok(&eval_h_at(&j, lv, &we) - &(&(&si - &j) * f2))
            });
            odd_ok &= identity_holds(mode, &[(jv, 2)], |a| {
                let j = sj(a);
                let ij = &si + &j;
                // -(-3+i+j-k)(-5+i+j-2k-3n-kn)
                let f1 = &(&ij - &Scalar::int(3)) - kk;
                let f2 = &(&(&(&ij - &Scalar::int(5)) - &(&Scalar::int(2) * kk)) - &Scalar::int(3 * n)) - &(kk * &sn);
                Ok(&eval_h_at(&j, lv, &wo) + &(&f1 * &f2))
            });
        }
        let n = d.samples;
        r.check(&format!("h_j on x^{i}_2n, n<={n}"), even_ok, even_ok, true, how);
        r.check(&format!("h_j on x^{i}_2n+1, n<={n}"), odd_ok, odd_ok, true, how);
    }
    Ok(r)
}

fn orbits(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    let k = d.integral_level()?;
    let lv = &d.level;
    let steps = d.steps as i64;
    let mut r = Report::new("orbits", lv.k());
    let up = vacuum_orbit_recursive(lv, steps)?;
    let down = vacuum_orbit_recursive(lv, -steps)?;
    let mut bad = Vec::new();
    let mut dims_ok = true;
    for e in up.iter().chain(down.iter().skip(1)) {
        let closed = vacuum_orbit(lv, e.n)?;
        if closed.weight != e.weight {
            bad.push(format!("n={}: {} vs {}", e.n, closed.weight, e.weight));
        }
        let t = top_dim(lv, &e.weight)?;
        dims_ok &= e.top_dim.is_some_and(|d| t.witnesses.contains(&d));
    }
    r.check(
        &format!("vacuum orbit closed form = recursion, |n|<={steps}"),
        bad.is_empty(),
        bad.len(),
        0,
        bad.first().cloned().unwrap_or_default(),
    );
    r.check("vacuum orbit top dims lie on h_i", dims_ok, dims_ok, true, "witnesses_in_sk");
    let m1 = vacuum_orbit(lv, -1)?.weight;
    let want = Weight::new(lv.flow_shift(), Scalar::zero());
    r.check("Psi^-1(W_k) = L((2k+3)/3, 0)", m1 == want, &m1, &want, "closed form");
    let m1r = &down[1].weight;
    r.check("Psi^-1(W_k) by recursion", *m1r == want, m1r, &want, "sflow inverse");
    for i in 1..=(k + 2) as u32 {
        let rec = special_orbit_recursive(lv, i, d.steps)?;
        let mut bad = Vec::new();
        let mut dims = true;
        for e in &rec {
            let c = orbit_from_special(lv, i, e.n as u32)?;
            if c.weight != e.weight {
                bad.push(format!("n={}: {} vs {}", e.n, c.weight, e.weight));
            }
            dims &= top_dim(lv, &e.weight)?.dim == c.top_dim;
        }
        r.check(
            &format!("special orbit i={i} closed form = recursion, n<={}", d.steps),
            bad.is_empty(),
            bad.len(),
            0,
            bad.first().cloned().unwrap_or_default(),
        );
        r.check(&format!("special orbit i={i} top dims i, k+3-i"), dims, dims, true, "min witness");
    }
    Ok(r)
}

fn delta_twisted(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    d.level_one()?;
    let mut r = twisted_top_eigen(&d.level)?;
    let mut anti = true;
    for m in 0..=8 {
        for n in 0..=8 {
            anti &= TwistedCoeff::new(m, n).value == -TwistedCoeff::new(n, m).value;
        }
    }
    r.check("C_mn = -C_nm, m,n<=8", anti, anti, true, "exact");
    let c01 = TwistedCoeff::new(0, 1).value;
    r.check("C_01", c01 == rat(1, 8), &c01, "1/8", "exact");

    let a = register_algebra(&AlgebraSpec::new("Fh", vec![clifford_half()]))?;
    let phi = a.field("Fh", "phi")?;
    let w = a.mode(phi, -2, &a.mode(phi, -1, &a.vacuum())).scaled(&Scalar::rat(1, 2));
    let e = twisted_correction_f12(&a, 0, &w)?;
    let c = e.coeff(-2);
    let want = a.vacuum().scaled(&Scalar::rat(1, 16));
    r.check("e^Delta omega z^-2", c == want, &c, &want, &e);
    let top = e.coeff(0);
    r.check("e^Delta omega z^0", top == w, &top, &w, "exact");
    let single = a.mode(phi, -1, &a.vacuum());
    let es = twisted_correction_f12(&a, 0, &single)?;
    let fixed = es.terms.len() == 1 && es.coeff(0) == single;
    r.check("e^Delta phi = phi", fixed, &es, &single, "exact");

    let f = register_algebra(&AlgebraSpec::new("F", vec![clifford_f()]))?;
    let alpha = f.nop(&f.gen("F.psi+")?, &f.gen("F.psi-")?)?;
    let bad = delta_op(&f, &f.nop(&alpha, &alpha)?, &alpha, None);
    r.check("Delta rejects non-primary h", bad.is_err(), bad.is_err(), true, "validate_delta_vector");
    Ok(r)
}

fn embedding_witness(a: &Algebra) -> Result<FState, EngineError> {
    let w = sugawara(a, 0)?;
    let xy = a.nop(&a.gen("osp.x")?, &a.gen("osp.y")?)?;
    let dh = a.deriv(&a.gen("osp.h")?)?;
    Ok(w.minus(&xy.minus(&dh.scaled(&Scalar::rat(1, 2)))))
}

fn sugawara_suite(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    let mut r = Report::new("sugawara", d.level.k());
    let sym = register_algebra(&AlgebraSpec::new("osp", vec![osp12_symbolic()]))?;
    let v = virasoro_checks(&sym, &sugawara(&sym, 0)?)?;
    let kp = Scalar::var(Var::KP);
    let want = &kp / &(&kp + &Scalar::rat(3, 2));
    r.check("Virasoro axioms, symbolic k'", v.all(), v.all(), true, "w_(0..3)w");
    r.check("c = k'/(k'+3/2)", v.central_charge == want, &v.central_charge, &want, "symbolic k'");

    let a = register_algebra(&AlgebraSpec::new("osp", vec![osp12(Scalar::rat(-5, 4))]))?;
    let v = virasoro_checks(&a, &sugawara(&a, 0)?)?;
    r.check("Virasoro axioms, k'=-5/4", v.all(), v.all(), true, "w_(0..3)w");
    r.check("c = -5 at k'=-5/4", v.central_charge == Scalar::int(-5), &v.central_charge, -5, "exact");
    let sc = singular_state_check(&a, 0, &embedding_witness(&a)?);
    r.check("witness singular at k'=-5/4", sc.singular && !sc.degenerate, sc.singular, true, "positive modes");

    let b = register_algebra(&AlgebraSpec::new("osp", vec![osp12(Scalar::rat(-7, 6))]))?;
    let sc = singular_state_check(&b, 0, &embedding_witness(&b)?);
    r.check("witness not singular at k'=-7/6", !sc.singular, sc.singular, false, "control");

    let c = register_algebra(&AlgebraSpec::new("osp", vec![osp12(Scalar::rat(-3, 2))]))?;
    let e = sugawara(&c, 0);
    r.check("critical level k'=-3/2 rejected", e.is_err(), e.is_err(), true, "2k'+3 = 0");
    Ok(r)
}

fn engine_axioms(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    let mut r = Report::new("engine-axioms", d.level.k());
    let pools = [clifford_f(), clifford_half(), lattice_minus1(), osp12(Scalar::rat(-5, 4))];
    let per = d.instances.div_ceil(pools.len());
    for (i, f) in pools.into_iter().enumerate() {
        let alg = register_algebra(&AlgebraSpec::new(&f.name.clone(), vec![f]))?;
        axiom_suite(&alg, d.seed.wrapping_add(i as u64), per, &mut r)?;
    }
    Ok(r)
}

/// `(lambda, F irreducible, E^0 irreducible, E^1 irreducible)`, worked out by
/// hand from the coset conditions.
pub const RELAXED_TABLE: [((i64, i64), bool, bool, bool); 12] = [
    ((0, 1), true, false, true),
    ((1, 8), false, true, true),
    ((5, 8), false, true, true),
    ((-3, 8), false, true, true),
    ((-1, 4), true, false, true),
    ((3, 4), true, false, true),
    ((1, 2), true, true, false),
    ((1, 4), true, true, false),
    ((-1, 2), true, true, false),
    ((1, 3), true, true, true),
    ((2, 1), true, false, true),
    ((-7, 8), false, true, true),
];

fn relaxed_weights(d: &SuiteDescriptor) -> Result<Report, SuiteError> {
    d.level_one()?;
    let lv = &d.level;
    let mut r = Report::new("relaxed-weights", lv.k());
    let how = if d.symbolic { "rational-function identity" } else { "degree+1 sample points" };
    for (sector, i) in [(RelaxedSector::UntwistedTop, 2), (RelaxedSector::TwistedTop, 1)] {
        let ok = identity_holds(d.mode(), &[(Var::LAMBDA, 2)], |a| {
            let w = relaxed_weight(lv, &RelaxedParams::new(sc(a, Var::LAMBDA), sector));
            Ok::<_, ExactError>(eval_h(i, lv, &w))
        });
        r.check(&format!("h_{i}(x_lambda, y_lambda) = 0, {sector:?}"), ok, ok, true, how);
    }
    for ((p, q), f, e0, e1) in RELAXED_TABLE {
        let l: Rational = rat(p, q);
        let got = irreducibility_predicates(&l);
        let ok = got.f_irred == f && got.e0_irred == e0 && got.e1_irred == e1;
        r.check(
            &format!("predicates lambda={}", crate::exact::fmt_rat(&l)),
            ok,
            format!("{} {} {}", got.f_irred, got.e0_irred, got.e1_irred),
            format!("{f} {e0} {e1}"),
            "F, E^0, E^1",
        );
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(name: SuiteName, k: i64) -> Result<Report, SuiteError> {
        run_suite(&SuiteDescriptor::new(name, Level::int(k)))
    }

    #[test]
    fn names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(n.name().parse::<SuiteName>().unwrap(), n);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for n in [
            SuiteName::ClassifyIdentities,
            SuiteName::Orbits,
            SuiteName::DeltaTwisted,
            SuiteName::RelaxedWeights,
            SuiteName::Singvec,
        ] {
            let r = run(n, 1).unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(bad.is_empty(), "{n}: {bad:#?}");
        }
    }

    #[test]
    fn level_guards() {
        assert!(matches!(run(SuiteName::PhiMap, 2), Err(SuiteError::Config(_))));
        let half = SuiteDescriptor::new(SuiteName::Singvec, parse_level("1/2").unwrap());
        assert_eq!(exit_code(&run_suite(&half).unwrap()), 1);
        assert!(parse_level("0.5").is_err());
        assert!(run(SuiteName::Orbits, -3).is_err());
    }
}
