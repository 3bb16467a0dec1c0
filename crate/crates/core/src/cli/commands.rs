use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use crate::classify::{
    curve_samples, orbit_rows, sflow_weight, special_orbit_recursive, to_csv, top_dim, vacuum_orbit,
    vacuum_orbit_recursive, orbit_from_special, Level, OrbitEntry, Weight,
};
use crate::exact::{parse_rational, parse_scalar, Scalar};
use crate::exprio::{emit_report, eval_expr, parse_algebra_spec, parse_expr, read_report, state_to_expr, Report, Status};
use crate::ffield::register_algebra;

use super::suites::{exit_code, run_suite, SuiteDescriptor, SuiteError};

/// What a command printed and the process exit code it asks for.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            stderr: format!("error: {msg}\n"),
            code,
            ..Default::default()
        }
    }
}

fn write_report(path: Option<&Path>, r: &Report, out: &mut Outcome) {
    if let Some(p) = path {
        if let Err(e) = std::fs::write(p, emit_report(r)) {
            out.stderr.push_str(&format!("error: writing {}: {e}\n", p.display()));
            out.code = 2;
        }
    }
}

/// One line per check plus a summary line.
pub fn summarize(r: &Report) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let tag = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
        };
        let _ = writeln!(s, "{tag:4} {}", c.id);
        if c.status == Status::Fail {
            let _ = writeln!(s, "     lhs: {}\n     rhs: {}\n     {}", c.lhs, c.rhs, c.detail);
        }
    }
    let _ = writeln!(
        s,
        "{} (k = {}): {} passed, {} failed, {} skipped",
        r.suite,
        r.level,
        r.count(Status::Pass),
        r.count(Status::Fail),
        r.count(Status::Skipped)
    );
    s
}

/// `verify`: run a suite, print the summary, optionally write the JSON report.
/// Elapsed time goes into the report only when `timing` is set.
pub fn verify_cmd(d: &SuiteDescriptor, report: Option<&Path>, timing: bool) -> Outcome {
    let start = Instant::now();
    match run_suite(d) {
        Ok(mut r) => {
            if timing {
                r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let mut out = Outcome {
                stdout: summarize(&r),
                code: exit_code(&r),
                ..Default::default()
            };
            write_report(report, &r, &mut out);
            out
        }
        Err(e) => {
            let mut out = Outcome::fail(e.exit_code(), &e);
            let mut r = Report::new(d.name.name(), d.level.k());
            r.skip("suite", &e);
            write_report(report, &r, &mut out);
            out.code = 2;
            out
        }
    }
}

fn parse_pair(s: &str) -> Result<Weight, SuiteError> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| SuiteError::Config(format!("expected x,y, got {s:?}")))?;
    let p = |t: &str| {
        parse_rational(t.trim())
            .map(Scalar::from)
            .ok_or_else(|| SuiteError::Config(format!("not an exact rational: {t:?}")))
    };
    Ok(Weight::new(p(x)?, p(y)?))
}

/// What `classify` should report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyQuery {
    Point(String),
    Curve { i: u32, samples: u32 },
}

pub fn classify_cmd(level: &Level, q: &ClassifyQuery) -> Outcome {
    let res: Result<String, SuiteError> = (|| match q {
        ClassifyQuery::Point(p) => {
            let w = parse_pair(p)?;
            let t = top_dim(level, &w)?;
            let ws: Vec<String> = t.witnesses.iter().map(u32::to_string).collect();
            let mut s = format!("weight {w}\nwitnesses [{}]\n", ws.join(","));
            match t.dim {
                Some(d) => {
                    let _ = writeln!(s, "top_dim {d}{}", if t.multi_witness { " (several curves)" } else { "" });
                }
                None => s.push_str("not in S_k\n"),
            }
            Ok(s)
        }
        ClassifyQuery::Curve { i, samples } => {
            let k = level
                .integral()
                .ok_or_else(|| SuiteError::Config("curve queries need an integer level".into()))?;
            if *i == 0 || *i as i64 > k + 2 {
                return Err(SuiteError::Config(format!("curve index {i} outside 1..={}", k + 2)));
            }
            Ok(to_csv("sample", &curve_samples(level, *i, *samples)?))
        }
    })();
    match res {
        Ok(stdout) => Outcome {
            stdout,
            ..Default::default()
        },
        Err(e) => Outcome::fail(2, e),
    }
}

/// Starting point of `orbit --from`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitStart {
    Vacuum,
    Special(u32),
    Point(Weight),
}

impl std::str::FromStr for OrbitStart {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        if s == "vacuum" {
            return Ok(OrbitStart::Vacuum);
        }
        if let Some(i) = s.strip_prefix("special:") {
            return i
                .parse()
                .map(OrbitStart::Special)
                .map_err(|_| SuiteError::Config(format!("bad special index {i:?}")));
        }
        if let Some(p) = s.strip_prefix("point:") {
            return parse_pair(p).map(OrbitStart::Point);
        }
        Err(SuiteError::Config(format!("--from expects vacuum, special:i or point:x,y, got {s:?}")))
    }
}

/// CSV of the orbit built by flow steps; vacuum and special orbits are also
/// compared with their closed forms and exit 1 on a mismatch.
pub fn orbit_cmd(level: &Level, from: &OrbitStart, steps: u32) -> Outcome {
    let res: Result<(Vec<OrbitEntry>, Vec<i64>), SuiteError> = (|| match from {
        OrbitStart::Vacuum => {
            let e = vacuum_orbit_recursive(level, steps as i64)?;
            let mut bad = Vec::new();
            for x in &e {
                if vacuum_orbit(level, x.n)?.weight != x.weight {
                    bad.push(x.n);
                }
            }
            Ok((e, bad))
        }
        OrbitStart::Special(i) => {
            let e = special_orbit_recursive(level, *i, steps)?;
            let mut bad = Vec::new();
            for x in &e {
                if orbit_from_special(level, *i, x.n as u32)?.weight != x.weight {
                    bad.push(x.n);
                }
            }
            Ok((e, bad))
        }
        OrbitStart::Point(w) => {
            let mut w = w.clone();
            let mut out = Vec::new();
            for n in 0..=steps as i64 {
                let dim = top_dim(level, &w)?.dim;
                out.push(OrbitEntry {
                    n,
                    weight: w.clone(),
                    top_dim: dim,
                    applied_dim: None,
                });
                let Some(d) = dim else {
                    if n == 0 {
                        return Err(SuiteError::Config(format!("{w} is not in S_k")));
                    }
                    break;
                };
                w = sflow_weight(level, &w, &Scalar::int(d as i64));
            }
            Ok((out, vec![]))
        }
    })();
    match res.and_then(|(e, bad)| Ok((orbit_rows(level, &e)?, bad))) {
        Ok((rows, bad)) => {
            let mut out = Outcome {
                stdout: to_csv("n", &rows),
                ..Default::default()
            };
            if !bad.is_empty() {
                out.stderr = format!("closed form differs from recursion at n = {bad:?}\n");
                out.code = 1;
            }
            out
        }
        Err(e) => Outcome::fail(2, e),
    }
}

/// Evaluates the expression in `expr_text` in the algebra of `spec_text`.
/// `level`, when given, replaces the level of every factor that carries one.
pub fn ope_cmd(spec_text: &str, expr_text: &str, level: Option<&str>) -> Outcome {
    let mut spec = match parse_algebra_spec(spec_text) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(2, format!("algebra spec: {e}")),
    };
    if let Some(l) = level {
        let k = match parse_scalar(l) {
            Ok(k) => k,
            Err(e) => return Outcome::fail(2, format!("level: {e}")),
        };
        for f in &mut spec.factors {
            if f.level.is_some() {
                f.level = Some(k.clone());
            }
        }
    }
    let alg = match register_algebra(&spec) {
        Ok(a) => a,
        Err(e) => return Outcome::fail(2, e),
    };
    let expr = match parse_expr(expr_text) {
        Ok(e) => e,
        Err(d) => return Outcome::fail(2, format!("expression: {d}")),
    };
    match eval_expr(&alg, &expr) {
        Ok(s) => Outcome {
            stdout: format!("{}\n", state_to_expr(&alg, &s)),
            ..Default::default()
        },
        Err(e) => Outcome::fail(2, e),
    }
}

/// Summarizes saved reports; exit 1 if any has a failing check.
pub fn report_cmd(texts: &[(String, String)]) -> Outcome {
    let mut out = Outcome::default();
    for (name, text) in texts {
        match read_report(text) {
            Ok(r) => {
                out.stdout.push_str(&summarize(&r));
                if !r.passed() {
                    out.code = out.code.max(1);
                }
            }
            Err(e) => {
                out.stderr.push_str(&format!("error: {name}: {e}\n"));
                out.code = 2;
            }
        }
    }
    out
}
