use thiserror::Error;

use crate::exact::{parse_rational, parse_scalar, Scalar};
use crate::ffield::{compile_factor, AlgebraSpec, BracketEntry, FactorKind, FactorSpec, GenSpec, PairingEntry, SpecError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] SpecError),
}

fn syntax(line: usize, msg: impl Into<String>) -> SpecFileError {
    SpecFileError::Syntax { line, msg: msg.into() }
}

/// Parses `2 e`, `-h`, `1/2*x + y`, `0`.
fn parse_lincomb(text: &str, line: usize) -> Result<Vec<(Scalar, String)>, SpecFileError> {
    let t = text.trim();
    if t == "0" || t.is_empty() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut rest = t;
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = 1;
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r.trim_start();
        } else if !first {
            return Err(syntax(line, format!("expected '+' or '-' before {rest:?}")));
        }
        first = false;
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = rest[..end].trim();
        rest = &rest[end..];
        let (coef, name) = match term.rsplit_once(|c: char| c == '*' || c.is_whitespace()) {
            Some((c, n)) => (
                parse_rational(c.trim().trim_end_matches('*'))
                    .ok_or_else(|| syntax(line, format!("bad coefficient {c:?}")))?,
                n.trim(),
            ),
            None => (crate::exact::rat(1, 1), term),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || "_'".contains(c)) {
            return Err(syntax(line, format!("bad generator name {name:?}")));
        }
        out.push((Scalar::from(coef) * Scalar::int(sign), name.to_string()));
    }
    Ok(out)
}

fn parse_pair(s: &str, open: char, close: char, line: usize) -> Result<(String, String), SpecFileError> {
    let inner = s
        .trim()
        .strip_prefix(open)
        .and_then(|x| x.strip_suffix(close))
        .ok_or_else(|| syntax(line, format!("expected {open}a,b{close}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| syntax(line, "expected two entries separated by ','"))?;
    Ok((a.trim().to_string(), b.trim().to_string()))
}

/// Parses a sectioned algebra file and validates every factor.
///
/// ```text
/// algebra osp12
/// [factor osp]
/// kind = affine-super
/// level = -5/4
/// gen e even 1
/// gen x odd 1
/// [e,f] = h
/// {x,x} = 2 e
/// (x,y) = 2
/// ```
pub fn parse_algebra_spec(text: &str) -> Result<AlgebraSpec, SpecFileError> {
    let mut name = String::from("algebra");
    let mut factors: Vec<FactorSpec> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(n) = line.strip_prefix("algebra ") {
            name = n.trim().to_string();
            continue;
        }
        if let Some(h) = line.strip_prefix("[factor ") {
            let n = h
                .strip_suffix(']')
                .ok_or_else(|| syntax(ln, "expected [factor NAME]"))?
                .trim();
            if n.is_empty() {
                return Err(syntax(ln, "empty factor name"));
            }
            factors.push(FactorSpec::new(n, FactorKind::Heisenberg));
            continue;
        }
        let f = factors
            .last_mut()
            .ok_or_else(|| syntax(ln, "entry outside a [factor] section"))?;
        if let Some(rest) = line.strip_prefix("gen ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let (gname, odd, w) = match parts.as_slice() {
                [n, p, w] => {
                    let odd = match *p {
                        "odd" => true,
                        "even" => false,
                        other => return Err(syntax(ln, format!("parity must be even or odd, got {other:?}"))),
                    };
                    (*n, Some(odd), *w)
                }
                [n, w] => (*n, None, *w),
                _ => return Err(syntax(ln, "expected: gen NAME [even|odd] WEIGHT")),
            };
            let weight = parse_rational(w).ok_or_else(|| syntax(ln, format!("bad weight {w:?}")))?;
            f.generators.push(GenSpec {
                name: gname.to_string(),
                odd,
                weight,
            });
        } else if line.starts_with('[') || line.starts_with('{') {
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| syntax(ln, "expected [a,b] = rhs"))?;
            let (open, close) = if line.starts_with('[') { ('[', ']') } else { ('{', '}') };
            let (a, b) = parse_pair(lhs, open, close, ln)?;
            f.brackets.push(BracketEntry {
                a,
                b,
                rhs: parse_lincomb(rhs, ln)?,
            });
        } else if line.starts_with('(') {
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| syntax(ln, "expected (a,b) = value"))?;
            let (a, b) = parse_pair(lhs, '(', ')', ln)?;
            let value = parse_rational(rhs).ok_or_else(|| syntax(ln, format!("bad pairing value {:?}", rhs.trim())))?;
            f.pairings.push(PairingEntry {
                a,
                b,
                value: value.into(),
            });
        } else if let Some((k, v)) = line.split_once('=') {
            let v = v.trim();
            match k.trim() {
                "kind" => f.kind = FactorKind::from_name(v).ok_or_else(|| syntax(ln, format!("unknown kind {v:?}")))?,
                "level" => f.level = Some(parse_scalar(v).map_err(|e| syntax(ln, format!("bad level: {e}")))?),
                "norm" => {
                    f.lattice_norm = Some(v.parse().map_err(|_| syntax(ln, format!("bad norm {v:?}")))?);
                }
                other => return Err(syntax(ln, format!("unknown key {other:?}"))),
            }
        } else {
            return Err(syntax(ln, format!("unrecognized line {line:?}")));
        }
    }
    if factors.is_empty() {
        return Err(syntax(0, "no [factor] sections"));
    }
    for f in &factors {
        compile_factor(f)?;
    }
    Ok(AlgebraSpec::new(&name, factors))
}

pub const OSP12_SPEC: &str = include_str!("../../data/osp12.spec");
pub const F_SPEC: &str = include_str!("../../data/f.spec");

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{clifford_f, osp12, register_algebra};

    #[test]
    fn shipped_files() {
        let s = parse_algebra_spec(OSP12_SPEC).unwrap();
        let want = compile_factor(&osp12(Scalar::rat(-5, 4))).unwrap();
        let got = compile_factor(&s.factors[0]).unwrap();
        assert_eq!(got.products, want.products);
        assert_eq!(got.odd, want.odd);
        let f = parse_algebra_spec(F_SPEC).unwrap();
        assert_eq!(
            compile_factor(&f.factors[0]).unwrap().products,
            compile_factor(&clifford_f()).unwrap().products
        );
        register_algebra(&s.tensor(&f)).unwrap();
    }

    #[test]
    fn errors() {
        let bad = OSP12_SPEC.replace("gen x odd 1", "gen x 1");
        assert_eq!(
            parse_algebra_spec(&bad).unwrap_err(),
            SpecFileError::Invalid(SpecError::MissingParity {
                factor: "osp".into(),
                name: "x".into()
            })
        );
        let bad = OSP12_SPEC.replace("(y,x) = -2", "(y,x) = 2");
        assert!(matches!(parse_algebra_spec(&bad), Err(SpecFileError::Invalid(_))));
        let bad = OSP12_SPEC.replace("gen y odd 1", "gen y odd 1\ngen y odd 1");
        assert!(matches!(
            parse_algebra_spec(&bad),
            Err(SpecFileError::Invalid(SpecError::DuplicateGenerator { .. }))
        ));
        let bad = OSP12_SPEC.replace("[e,f] = h", "[e,f] = q");
        assert!(matches!(
            parse_algebra_spec(&bad),
            Err(SpecFileError::Invalid(SpecError::Undeclared { .. }))
        ));
        let bad = OSP12_SPEC.replace("[e,f] = h", "[e,f = h");
        assert!(matches!(parse_algebra_spec(&bad), Err(SpecFileError::Syntax { .. })));
        assert_eq!(
            parse_lincomb("1/2*x - y + 2 e", 1).unwrap(),
            vec![
                (Scalar::rat(1, 2), "x".to_string()),
                (Scalar::int(-1), "y".to_string()),
                (Scalar::int(2), "e".to_string())
            ]
        );
    }
}
