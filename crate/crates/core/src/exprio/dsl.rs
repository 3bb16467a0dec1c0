use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{fmt_rat, parse_rational, parse_scalar, rat, Rational, Scalar};
use crate::classify::{Level, Weight};
use crate::ffield::{Algebra, EngineError, FState, FactorKind, Field};
use crate::wmod::{BPMode, BPModule, BPState, Head};

/// Parsed DSL expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Vac,
    Hwv(Rational, Rational),
    Latt(i64),
    Ident(String),
    Mode {
        factor: String,
        gen: String,
        index: Rational,
        arg: Box<Expr>,
    },
    NProd(i64, Box<Expr>, Box<Expr>),
    Nop(Box<Expr>, Box<Expr>),
    Deriv(Box<Expr>),
    Scale(Scalar, Box<Expr>),
    Sum(Vec<Expr>),
    Let(String, Box<Expr>, Box<Expr>),
}

const HEADS: [&str; 7] = ["mode", "nprod", "nop", "deriv", "scale", "sum", "let"];
const ATOMS: [&str; 3] = ["vac", "hwv", "latt"];

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}{}", expected_suffix(.expected))]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(e: &[String]) -> String {
    if e.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", e.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Word(String),
    Scalar(String),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    let diag = |line, col, m: &str| Diagnostic {
        line,
        col,
        message: m.to_string(),
        expected: vec![],
    };
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |c: char| {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        match c {
            ';' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                    bump(d);
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                bump(c);
            }
            '(' | ')' | ',' => {
                chars.next();
                bump(c);
                let tok = match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => Tok::Comma,
                };
                out.push(Token { tok, line: l0, col: c0 });
            }
            '[' => {
                chars.next();
                bump(c);
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some(']') => {
                            bump(']');
                            break;
                        }
                        Some(d) => {
                            bump(d);
                            s.push(d);
                        }
                        None => return Err(diag(l0, c0, "unterminated '['")),
                    }
                }
                out.push(Token {
                    tok: Tok::Scalar(s),
                    line: l0,
                    col: c0,
                });
            }
            c if c.is_control() || c == ']' => {
                return Err(diag(l0, c0, &format!("unexpected character {c:?}")));
            }
            _ => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || "(),[];".contains(d) || d.is_control() {
                        break;
                    }
                    chars.next();
                    bump(d);
                    s.push(d);
                }
                out.push(Token {
                    tok: Tok::Word(s),
                    line: l0,
                    col: c0,
                });
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
}

const MAX_NESTING: usize = 64;

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, t: &Token, msg: &str, expected: &[&str]) -> Diagnostic {
        Diagnostic {
            line: t.line,
            col: t.col,
            message: msg.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, want: Tok, name: &str) -> Result<(), Diagnostic> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.fail(&t, &format!("unexpected {}", describe(&t.tok)), &[name]))
        }
    }

    fn rational(&mut self) -> Result<Rational, Diagnostic> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) => parse_rational(w).ok_or_else(|| self.fail(&t, &format!("bad rational {w:?}"), &["rational"])),
            other => Err(self.fail(&t, &format!("unexpected {}", describe(other)), &["rational"])),
        }
    }

    fn integer(&mut self) -> Result<i64, Diagnostic> {
        let t = self.toks[self.pos].clone();
        let r = self.rational()?;
        if !r.is_integer() {
            return Err(self.fail(&t, "expected an integer", &["integer"]));
        }
        num_traits::ToPrimitive::to_i64(r.numer()).ok_or_else(|| self.fail(&t, "integer out of range", &[]))
    }

    fn expr(&mut self) -> Result<Expr, Diagnostic> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            let t = self.peek().clone();
            return Err(self.fail(&t, "nesting too deep", &[]));
        }
        let r = self.expr_inner();
        self.depth -= 1;
        r
    }

    fn expr_inner(&mut self) -> Result<Expr, Diagnostic> {
        let t = self.next();
        match &t.tok {
            Tok::Open => {
                let h = self.next();
                let Tok::Word(head) = &h.tok else {
                    return Err(self.fail(&h, &format!("unexpected {}", describe(&h.tok)), &HEADS));
                };
                let e = match head.as_str() {
                    "mode" => {
                        let ft = self.next();
                        let Tok::Word(fg) = &ft.tok else {
                            return Err(self.fail(&ft, "expected factor.generator", &["factor.generator"]));
                        };
                        let Some((factor, gen)) = fg.split_once('.').filter(|(a, b)| !a.is_empty() && !b.is_empty())
                        else {
                            return Err(self.fail(&ft, &format!("{fg:?} is not factor.generator"), &["factor.generator"]));
                        };
                        let it = self.peek().clone();
                        let index = self.rational()?;
                        if index.denom() > &2.into() {
                            return Err(self.fail(&it, "index parity: mode indices are integers or halves", &[]));
                        }
                        let arg = self.expr()?;
                        Expr::Mode {
                            factor: factor.to_string(),
                            gen: gen.to_string(),
                            index,
                            arg: Box::new(arg),
                        }
                    }
                    "nprod" => {
                        let n = self.integer()?;
                        let a = self.expr()?;
                        let b = self.expr()?;
                        Expr::NProd(n, Box::new(a), Box::new(b))
                    }
                    "nop" => {
                        let a = self.expr()?;
                        let b = self.expr()?;
                        Expr::Nop(Box::new(a), Box::new(b))
                    }
                    "deriv" => Expr::Deriv(Box::new(self.expr()?)),
                    "scale" => {
                        let ct = self.next();
                        let c = match &ct.tok {
                            Tok::Word(w) => parse_rational(w).map(Scalar::from),
                            Tok::Scalar(s) => parse_scalar(s).ok(),
                            _ => None,
                        }
                        .ok_or_else(|| self.fail(&ct, "bad coefficient", &["rational", "[scalar]"]))?;
                        Expr::Scale(c, Box::new(self.expr()?))
                    }
                    "sum" => {
                        let mut v = Vec::new();
                        while self.peek().tok != Tok::Close {
                            if self.peek().tok == Tok::Eof {
                                let t = self.peek().clone();
                                return Err(self.fail(&t, "unexpected end of input", &[")"]));
                            }
                            v.push(self.expr()?);
                        }
                        Expr::Sum(v)
                    }
                    "let" => {
                        let nt = self.next();
                        let name = match &nt.tok {
                            Tok::Word(w) if is_ident(w) => w.clone(),
                            _ => return Err(self.fail(&nt, "expected a binding name", &["identifier"])),
                        };
                        let v = self.expr()?;
                        let b = self.expr()?;
                        Expr::Let(name, Box::new(v), Box::new(b))
                    }
                    other => return Err(self.fail(&h, &format!("unknown head {other:?}"), &HEADS)),
                };
                self.expect(Tok::Close, ")")?;
                Ok(e)
            }
            Tok::Word(w) => match w.as_str() {
                "vac" => Ok(Expr::Vac),
                "hwv" => {
                    self.expect(Tok::Open, "(")?;
                    let x = self.rational()?;
                    self.expect(Tok::Comma, ",")?;
                    let y = self.rational()?;
                    self.expect(Tok::Close, ")")?;
                    Ok(Expr::Hwv(x, y))
                }
                "latt" => {
                    self.expect(Tok::Open, "(")?;
                    let n = self.integer()?;
                    self.expect(Tok::Close, ")")?;
                    Ok(Expr::Latt(n))
                }
                w if is_ident(w) => Ok(Expr::Ident(w.to_string())),
                w => Err(self.fail(&t, &format!("unexpected word {w:?}"), &["(", "vac", "hwv", "latt", "identifier"])),
            },
            other => Err(self.fail(&t, &format!("unexpected {}", describe(other)), &["(", "vac", "hwv", "latt", "identifier"])),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Open => "'('".into(),
        Tok::Close => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Word(w) => format!("{w:?}"),
        Tok::Scalar(s) => format!("[{s}]"),
        Tok::Eof => "end of input".into(),
    }
}

/// Binding names: a letter or `_` followed by letters, digits, `_`, `'`, `+`, `-`.
pub fn is_ident(w: &str) -> bool {
    let mut c = w.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || "_'+-".contains(ch))
        && !ATOMS.contains(&w)
        && !HEADS.contains(&w)
}

pub fn parse_expr(text: &str) -> Result<Expr, Diagnostic> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, depth: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::Eof {
        return Err(p.fail(&t, "trailing input", &["end of input"]));
    }
    Ok(e)
}

fn fmt_scalar(c: &Scalar) -> String {
    match c.as_rational() {
        Some(r) => fmt_rat(r),
        None => format!("[{c}]"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Vac => f.write_str("vac"),
            Expr::Hwv(x, y) => write!(f, "hwv({},{})", fmt_rat(x), fmt_rat(y)),
            Expr::Latt(n) => write!(f, "latt({n})"),
            Expr::Ident(s) => f.write_str(s),
            Expr::Mode { factor, gen, index, arg } => {
                write!(f, "(mode {factor}.{gen} {} {arg})", fmt_rat(index))
            }
            Expr::NProd(n, a, b) => write!(f, "(nprod {n} {a} {b})"),
            Expr::Nop(a, b) => write!(f, "(nop {a} {b})"),
            Expr::Deriv(a) => write!(f, "(deriv {a})"),
            Expr::Scale(c, a) => write!(f, "(scale {} {a})", fmt_scalar(c)),
            Expr::Sum(v) => {
                f.write_str("(sum")?;
                for e in v {
                    write!(f, " {e}")?;
                }
                f.write_str(")")
            }
            Expr::Let(n, v, b) => write!(f, "(let {n} {v} {b})"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("unbound name {0}")]
    Unbound(String),
    #[error("unknown factor or generator {0}")]
    Unknown(String),
    #[error("index parity: {0}")]
    Parity(String),
    #[error("{0}")]
    Unsupported(String),
}

/// The engine field and `a_(n)` index addressed by `factor.gen` at a DSL index.
///
/// Clifford labels are shifted, `psi(r) = psi_(r-1/2)`; on a `bp-abstract`
/// factor `L n` names `L_n = T_(n+1)`.
pub fn resolve_mode(alg: &Algebra, factor: &str, gen: &str, index: &Rational) -> Result<(Field, i64), EvalError> {
    let name = format!("{factor}.{gen}");
    let fi = alg.factor_index(factor).ok_or_else(|| EvalError::Unknown(name.clone()))?;
    let kind = alg.factors()[fi].spec.kind;
    let (gen, shift) = if kind == FactorKind::BpAbstract && gen == "L" {
        ("T", rat(1, 1))
    } else if kind.half_integer_modes() {
        (gen, rat(-1, 2))
    } else {
        (gen, rat(0, 1))
    };
    let fl = alg.field(factor, gen).map_err(|_| EvalError::Unknown(name.clone()))?;
    let n = index + &shift;
    if !n.is_integer() {
        let want = if kind.half_integer_modes() { "half-integer" } else { "integer" };
        return Err(EvalError::Parity(format!("{name} takes {want} indices, got {}", fmt_rat(index))));
    }
    let n = num_traits::ToPrimitive::to_i64(n.numer()).ok_or_else(|| EvalError::Parity("index out of range".into()))?;
    Ok((fl, n))
}

/// Checks names, generators and index parities against `alg`.
pub fn check_expr(alg: &Algebra, e: &Expr) -> Result<(), EvalError> {
    fn go(alg: &Algebra, e: &Expr, env: &mut Vec<String>) -> Result<(), EvalError> {
        match e {
            Expr::Vac | Expr::Hwv(..) => Ok(()),
            Expr::Latt(_) => alg
                .factors()
                .iter()
                .any(|f| f.spec.kind == FactorKind::LatticeRank1)
                .then_some(())
                .ok_or_else(|| EvalError::Unknown("latt: no lattice factor".into())),
            Expr::Ident(n) => env
                .contains(n)
                .then_some(())
                .ok_or_else(|| EvalError::Unbound(n.clone())),
            Expr::Mode { factor, gen, index, arg } => {
                resolve_mode(alg, factor, gen, index)?;
                go(alg, arg, env)
            }
            Expr::NProd(_, a, b) | Expr::Nop(a, b) => {
                go(alg, a, env)?;
                go(alg, b, env)
            }
            Expr::Deriv(a) | Expr::Scale(_, a) => go(alg, a, env),
            Expr::Sum(v) => v.iter().try_for_each(|x| go(alg, x, env)),
            Expr::Let(n, v, b) => {
                go(alg, v, env)?;
                env.push(n.clone());
                let r = go(alg, b, env);
                env.pop();
                r
            }
        }
    }
    go(alg, e, &mut vec![])
}

/// Evaluates an expression to a state of `alg`'s vacuum module.
pub fn eval_expr(alg: &Algebra, e: &Expr) -> Result<FState, EvalError> {
    check_expr(alg, e)?;
    fn go(alg: &Algebra, e: &Expr, env: &mut HashMap<String, Vec<FState>>) -> Result<FState, EvalError> {
        Ok(match e {
            Expr::Vac => alg.vacuum(),
            Expr::Hwv(..) => {
                return Err(EvalError::Unsupported(
                    "hwv(x,y) lives in a W-module; evaluate it with eval_bp_expr".into(),
                ))
            }
            Expr::Latt(n) => {
                let fi = alg
                    .factors()
                    .iter()
                    .position(|f| f.spec.kind == FactorKind::LatticeRank1)
                    .expect("checked");
                alg.lattice_vector(fi, *n)
            }
            Expr::Ident(n) => env.get(n).and_then(|v| v.last()).cloned().expect("checked"),
            Expr::Mode { factor, gen, index, arg } => {
                let (fl, n) = resolve_mode(alg, factor, gen, index)?;
                alg.mode(fl, n, &go(alg, arg, env)?)
            }
            Expr::NProd(n, a, b) => alg.nth_product(&go(alg, a, env)?, *n, &go(alg, b, env)?)?,
            Expr::Nop(a, b) => alg.nop(&go(alg, a, env)?, &go(alg, b, env)?)?,
            Expr::Deriv(a) => alg.deriv(&go(alg, a, env)?)?,
            Expr::Scale(c, a) => go(alg, a, env)?.scaled(c),
            Expr::Sum(v) => {
                let mut s = FState::zero();
                for x in v {
                    s.add_scaled(&Scalar::one(), &go(alg, x, env)?);
                }
                s
            }
            Expr::Let(n, v, b) => {
                let val = go(alg, v, env)?;
                env.entry(n.clone()).or_default().push(val);
                let r = go(alg, b, env);
                env.get_mut(n).expect("pushed").pop();
                r?
            }
        })
    }
    go(alg, e, &mut HashMap::new())
}

/// Renders a state as a DSL expression: a sum of scaled mode strings on `vac`
/// or `latt(n)`.
pub fn state_to_expr(alg: &Algebra, s: &FState) -> Expr {
    let mut terms = Vec::new();
    for (tm, c) in &s.terms {
        let mut e = Expr::Vac;
        let mut parts: Vec<(String, String, Rational)> = Vec::new();
        for (fi, lm) in tm.iter().enumerate() {
            let f = &alg.factors()[fi];
            if lm.charge != 0 {
                e = Expr::Latt(lm.charge);
            }
            for &(g, n) in &lm.modes {
                let (name, idx) = match f.spec.kind {
                    k if k.half_integer_modes() => (f.gen_name(g as usize).to_string(), rat(n, 1) + rat(1, 2)),
                    _ => (f.gen_name(g as usize).to_string(), rat(n, 1)),
                };
                parts.push((f.spec.name.clone(), name, idx));
            }
        }
        for (factor, gen, index) in parts.into_iter().rev() {
            e = Expr::Mode {
                factor,
                gen,
                index,
                arg: Box::new(e),
            };
        }
        terms.push(if c.is_one() { e } else { Expr::Scale(c.clone(), Box::new(e)) });
    }
    match terms.len() {
        1 => terms.pop().unwrap(),
        _ => Expr::Sum(terms),
    }
}

/// Evaluates a pure `W` expression (modes `W.J`, `W.L`, `W.T`, `W.G+`, `W.G-`
/// with mode-algebra indices) on `vac` or on `hwv(x,y)`.
pub fn eval_bp_expr(level: &Level, e: &Expr) -> Result<(BPModule, BPState), EvalError> {
    fn heads(e: &Expr, out: &mut Vec<Head>) {
        match e {
            Expr::Vac => out.push(Head::Vacuum),
            Expr::Hwv(x, y) => out.push(Head::Hwv(Weight::new(x.clone().into(), y.clone().into()))),
            Expr::Mode { arg, .. } | Expr::Deriv(arg) | Expr::Scale(_, arg) => heads(arg, out),
            Expr::NProd(_, a, b) | Expr::Nop(a, b) | Expr::Let(_, a, b) => {
                heads(a, out);
                heads(b, out);
            }
            Expr::Sum(v) => v.iter().for_each(|x| heads(x, out)),
            Expr::Latt(_) | Expr::Ident(_) => {}
        }
    }
    let mut hs = Vec::new();
    heads(e, &mut hs);
    hs.dedup();
    let head = match hs.as_slice() {
        [] => Head::Vacuum,
        [h] => h.clone(),
        _ => return Err(EvalError::Unsupported("expression mixes several highest-weight vectors".into())),
    };
    let module = BPModule::new(level.clone(), head);
    fn go(m: &BPModule, e: &Expr, env: &mut HashMap<String, Vec<BPState>>) -> Result<BPState, EvalError> {
        Ok(match e {
            Expr::Vac | Expr::Hwv(..) => BPState::head(),
            Expr::Ident(n) => env
                .get(n)
                .and_then(|v| v.last())
                .cloned()
                .ok_or_else(|| EvalError::Unbound(n.clone()))?,
            Expr::Mode { factor, gen, index, arg } => {
                let name = format!("{factor}.{gen}");
                if factor != "W" {
                    return Err(EvalError::Unknown(name));
                }
                if !index.is_integer() {
                    return Err(EvalError::Parity(format!("{name} takes integer indices")));
                }
                let n = num_traits::ToPrimitive::to_i64(index.numer())
                    .ok_or_else(|| EvalError::Parity("index out of range".into()))?;
                let mode = match gen.as_str() {
                    "J" => BPMode::j(n),
                    "L" => BPMode::l(n),
                    "T" => BPMode::l(n - 1),
                    "G+" => BPMode::gp(n),
                    "G-" => BPMode::gm(n),
                    _ => return Err(EvalError::Unknown(name)),
                };
                m.act_mode(mode, &go(m, arg, env)?)
            }
            Expr::Scale(c, a) => go(m, a, env)?.scaled(c),
            Expr::Sum(v) => {
                let mut s = BPState::zero();
                for x in v {
                    s.add_scaled(&Scalar::one(), &go(m, x, env)?);
                }
                s
            }
            Expr::Let(n, v, b) => {
                let val = go(m, v, env)?;
                env.entry(n.clone()).or_default().push(val);
                let r = go(m, b, env);
                env.get_mut(n).expect("pushed").pop();
                r?
            }
            Expr::Latt(_) | Expr::NProd(..) | Expr::Nop(..) | Expr::Deriv(_) => {
                return Err(EvalError::Unsupported(
                    "only mode strings, scale, sum and let act on W-module vectors".into(),
                ))
            }
        })
    }
    let s = go(&module, e, &mut HashMap::new())?;
    Ok((module, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{clifford_f, clifford_half, osp12_symbolic, register_algebra, AlgebraSpec};

    #[test]
    fn grammar_examples() {
        let e = parse_expr(
            "(let tauminus (nop (mode F.psi- -1/2 vac) (mode osp.y -1 vac))\n  (nprod 2 (mode osp.x -1 (mode F.psi+ -1/2 vac)) tauminus))",
        )
        .unwrap();
        let Expr::Let(name, _, body) = &e else { panic!() };
        assert_eq!(name, "tauminus");
        assert!(matches!(**body, Expr::NProd(2, _, _)));
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);

        let e = parse_expr("(mode W.G+ -1 (mode W.G+ -1 (mode W.G+ -1 vac)))").unwrap();
        assert_eq!(e.to_string(), "(mode W.G+ -1 (mode W.G+ -1 (mode W.G+ -1 vac)))");

        let d = parse_expr("(mode F.phi -1/3 vac)").unwrap_err();
        assert!(d.message.contains("index parity"), "{d}");
        assert_eq!((d.line, d.col), (1, 13));

        let d = parse_expr("(nop vac\n  (bogus vac))").unwrap_err();
        assert_eq!((d.line, d.col), (2, 4));
        assert!(d.expected.contains(&"mode".to_string()));
        assert!(parse_expr("(scale [-2*k'] hwv(1/2,3))").is_ok());
        assert!(parse_expr("(sum vac").is_err());
    }

    #[test]
    fn evaluation() {
        let a = register_algebra(&AlgebraSpec::new("t", vec![osp12_symbolic(), clifford_f()])).unwrap();
        let e = parse_expr(
            "(let tauminus (nop (mode F.psi- -1/2 vac) (mode osp.y -1 vac)) (nprod 2 (nop (mode F.psi+ -1/2 vac) (mode osp.x -1 vac)) tauminus))",
        )
        .unwrap();
        let s = eval_expr(&a, &e).unwrap();
        let want = a.vacuum().scaled(&parse_scalar("-2*k'").unwrap());
        assert_eq!(s, want);
        assert_eq!(state_to_expr(&a, &s).to_string(), "(scale [-2*k'] vac)");

        let h = register_algebra(&AlgebraSpec::new("h", vec![clifford_half()])).unwrap();
        let s = eval_expr(&h, &parse_expr("(mode Fh.phi 1/2 (mode Fh.phi -1/2 vac))").unwrap()).unwrap();
        assert_eq!(s, h.vacuum());
        assert!(matches!(
            eval_expr(&h, &parse_expr("(mode Fh.phi 1 vac)").unwrap()),
            Err(EvalError::Parity(_))
        ));
        assert!(matches!(eval_expr(&h, &parse_expr("(mode Q.phi 1/2 vac)").unwrap()), Err(EvalError::Unknown(_))));
        assert!(matches!(eval_expr(&h, &parse_expr("tau").unwrap()), Err(EvalError::Unbound(_))));
        let st = h.mode(h.field("Fh", "phi").unwrap(), -2, &h.mode(h.field("Fh", "phi").unwrap(), -1, &h.vacuum()));
        let ex = state_to_expr(&h, &st);
        assert_eq!(eval_expr(&h, &ex).unwrap(), st);
    }

    #[test]
    fn w_module_expressions() {
        let e = parse_expr("(mode W.G+ -1 (mode W.G+ -1 (mode W.G+ -1 vac)))").unwrap();
        let (m, s) = eval_bp_expr(&Level::int(1), &e).unwrap();
        let (p, _) = crate::wmod::vacuum_power_vectors(&m, 3);
        assert_eq!(s, p);
        assert!(crate::wmod::singular_check(&m, &s).is_singular);
        let e = parse_expr("(mode W.G- 1 (mode W.G+ 0 hwv(1,2)))").unwrap();
        let (_, s) = eval_bp_expr(&Level::int(1), &e).unwrap();
        let g = crate::classify::eval_g(&Level::int(1), &Weight::rat(1, 1, 2, 1));
        assert_eq!(s, BPState::head().scaled(&g));
        assert!(eval_bp_expr(&Level::int(1), &parse_expr("(sum vac hwv(0,0))").unwrap()).is_err());
    }
}
