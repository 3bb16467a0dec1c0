use bpw::exact::{rat, Scalar, Var};
use bpw::exprio::{emit_report, parse_algebra_spec, parse_expr, read_report, Expr, Report};
use proptest::prelude::*;

fn rational(dmax: i64) -> impl Strategy<Value = num_rational::BigRational> {
    (-12..=12i64, 1..=dmax).prop_map(|(n, d)| rat(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        rational(5).prop_map(Scalar::from),
        (rational(3), prop_oneof![Just(Var::K), Just(Var::KP), Just(Var::LAMBDA)])
            .prop_map(|(c, v)| &Scalar::from(c) * &Scalar::var(v)),
    ]
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::Vac),
        (rational(4), rational(4)).prop_map(|(x, y)| Expr::Hwv(x, y)),
        (-3..=3i64).prop_map(Expr::Latt),
        prop::sample::select(vec!["a", "tauminus", "w_1", "Gp"]).prop_map(|s| Expr::Ident(s.to_string())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let gens = vec![("osp", "x"), ("F", "psi+"), ("W", "G-"), ("W", "L"), ("L", "e+")];
    leaf().prop_recursive(4, 24, 3, move |inner| {
        prop_oneof![
            (prop::sample::select(gens.clone()), rational(2), inner.clone()).prop_map(|((f, g), i, a)| Expr::Mode {
                factor: f.to_string(),
                gen: g.to_string(),
                index: i,
                arg: Box::new(a),
            }),
            (-3..=3i64, inner.clone(), inner.clone()).prop_map(|(n, a, b)| Expr::NProd(n, Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Nop(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Deriv(Box::new(a))),
            (scalar(), inner.clone()).prop_map(|(c, a)| Expr::Scale(c, Box::new(a))),
            prop::collection::vec(inner.clone(), 1..4).prop_map(Expr::Sum),
            (prop::sample::select(vec!["a", "b2"]), inner.clone(), inner)
                .prop_map(|(n, v, b)| Expr::Let(n.to_string(), Box::new(v), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
        let text = String::from_utf8_lossy(&bytes);
        if let Err(d) = parse_expr(&text) {
            prop_assert!(d.line >= 1 && d.col >= 1);
        }
        let _ = parse_algebra_spec(&text);
        let _ = read_report(&text);
    }

    #[test]
    fn near_miss_inputs_never_panic(e in expr(), cut in any::<prop::sample::Index>(), junk in "[()a-z0-9/ .+-]{0,4}") {
        let text = e.to_string();
        let i = cut.index(text.len() + 1);
        let broken = format!("{}{}{}", &text[..i], junk, &text[i..]);
        if let Err(d) = parse_expr(&broken) {
            prop_assert!(d.line >= 1 && d.col >= 1 && !d.message.is_empty());
        }
    }

    #[test]
    fn reports_round_trip(ids in prop::collection::vec("[a-z+()_0-9]{1,8}", 0..6), oks in prop::collection::vec(any::<bool>(), 6)) {
        let mut r = Report::new("suite", "1/2");
        for (id, ok) in ids.iter().zip(&oks) {
            r.check(id, *ok, "lhs", "rhs", "detail");
        }
        let text = emit_report(&r);
        prop_assert_eq!(read_report(&text).unwrap(), r.clone());
        prop_assert_eq!(emit_report(&read_report(&text).unwrap()), text);
        let mut seen = std::collections::HashSet::new();
        prop_assert!(r.checks.iter().all(|c| seen.insert(c.id.clone())));
    }
}

#[test]
fn deep_nesting_is_a_diagnostic() {
    let text = format!("{}vac{}", "(deriv ".repeat(10_000), ")".repeat(10_000));
    let d = parse_expr(&text).unwrap_err();
    assert!(d.line >= 1);
}
