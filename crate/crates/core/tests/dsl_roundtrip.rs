//! Printing and reparsing expression trees, plus the grammar's error paths.

use std::collections::BTreeMap;

use centroframe::dsl::{eval_point, eval_surface, load_surface_file, parse_expr, parse_surface, BinOp, Expr, Func};
use centroframe::Error;
use proptest::prelude::*;

fn params() -> BTreeMap<String, f64> {
    BTreeMap::from([("a".to_string(), 1.25), ("lam".to_string(), -0.5)])
}

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..100).prop_map(|n| Expr::Num(n as f64)),
        (0.0f64..1e6).prop_map(Expr::Num),
        (1e-9f64..1e-3).prop_map(Expr::Num),
        Just(Expr::U),
        Just(Expr::V),
        Just(Expr::Param("a".into())),
        Just(Expr::Param("lam".into())),
    ]
}

fn func() -> impl Strategy<Value = Func> {
    prop_oneof![
        Just(Func::Sin),
        Just(Func::Cos),
        Just(Func::Sinh),
        Just(Func::Cosh),
        Just(Func::Exp),
        Just(Func::Sqrt),
        Just(Func::Neg),
    ]
}

fn op() -> impl Strategy<Value = BinOp> {
    prop_oneof![Just(BinOp::Add), Just(BinOp::Sub), Just(BinOp::Mul), Just(BinOp::Div)]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            (func(), inner.clone()).prop_map(|(f, x)| Expr::Unary(f, Box::new(x))),
            (op(), inner.clone(), inner.clone()).prop_map(|(o, l, r)| Expr::bin(o, l, r)),
            (inner, -3i32..=5).prop_map(|(b, n)| Expr::Pow(Box::new(b), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let text = e.to_string();
        let back = parse_expr(&text, &params()).unwrap();
        prop_assert_eq!(&back, &e, "printed as {}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr()) {
        let text = e.to_string();
        let spaced: String = text.chars().flat_map(|c| match c {
            '(' | ')' | '*' | '/' | '^' => vec![' ', c, ' '],
            _ => vec![c],
        }).collect();
        prop_assert_eq!(parse_expr(&spaced, &params()).unwrap(), e);
    }
}

#[test]
fn precedence() {
    let p = BTreeMap::new();
    let e = parse_expr("3/2*(cosh(v)^2*(cosh(u)^2 - 2) + 1)", &p).unwrap();
    let Expr::Binary(BinOp::Mul, l, _) = &e else { panic!("{e:?}") };
    assert!(matches!(**l, Expr::Binary(BinOp::Div, ..)));
    assert_eq!(parse_expr("-u^2", &p).unwrap(), Expr::neg(Expr::Pow(Box::new(Expr::U), 2)));
    assert_eq!(
        parse_expr("u - v - 1", &p).unwrap(),
        Expr::bin(BinOp::Sub, Expr::bin(BinOp::Sub, Expr::U, Expr::V), Expr::Num(1.0))
    );
    let x = parse_expr("2*u^3", &p).unwrap().eval_f64(1.5, 0.0, &p).unwrap();
    assert_eq!(x, 6.75);
}

#[test]
fn surface_parse_examples() {
    let s = parse_surface("cosh(u)*cosh(v); sinh(u); sinh(v); 1; 0").unwrap();
    assert_eq!(s.components.len(), 5);
    assert!(matches!(s.components[0], Expr::Binary(BinOp::Mul, ..)));
    for name in ["h2", "sphere", "s21"] {
        let spec = centroframe::dsl::builtin(name).unwrap();
        let x = eval_point(&spec, 0.0, 0.0).unwrap();
        for (got, want) in x.iter().zip([1.0, 0.0, 0.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-15, "{name}: {x:?}");
        }
        let jet = eval_surface(&spec, 0.0, 0.0, 2).unwrap();
        assert_eq!(jet[0].value(), x[0]);
    }
}

#[test]
fn error_kinds() {
    let p = BTreeMap::new();
    match parse_expr("u +", &p) {
        Err(Error::SyntaxError { line, column, .. }) => assert_eq!((line, column), (1, 4)),
        other => panic!("{other:?}"),
    }
    assert!(matches!(parse_expr("u + w", &p), Err(Error::UnknownIdentifier(n)) if n == "w"));
    assert!(matches!(parse_expr("tan(u)", &p), Err(Error::UnknownIdentifier(_))));
    assert!(matches!(parse_surface("u; v; 1"), Err(Error::ArityError(_))));
    assert!(matches!(parse_surface("u; v; 1; 2; 3; 4"), Err(Error::ArityError(_))));
    assert!(matches!(parse_expr("u^1.5", &p), Err(Error::SyntaxError { .. })));
    match parse_surface("u; v;\n 1 + ; 2; 3") {
        Err(Error::SyntaxError { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    let spec = parse_surface("1/u; v; 1; 2; 3").unwrap();
    assert!(matches!(eval_surface(&spec, 0.0, 0.5, 3), Err(Error::ZeroConstantTerm(_))));
    let spec = parse_surface("sqrt(u); v; 1; 2; 3").unwrap();
    assert!(matches!(eval_surface(&spec, -1.0, 0.5, 3), Err(Error::DomainError(_))));
}

#[test]
fn surface_files_skip_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("torus.surf");
    std::fs::write(&path, "# a test surface\n\n  # indented comment\nr*cos(u); r*sin(u); v; 1; u*v\n").unwrap();
    let spec = load_surface_file(&path, &BTreeMap::from([("r".to_string(), 2.0)])).unwrap();
    assert_eq!(spec.name, "torus");
    assert_eq!(eval_point(&spec, 0.0, 0.3).unwrap()[0], 2.0);
    std::fs::write(&path, "# only comments\n").unwrap();
    assert!(matches!(load_surface_file(&path, &BTreeMap::new()), Err(Error::Config(_))));
}
