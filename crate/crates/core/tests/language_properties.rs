use ctxcalc::context::{ContextSet, ContextValue, MicroContext, SimpleContext};
use ctxcalc::eval::{eval_expr, eval_program, EvalError, Environment, Value};
use ctxcalc::lang::{parse_expr, parse_program, DiagnosticKind};
use ctxcalc::tagset::{Ident, TagValue};
use proptest::prelude::*;

const DECLS: &str = "dimension a; dimension b : ordered infinite {INF- to INF+}; \
                     dimension c : unordered infinite {string}; dimension e : unordered finite {red, green, blue}";

fn env() -> Environment {
    let mut env = Environment::new();
    assert!(eval_program(&mut env, &parse_program(DECLS).unwrap()).is_empty());
    env
}

fn micro() -> impl Strategy<Value = MicroContext> {
    let id = |s: &str| Ident::new(s).unwrap();
    prop_oneof![
        (0i64..1000).prop_map(move |t| MicroContext::new(id("a"), t.into())),
        any::<i64>().prop_map(move |t| MicroContext::new(id("b"), t.into())),
        "[a-z][a-z0-9_]{0,6}"
            .prop_filter_map("reserved word", |s| Ident::new(s).ok())
            .prop_map(move |s| MicroContext::new(id("c"), TagValue::Symbol(s))),
        prop::sample::select(vec!["red", "green", "blue"])
            .prop_map(move |s| MicroContext::new(id("e"), s.parse().unwrap())),
    ]
}

fn simple_ctx() -> impl Strategy<Value = SimpleContext> {
    prop::collection::vec(micro(), 0..=4).prop_map(|ms| {
        let mut seen = std::collections::BTreeSet::new();
        let unique = ms.into_iter().filter(|m| seen.insert(m.dimension.clone()));
        SimpleContext::from_micros(unique).unwrap()
    })
}

fn context_value() -> impl Strategy<Value = ContextValue> {
    prop_oneof![
        simple_ctx().prop_map(ContextValue::Simple),
        prop::collection::vec(simple_ctx(), 0..=4)
            .prop_map(|v| ContextValue::Set(v.into_iter().collect::<ContextSet>())),
    ]
}

/// Declares `d` over a small integer range and returns the program text.
fn range_decl() -> impl Strategy<Value = (String, i64, i64, i64)> {
    (-20i64..20, -20i64..20, prop_oneof![1i64..5, -5i64..-1]).prop_map(|(l, u, p)| {
        let step = if p == 1 { String::new() } else { format!(" step {p}") };
        (format!("dimension d : ordered finite {{{l} to {u}{step}}}"), l, u, p)
    })
}

fn in_progression(l: i64, u: i64, p: i64, t: i64) -> bool {
    let (lo, hi) = if p > 0 { (l, u) } else { (u, l) };
    lo <= t && t <= hi && (t - l) % p == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn canonical_text_round_trips(v in context_value()) {
        let text = v.to_string();
        let parsed = eval_expr(&env(), &parse_expr(&text).unwrap()).unwrap();
        prop_assert_eq!(parsed, Value::Context(v.clone()));
        prop_assert_eq!(text.parse::<ContextValue>().unwrap(), v);
    }

    #[test]
    fn static_check_agrees_with_membership((decl, l, u, p) in range_decl(), t in -30i64..30) {
        let src = format!("{decl}; [d:{t}]");
        let diags = ctxcalc::lang::check_program(&parse_program(&src).unwrap());
        let flagged = diags.iter().any(|d| matches!(d.kind, DiagnosticKind::TagNotInTagSet { .. }));
        prop_assert_eq!(flagged, !in_progression(l, u, p, t), "{}", src);
    }

    #[test]
    fn deferred_check_agrees_with_static((decl, _l, _u, _p) in range_decl(), t in -30i64..30) {
        let literal = format!("{decl}; [d:{t}]");
        let deferred = format!("{decl}; [d:{t}+0]");
        let static_error = ctxcalc::lang::check_program(&parse_program(&literal).unwrap())
            .iter()
            .any(|d| d.is_error());
        let mut env = Environment::new();
        let results = eval_program(&mut env, &parse_program(&deferred).unwrap());
        let runtime_error = matches!(
            results.last().map(|r| &r.outcome),
            Some(Err(EvalError::Context(_)))
        );
        prop_assert_eq!(static_error, runtime_error);
        // the deferred form is never flagged statically
        prop_assert!(!ctxcalc::lang::check_program(&parse_program(&deferred).unwrap())
            .iter()
            .any(|d| d.is_error()));
    }

    #[test]
    fn evaluation_is_deterministic(a in context_value(), b in context_value()) {
        let src = format!("{DECLS}; x = {a} union {b}; y = x intersection {a}; y difference {b}");
        let run = || {
            let mut env = Environment::new();
            eval_program(&mut env, &parse_program(&src).unwrap())
                .into_iter()
                .map(|r| match r.outcome {
                    Ok(v) => v.to_string(),
                    Err(e) => e.to_string(),
                })
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(run(), run());
    }
}

#[test]
fn symbol_tags_parse_as_symbols() {
    let v = eval_expr(&env(), &parse_expr("[c:earth, e:red]").unwrap()).unwrap();
    let Value::Context(ContextValue::Simple(c)) = v else { panic!() };
    assert_eq!(c.tag("c"), Some(&TagValue::Symbol(Ident::new("earth").unwrap())));
}
