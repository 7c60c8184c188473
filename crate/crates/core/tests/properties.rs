use proptest::prelude::*;

use hierarchy_lab::ast::{parse, Formula, Term};
use hierarchy_lab::hierarchy::{alt_paths, degree, in_class, pad_to, ClassId, Family};
use hierarchy_lab::oracle::{
    bounded_eval, check_equiv, table_configs, uninterpreted, Interpretation, OracleConfig, Status,
};
use hierarchy_lab::translate::{
    a_translate, dollar_translate, dual, kuroda_translate, simplify_or_bot,
};

const VARS: [&str; 3] = ["x", "y", "z"];

fn is_sigma(f: &Formula, k: i32) -> bool {
    in_class(f, ClassId::new(Family::Sigma, k))
}

fn is_pi(f: &Formula, k: i32) -> bool {
    in_class(f, ClassId::new(Family::Pi, k))
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::zero()),
        prop::sample::select(&VARS[..]).prop_map(Term::var),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::times(a, b)),
        ]
    })
}

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        Just(Formula::Bot),
        Just(Formula::atom("p")),
        term().prop_map(|t| Formula::prime("q", vec![t])),
        (term(), term()).prop_map(|(a, b)| Formula::eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::le(a, b)),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(5, 24, 2, |inner| {
        let v = prop::sample::select(&VARS[..]);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (v.clone(), inner.clone()).prop_map(|(x, b)| Formula::forall(x, b)),
            (v, inner).prop_map(|(x, b)| Formula::exists(x, b)),
        ]
    })
}

/// Prenex formula: a random quantifier prefix over a quantifier-free matrix.
fn prenex() -> impl Strategy<Value = Formula> {
    let qf = atom().prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    });
    let prefix = prop::collection::vec((any::<bool>(), prop::sample::select(&VARS[..])), 0..5);
    (prefix, qf).prop_map(|(prefix, m)| {
        prefix.into_iter().rev().fold(m, |acc, (all, v)| {
            if all {
                Formula::forall(v, acc)
            } else {
                Formula::exists(v, acc)
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn render_parse_round_trip(f in formula()) {
        prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn translations_keep_free_variables(f in formula()) {
        let fv = f.free_vars();
        prop_assert_eq!(dollar_translate(&f).unwrap().free_vars(), fv.clone());
        prop_assert_eq!(a_translate(&f).unwrap().free_vars(), fv.clone());
        prop_assert_eq!(kuroda_translate(&f).free_vars(), fv);
    }

    #[test]
    fn dollar_is_compositional(a in formula(), b in formula()) {
        let t = |f: &Formula| dollar_translate(f).unwrap();
        prop_assert_eq!(t(&Formula::and(a.clone(), b.clone())), Formula::and(t(&a), t(&b)));
        prop_assert_eq!(t(&Formula::implies(a.clone(), b.clone())), Formula::implies(t(&a), t(&b)));
        prop_assert_eq!(t(&Formula::forall("x", a.clone())), Formula::forall("x", t(&a)));
    }

    #[test]
    fn a_translation_collapses(f in formula()) {
        let back = a_translate(&f).unwrap().substitute_placeholder(&Formula::Bot).unwrap();
        prop_assert_eq!(simplify_or_bot(&back), f);
    }

    #[test]
    fn closure_is_closed_and_idempotent(f in formula()) {
        let c = f.universal_closure();
        prop_assert!(c.is_closed());
        prop_assert_eq!(c.universal_closure(), c);
    }

    #[test]
    fn substitution_free_variables(f in formula(), t in term()) {
        let g = f.substitute_term("x", &t);
        let mut expect = f.free_vars();
        if expect.remove("x") {
            expect.extend(t.vars());
        }
        prop_assert_eq!(g.free_vars(), expect);
    }

    #[test]
    fn paths_alternate_and_degree_zero_iff_qf(f in formula()) {
        let alt = alt_paths(&f);
        prop_assert!(!alt.is_empty());
        for p in alt.iter() {
            let s = p.signs();
            prop_assert!(s.windows(2).all(|w| w[0] != w[1]));
        }
        prop_assert_eq!(degree(&f) == 0, f.is_quantifier_free());
    }

    #[test]
    fn one_sided_classes_are_cumulative(f in formula(), k in 0i32..4) {
        for (strict, plus) in [(Family::U, Family::UPlus), (Family::E, Family::EPlus)] {
            if in_class(&f, ClassId::new(strict, k)) {
                prop_assert!(in_class(&f, ClassId::new(plus, k)));
                prop_assert!(in_class(&f, ClassId::new(Family::F, k)));
            }
        }
        if k >= 1 && in_class(&f, ClassId::new(Family::Sigma, k)) {
            prop_assert!(in_class(&f, ClassId::new(Family::E, k)));
        }
        if k >= 1 && in_class(&f, ClassId::new(Family::Pi, k)) {
            prop_assert!(in_class(&f, ClassId::new(Family::U, k)));
        }
    }

    #[test]
    fn dual_swaps_sides(f in prenex()) {
        let d = dual(&f).unwrap();
        prop_assert_eq!(d.free_vars(), f.free_vars());
        for k in 0..6 {
            prop_assert_eq!(is_sigma(&f, k), is_pi(&d, k));
            prop_assert_eq!(is_pi(&f, k), is_sigma(&d, k));
        }
        let dd = dual(&d).unwrap();
        let (p1, _) = f.split_prefix();
        let (p2, m2) = dd.split_prefix();
        prop_assert_eq!(p1, p2);
        prop_assert!(m2.as_negation().and_then(Formula::as_negation).is_some());
    }

    #[test]
    fn padding_is_strict_and_equivalent(f in prenex(), extra in 0i32..3, sigma in any::<bool>()) {
        let base = (0..8).find(|&m| is_sigma(&f, m) || is_pi(&f, m)).unwrap();
        let fam = if sigma { Family::Sigma } else { Family::Pi };
        let target = ClassId::new(fam, base + extra + 1);
        let g = pad_to(&f, target).unwrap();
        prop_assert!(in_class(&g, target));
        prop_assert_eq!(g.free_vars(), f.free_vars());
        let v = check_equiv(&f, &g, &OracleConfig { bounds: vec![2, 3], ..OracleConfig::default() }).unwrap();
        prop_assert_ne!(v.status, Status::Refuted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn eval_is_deterministic(f in formula(), bound in 1u64..4) {
        let closed = f.universal_closure();
        let cfg = OracleConfig::default();
        for tables in table_configs(&uninterpreted(&closed), &cfg).into_iter().take(4) {
            let it = Interpretation { bound, ph: false, tables };
            prop_assert_eq!(bounded_eval(&closed, &it), bounded_eval(&closed, &it));
        }
    }
}
