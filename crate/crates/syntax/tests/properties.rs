use gforge_syntax::*;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::var("z")),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::succ),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::plus(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::times(a, b)),
        ]
    })
}

fn closed_term() -> impl Strategy<Value = Term> {
    (0u64..4).prop_map(Term::numeral)
}

fn formula() -> impl Strategy<Value = Formula> {
    let lit = prop_oneof![
        (term(), term()).prop_map(|(a, b)| Formula::eq(a, b)),
        (term(), term()).prop_map(|(a, b)| Formula::le(a, b)),
        term().prop_map(Formula::x),
        term().prop_map(|t| Formula::pred("P", vec![t])),
    ];
    let lit = (lit, any::<bool>()).prop_map(|(f, n)| if n { f.negate() } else { f });
    lit.prop_recursive(4, 24, 2, |inner| {
        let var = prop_oneof![Just("x"), Just("y"), Just("z")];
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (var.clone(), inner.clone()).prop_map(|(x, b)| Formula::all(x, b)),
            (var, inner).prop_map(|(x, b)| Formula::ex(x, b)),
        ]
    })
}

fn closed_formula() -> impl Strategy<Value = Formula> {
    formula().prop_map(|f| {
        let subst: Vec<(String, Term)> = f.free_vars().into_iter().map(|v| (v, Term::numeral(1))).collect();
        f.substitute_all(&subst)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn negate_is_an_involution(f in formula()) {
        prop_assert_eq!(f.negate().negate(), f);
    }

    #[test]
    fn rank_is_invariant(f in formula(), t in term()) {
        prop_assert_eq!(f.negate().rank(), f.rank());
        prop_assert_eq!(f.substitute("x", &t).rank(), f.rank());
    }

    #[test]
    fn substitution_never_captures(f in formula(), t in term()) {
        let g = f.substitute("x", &t);
        let mut expected = f.free_vars();
        if expected.remove("x") {
            expected.extend(t.free_vars());
        }
        prop_assert_eq!(g.free_vars(), expected);
    }

    #[test]
    fn exactly_one_kind(f in closed_formula()) {
        let conj = is_conjunctive(&f);
        let disj = is_disjunctive(&f);
        let atomic = matches!(decompose(&f), Ok(Decomposition { kind: Kind::AtomicX, .. }));
        let pred = matches!(&f, Formula::Prime(Rel::Pred(_), _) | Formula::NegPrime(Rel::Pred(_), _));
        prop_assert_eq!(conj as u8 + disj as u8 + atomic as u8, if pred { 0 } else { 1 });
    }

    #[test]
    fn negation_commutes_with_components(f in closed_formula(), t in closed_term()) {
        if is_conjunctive(&f) {
            let d = decompose(&f).unwrap();
            let n = f.negate();
            let dn = decompose(&n).unwrap();
            prop_assert_eq!(dn.kind, Kind::Disjunctive);
            prop_assert_eq!(dn.index, d.index);
            let idx = match d.index {
                IndexSet::Empty => return Ok(()),
                IndexSet::Bits => vec![Index::Bit(0), Index::Bit(1)],
                IndexSet::ClosedTerms => vec![Index::Term(t)],
            };
            for i in idx {
                prop_assert_eq!(component(&n, &i), component(&f, &i).map(|c| c.negate()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(f in formula()) {
        let text = f.to_string();
        let g = parse_formula(&text).unwrap();
        prop_assert_eq!(g.to_string(), text);
        prop_assert_eq!(g, f);
    }
}

#[test]
fn capture_case() {
    let f = parse_formula("all y. x=y").unwrap();
    let g = f.substitute("x", &Term::succ(Term::var("y")));
    assert_eq!(g.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
    assert_eq!(g.to_string(), "all y1. S(y)=y1");
}

#[test]
fn jump_shape() {
    let f = Formula::x(Term::var("a"));
    let j = jump(&f, "a");
    assert_eq!(j.free_vars().into_iter().collect::<Vec<_>>(), vec!["a".to_string()]);
    assert!(j.rank() > f.rank());
    let jj = jump(&j, "a");
    assert!(jj.rank() > j.rank());
    assert_eq!(jj.negate().negate(), jj);
    assert_eq!(parse_formula(&jj.to_string()).unwrap(), jj);
}

#[test]
fn evaluation() {
    let two = Term::numeral(2);
    assert_eq!(Term::times(two.clone(), two).eval(), Ok(4));
    assert_eq!(Formula::le(Term::numeral(1), Term::Zero).eval_literal(), Ok(false));
    assert_eq!(Formula::eq(Term::Zero, Term::numeral(1)).negate().eval_literal(), Ok(true));
    assert!(Formula::x(Term::Zero).eval_literal().is_err());
    assert!(Formula::eq(Term::var("x"), Term::Zero).eval_literal().is_err());
}
