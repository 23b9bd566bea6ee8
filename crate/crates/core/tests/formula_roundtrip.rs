//! Property tests for the sentence DSL: printing re-parses to an equal
//! AST, and quantifier-block evaluation is order-consistent with naive
//! enumeration.

use continuum_core::formula::{eval, parse_with_constants, Formula, Term};
use continuum_core::lattice::{power_set_lattice, FiniteLattice};
use proptest::prelude::*;
use std::collections::HashMap;

const VARS: [&str; 6] = ["x", "y", "u", "v", "z1", "w"];
const CONSTS: [&str; 2] = ["a", "b"];

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::One),
        proptest::sample::select(VARS.to_vec()).prop_map(Term::var),
        proptest::sample::select(CONSTS.to_vec()).prop_map(Term::cons),
    ];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::join(a, b)),
        ]
    })
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let atom = prop_oneof![
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Ne(a, b)),
    ];
    atom.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Formula::implies(a, b)),
            (proptest::sample::subsequence(VARS.to_vec(), 1..3), inner.clone())
                .prop_map(|(vs, f)| Formula::Forall(
                    vs.iter().map(|s| s.to_string()).collect(),
                    Box::new(f)
                )),
            (proptest::sample::subsequence(VARS.to_vec(), 1..3), inner)
                .prop_map(|(vs, f)| Formula::Exists(
                    vs.iter().map(|s| s.to_string()).collect(),
                    Box::new(f)
                )),
        ]
    })
}

/// Closes a raw formula by quantifying all variables that are not already
/// bound at the point of use (free occurrences become outer universals).
fn close(f: Formula) -> Formula {
    Formula::Forall(
        VARS.iter().map(|s| s.to_string()).collect(),
        Box::new(f),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_round_trip(raw in arb_formula()) {
        let sentence = close(raw);
        let printed = sentence.to_string();
        let consts: Vec<String> = CONSTS.iter().map(|s| s.to_string()).collect();
        let reparsed = parse_with_constants(&printed, &consts)
            .unwrap_or_else(|e| panic!("reparse failed on {printed}: {e}"));
        prop_assert_eq!(sentence, reparsed);
    }

    #[test]
    fn eval_matches_naive_enumeration(raw in arb_formula()) {
        let sentence = close(raw);
        let lattice = FiniteLattice::chain(3);
        let bindings: HashMap<String, usize> =
            [("a".to_string(), 0), ("b".to_string(), 1)].into();
        let fast = eval(&lattice, &sentence, &bindings).unwrap().value;
        let slow = naive_eval(&lattice, &sentence, &bindings, &mut Vec::new());
        prop_assert_eq!(fast, slow);
    }
}

fn naive_term(
    l: &FiniteLattice,
    t: &Term,
    bindings: &HashMap<String, usize>,
    env: &[(String, usize)],
) -> usize {
    match t {
        Term::Var(v) | Term::Const(v) => env
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|(_, e)| *e)
            .unwrap_or_else(|| bindings[v]),
        Term::Zero => l.bottom(),
        Term::One => l.top(),
        Term::Meet(a, b) => l.meet(
            naive_term(l, a, bindings, env),
            naive_term(l, b, bindings, env),
        ),
        Term::Join(a, b) => l.join(
            naive_term(l, a, bindings, env),
            naive_term(l, b, bindings, env),
        ),
    }
}

fn naive_eval(
    l: &FiniteLattice,
    f: &Formula,
    bindings: &HashMap<String, usize>,
    env: &mut Vec<(String, usize)>,
) -> bool {
    match f {
        Formula::Eq(a, b) => naive_term(l, a, bindings, env) == naive_term(l, b, bindings, env),
        Formula::Ne(a, b) => naive_term(l, a, bindings, env) != naive_term(l, b, bindings, env),
        Formula::Not(x) => !naive_eval(l, x, bindings, env),
        Formula::And(fs) => fs.iter().all(|x| naive_eval(l, x, bindings, env)),
        Formula::Or(fs) => fs.iter().any(|x| naive_eval(l, x, bindings, env)),
        Formula::Implies(a, b) => {
            !naive_eval(l, a, bindings, env) || naive_eval(l, b, bindings, env)
        }
        Formula::Forall(vs, body) => assignments(l.size(), vs.len()).into_iter().all(|assign| {
            let depth = env.len();
            for (v, e) in vs.iter().zip(&assign) {
                env.push((v.clone(), *e));
            }
            let r = naive_eval(l, body, bindings, env);
            env.truncate(depth);
            r
        }),
        Formula::Exists(vs, body) => assignments(l.size(), vs.len()).into_iter().any(|assign| {
            let depth = env.len();
            for (v, e) in vs.iter().zip(&assign) {
                env.push((v.clone(), *e));
            }
            let r = naive_eval(l, body, bindings, env);
            env.truncate(depth);
            r
        }),
    }
}

fn assignments(size: usize, vars: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..size).map(move |e| {
                    let mut b = a.clone();
                    b.push(e);
                    b
                })
            })
            .collect();
    }
    out
}

#[test]
fn witness_determinism_on_power_set() {
    // the reported counterexample for conn on the square is the
    // lexicographically first complemented pair
    let l = power_set_lattice(vec!["1".into(), "2".into()]).to_lattice();
    let s = continuum_core::formula::conn(Term::One);
    let r1 = eval(&l, &s, &HashMap::new()).unwrap();
    let r2 = eval(&l, &s, &HashMap::new()).unwrap();
    assert_eq!(r1, r2);
    assert!(!r1.value);
}
