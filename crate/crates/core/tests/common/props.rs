use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use sctptp::logic::{alpha_equal, substitute, to_nnf, NamelessForm};
use sctptp::{Formula, Term};

use super::Atoms;

pub fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["a", "b", "c"]).prop_map(Term::constant),
        prop::sample::select(vec!["X", "Y", "Z", "W"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::app("f", vec![t])),
            (inner.clone(), inner).prop_map(|(t, u)| Term::app("g", vec![t, u])),
        ]
    })
}

pub fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        term().prop_map(|t| Formula::pred("p", vec![t])),
        (term(), term()).prop_map(|(t, u)| Formula::pred("q", vec![t, u])),
        (term(), term()).prop_map(|(t, u)| Formula::eq(t, u)),
        Just(Formula::pred("r", vec![])),
        Just(Formula::True),
        Just(Formula::False),
    ]
}

pub fn connectives(inner: BoxedStrategy<Formula>) -> BoxedStrategy<Formula> {
    prop_oneof![
        inner.clone().prop_map(Formula::not),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
        (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
        (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
    ]
    .boxed()
}

pub fn formula() -> impl Strategy<Value = Formula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        let var = prop::sample::select(vec!["X", "Y", "Z"]);
        prop_oneof![
            3 => connectives(inner.clone().boxed()),
            1 => (var.clone(), inner.clone()).prop_map(|(x, b)| Formula::forall(x, b)),
            1 => (var, inner).prop_map(|(x, b)| Formula::exists(x, b)),
        ]
    })
}

/// Quantifier-free formulas over at most six atoms.
pub fn propositional() -> impl Strategy<Value = Formula> {
    let atoms =
        prop::sample::select(vec!["p1", "p2", "p3", "p4", "p5", "p6"]).prop_map(|p| Formula::pred(p, vec![])).boxed();
    let leaf = prop_oneof![8 => atoms, 1 => Just(Formula::True), 1 => Just(Formula::False)];
    leaf.prop_recursive(5, 32, 2, |inner| connectives(inner.boxed()))
}

fn all_names(f: &Formula) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    f.all_var_names(&mut s);
    s
}

/// Renames every bound variable to a fresh name carrying `tag`.
pub fn rename_bound(f: &Formula, tag: &str) -> Formula {
    let go = |g: &Formula| rename_bound(g, tag);
    match f {
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let mut used = all_names(b);
            used.insert(x.clone());
            let mut y = format!("{x}{tag}");
            while used.contains(&y) {
                y.push('_');
            }
            let body = go(&substitute(b, x, &Term::var(&y)));
            if matches!(f, Formula::Forall(..)) {
                Formula::forall(y, body)
            } else {
                Formula::exists(y, body)
            }
        }
        Formula::Not(a) => Formula::not(go(a)),
        Formula::And(a, b) => Formula::and(go(a), go(b)),
        Formula::Or(a, b) => Formula::or(go(a), go(b)),
        Formula::Implies(a, b) => Formula::implies(go(a), go(b)),
        Formula::Iff(a, b) => Formula::iff(go(a), go(b)),
        atom => atom.clone(),
    }
}

pub fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::Not(a) => a.is_atom() || matches!(a.as_ref(), Formula::True | Formula::False),
        Formula::And(a, b) | Formula::Or(a, b) => is_nnf(a) && is_nnf(b),
        Formula::Implies(..) | Formula::Iff(..) => false,
        Formula::Forall(_, b) | Formula::Exists(_, b) => is_nnf(b),
        _ => true,
    }
}

pub fn alpha_reflexive(f: Formula) -> Result<(), TestCaseError> {
    prop_assert!(alpha_equal(&f, &f));
    prop_assert!(alpha_equal(&f, &f.clone()));
    Ok(())
}

pub fn alpha_symmetric((f, g, rename): (Formula, Formula, bool)) -> Result<(), TestCaseError> {
    let g = if rename { rename_bound(&f, "r") } else { g };
    prop_assert_eq!(alpha_equal(&f, &g), alpha_equal(&g, &f));
    Ok(())
}

pub fn alpha_transitive(f: Formula) -> Result<(), TestCaseError> {
    let g = rename_bound(&f, "r");
    let h = rename_bound(&g, "s");
    prop_assert!(alpha_equal(&f, &g));
    prop_assert!(alpha_equal(&g, &h));
    prop_assert!(alpha_equal(&f, &h));
    Ok(())
}

pub fn alpha_transitive_random((a, b, c): (Formula, Formula, Formula)) -> Result<(), TestCaseError> {
    if alpha_equal(&a, &b) && alpha_equal(&b, &c) {
        prop_assert!(alpha_equal(&a, &c));
    }
    Ok(())
}

pub fn nameless_hash_consistent((f, g): (Formula, Formula)) -> Result<(), TestCaseError> {
    let v = rename_bound(&f, "h");
    prop_assert_eq!(NamelessForm::of(&f), NamelessForm::of(&v));
    prop_assert_eq!(hash_of(&NamelessForm::of(&f)), hash_of(&NamelessForm::of(&v)));
    if alpha_equal(&f, &g) {
        prop_assert_eq!(hash_of(&NamelessForm::of(&f)), hash_of(&NamelessForm::of(&g)));
    }
    prop_assert_eq!(alpha_equal(&f, &g), NamelessForm::of(&f) == NamelessForm::of(&g));
    Ok(())
}

pub fn nnf_idempotent(f: Formula) -> Result<(), TestCaseError> {
    let n = to_nnf(&f);
    prop_assert!(is_nnf(&n), "{}", n);
    prop_assert_eq!(to_nnf(&n), n);
    Ok(())
}

pub fn nnf_truth_table_equivalent(f: Formula) -> Result<(), TestCaseError> {
    let n = to_nnf(&f);
    let mut atoms = Atoms::default();
    atoms.collect(&f);
    atoms.collect(&n);
    prop_assert!(atoms.len() <= 6);
    for v in 0..1u64 << atoms.len() {
        prop_assert_eq!(atoms.eval(&f, v), atoms.eval(&n, v), "{} vs {}", f, n);
    }
    Ok(())
}

pub fn config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

/// Runs every law with a deterministic runner; one entry per law.
pub fn run(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    fn go<S: Strategy>(cases: u32, s: S, law: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
        let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
        let mut runner = TestRunner::new_with_rng(config(cases), rng);
        runner.run(&s, law).map_err(|e| e.to_string())
    }
    vec![
        ("alpha reflexive", go(cases, formula(), alpha_reflexive)),
        ("alpha symmetric", go(cases, (formula(), formula(), any::<bool>()), alpha_symmetric)),
        ("alpha transitive under renaming", go(cases, formula(), alpha_transitive)),
        ("alpha transitive on random triples", go(cases, (formula(), formula(), formula()), alpha_transitive_random)),
        ("nameless hash consistent", go(cases, (formula(), formula()), nameless_hash_consistent)),
        ("nnf idempotent", go(cases, formula(), nnf_idempotent)),
        ("nnf truth-table equivalent", go(cases, propositional(), nnf_truth_table_equivalent)),
    ]
}
