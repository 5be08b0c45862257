use std::collections::BTreeSet;

use super::{Formula, Term};

/// `name` with the smallest numeric suffix (starting at 1) that is not in
/// `avoid`.
pub fn fresh_variant(name: &str, avoid: &BTreeSet<String>) -> String {
    (1..).map(|k| format!("{name}{k}")).find(|cand| !avoid.contains(cand)).expect("unbounded suffix search")
}

pub fn substitute_term(t: &Term, map: &[(String, Term)]) -> Term {
    match t {
        Term::Var(v) => map.iter().find(|(x, _)| x == v).map(|(_, r)| r.clone()).unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| substitute_term(a, map)).collect()),
    }
}

/// Capture-avoiding substitution of `var` by `t`.
pub fn substitute(f: &Formula, var: &str, t: &Term) -> Formula {
    substitute_many(f, &[(var.to_string(), t.clone())])
}

/// Simultaneous capture-avoiding substitution. A binder that would capture
/// a free variable of an inserted term is renamed to the smallest numeric
/// variant of its name that is neither free in the inserted terms nor used
/// anywhere in the body.
pub fn substitute_many(f: &Formula, map: &[(String, Term)]) -> Formula {
    if map.is_empty() {
        return f.clone();
    }
    match f {
        Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| substitute_term(a, map)).collect()),
        Formula::Eq(l, r) => Formula::Eq(substitute_term(l, map), substitute_term(r, map)),
        Formula::Not(a) => Formula::not(substitute_many(a, map)),
        Formula::And(a, b) => Formula::and(substitute_many(a, map), substitute_many(b, map)),
        Formula::Or(a, b) => Formula::or(substitute_many(a, map), substitute_many(b, map)),
        Formula::Implies(a, b) => Formula::implies(substitute_many(a, map), substitute_many(b, map)),
        Formula::Iff(a, b) => Formula::iff(substitute_many(a, map), substitute_many(b, map)),
        Formula::Forall(v, body) => {
            let (v, body) = subst_binder(v, body, map);
            Formula::Forall(v, Box::new(body))
        }
        Formula::Exists(v, body) => {
            let (v, body) = subst_binder(v, body, map);
            Formula::Exists(v, Box::new(body))
        }
        Formula::True | Formula::False => f.clone(),
    }
}

fn subst_binder(v: &str, body: &Formula, map: &[(String, Term)]) -> (String, Formula) {
    // only entries that actually reach a free occurrence matter
    let live: Vec<(String, Term)> = map.iter().filter(|(x, _)| x != v && body.has_free_var(x)).cloned().collect();
    if live.is_empty() {
        return (v.to_string(), body.clone());
    }
    let mut incoming = BTreeSet::new();
    for (_, t) in &live {
        t.free_vars_into(&mut incoming);
    }
    if !incoming.contains(v) {
        return (v.to_string(), substitute_many(body, &live));
    }
    let mut avoid = incoming;
    body.all_var_names(&mut avoid);
    avoid.extend(live.iter().map(|(x, _)| x.clone()));
    let renamed = fresh_variant(v, &avoid);
    let mut extended = live;
    extended.push((v.to_string(), Term::Var(renamed.clone())));
    (renamed, substitute_many(body, &extended))
}
