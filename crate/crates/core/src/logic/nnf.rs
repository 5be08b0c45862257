use super::Formula;

/// Negation normal form: implications and equivalences expanded, negations
/// only directly above predicate or equality atoms.
pub fn to_nnf(f: &Formula) -> Formula {
    pos(f)
}

fn pos(f: &Formula) -> Formula {
    match f {
        Formula::Pred(..) | Formula::Eq(..) | Formula::True | Formula::False => f.clone(),
        Formula::Not(a) => neg(a),
        Formula::And(a, b) => Formula::and(pos(a), pos(b)),
        Formula::Or(a, b) => Formula::or(pos(a), pos(b)),
        Formula::Implies(a, b) => Formula::or(neg(a), pos(b)),
        Formula::Iff(a, b) => Formula::and(Formula::or(neg(a), pos(b)), Formula::or(neg(b), pos(a))),
        Formula::Forall(v, body) => Formula::forall(v.clone(), pos(body)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), pos(body)),
    }
}

/// NNF of `¬f`.
fn neg(f: &Formula) -> Formula {
    match f {
        Formula::Pred(..) | Formula::Eq(..) => Formula::not(f.clone()),
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(a) => pos(a),
        Formula::And(a, b) => Formula::or(neg(a), neg(b)),
        Formula::Or(a, b) => Formula::and(neg(a), neg(b)),
        Formula::Implies(a, b) => Formula::and(pos(a), neg(b)),
        // ¬((¬A ∨ B) ∧ (¬B ∨ A))
        Formula::Iff(a, b) => Formula::or(Formula::and(pos(a), neg(b)), Formula::and(pos(b), neg(a))),
        Formula::Forall(v, body) => Formula::exists(v.clone(), neg(body)),
        Formula::Exists(v, body) => Formula::forall(v.clone(), neg(body)),
    }
}
