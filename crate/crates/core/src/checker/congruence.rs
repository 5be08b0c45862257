//! The level-2 `congruence` step.

use crate::egraph::EGraph;
use crate::logic::{Formula, Sequent, Term};

/// Which closing configuration a congruence sequent matches. Indices point
/// into the sequent's sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceCase {
    /// `P(a..) ∈ Γ` and `P(b..) ∈ Δ`.
    Hyp { left: usize, right: usize },
    /// `P(a..) ∈ Γ` and `¬P(b..) ∈ Γ`.
    LeftHyp { pos: usize, neg: usize },
    /// `a = b ∈ Δ`.
    RightRefl { right: usize },
}

/// E-graph seeded with the left equalities and every atom argument of `s`.
pub fn seed_egraph(s: &Sequent) -> EGraph {
    let mut eg = EGraph::new();
    for f in s.formulas() {
        f.visit_atom_args(&mut |t| {
            eg.add_term(t);
        });
    }
    for f in &s.left {
        if let Formula::Eq(l, r) = f {
            eg.assert_eq(l, r);
        }
    }
    eg
}

fn atoms_match(eg: &EGraph, a: &Formula, b: &Formula) -> bool {
    match (a.as_atom(), b.as_atom()) {
        (Some((p, xs)), Some((q, ys))) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(&ys).all(|(x, y)| eg.congruent(x, y))
        }
        _ => false,
    }
}

/// First matching case, searched in the order rightRefl, hyp, leftHyp.
pub fn find_case(eg: &EGraph, s: &Sequent) -> Option<CongruenceCase> {
    if let Some(right) = s.right.iter().position(|f| matches!(f, Formula::Eq(l, r) if eg.congruent(l, r))) {
        return Some(CongruenceCase::RightRefl { right });
    }
    for (i, a) in s.left.iter().enumerate() {
        for (j, b) in s.right.iter().enumerate() {
            if atoms_match(eg, a, b) {
                return Some(CongruenceCase::Hyp { left: i, right: j });
            }
        }
    }
    for (i, a) in s.left.iter().enumerate() {
        for (j, b) in s.left.iter().enumerate() {
            if let Formula::Not(b) = b {
                if atoms_match(eg, a, b) {
                    return Some(CongruenceCase::LeftHyp { pos: i, neg: j });
                }
            }
        }
    }
    None
}

/// Arguments of an atom, with `=` read as a binary predicate.
pub fn atom_args(f: &Formula) -> Vec<Term> {
    f.as_atom().map(|(_, a)| a.into_iter().cloned().collect()).unwrap_or_default()
}
