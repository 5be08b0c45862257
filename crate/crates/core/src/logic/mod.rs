//! First-order terms, formulas and sequents.
//!
//! Values are immutable trees. Bound variables keep their source names; use
//! [`NamelessForm`] when comparing up to renaming of bound variables.

mod nameless;
mod nnf;
mod sequent;
mod subst;

pub use nameless::{alpha_equal, NamelessForm, NamelessTerm};
pub use nnf::to_nnf;
pub use sequent::{sequent_sets_equal, FormulaSet, Sequent, Side};
pub use subst::{fresh_variant, substitute, substitute_many, substitute_term};

use std::collections::BTreeSet;

/// A first-order term. Constants are applications with no arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Term::Var(v) => v == name,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(name)),
        }
    }

    /// Calls `f` on this term and every subterm, parents before children.
    pub fn visit_subterms<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        f(self);
        if let Term::App(_, args) = self {
            for a in args {
                a.visit_subterms(f);
            }
        }
    }

    /// Subterm at a path of argument positions.
    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, args) => args.get(i)?.at(rest),
                Term::Var(_) => None,
            },
        }
    }

    /// Copy of this term with the subterm at `path` replaced.
    pub fn replace_at(&self, path: &[usize], with: &Term) -> Option<Term> {
        match path.split_first() {
            None => Some(with.clone()),
            Some((&i, rest)) => match self {
                Term::App(f, args) => {
                    let mut args = args.clone();
                    let slot = args.get_mut(i)?;
                    *slot = slot.replace_at(rest, with)?;
                    Some(Term::App(f.clone(), args))
                }
                Term::Var(_) => None,
            },
        }
    }
}

/// A first-order formula. Quantifiers bind exactly one variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    True,
    False,
}

#[allow(clippy::should_implement_trait)]
impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    pub fn eq(lhs: Term, rhs: Term) -> Self {
        Formula::Eq(lhs, rhs)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(var: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(var.into(), Box::new(body))
    }

    pub fn exists(var: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(var.into(), Box::new(body))
    }

    /// Predicate and equality atoms viewed uniformly: `=` acts as a binary
    /// predicate symbol.
    pub fn as_atom(&self) -> Option<(&str, Vec<&Term>)> {
        match self {
            Formula::Pred(p, args) => Some((p.as_str(), args.iter().collect())),
            Formula::Eq(l, r) => Some(("=", vec![l, r])),
            _ => None,
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Pred(..) | Formula::Eq(..) | Formula::True | Formula::False)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut terms = |ts: &mut dyn Iterator<Item = &Term>, bound: &Vec<&str>| {
            for t in ts {
                let mut fv = BTreeSet::new();
                t.free_vars_into(&mut fv);
                out.extend(fv.into_iter().filter(|v| !bound.contains(&v.as_str())));
            }
        };
        match self {
            Formula::Pred(_, args) => terms(&mut args.iter(), bound),
            Formula::Eq(l, r) => terms(&mut [l, r].into_iter(), bound),
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::True | Formula::False => {}
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        match self {
            Formula::Pred(_, args) => args.iter().any(|t| t.contains_var(name)),
            Formula::Eq(l, r) => l.contains_var(name) || r.contains_var(name),
            Formula::Not(a) => a.has_free_var(name),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.has_free_var(name) || b.has_free_var(name)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => v != name && body.has_free_var(name),
            Formula::True | Formula::False => false,
        }
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn all_var_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::Eq(l, r) => {
                l.free_vars_into(out);
                r.free_vars_into(out);
            }
            Formula::Not(a) => a.all_var_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.all_var_names(out);
                b.all_var_names(out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                out.insert(v.clone());
                body.all_var_names(out);
            }
            Formula::True | Formula::False => {}
        }
    }

    /// Visit every term argument of every atom (not subterms).
    pub fn visit_atom_args<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            Formula::Pred(_, args) => args.iter().for_each(&mut *f),
            Formula::Eq(l, r) => {
                f(l);
                f(r);
            }
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.visit_atom_args(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_atom_args(f);
                b.visit_atom_args(f);
            }
            Formula::True | Formula::False => {}
        }
    }

    /// Number of connective, quantifier and atom nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                1 + a.size() + b.size()
            }
            _ => 1,
        }
    }
}

pub fn free_vars(f: &Formula) -> BTreeSet<String> {
    f.free_vars()
}
