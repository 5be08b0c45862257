use super::{Formula, Term};

/// Locally nameless term: bound variables become de Bruijn indices counted
/// from the innermost enclosing binder, free variables keep their names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamelessTerm {
    Free(String),
    Bound(usize),
    App(String, Vec<NamelessTerm>),
}

/// Canonical form of a formula. Two formulas are alpha-equivalent exactly
/// when their nameless forms are equal, and the derived `Hash` agrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NamelessForm {
    Pred(String, Vec<NamelessTerm>),
    Eq(NamelessTerm, NamelessTerm),
    Not(Box<NamelessForm>),
    And(Box<NamelessForm>, Box<NamelessForm>),
    Or(Box<NamelessForm>, Box<NamelessForm>),
    Implies(Box<NamelessForm>, Box<NamelessForm>),
    Iff(Box<NamelessForm>, Box<NamelessForm>),
    Forall(Box<NamelessForm>),
    Exists(Box<NamelessForm>),
    True,
    False,
}

impl NamelessForm {
    pub fn of(f: &Formula) -> Self {
        convert(f, &mut Vec::new())
    }
}

impl From<&Formula> for NamelessForm {
    fn from(f: &Formula) -> Self {
        NamelessForm::of(f)
    }
}

fn convert_term(t: &Term, scope: &[&str]) -> NamelessTerm {
    match t {
        Term::Var(v) => match scope.iter().rev().position(|b| b == v) {
            Some(depth) => NamelessTerm::Bound(depth),
            None => NamelessTerm::Free(v.clone()),
        },
        Term::App(f, args) => NamelessTerm::App(f.clone(), args.iter().map(|a| convert_term(a, scope)).collect()),
    }
}

fn convert<'a>(f: &'a Formula, scope: &mut Vec<&'a str>) -> NamelessForm {
    let bin = |a: &'a Formula, b: &'a Formula, scope: &mut Vec<&'a str>| {
        (Box::new(convert(a, scope)), Box::new(convert(b, scope)))
    };
    match f {
        Formula::Pred(p, args) => NamelessForm::Pred(p.clone(), args.iter().map(|a| convert_term(a, scope)).collect()),
        Formula::Eq(l, r) => NamelessForm::Eq(convert_term(l, scope), convert_term(r, scope)),
        Formula::Not(a) => NamelessForm::Not(Box::new(convert(a, scope))),
        Formula::And(a, b) => {
            let (a, b) = bin(a, b, scope);
            NamelessForm::And(a, b)
        }
        Formula::Or(a, b) => {
            let (a, b) = bin(a, b, scope);
            NamelessForm::Or(a, b)
        }
        Formula::Implies(a, b) => {
            let (a, b) = bin(a, b, scope);
            NamelessForm::Implies(a, b)
        }
        Formula::Iff(a, b) => {
            let (a, b) = bin(a, b, scope);
            NamelessForm::Iff(a, b)
        }
        Formula::Forall(v, body) => {
            scope.push(v);
            let body = convert(body, scope);
            scope.pop();
            NamelessForm::Forall(Box::new(body))
        }
        Formula::Exists(v, body) => {
            scope.push(v);
            let body = convert(body, scope);
            scope.pop();
            NamelessForm::Exists(Box::new(body))
        }
        Formula::True => NamelessForm::True,
        Formula::False => NamelessForm::False,
    }
}

pub fn alpha_equal(f: &Formula, g: &Formula) -> bool {
    f == g || NamelessForm::of(f) == NamelessForm::of(g)
}
