//! Canonical printer. Output reparses to the same structure.

use std::fmt::{self, Display, Write};

use crate::derivation::{Derivation, Inference, Param, ProofStep};
use crate::logic::{Formula, Sequent, Term};

impl Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_char('(')?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_char(',')?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_char(')')?;
                }
                Ok(())
            }
        }
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Pred(p, args) => write!(f, "{}", Term::App(p.clone(), args.clone())),
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::True => f.write_str("$true"),
            Formula::False => f.write_str("$false"),
            Formula::Not(a) => match a.as_ref() {
                Formula::Eq(l, r) => write!(f, "{l} != {r}"),
                inner => {
                    f.write_char('~')?;
                    operand(f, inner, false)
                }
            },
            Formula::And(a, b) => binary(f, "&", a, b, |x| matches!(x, Formula::And(..))),
            Formula::Or(a, b) => binary(f, "|", a, b, |x| matches!(x, Formula::Or(..))),
            Formula::Implies(a, b) => binary(f, "=>", a, b, |_| false),
            Formula::Iff(a, b) => binary(f, "<=>", a, b, |_| false),
            Formula::Forall(v, body) => write!(f, "![{v}]: {body}"),
            Formula::Exists(v, body) => write!(f, "?[{v}]: {body}"),
        }
    }
}

fn binary(
    f: &mut fmt::Formatter<'_>,
    op: &str,
    a: &Formula,
    b: &Formula,
    same_op: impl Fn(&Formula) -> bool,
) -> fmt::Result {
    operand(f, a, same_op(a))?;
    write!(f, " {op} ")?;
    operand(f, b, false)
}

/// Atoms and negations print bare; everything else is parenthesised unless
/// `flat` (a left-nested chain of the same associative connective).
fn operand(f: &mut fmt::Formatter<'_>, x: &Formula, flat: bool) -> fmt::Result {
    if flat || x.is_atom() || matches!(x, Formula::Not(_)) {
        write!(f, "{x}")
    } else {
        write!(f, "({x})")
    }
}

impl Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.left)?;
        f.write_str(" --> ")?;
        write_list(f, &self.right)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, fs: &[Formula]) -> fmt::Result {
    f.write_char('[')?;
    for (i, x) in fs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_char(']')
}

impl Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(i) => write!(f, "{i}"),
            Param::Term(t) => write!(f, "$fot({t})"),
            Param::Formula(x) => write!(f, "$fof({x})"),
            Param::Var(v) => f.write_str(v),
            Param::IntList(l) => {
                let items: Vec<String> = l.iter().map(ToString::to_string).collect();
                write!(f, "[{}]", items.join(", "))
            }
            Param::VarList(l) => write!(f, "[{}]", l.join(", ")),
        }
    }
}

impl Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inference({}, [status({})", self.rule, self.status)?;
        for p in &self.params {
            write!(f, ", {p}")?;
        }
        write!(f, "], [{}])", self.premises.join(", "))
    }
}

impl Display for ProofStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fof({}, {}, ", self.name, self.role)?;
        match (self.bare_formula, self.sequent.left.is_empty(), self.sequent.right.as_slice()) {
            (true, true, [single]) => write!(f, "{single}")?,
            _ => write!(f, "{}", self.sequent)?,
        }
        if let Some(inf) = &self.inference {
            write!(f, ", {inf}")?;
        }
        f.write_str(").")
    }
}

/// One `fof(...)` statement per line.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    for s in d.steps() {
        let _ = writeln!(out, "{s}");
    }
    out
}
