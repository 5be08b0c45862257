//! Export of level-1 derivations as Coq tactic scripts.
//!
//! Every goal is `False`. A formula on the left of a sequent is a hypothesis
//! `H : A`; a formula on the right is a hypothesis `H : ~A`. Each rule maps to
//! a lemma of the prelude or to a short native tactic.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::checker::check_proof;
use crate::derivation::{Derivation, Param, ProofStep};
use crate::logic::{
    alpha_equal, substitute, substitute_many, substitute_term, Formula, FormulaSet, NamelessForm, Sequent, Side, Term,
};
use crate::rules::{resolve_rule_name, Rule, RuleRef};

pub const PRELUDE: &str = r"(* Lemmas used by exported SC-TPTP proofs.
   Goals are False; left formulas are hypotheses A, right formulas are
   hypotheses ~A. Lemmas suffixed _s are inversions of left rules. *)
Require Export Classical.

Lemma cut : forall P : Prop, (~P -> False) -> (P -> False) -> False.
Proof. tauto. Qed.

Lemma rightAnd : forall P Q : Prop, (P) -> (Q) -> (P /\ Q).
Proof. intros P Q H1 H2. split. auto. auto. Qed.

Lemma rightOr : forall P Q : Prop, ~(~P /\ ~Q) -> (P \/ Q).
Proof. intros P Q H. apply NNPP. intro H1. apply H. split. auto. auto. Qed.

Lemma rightIff : forall P Q : Prop, (P -> Q) -> (Q -> P) -> (P <-> Q).
Proof. tauto. Qed.

Lemma leftAnd_s : forall P Q : Prop, (P -> Q -> False) -> ((P /\ Q) -> False).
Proof. tauto. Qed.

Definition leftAnd := fun P Q c h => leftAnd_s P Q h c.

Lemma leftOr_s : forall P Q : Prop, (P -> False) -> (Q -> False) -> ((P \/ Q) -> False).
Proof. tauto. Qed.

Definition leftOr := fun P Q c hp hq => leftOr_s P Q hp hq c.

Lemma leftImply_s : forall P Q : Prop,
  (~P -> False) -> (Q -> False) -> ((P -> Q) -> False).
Proof. tauto. Qed.

Definition leftImply := fun P Q c hp hq => leftImply_s P Q hp hq c.

Lemma leftIff_s : forall P Q : Prop, ((P -> Q) -> (Q -> P) -> False) -> ((P <-> Q) -> False).
Proof. tauto. Qed.

Definition leftIff := fun P Q c h => leftIff_s P Q h c.

Lemma leftNotAnd_s : forall P Q : Prop, (~P -> False) -> (~Q -> False) -> (~(P /\ Q) -> False).
Proof. tauto. Qed.

Definition leftNotAnd := fun P Q c hp hq => leftNotAnd_s P Q hp hq c.

Lemma leftNotOr_s : forall P Q : Prop, (~P -> ~Q -> False) -> (~(P \/ Q) -> False).
Proof. tauto. Qed.

Definition leftNotOr := fun P Q c h => leftNotOr_s P Q h c.

Lemma leftNotImp_s : forall P Q : Prop, (P -> ~Q -> False) -> (~(P -> Q) -> False).
Proof. tauto. Qed.

Definition leftNotImp := fun P Q c h => leftNotImp_s P Q h c.

Lemma leftNotIff_s : forall P Q : Prop, (~(P -> Q) -> False) -> (~(Q -> P) -> False) -> (~(P <-> Q) -> False).
Proof. tauto. Qed.

Definition leftNotIff := fun P Q c hp hq => leftNotIff_s P Q hp hq c.

(* Equality steps use eq_ind_r directly:
   leftSubst   assert (Hk : P(t)) by exact (eq_ind_r (fun Z => P(Z)) Hu Heq).
   rightSubst  assert (Hk : ~P(t)) by exact (fun Hx => Hc (eq_ind_r (fun Z => P(Z)) Hx Heq')).
   rightRefl   apply H. reflexivity. *)
";

/// The fixed lemma file.
pub fn emit_prelude() -> &'static str {
    PRELUDE
}

/// How a level-1 rule is rendered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Translation {
    /// Uses the named prelude lemma.
    Lemma(&'static str),
    /// Uses only built-in tactics.
    Native(&'static str),
}

pub fn translation(rule: Rule) -> Option<Translation> {
    use Translation::{Lemma, Native};
    Some(match rule {
        Rule::Hyp | Rule::LeftHyp => Native("auto"),
        Rule::LeftWeaken | Rule::RightWeaken | Rule::LeftNot => Native("idtac"),
        Rule::Cut => Lemma("cut"),
        Rule::LeftAnd => Lemma("leftAnd"),
        Rule::LeftOr => Lemma("leftOr"),
        Rule::LeftImp1 | Rule::LeftImp2 => Lemma("leftImply"),
        Rule::LeftIff => Lemma("leftIff"),
        Rule::LeftEx => Native("elim"),
        Rule::LeftAll => Native("pose proof"),
        Rule::RightAnd => Lemma("rightAnd"),
        Rule::RightOr => Lemma("rightOr"),
        Rule::RightIff => Lemma("rightIff"),
        Rule::RightImp | Rule::RightEx | Rule::RightAll => Native("NNPP"),
        Rule::RightNot | Rule::LeftNotNot => Native("apply"),
        Rule::LeftNotAnd => Lemma("leftNotAnd"),
        Rule::LeftNotOr => Lemma("leftNotOr"),
        Rule::LeftNotImp => Lemma("leftNotImp"),
        Rule::LeftNotIff => Lemma("leftNotIff"),
        Rule::LeftNotEx | Rule::LeftNotAll => Native("NNPP"),
        Rule::RightRefl => Native("reflexivity"),
        Rule::LeftSubst | Rule::RightSubst => Native("eq_ind_r"),
        Rule::Nnf | Rule::Congruence | Rule::LeftSubstMulti | Rule::RightSubstMulti => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoqError {
    #[error("symbol `{symbol}` used with arities {first} and {second}")]
    ArityConflict { symbol: String, first: String, second: String },
    #[error("step {step}: rule {rule} cannot be exported")]
    UnsupportedStep { step: String, rule: String },
    #[error("derivation does not check: {0}")]
    CheckFailed(String),
    #[error("derivation has no inferred step")]
    NoRoot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoqScript {
    pub context: String,
    /// `Axiom` declarations for cited axiom steps.
    pub axioms: Vec<String>,
    pub theorem: String,
    /// Proof lines between `Proof.` and `Qed.`.
    pub body: Vec<String>,
}

impl fmt::Display for CoqScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(* Requires the SCTPTP.v prelude. *)")?;
        writeln!(f, "Require Import SCTPTP.")?;
        f.write_str(&self.context)?;
        for a in &self.axioms {
            writeln!(f, "{a}")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", self.theorem)?;
        writeln!(f, "Proof.")?;
        for l in &self.body {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "Qed.")
    }
}

const RESERVED: &[&str] = &[
    "Set",
    "Prop",
    "Type",
    "forall",
    "exists",
    "fun",
    "match",
    "with",
    "end",
    "let",
    "in",
    "if",
    "then",
    "else",
    "as",
    "return",
    "fix",
    "cofix",
    "struct",
    "True",
    "False",
    "not",
    "and",
    "or",
    "iff",
    "eq",
    "ex",
    "all",
    "sctptp_U",
    "sctptp_I",
    "cut",
    "rightAnd",
    "rightOr",
    "rightIff",
    "leftAnd",
    "leftAnd_s",
    "leftOr",
    "leftOr_s",
    "leftImply",
    "leftImply_s",
    "leftIff",
    "leftIff_s",
    "leftNotAnd",
    "leftNotAnd_s",
    "leftNotOr",
    "leftNotOr_s",
    "leftNotImp",
    "leftNotImp_s",
    "leftNotIff",
    "leftNotIff_s",
    "NNPP",
];

/// A Coq identifier for a TPTP name.
pub fn ident(name: &str) -> String {
    let mut s: String =
        name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '\'' { c } else { '_' }).collect();
    if s.is_empty() || s.starts_with(|c: char| c.is_ascii_digit() || c == '\'') {
        s.insert(0, 'x');
    }
    if RESERVED.contains(&s.as_str()) || is_hyp_name(&s) {
        s.push('_');
    }
    s
}

/// Names of the form `H<digits>` are reserved for hypotheses.
fn is_hyp_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('H') && s[1..].chars().all(|c| c.is_ascii_digit())
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(v) => ident(v),
        Term::App(f, args) => match args.as_slice() {
            [] => ident(f),
            [a] => format!("{}({})", ident(f), term(a)),
            _ => {
                let parts: Vec<String> = args.iter().map(term_arg).collect();
                format!("({} {})", ident(f), parts.join(" "))
            }
        },
    }
}

/// A term that can stand as a function argument.
fn term_arg(t: &Term) -> String {
    match t {
        Term::App(_, a) if a.len() == 1 => format!("({})", term(t)),
        _ => term(t),
    }
}

fn atom(name: &str, args: &[Term]) -> String {
    term(&Term::App(name.to_string(), args.to_vec()))
}

/// Coq rendering without outer parentheses.
pub fn formula(f: &Formula) -> String {
    match f {
        Formula::Pred(p, args) => atom(p, args),
        Formula::Eq(l, r) => format!("{} = {}", term(l), term(r)),
        Formula::True => "True".into(),
        Formula::False => "False".into(),
        Formula::Not(a) => match a.as_ref() {
            Formula::Pred(..) | Formula::True | Formula::False => format!("~{}", formula(a)),
            _ => format!("~({})", formula(a)),
        },
        Formula::And(a, b) => format!("{} /\\ {}", operand(a), operand(b)),
        Formula::Or(a, b) => format!("{} \\/ {}", operand(a), operand(b)),
        Formula::Implies(a, b) => format!("{} -> {}", operand(a), operand(b)),
        Formula::Iff(a, b) => format!("{} <-> {}", operand(a), operand(b)),
        Formula::Forall(x, b) => format!("forall ({}: sctptp_U), {}", ident(x), operand(b)),
        Formula::Exists(x, b) => format!("exists ({}: sctptp_U), {}", ident(x), operand(b)),
    }
}

/// Coq rendering that is safe as an operand.
pub fn operand(f: &Formula) -> String {
    match f {
        Formula::Pred(..) | Formula::True | Formula::False | Formula::Not(_) => formula(f),
        _ => format!("({})", formula(f)),
    }
}

/// `Γ1 -> ... -> (Δ1 \/ ...)`, or `False` for an empty right side.
fn statement(s: &Sequent) -> String {
    let left = unique(&s.left);
    let right = unique(&s.right);
    let goal = disjunction(&right);
    let mut parts: Vec<String> = left.iter().map(operand).collect();
    if parts.is_empty() {
        return formula(&goal);
    }
    parts.push(operand(&goal));
    parts.join(" -> ")
}

fn disjunction(fs: &[Formula]) -> Formula {
    match fs.split_last() {
        None => Formula::False,
        Some((last, rest)) => rest.iter().rev().fold(last.clone(), |acc, f| Formula::or(f.clone(), acc)),
    }
}

fn unique(fs: &[Formula]) -> Vec<Formula> {
    let mut seen = FormulaSet::new();
    fs.iter().filter(|f| seen.insert(f)).cloned().collect()
}

#[derive(Debug, Default)]
struct Symbols {
    order: Vec<String>,
    kinds: HashMap<String, (bool, usize)>,
    vars: Vec<String>,
    seen_vars: HashSet<String>,
}

impl Symbols {
    fn symbol(&mut self, name: &str, pred: bool, arity: usize) -> Result<(), CoqError> {
        let describe = |(p, n): (bool, usize)| format!("{}/{n}", if p { "predicate" } else { "function" });
        match self.kinds.get(name) {
            Some(&k) if k != (pred, arity) => Err(CoqError::ArityConflict {
                symbol: name.to_string(),
                first: describe(k),
                second: describe((pred, arity)),
            }),
            Some(_) => Ok(()),
            None => {
                self.kinds.insert(name.to_string(), (pred, arity));
                self.order.push(name.to_string());
                Ok(())
            }
        }
    }

    fn term(&mut self, t: &Term, bound: &[String]) -> Result<(), CoqError> {
        match t {
            Term::Var(v) => {
                if !bound.contains(v) && self.seen_vars.insert(v.clone()) {
                    self.vars.push(v.clone());
                }
                Ok(())
            }
            Term::App(f, args) => {
                self.symbol(f, false, args.len())?;
                args.iter().try_for_each(|a| self.term(a, bound))
            }
        }
    }

    fn formula(&mut self, f: &Formula, bound: &mut Vec<String>) -> Result<(), CoqError> {
        match f {
            Formula::Pred(p, args) => {
                self.symbol(p, true, args.len())?;
                args.iter().try_for_each(|a| self.term(a, bound))
            }
            Formula::Eq(l, r) => {
                self.term(l, bound)?;
                self.term(r, bound)
            }
            Formula::True | Formula::False => Ok(()),
            Formula::Not(a) => self.formula(a, bound),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.formula(a, bound)?;
                self.formula(b, bound)
            }
            Formula::Forall(x, b) | Formula::Exists(x, b) => {
                bound.push(x.clone());
                let r = self.formula(b, bound);
                bound.pop();
                r
            }
        }
    }
}

/// Variables introduced as eigenvariables anywhere in `d`.
fn eigenvariables(d: &Derivation) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for s in d.steps() {
        let Some(inf) = &s.inference else { continue };
        if let RuleRef::Known(Rule::LeftEx | Rule::RightAll | Rule::LeftNotAll) = resolve_rule_name(&inf.rule) {
            if let Some(v) = inf.params.get(1).and_then(Param::as_var) {
                out.insert(v.to_string());
            }
        }
    }
    out
}

/// Parameter declarations for the universe, every symbol and every free
/// variable that is not an eigenvariable.
pub fn emit_context(d: &Derivation) -> Result<String, CoqError> {
    let mut syms = Symbols::default();
    for s in d.steps() {
        for f in s.sequent.formulas() {
            syms.formula(f, &mut Vec::new())?;
        }
        if let Some(inf) = &s.inference {
            for p in &inf.params {
                if let Param::Term(t) = p {
                    syms.term(t, &[])?;
                }
            }
        }
    }
    let eigen = eigenvariables(d);
    let mut out = String::from(
        "Parameter sctptp_U : Set. (* universe *)\nParameter sctptp_I : sctptp_U. (* an individual in the universe. *)\n",
    );
    for name in &syms.order {
        let (pred, arity) = syms.kinds[name];
        let mut ty = "sctptp_U -> ".repeat(arity);
        ty.push_str(if pred { "Prop" } else { "sctptp_U" });
        out.push_str(&format!("Parameter {} : {ty}.\n", ident(name)));
    }
    for v in syms.vars.iter().filter(|v| !eigen.contains(*v)) {
        out.push_str(&format!("Parameter {} : sctptp_U.\n", ident(v)));
    }
    Ok(out)
}

/// Hypotheses in scope and eigenvariable renamings for one branch.
#[derive(Debug, Clone, Default)]
struct Env {
    hyps: HashMap<(Side, NamelessForm), String>,
    renames: Vec<(String, Term)>,
}

impl Env {
    fn with(&self, adds: &[(Side, &Formula, &str)]) -> Env {
        let mut e = self.clone();
        for (side, f, h) in adds {
            e.hyps.insert((*side, NamelessForm::of(f)), h.to_string());
        }
        e
    }

    fn renamed(&self, var: &str, to: &str) -> Env {
        let mut e = self.clone();
        e.renames.retain(|(v, _)| v != var);
        e.renames.push((var.to_string(), Term::var(to)));
        e
    }

    fn hyp(&self, side: Side, f: &Formula) -> Option<&String> {
        if let Some(h) = self.hyps.get(&(side, NamelessForm::of(f))) {
            return Some(h);
        }
        // `~A` on the left and `A` on the right have the same Coq type.
        match (side, f) {
            (Side::Left, Formula::Not(a)) => self.hyps.get(&(Side::Right, NamelessForm::of(a))),
            (Side::Right, _) => self.hyps.get(&(Side::Left, NamelessForm::of(&Formula::not(f.clone())))),
            _ => None,
        }
    }

    fn f(&self, f: &Formula) -> String {
        formula(&self.apply(f))
    }

    fn apply(&self, f: &Formula) -> Formula {
        if self.renames.is_empty() {
            f.clone()
        } else {
            substitute_many(f, &self.renames)
        }
    }

    fn t(&self, t: &Term) -> String {
        let t = substitute_term(t, &self.renames);
        match &t {
            Term::Var(_) => term(&t),
            Term::App(_, a) if a.is_empty() => term(&t),
            _ => format!("({})", term(&t)),
        }
    }
}

struct Exporter<'a> {
    d: &'a Derivation,
    next: usize,
    body: Vec<String>,
    axioms: Vec<String>,
    axiom_names: HashSet<String>,
}

type Branches = Vec<(String, Env)>;

impl Exporter<'_> {
    fn fresh(&mut self) -> String {
        let h = format!("H{}", self.next);
        self.next += 1;
        h
    }

    fn step(&mut self, name: &str, env: &Env) -> Result<(), CoqError> {
        let s = self.d.get(name).expect("premises resolve");
        let Some(inf) = s.inference.as_ref().filter(|_| s.role.is_inferred()) else {
            let ax = ident(&s.name);
            if self.axiom_names.insert(ax.clone()) {
                self.axioms.push(format!("Axiom {ax} : {}.", statement(&s.sequent)));
            }
            let h = self.fresh();
            self.body.push(format!("(* [{name}] *) pose proof {ax} as {h}. tauto."));
            return Ok(());
        };
        let unsupported = || CoqError::UnsupportedStep { step: s.name.clone(), rule: inf.rule.clone() };
        let rule = match resolve_rule_name(&inf.rule) {
            RuleRef::Known(r) if r.level() == 1 => r,
            _ => return Err(unsupported()),
        };
        let (tactic, branches) = self.tactic(s, rule, env).ok_or_else(unsupported)?;
        self.body.push(format!("(* [{name}] *) {tactic}"));
        match branches.len() {
            0 => {}
            1 => {
                let (p, e) = &branches[0];
                self.step(p, e)?;
            }
            _ => {
                for (p, e) in &branches {
                    self.body.push("{".into());
                    self.step(p, e)?;
                    self.body.push("}".into());
                }
            }
        }
        Ok(())
    }

    /// Tactic group for one step and the environments of its premises.
    fn tactic(&mut self, s: &ProofStep, rule: Rule, env: &Env) -> Option<(String, Branches)> {
        use Side::{Left as L, Right as R};
        let inf = s.inference.as_ref()?;
        let c = &s.sequent;
        let prem = |k: usize| inf.premises[k].clone();
        let idx = inf.params.first().and_then(Param::as_int);
        let principal = |side: Side| idx.and_then(|i| c.side(side).get(i));
        let ordinal = self.d.position(&s.name).unwrap_or(0);

        Some(match rule {
            Rule::Hyp | Rule::LeftHyp => ("auto.".into(), vec![]),
            Rule::LeftWeaken | Rule::RightWeaken => ("idtac.".into(), vec![(prem(0), env.clone())]),
            Rule::Cut => {
                let p1 = &self.d.get(&inf.premises[0])?.sequent;
                let a = p1.right.get(idx?)?;
                let (h1, h2) = (self.fresh(), self.fresh());
                let t = format!("apply (cut ({})); [intros {h1} | intros {h2}].", env.f(a));
                (t, vec![(prem(0), env.with(&[(R, a, &h1)])), (prem(1), env.with(&[(L, a, &h2)]))])
            }
            Rule::LeftAnd | Rule::LeftIff | Rule::LeftNotOr | Rule::LeftNotImp => {
                let x = principal(L)?;
                let h = env.hyp(L, x)?.clone();
                let (a, b) = match (rule, x) {
                    (Rule::LeftAnd, Formula::And(a, b)) => ((**a).clone(), (**b).clone()),
                    (Rule::LeftIff, Formula::Iff(a, b)) => {
                        (Formula::implies((**a).clone(), (**b).clone()), Formula::implies((**b).clone(), (**a).clone()))
                    }
                    (Rule::LeftNotOr, Formula::Not(n)) => match n.as_ref() {
                        Formula::Or(a, b) => (Formula::not((**a).clone()), Formula::not((**b).clone())),
                        _ => return None,
                    },
                    (Rule::LeftNotImp, Formula::Not(n)) => match n.as_ref() {
                        Formula::Implies(a, b) => ((**a).clone(), Formula::not((**b).clone())),
                        _ => return None,
                    },
                    _ => return None,
                };
                let lemma = match rule {
                    Rule::LeftAnd => "leftAnd",
                    Rule::LeftIff => "leftIff",
                    Rule::LeftNotOr => "leftNotOr",
                    _ => "leftNotImp",
                };
                let (ha, hb) = (self.fresh(), self.fresh());
                let t = format!("apply ({lemma} _ _ {h}). intros {ha} {hb}.");
                (t, vec![(prem(0), env.with(&[(L, &a, &ha), (L, &b, &hb)]))])
            }
            Rule::LeftOr | Rule::LeftImp1 | Rule::LeftImp2 | Rule::LeftNotAnd | Rule::LeftNotIff => {
                let x = principal(L)?;
                let h = env.hyp(L, x)?.clone();
                let ((s1, a), (s2, b), lemma) = match (rule, x) {
                    (Rule::LeftOr, Formula::Or(a, b)) => ((L, (**a).clone()), (L, (**b).clone()), "leftOr"),
                    (Rule::LeftImp1, Formula::Implies(a, b)) => ((R, (**a).clone()), (L, (**b).clone()), "leftImply"),
                    (Rule::LeftImp2, Formula::Implies(a, b)) => {
                        ((L, Formula::not((**a).clone())), (L, (**b).clone()), "leftImply")
                    }
                    (Rule::LeftNotAnd, Formula::Not(n)) => match n.as_ref() {
                        Formula::And(a, b) => {
                            ((L, Formula::not((**a).clone())), (L, Formula::not((**b).clone())), "leftNotAnd")
                        }
                        _ => return None,
                    },
                    (Rule::LeftNotIff, Formula::Not(n)) => match n.as_ref() {
                        Formula::Iff(a, b) => (
                            (L, Formula::not(Formula::implies((**a).clone(), (**b).clone()))),
                            (L, Formula::not(Formula::implies((**b).clone(), (**a).clone()))),
                            "leftNotIff",
                        ),
                        _ => return None,
                    },
                    _ => return None,
                };
                let (h1, h2) = (self.fresh(), self.fresh());
                let t = format!("apply ({lemma} _ _ {h}); [intros {h1} | intros {h2}].");
                (t, vec![(prem(0), env.with(&[(s1, &a, &h1)])), (prem(1), env.with(&[(s2, &b, &h2)]))])
            }
            Rule::LeftNot => {
                let x = principal(L)?;
                let Formula::Not(a) = x else { return None };
                let h = env.hyp(L, x)?.clone();
                ("idtac.".into(), vec![(prem(0), env.with(&[(R, a, &h)]))])
            }
            Rule::LeftEx => {
                let x = principal(L)?;
                let Formula::Exists(v, body) = x else { return None };
                let h = env.hyp(L, x)?.clone();
                let y = inf.params.get(1)?.as_var()?;
                let y2 = format!("{}_{ordinal}", ident(y));
                let hk = self.fresh();
                let inst = substitute(body, v, &Term::var(y));
                let e = env.renamed(y, &y2).with(&[(L, &inst, &hk)]);
                (format!("elim {h}; intros {y2} {hk}."), vec![(prem(0), e)])
            }
            Rule::LeftAll => {
                let x = principal(L)?;
                let Formula::Forall(v, body) = x else { return None };
                let h = env.hyp(L, x)?.clone();
                let t = inf.params.get(1)?.to_term()?;
                let hk = self.fresh();
                let inst = substitute(body, v, &t);
                (format!("pose proof ({h} {}) as {hk}.", env.t(&t)), vec![(prem(0), env.with(&[(L, &inst, &hk)]))])
            }
            Rule::RightAnd | Rule::RightIff => {
                let x = principal(R)?;
                let h = env.hyp(R, x)?.clone();
                let (a, b, lemma) = match (rule, x) {
                    (Rule::RightAnd, Formula::And(a, b)) => ((**a).clone(), (**b).clone(), "rightAnd"),
                    (Rule::RightIff, Formula::Iff(a, b)) => (
                        Formula::implies((**a).clone(), (**b).clone()),
                        Formula::implies((**b).clone(), (**a).clone()),
                        "rightIff",
                    ),
                    _ => return None,
                };
                let (h1, h2) = (self.fresh(), self.fresh());
                let t = format!("apply {h}. apply {lemma}; [apply NNPP; intros {h1} | apply NNPP; intros {h2}].");
                (t, vec![(prem(0), env.with(&[(R, &a, &h1)])), (prem(1), env.with(&[(R, &b, &h2)]))])
            }
            Rule::RightOr => {
                let x = principal(R)?;
                let Formula::Or(a, b) = x else { return None };
                let h = env.hyp(R, x)?.clone();
                let (ha, hb) = (self.fresh(), self.fresh());
                let t = format!("apply {h}. apply rightOr. intros [{ha} {hb}].");
                (t, vec![(prem(0), env.with(&[(R, a, &ha), (R, b, &hb)]))])
            }
            Rule::RightImp => {
                let x = principal(R)?;
                let Formula::Implies(a, b) = x else { return None };
                let h = env.hyp(R, x)?.clone();
                let (ha, hb) = (self.fresh(), self.fresh());
                let t = format!("apply {h}. intros {ha}. apply NNPP. intros {hb}.");
                (t, vec![(prem(0), env.with(&[(L, a, &ha), (R, b, &hb)]))])
            }
            Rule::RightNot | Rule::LeftNotNot => {
                let (side, x) = if rule == Rule::RightNot { (R, principal(R)?) } else { (L, principal(L)?) };
                let a = match (rule, x) {
                    (Rule::RightNot, Formula::Not(a)) => a,
                    (Rule::LeftNotNot, Formula::Not(n)) => match n.as_ref() {
                        Formula::Not(a) => a,
                        _ => return None,
                    },
                    _ => return None,
                };
                let h = env.hyp(side, x)?.clone();
                let ha = self.fresh();
                (format!("apply {h}. intros {ha}."), vec![(prem(0), env.with(&[(L, a, &ha)]))])
            }
            Rule::RightEx | Rule::LeftNotEx => {
                let (side, x) = if rule == Rule::RightEx { (R, principal(R)?) } else { (L, principal(L)?) };
                let q = if rule == Rule::RightEx { x } else { negated(x)? };
                let Formula::Exists(v, body) = q else { return None };
                let h = env.hyp(side, x)?.clone();
                let t = inf.params.get(1)?.to_term()?;
                let hk = self.fresh();
                let inst = substitute(body, v, &t);
                let e =
                    if side == R { env.with(&[(R, &inst, &hk)]) } else { env.with(&[(L, &Formula::not(inst), &hk)]) };
                (format!("apply {h}. exists {}. apply NNPP. intros {hk}.", env.t(&t)), vec![(prem(0), e)])
            }
            Rule::RightAll | Rule::LeftNotAll => {
                let (side, x) = if rule == Rule::RightAll { (R, principal(R)?) } else { (L, principal(L)?) };
                let q = if rule == Rule::RightAll { x } else { negated(x)? };
                let Formula::Forall(v, body) = q else { return None };
                let h = env.hyp(side, x)?.clone();
                let y = inf.params.get(1)?.as_var()?;
                let y2 = format!("{}_{ordinal}", ident(y));
                let hk = self.fresh();
                let inst = substitute(body, v, &Term::var(y));
                let base = env.renamed(y, &y2);
                let e =
                    if side == R { base.with(&[(R, &inst, &hk)]) } else { base.with(&[(L, &Formula::not(inst), &hk)]) };
                (format!("apply {h}. intros {y2}. apply NNPP. intros {hk}."), vec![(prem(0), e)])
            }
            Rule::RightRefl => {
                let x = principal(R)?;
                let h = env.hyp(R, x)?;
                (format!("apply {h}. reflexivity."), vec![])
            }
            Rule::LeftSubst | Rule::RightSubst => {
                let eq = principal(L)?;
                let Formula::Eq(l, r) = eq else { return None };
                let he = env.hyp(L, eq)?.clone();
                let tmpl = inf.params.get(1)?.as_formula()?;
                let z = inf.params.get(2)?.as_var()?;
                let p = &self.d.get(&inf.premises[0])?.sequent;
                let side = if rule == Rule::LeftSubst { L } else { R };
                // Orientation: the premise holds P(t), the conclusion P(u).
                let has =
                    |sq: &Sequent, t: &Term| sq.side(side).iter().any(|g| alpha_equal(g, &substitute(tmpl, z, t)));
                let fwd = has(p, l) && has(c, r);
                let (t, u) = if fwd { (l, r) } else { (r, l) };
                let (pt, pu) = (substitute(tmpl, z, t), substitute(tmpl, z, u));
                let mut inner = env.clone();
                inner.renames.retain(|(v, _)| v != z);
                let motive = format!("(fun ({}: sctptp_U) => {})", ident(z), inner.f(tmpl));
                let hk = self.fresh();
                if rule == Rule::LeftSubst {
                    // eq_ind_r motive (_ : P(u)) (_ : t = u) : P(t)
                    let hu = env.hyp(L, &pu)?;
                    let e = if fwd { he } else { format!("(eq_sym {he})") };
                    let t = format!("assert ({hk} : {}) by exact (eq_ind_r {motive} {hu} {e}).", env.f(&pt));
                    (t, vec![(prem(0), env.with(&[(L, &pt, &hk)]))])
                } else {
                    // eq_ind_r motive (_ : P(t)) (_ : u = t) : P(u)
                    let hc = env.hyp(R, &pu)?;
                    let e = if fwd { format!("(eq_sym {he})") } else { he };
                    let goal = env.f(&Formula::not(pt.clone()));
                    let t = format!("assert ({hk} : {goal}) by exact (fun Hx => {hc} (eq_ind_r {motive} Hx {e})).");
                    (t, vec![(prem(0), env.with(&[(R, &pt, &hk)]))])
                }
            }
            Rule::Nnf | Rule::Congruence | Rule::LeftSubstMulti | Rule::RightSubstMulti => return None,
        })
    }
}

fn negated(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

/// The root `cut` of a refutation: `[] --> [F]` obtained by cutting `~F`
/// between a trivial `F, ~F` premise and a refutation of `~F`. Returns `F`
/// and the refutation step.
fn refutation_root<'a>(d: &'a Derivation, root: &'a ProofStep) -> Option<(Formula, &'a str)> {
    let inf = root.inference.as_ref()?;
    if resolve_rule_name(&inf.rule) != RuleRef::Known(Rule::Cut) || !root.sequent.left.is_empty() {
        return None;
    }
    let [f]: [Formula; 1] = unique(&root.sequent.right).try_into().ok()?;
    let p1 = d.get(&inf.premises[0])?;
    let p2 = d.get(&inf.premises[1])?;
    let a = p1.sequent.right.get(inf.params.first()?.as_int()?)?;
    let nf = Formula::not(f.clone());
    let only_nf = FormulaSet::of(&p2.sequent.left) == FormulaSet::of([&nf]) && p2.sequent.right.is_empty();
    (alpha_equal(a, &nf) && only_nf).then_some((f, p2.name.as_str()))
}

/// Translates a level-1 derivation. `name` becomes the theorem name.
pub fn export_coq(d: &Derivation, name: &str) -> Result<CoqScript, CoqError> {
    for s in d.steps().iter().filter(|s| s.role.is_inferred()) {
        let Some(inf) = &s.inference else { continue };
        if let RuleRef::Known(r) = resolve_rule_name(&inf.rule) {
            if r.level() > 1 {
                return Err(CoqError::UnsupportedStep { step: s.name.clone(), rule: inf.rule.clone() });
            }
        }
    }
    let report = check_proof(d, 1);
    if let Some(f) = report.first_failure() {
        return Err(CoqError::CheckFailed(format!("step {}: {}", f.step, f.message)));
    }
    let root = d.final_step().ok_or(CoqError::NoRoot)?;
    let context = emit_context(d)?;
    let mut ex = Exporter { d, next: 0, body: Vec::new(), axioms: Vec::new(), axiom_names: HashSet::new() };
    let theorem_name = ident(name);

    let theorem;
    if let Some((f, refutation)) = refutation_root(d, root) {
        theorem = format!("Theorem {theorem_name}: {}.", formula(&Formula::not(Formula::not(f.clone()))));
        let h = ex.fresh();
        ex.body.push(format!("intro {h}."));
        let env = Env::default().with(&[(Side::Left, &Formula::not(f.clone()), &h)]);
        ex.step(refutation, &env)?;
    } else {
        theorem = format!("Theorem {theorem_name}: {}.", statement(&root.sequent));
        let left = unique(&root.sequent.left);
        let right = unique(&root.sequent.right);
        let mut env = Env::default();
        if !left.is_empty() {
            let hs: Vec<String> = left.iter().map(|_| ex.fresh()).collect();
            ex.body.push(format!("intros {}.", hs.join(" ")));
            for (f, h) in left.iter().zip(&hs) {
                env = env.with(&[(Side::Left, f, h)]);
            }
        }
        if !right.is_empty() {
            let mut h = ex.fresh();
            ex.body.push(format!("apply NNPP. intros {h}."));
            for (k, f) in right.iter().enumerate() {
                if k + 1 == right.len() {
                    env = env.with(&[(Side::Right, f, &h)]);
                } else {
                    let (ha, hb) = (ex.fresh(), ex.fresh());
                    ex.body.push(format!("apply (leftNotOr _ _ {h}). intros {ha} {hb}."));
                    env = env.with(&[(Side::Right, f, &ha)]);
                    h = hb;
                }
            }
        }
        ex.step(&root.name, &env)?;
    }
    Ok(CoqScript { context, axioms: ex.axioms, theorem, body: ex.body })
}
