//! Step and derivation checking.
//!
//! Sequent sides are compared as sets of alpha-equivalence classes.

mod congruence;

use std::fmt;

use crate::derivation::{Derivation, Param, ProofStep};
use crate::logic::{alpha_equal, substitute, substitute_many, to_nnf, Formula, FormulaSet, Sequent, Side, Term};
use crate::rules::{resolve_rule_name, validate_param_shape, Rule, RuleRef, ShapeError};

pub use congruence::{atom_args, find_case, seed_egraph, CongruenceCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    BadIndex,
    PatternMismatch,
    ContextMismatch,
    EigenvariableCaptured,
    NotAnEquality,
    PremiseCountMismatch,
    ParamShapeMismatch,
    UnknownRule,
    NoCongruentMatch,
    LevelNotAllowed,
    ConjectureMismatch,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFailure {
    pub reason: Reason,
    pub message: String,
}

impl StepFailure {
    fn new(reason: Reason, message: impl Into<String>) -> Self {
        StepFailure { reason, message: message.into() }
    }
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.reason, self.message)
    }
}

pub type StepResult = Result<(), StepFailure>;

fn fail<T>(reason: Reason, message: impl Into<String>) -> Result<T, StepFailure> {
    Err(StepFailure::new(reason, message))
}

/// Checks one inferred step against the premise sequents recorded in `d`.
pub fn check_step(d: &Derivation, s: &ProofStep) -> StepResult {
    let Some(inf) = &s.inference else {
        return fail(Reason::PatternMismatch, "step has no inference record");
    };
    let rule = match resolve_rule_name(&inf.rule) {
        RuleRef::Known(r) => r,
        RuleRef::Unknown(name) => return fail(Reason::UnknownRule, format!("unknown rule `{name}`")),
    };
    validate_param_shape(rule.descriptor(), &inf.params, &inf.premises).map_err(|e| match e {
        ShapeError::ArityMismatch { .. } => StepFailure::new(Reason::PremiseCountMismatch, e.to_string()),
        ShapeError::ParamShapeMismatch { .. } => StepFailure::new(Reason::ParamShapeMismatch, e.to_string()),
    })?;
    let mut premises = Vec::with_capacity(inf.premises.len());
    for p in &inf.premises {
        match d.get(p) {
            Some(step) => premises.push(&step.sequent),
            None => return fail(Reason::PremiseCountMismatch, format!("unknown premise `{p}`")),
        }
    }
    check_rule(rule, &inf.params, &s.sequent, &premises)
}

/// Checks a rule application given explicit premise sequents. Parameter
/// shapes must already be valid.
pub fn check_rule(rule: Rule, params: &[Param], concl: &Sequent, prems: &[&Sequent]) -> StepResult {
    if prems.len() != rule.descriptor().premises {
        return fail(Reason::PremiseCountMismatch, format!("{rule} needs {} premise(s)", rule.descriptor().premises));
    }
    let int = |k: usize| params[k].as_int().expect("shape checked");
    let var = |k: usize| params[k].as_var().expect("shape checked");
    let term = |k: usize| params[k].to_term().expect("shape checked");
    use Side::{Left as L, Right as R};

    match rule {
        Rule::Hyp => {
            let a = at(concl, L, int(0))?;
            let b = at(concl, R, int(1))?;
            if !alpha_equal(a, b) {
                return fail(Reason::PatternMismatch, format!("`{a}` and `{b}` differ"));
            }
            Ok(())
        }
        Rule::LeftHyp => {
            let a = at(concl, L, int(0))?;
            let na = at(concl, L, int(1))?;
            if !alpha_equal(na, &Formula::not(a.clone())) {
                return fail(Reason::PatternMismatch, format!("`{na}` is not the negation of `{a}`"));
            }
            Ok(())
        }
        Rule::LeftWeaken | Rule::RightWeaken => {
            let side = if rule == Rule::LeftWeaken { L } else { R };
            let a = at(concl, side, int(0))?;
            let p = prems[0];
            expect_eq(FormulaSet::of(concl.side(side)), FormulaSet::of(p.side(side)).with([a]), side, "")?;
            expect_eq(FormulaSet::of(concl.side(side.other())), FormulaSet::of(p.side(side.other())), side.other(), "")
        }
        Rule::Cut => {
            let (p1, p2) = (prems[0], prems[1]);
            let a = p1.right.get(int(0)).ok_or_else(|| {
                StepFailure::new(
                    Reason::BadIndex,
                    format!("index {} out of range in first premise's right side", int(0)),
                )
            })?;
            let mut l2 = FormulaSet::of(&p2.left);
            l2.remove(a);
            let mut r1 = FormulaSet::of(&p1.right);
            r1.remove(a);
            expect_eq(FormulaSet::of(&concl.left), FormulaSet::of(&p1.left).union(l2), L, "")?;
            expect_eq(FormulaSet::of(&concl.right), r1.union(FormulaSet::of(&p2.right)), R, "")
        }

        Rule::LeftAnd => {
            let x = at(concl, L, int(0))?;
            let Formula::And(a, b) = x else { return pattern(x, "a conjunction") };
            one_premise(concl, prems[0], L, x, &[a, b], &[])
        }
        Rule::LeftIff => {
            let x = at(concl, L, int(0))?;
            let Formula::Iff(a, b) = x else { return pattern(x, "an equivalence") };
            let ab = Formula::implies((**a).clone(), (**b).clone());
            let ba = Formula::implies((**b).clone(), (**a).clone());
            one_premise(concl, prems[0], L, x, &[&ab, &ba], &[])
        }
        Rule::LeftNot => {
            let x = at(concl, L, int(0))?;
            let Formula::Not(a) = x else { return pattern(x, "a negation") };
            one_premise(concl, prems[0], L, x, &[], &[a])
        }
        Rule::LeftEx | Rule::LeftAll => {
            let x = at(concl, L, int(0))?;
            let (v, body) = match (rule, x) {
                (Rule::LeftEx, Formula::Exists(v, b)) | (Rule::LeftAll, Formula::Forall(v, b)) => (v, b),
                _ => return pattern(x, if rule == Rule::LeftEx { "an existential" } else { "a universal" }),
            };
            let t = if rule == Rule::LeftEx {
                let y = var(1);
                eigen(concl, y)?;
                Term::var(y)
            } else {
                term(1)
            };
            let inst = substitute(body, v, &t);
            one_premise(concl, prems[0], L, x, &[&inst], &[])
        }
        Rule::LeftOr => {
            let x = at(concl, L, int(0))?;
            let Formula::Or(a, b) = x else { return pattern(x, "a disjunction") };
            two_premise(concl, prems, L, x, [(&[a], &[]), (&[b], &[])])
        }
        Rule::LeftImp1 | Rule::LeftImp2 => {
            let x = at(concl, L, int(0))?;
            let Formula::Implies(a, b) = x else { return pattern(x, "an implication") };
            if rule == Rule::LeftImp1 {
                two_premise(concl, prems, L, x, [(&[], &[a]), (&[b], &[])])
            } else {
                let na = Formula::not((**a).clone());
                two_premise(concl, prems, L, x, [(&[&na], &[]), (&[b], &[])])
            }
        }

        Rule::RightAnd => {
            let x = at(concl, R, int(0))?;
            let Formula::And(a, b) = x else { return pattern(x, "a conjunction") };
            two_premise(concl, prems, R, x, [(&[], &[a]), (&[], &[b])])
        }
        Rule::RightIff => {
            let x = at(concl, R, int(0))?;
            let Formula::Iff(a, b) = x else { return pattern(x, "an equivalence") };
            let ab = Formula::implies((**a).clone(), (**b).clone());
            let ba = Formula::implies((**b).clone(), (**a).clone());
            two_premise(concl, prems, R, x, [(&[], &[&ab]), (&[], &[&ba])])
        }
        Rule::RightOr => {
            let x = at(concl, R, int(0))?;
            let Formula::Or(a, b) = x else { return pattern(x, "a disjunction") };
            one_premise(concl, prems[0], R, x, &[], &[a, b])
        }
        Rule::RightImp => {
            let x = at(concl, R, int(0))?;
            let Formula::Implies(a, b) = x else { return pattern(x, "an implication") };
            one_premise(concl, prems[0], R, x, &[a], &[b])
        }
        Rule::RightNot => {
            let x = at(concl, R, int(0))?;
            let Formula::Not(a) = x else { return pattern(x, "a negation") };
            one_premise(concl, prems[0], R, x, &[a], &[])
        }
        Rule::RightEx | Rule::RightAll => {
            let x = at(concl, R, int(0))?;
            let (v, body) = match (rule, x) {
                (Rule::RightEx, Formula::Exists(v, b)) | (Rule::RightAll, Formula::Forall(v, b)) => (v, b),
                _ => return pattern(x, if rule == Rule::RightEx { "an existential" } else { "a universal" }),
            };
            let t = if rule == Rule::RightAll {
                let y = var(1);
                eigen(concl, y)?;
                Term::var(y)
            } else {
                term(1)
            };
            let inst = substitute(body, v, &t);
            one_premise(concl, prems[0], R, x, &[], &[&inst])
        }

        Rule::LeftNotAnd
        | Rule::LeftNotOr
        | Rule::LeftNotImp
        | Rule::LeftNotIff
        | Rule::LeftNotNot
        | Rule::LeftNotEx
        | Rule::LeftNotAll => {
            let x = at(concl, L, int(0))?;
            let Formula::Not(inner) = x else { return pattern(x, "a negation") };
            let neg = |f: &Formula| Formula::not(f.clone());
            match (rule, inner.as_ref()) {
                (Rule::LeftNotAnd, Formula::And(a, b)) => {
                    let (na, nb) = (neg(a), neg(b));
                    two_premise(concl, prems, L, x, [(&[&na], &[]), (&[&nb], &[])])
                }
                (Rule::LeftNotIff, Formula::Iff(a, b)) => {
                    let nab = neg(&Formula::implies((**a).clone(), (**b).clone()));
                    let nba = neg(&Formula::implies((**b).clone(), (**a).clone()));
                    two_premise(concl, prems, L, x, [(&[&nab], &[]), (&[&nba], &[])])
                }
                (Rule::LeftNotOr, Formula::Or(a, b)) => one_premise(concl, prems[0], L, x, &[&neg(a), &neg(b)], &[]),
                (Rule::LeftNotImp, Formula::Implies(a, b)) => one_premise(concl, prems[0], L, x, &[a, &neg(b)], &[]),
                (Rule::LeftNotNot, Formula::Not(a)) => one_premise(concl, prems[0], L, x, &[a], &[]),
                (Rule::LeftNotEx, Formula::Exists(v, body)) => {
                    let inst = neg(&substitute(body, v, &term(1)));
                    one_premise(concl, prems[0], L, x, &[&inst], &[])
                }
                (Rule::LeftNotAll, Formula::Forall(v, body)) => {
                    let y = var(1);
                    eigen(concl, y)?;
                    let inst = neg(&substitute(body, v, &Term::var(y)));
                    one_premise(concl, prems[0], L, x, &[&inst], &[])
                }
                _ => pattern(x, &format!("the shape required by {rule}")),
            }
        }

        Rule::RightRefl => {
            let x = at(concl, R, int(0))?;
            let Formula::Eq(l, r) = x else {
                return fail(Reason::NotAnEquality, format!("`{x}` is not an equality"));
            };
            if l != r {
                return pattern(x, "an equality between identical terms");
            }
            Ok(())
        }
        Rule::LeftSubst | Rule::RightSubst => {
            let side = if rule == Rule::LeftSubst { L } else { R };
            let eq = at(concl, L, int(0))?;
            let Formula::Eq(l, r) = eq else {
                return fail(Reason::NotAnEquality, format!("`{eq}` is not an equality"));
            };
            let tmpl = params[1].as_formula().expect("shape checked");
            let z = var(2);
            let instances = [(l, r), (r, l)].map(|(t, u)| (substitute(tmpl, z, t), substitute(tmpl, z, u)));
            subst_check(concl, prems[0], side, &[eq], &instances)
        }

        Rule::Nnf => {
            let nnf = |fs: &[Formula]| {
                let v: Vec<Formula> = fs.iter().map(to_nnf).collect();
                FormulaSet::of(&v)
            };
            let p = prems[0];
            expect_eq(nnf(&concl.left), nnf(&p.left), L, " after negation normal form")?;
            expect_eq(nnf(&concl.right), nnf(&p.right), R, " after negation normal form")
        }
        Rule::Congruence => {
            let eg = seed_egraph(concl);
            match find_case(&eg, concl) {
                Some(_) => Ok(()),
                None => fail(Reason::NoCongruentMatch, "no pair of congruent atoms closes the sequent"),
            }
        }
        Rule::LeftSubstMulti | Rule::RightSubstMulti => {
            let side = if rule == Rule::LeftSubstMulti { L } else { R };
            let idx = params[0].as_int_list().expect("shape checked");
            let tmpl = params[1].as_formula().expect("shape checked");
            let vars = params[2].as_var_list().expect("shape checked");
            if idx.len() != vars.len() {
                return fail(Reason::ParamShapeMismatch, format!("{} indices but {} variables", idx.len(), vars.len()));
            }
            let mut eqs = Vec::with_capacity(idx.len());
            let mut forward = Vec::with_capacity(idx.len());
            let mut backward = Vec::with_capacity(idx.len());
            for (&i, z) in idx.iter().zip(&vars) {
                let eq = at(concl, L, i)?;
                let Formula::Eq(l, r) = eq else {
                    return fail(Reason::NotAnEquality, format!("`{eq}` is not an equality"));
                };
                eqs.push(eq);
                forward.push((z.to_string(), l.clone()));
                backward.push((z.to_string(), r.clone()));
            }
            let (pt, pu) = (substitute_many(tmpl, &forward), substitute_many(tmpl, &backward));
            let instances = [(pt.clone(), pu.clone()), (pu, pt)];
            subst_check(concl, prems[0], side, &eqs, &instances)
        }
    }
}

fn at(s: &Sequent, side: Side, i: usize) -> Result<&Formula, StepFailure> {
    s.side(side).get(i).ok_or_else(|| {
        let n = s.side(side).len();
        StepFailure::new(Reason::BadIndex, format!("index {i} out of range on the {} ({n} formulas)", side_name(side)))
    })
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn pattern<T>(x: &Formula, want: &str) -> Result<T, StepFailure> {
    fail(Reason::PatternMismatch, format!("`{x}` is not {want}"))
}

fn eigen(concl: &Sequent, y: &str) -> StepResult {
    if concl.has_free_var(y) {
        return fail(Reason::EigenvariableCaptured, format!("`{y}` is free in the conclusion"));
    }
    Ok(())
}

fn expect_eq(lhs: FormulaSet, rhs: FormulaSet, side: Side, what: &str) -> StepResult {
    if lhs != rhs {
        return fail(Reason::ContextMismatch, format!("{} sides disagree{what}", side_name(side)));
    }
    Ok(())
}

/// `Add ∪ Concl == {X} ∪ Prem` on both sides, with `X` counted on `side`.
fn one_premise(
    concl: &Sequent,
    prem: &Sequent,
    side: Side,
    x: &Formula,
    add_left: &[&Formula],
    add_right: &[&Formula],
) -> StepResult {
    for s in [Side::Left, Side::Right] {
        let add = if s == Side::Left { add_left } else { add_right };
        let lhs = FormulaSet::of(add.iter().copied()).with(concl.side(s));
        let mut rhs = FormulaSet::of(prem.side(s));
        if s == side {
            rhs.insert(x);
        }
        expect_eq(lhs, rhs, s, "")?;
    }
    Ok(())
}

type Adds<'a> = (&'a [&'a Formula], &'a [&'a Formula]);

fn pick<'a>(a: Adds<'a>, s: Side) -> &'a [&'a Formula] {
    if s == Side::Left {
        a.0
    } else {
        a.1
    }
}

/// Principal side: `Add_k ∪ Concl == {X} ∪ Prem_k` per premise. Other side:
/// `Concl == ⋃ (Prem_k \ Add_k)`.
fn two_premise(concl: &Sequent, prems: &[&Sequent], side: Side, x: &Formula, adds: [Adds<'_>; 2]) -> StepResult {
    for (k, (p, a)) in prems.iter().zip(adds).enumerate() {
        let lhs = FormulaSet::of(pick(a, side).iter().copied()).with(concl.side(side));
        let rhs = FormulaSet::of(p.side(side)).with([x]);
        expect_eq(lhs, rhs, side, &format!(" for premise {}", k + 1))?;
    }
    let other = side.other();
    let mut union = FormulaSet::new();
    for (p, a) in prems.iter().zip(adds) {
        let mut part = FormulaSet::of(p.side(other));
        for f in pick(a, other) {
            part.remove(f);
        }
        union = union.union(part);
    }
    expect_eq(FormulaSet::of(concl.side(other)), union, other, "")
}

/// Shared check for the substitution rules. `instances` lists candidate
/// `(P(t), P(u))` pairs, one per accepted orientation.
fn subst_check(
    concl: &Sequent,
    prem: &Sequent,
    side: Side,
    eqs: &[&Formula],
    instances: &[(Formula, Formula)],
) -> StepResult {
    let cs = FormulaSet::of(concl.side(side));
    let mut last = None;
    for (pt, pu) in instances {
        if !cs.contains(pu) {
            last = last.or(Some(StepFailure::new(Reason::PatternMismatch, format!("`{pu}` is not in the conclusion"))));
            continue;
        }
        let res = (|| {
            let other = side.other();
            if side == Side::Left {
                let lhs = FormulaSet::of(&prem.left).with([pu]).with(eqs.iter().copied());
                expect_eq(lhs, cs.clone().with([pt]), Side::Left, "")?;
                expect_eq(FormulaSet::of(&prem.right), FormulaSet::of(&concl.right), other, "")
            } else {
                let lhs = FormulaSet::of(&prem.left).with(eqs.iter().copied());
                expect_eq(lhs, FormulaSet::of(&concl.left), other, "")?;
                expect_eq(FormulaSet::of(&prem.right).with([pu]), cs.clone().with([pt]), Side::Right, "")
            }
        })();
        match res {
            Ok(()) => return Ok(()),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one orientation"))
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub step: String,
    pub reason: Reason,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    /// Every checked step in file order, with its outcome.
    pub steps: Vec<(String, Option<Reason>)>,
    pub failures: Vec<Failure>,
    pub level2_steps: Vec<String>,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    /// `STEP <name> <OK|FAIL reason>` lines and a closing `RESULT` line.
    pub fn machine(&self) -> String {
        let mut out = String::new();
        for (name, r) in &self.steps {
            match r {
                None => out.push_str(&format!("STEP {name} OK\n")),
                Some(r) => out.push_str(&format!("STEP {name} FAIL {r}\n")),
            }
        }
        out.push_str(if self.is_valid() { "RESULT VALID\n" } else { "RESULT INVALID\n" });
        out
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&format!("step {}: {} ({})\n", f.step, f.message, f.reason));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        if !self.level2_steps.is_empty() {
            out.push_str(&format!("level-2 steps: {}\n", self.level2_steps.join(", ")));
        }
        let n = self.steps.len();
        if self.is_valid() {
            out.push_str(&format!("{n} steps checked\nRESULT VALID\n"));
        } else {
            out.push_str(&format!("{} of {n} checks failed\nRESULT INVALID\n", self.failures.len()));
        }
        out
    }
}

/// Checks every inferred step, then compares the last one with the
/// conjecture if there is one.
pub fn check_proof(d: &Derivation, level_limit: u8) -> CheckReport {
    let mut report = CheckReport::default();
    for s in d.steps() {
        if !s.role.is_inferred() {
            continue;
        }
        let mut outcome = Ok(());
        if let Some(inf) = &s.inference {
            if let RuleRef::Known(r) = resolve_rule_name(&inf.rule) {
                if r.level() >= 2 {
                    report.level2_steps.push(s.name.clone());
                    if r.level() > level_limit {
                        outcome = fail(Reason::LevelNotAllowed, format!("{r} is a level-{} rule", r.level()));
                    }
                }
            }
        }
        if outcome.is_ok() {
            outcome = check_step(d, s);
        }
        let reason = outcome.as_ref().err().map(|e| e.reason);
        if let Err(e) = outcome {
            report.failures.push(Failure { step: s.name.clone(), reason: e.reason, message: e.message });
        }
        report.steps.push((s.name.clone(), reason));
    }

    if let Some(conj) = d.conjecture() {
        match d.final_step() {
            None => report.warnings.push(format!("no derived step; conjecture `{}` not checked", conj.name)),
            Some(last) if !crate::logic::sequent_sets_equal(&last.sequent, &conj.sequent) => {
                let message = format!("final step `{}` does not prove conjecture `{}`", last.name, conj.name);
                report.failures.push(Failure { step: conj.name.clone(), reason: Reason::ConjectureMismatch, message });
                report.steps.push((conj.name.clone(), Some(Reason::ConjectureMismatch)));
            }
            Some(_) => {}
        }
    }
    report
}
