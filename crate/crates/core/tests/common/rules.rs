use std::collections::{BTreeMap, BTreeSet};

use sctptp::checker::{check_proof, Reason};
use sctptp::rules::CATALOG;
use sctptp::syntax::parse_derivation;

pub struct Case {
    pub rule: &'static str,
    pub concl: &'static str,
    pub prems: &'static [&'static str],
    pub params: &'static str,
    pub expect: Option<Reason>,
}

pub const fn ok(rule: &'static str, concl: &'static str, prems: &'static [&'static str], params: &'static str) -> Case {
    Case { rule, concl, prems, params, expect: None }
}

pub const fn bad(
    rule: &'static str,
    concl: &'static str,
    prems: &'static [&'static str],
    params: &'static str,
    reason: Reason,
) -> Case {
    Case { rule, concl, prems, params, expect: Some(reason) }
}

use Reason::*;

pub const CASES: &[Case] = &[
    ok("hyp", "[p] --> [p]", &[], "0, 0"),
    ok("hyp", "[![X]: p(X), q] --> [r, ![Y]: p(Y)]", &[], "0, 1"),
    bad("hyp", "[p] --> [q]", &[], "0, 0", PatternMismatch),
    bad("hyp", "[p] --> [p]", &[], "0, 1", BadIndex),
    ok("leftHyp", "[p, ~p] --> []", &[], "0, 1"),
    bad("leftHyp", "[p, ~q] --> []", &[], "0, 1", PatternMismatch),
    ok("leftWeaken", "[p, q] --> [p]", &["[p] --> [p]"], "1"),
    bad("leftWeaken", "[p, q] --> [p]", &["[r] --> [p]"], "1", ContextMismatch),
    ok("rightWeaken", "[p] --> [p, q]", &["[p] --> [p]"], "1"),
    bad("rightWeaken", "[p] --> [p, q]", &["[p] --> [p]"], "5", BadIndex),
    ok("cut", "[p] --> [q]", &["[p] --> [q, r]", "[p, r] --> [q]"], "1"),
    bad("cut", "[] --> [q]", &["[p] --> [q, r]", "[p, r] --> [q]"], "1", ContextMismatch),
    bad("cut", "[p] --> [q]", &["[p] --> [q, r]"], "1", PremiseCountMismatch),
    ok("leftAnd", "[p & q] --> [p]", &["[p, q] --> [p]"], "0"),
    bad("leftAnd", "[p & q, r] --> [p]", &["[p, q, r] --> [p]"], "1", PatternMismatch),
    bad("leftAnd", "[p & q] --> [p]", &["[p] --> [p]"], "0", ContextMismatch),
    ok("leftOr", "[p | q] --> [r]", &["[p] --> [r]", "[q] --> [r]"], "0"),
    bad("leftOr", "[p | q] --> [r]", &["[p] --> [r]", "[p] --> [r]"], "0", ContextMismatch),
    ok("leftImp1", "[p => q] --> [r]", &["[] --> [r, p]", "[q] --> [r]"], "0"),
    ok("leftImp1", "[p => q] --> [r]", &["[] --> [r]", "[q] --> [r]"], "0"),
    bad("leftImp1", "[p => q] --> [r]", &["[] --> [s, p]", "[q] --> [r]"], "0", ContextMismatch),
    bad("leftImp1", "[p => q] --> [r]", &["[~p] --> [r]", "[q] --> [r]"], "0", ContextMismatch),
    ok("leftImp2", "[p => q] --> [r]", &["[~p] --> [r]", "[q] --> [r]"], "0"),
    bad("leftImp2", "[p => q] --> [r]", &["[p] --> [r]", "[q] --> [r]"], "0", ContextMismatch),
    ok("leftIff", "[p <=> q] --> []", &["[p => q, q => p] --> []"], "0"),
    bad("leftIff", "[p <=> q] --> []", &["[p => q] --> []"], "0", ContextMismatch),
    bad("leftIff", "[p => q] --> []", &["[p => q, q => p] --> []"], "0", PatternMismatch),
    ok("leftNot", "[~p] --> [q]", &["[] --> [q, p]"], "0"),
    bad("leftNot", "[~p] --> [q]", &["[p] --> [q]"], "0", ContextMismatch),
    ok("leftEx", "[?[X]: p(X)] --> [q]", &["[p(Y)] --> [q]"], "0, $fot(Y)"),
    bad("leftEx", "[?[X]: p(X), r(Y)] --> [q]", &["[p(Y), r(Y)] --> [q]"], "0, $fot(Y)", EigenvariableCaptured),
    bad("leftEx", "[?[X]: p(X)] --> [q(Y)]", &["[p(Y)] --> [q(Y)]"], "0, $fot(Y)", EigenvariableCaptured),
    ok("leftAll", "[![X]: p(X)] --> [p(a)]", &["[p(a)] --> [p(a)]"], "0, $fot(a)"),
    ok("leftAll", "[![X]: p(f(X))] --> []", &["[p(f(g(Y)))] --> []"], "0, $fot(g(Y))"),
    bad("leftAll", "[![X]: p(X)] --> [p(a)]", &["[p(a)] --> [p(a)]"], "0, $fot(b)", ContextMismatch),
    ok("rightAnd", "[] --> [p & q]", &["[] --> [p]", "[] --> [q]"], "0"),
    ok("rightAnd", "[r] --> [p & q, s]", &["[r] --> [p, s]", "[] --> [q, s]"], "0"),
    bad("rightAnd", "[] --> [p & q]", &["[] --> [p]", "[] --> [p]"], "0", ContextMismatch),
    ok("rightOr", "[] --> [p | q]", &["[] --> [p, q]"], "0"),
    bad("rightOr", "[] --> [p | q]", &["[] --> [p]"], "0", ContextMismatch),
    ok("rightImp", "[] --> [p => q]", &["[p] --> [q]"], "0"),
    bad("rightImp", "[] --> [p => q]", &["[q] --> [p]"], "0", ContextMismatch),
    ok("rightIff", "[] --> [p <=> q]", &["[] --> [p => q]", "[] --> [q => p]"], "0"),
    bad("rightIff", "[] --> [p <=> q]", &["[] --> [p => q]", "[] --> [p => q]"], "0", ContextMismatch),
    ok("rightNot", "[] --> [~p]", &["[p] --> []"], "0"),
    bad("rightNot", "[] --> [~p]", &["[] --> [p]"], "0", ContextMismatch),
    bad("rightNot", "[] --> [p]", &["[p] --> []"], "0", PatternMismatch),
    ok("rightEx", "[] --> [?[X]: p(X)]", &["[] --> [p(a)]"], "0, $fot(a)"),
    ok("rightEx", "[] --> [?[Y]: f(X) = Y]", &["[] --> [f(X) = f(X)]"], "0, $fot(f(X))"),
    bad("rightEx", "[] --> [?[X]: p(X)]", &["[] --> [p(a)]"], "0, $fot(b)", ContextMismatch),
    ok("rightAll", "[] --> [![X]: p(X)]", &["[] --> [p(Y)]"], "0, $fot(Y)"),
    bad("rightAll", "[q(X)] --> [![X]: p(X)]", &["[] --> [p(X)]"], "0, $fot(X)", EigenvariableCaptured),
    bad("rightAll", "[q(X)] --> [![X]: p(X)]", &["[q(X)] --> [p(X)]"], "0, $fot(X)", EigenvariableCaptured),
    ok("leftNotAnd", "[~(p & q)] --> []", &["[~p] --> []", "[~q] --> []"], "0"),
    bad("leftNotAnd", "[~(p & q)] --> []", &["[~p] --> []", "[q] --> []"], "0", ContextMismatch),
    ok("leftNotOr", "[~(p | q)] --> []", &["[~p, ~q] --> []"], "0"),
    bad("leftNotOr", "[~(p | q)] --> []", &["[~p] --> []"], "0", ContextMismatch),
    ok("leftNotImp", "[~(p => q)] --> []", &["[p, ~q] --> []"], "0"),
    bad("leftNotImp", "[~(p => q)] --> []", &["[~p, q] --> []"], "0", ContextMismatch),
    ok("leftNotIff", "[~(p <=> q)] --> []", &["[~(p => q)] --> []", "[~(q => p)] --> []"], "0"),
    bad("leftNotIff", "[~(p <=> q)] --> []", &["[p => q] --> []", "[~(q => p)] --> []"], "0", ContextMismatch),
    ok("leftNotNot", "[~~p] --> []", &["[p] --> []"], "0"),
    bad("leftNotNot", "[~~p] --> []", &["[~p] --> []"], "0", ContextMismatch),
    bad("leftNotNot", "[~p] --> []", &["[p] --> []"], "0", PatternMismatch),
    ok("leftNotEx", "[~(?[X]: p(X))] --> []", &["[~p(a)] --> []"], "0, $fot(a)"),
    bad("leftNotEx", "[~(?[X]: p(X))] --> []", &["[~p(a)] --> []"], "0, $fot(b)", ContextMismatch),
    ok("leftNotAll", "[~(![X]: p(X))] --> []", &["[~p(Y)] --> []"], "0, $fot(Y)"),
    bad("leftNotAll", "[~(![X]: p(X)), q(Y)] --> []", &["[~p(Y), q(Y)] --> []"], "0, $fot(Y)", EigenvariableCaptured),
    ok("rightRefl", "[] --> [f(a) = f(a)]", &[], "0"),
    bad("rightRefl", "[] --> [a = b]", &[], "0", PatternMismatch),
    bad("rightRefl", "[] --> [p]", &[], "0", NotAnEquality),
    ok("rightSubst", "[a = b] --> [p(b)]", &["[] --> [p(a)]"], "0, $fof(p(Z)), Z"),
    ok("rightSubst", "[a = b] --> [p(a)]", &["[] --> [p(b)]"], "0, $fof(p(Z)), Z"),
    bad("rightSubst", "[a = b] --> [p(b)]", &["[] --> [p(c)]"], "0, $fof(p(Z)), Z", ContextMismatch),
    bad("rightSubst", "[q] --> [p(b)]", &["[] --> [p(a)]"], "0, $fof(p(Z)), Z", NotAnEquality),
    ok("leftSubst", "[a = b, p(b)] --> []", &["[p(a)] --> []"], "0, $fof(p(Z)), Z"),
    ok("leftSubst", "[p(g(b)), f(a) = g(b)] --> []", &["[p(f(a))] --> []"], "1, $fof(p(Z)), $fot(Z)"),
    bad("leftSubst", "[a = b, p(b)] --> []", &["[p(c)] --> []"], "0, $fof(p(Z)), Z", ContextMismatch),
    bad("leftSubst", "[a = b, p(c)] --> []", &["[p(a)] --> []"], "0, $fof(p(Z)), Z", PatternMismatch),
    bad("leftSubst", "[a = b, p(b)] --> []", &["[p(a)] --> []"], "0, $fot(a), Z", ParamShapeMismatch),
];

pub fn derivation(c: &Case) -> String {
    let mut src = String::new();
    let mut names = Vec::new();
    for (k, p) in c.prems.iter().enumerate() {
        src.push_str(&format!("fof(p{k}, axiom, {p}).\n"));
        names.push(format!("p{k}"));
    }
    src.push_str(&format!(
        "fof(s, plain, {}, inference({}, [status(thm), {}], [{}])).\n",
        c.concl,
        c.rule,
        c.params,
        names.join(", ")
    ));
    src
}

pub fn verdict(c: &Case) -> Option<Reason> {
    let d = parse_derivation(&derivation(c)).unwrap_or_else(|e| panic!("{}: {e}", c.concl));
    let report = check_proof(&d, 1);
    report.steps.iter().find(|(n, _)| n == "s").and_then(|(_, r)| *r)
}

/// Cases whose verdict differs from the table.
pub fn wrong_verdicts() -> Vec<String> {
    CASES
        .iter()
        .filter_map(|c| {
            let got = verdict(c);
            (got != c.expect)
                .then(|| format!("{} {} [{}]: expected {:?}, got {:?}", c.rule, c.concl, c.params, c.expect, got))
        })
        .collect()
}

/// Level-1 rules lacking a valid or an invalid case.
pub fn uncovered() -> Vec<String> {
    let mut seen: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in CASES {
        let e = seen.entry(c.rule).or_default();
        if c.expect.is_none() {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    CATALOG
        .iter()
        .filter(|d| d.level == 1)
        .filter_map(|d| {
            let (v, i) = seen.get(d.name).copied().unwrap_or_default();
            (v == 0 || i == 0).then(|| format!("{}: {v} valid, {i} invalid", d.name))
        })
        .collect()
}

/// Rules with at least one eigenvariable rejection in the table.
pub fn eigen_rejections() -> BTreeSet<&'static str> {
    CASES.iter().filter(|c| c.expect == Some(EigenvariableCaptured)).map(|c| c.rule).collect()
}
