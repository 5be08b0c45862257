//! Elimination of level-2 steps.
//!
//! `congruence` steps become a leaf (`hyp`, `leftHyp` or `rightRefl`)
//! followed by one `leftSubst`/`rightSubst` per external equality used in
//! the e-graph explanation. `leftSubstMulti`/`rightSubstMulti` become `n`
//! single substitutions. `NNF` steps are kept.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use crate::checker::{check_proof, check_rule, find_case, seed_egraph, CongruenceCase};
use crate::derivation::{Derivation, Inference, Param, ProofStep, Role};
use crate::egraph::{EGraph, EdgeJustification};
use crate::logic::{alpha_equal, fresh_variant, substitute_many, Formula, Sequent, Side, Term};
use crate::rules::{resolve_rule_name, Rule, RuleRef};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ElabError {
    #[error("input does not check at level 2: {0}")]
    InvalidInput(String),
    #[error("step {step}: {message}")]
    InvalidLevel2Step { step: String, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ElabStats {
    pub steps_before: usize,
    pub steps_after: usize,
    pub congruence_unfolded: usize,
    pub subst_multi_unfolded: usize,
    /// NNF steps left in place.
    pub nnf_retained: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ElaborationResult {
    pub derivation: Derivation,
    /// Original level-2 step name to the names of its replacement steps.
    pub step_map: BTreeMap<String, Vec<String>>,
    pub stats: ElabStats,
}

/// Generates `<base>_e<k>` names not yet used in a derivation.
#[derive(Debug, Clone, Default)]
pub struct NameGen {
    used: HashSet<String>,
    next: HashMap<String, usize>,
}

impl NameGen {
    pub fn for_derivation(d: &Derivation) -> Self {
        NameGen { used: d.steps().iter().map(|s| s.name.clone()).collect(), next: HashMap::new() }
    }

    pub fn fresh(&mut self, base: &str) -> String {
        let k = self.next.entry(base.to_string()).or_insert(1);
        loop {
            let name = format!("{base}_e{k}");
            *k += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// Replaces every congruence and SubstMulti step by level-1 steps.
pub fn eliminate_level2(d: &Derivation) -> Result<ElaborationResult, ElabError> {
    let report = check_proof(d, 2);
    if let Some(f) = report.first_failure() {
        return Err(ElabError::InvalidInput(format!("step {}: {}", f.step, f.message)));
    }
    let mut names = NameGen::for_derivation(d);
    let mut out = Vec::with_capacity(d.len());
    let mut step_map = BTreeMap::new();
    let mut stats = ElabStats { steps_before: d.len(), ..Default::default() };

    for s in d.steps() {
        let rule = match s.inference.as_ref().map(|i| resolve_rule_name(&i.rule)) {
            Some(RuleRef::Known(r)) if s.role.is_inferred() => r,
            _ => {
                out.push(s.clone());
                continue;
            }
        };
        let emitted = match rule {
            Rule::Congruence => {
                stats.congruence_unfolded += 1;
                unfold_congruence(s, &mut names)?
            }
            Rule::LeftSubstMulti | Rule::RightSubstMulti => {
                stats.subst_multi_unfolded += 1;
                let prem = &d.get(&s.premises()[0]).expect("checked derivation").sequent;
                unfold_subst_multi(s, prem, &mut names)?
            }
            Rule::Nnf => {
                stats.nnf_retained.push(s.name.clone());
                out.push(s.clone());
                continue;
            }
            _ => {
                out.push(s.clone());
                continue;
            }
        };
        step_map.insert(s.name.clone(), emitted.iter().map(|e| e.name.clone()).collect());
        out.extend(emitted);
    }
    stats.steps_after = out.len();
    let derivation = Derivation::new(out).map_err(|e| ElabError::InvalidInput(e.to_string()))?;
    Ok(ElaborationResult { derivation, step_map, stats })
}

fn invalid(s: &ProofStep, message: impl Into<String>) -> ElabError {
    ElabError::InvalidLevel2Step { step: s.name.clone(), message: message.into() }
}

/// Atoms as terms, so that argument positions are term paths.
fn atom_to_term(f: &Formula) -> Option<Term> {
    match f {
        Formula::Pred(p, args) => Some(Term::App(p.clone(), args.clone())),
        Formula::Eq(l, r) => Some(Term::App("=".into(), vec![l.clone(), r.clone()])),
        _ => None,
    }
}

fn term_to_atom(t: Term) -> Formula {
    match t {
        Term::App(p, mut args) if p == "=" && args.len() == 2 => {
            let r = args.pop().expect("two args");
            let l = args.pop().expect("two args");
            Formula::Eq(l, r)
        }
        Term::App(p, args) => Formula::Pred(p, args),
        Term::Var(v) => Formula::Pred(v, vec![]),
    }
}

/// One substitution: at `path`, `from` becomes `to`, justified by `eq`.
#[derive(Debug, Clone)]
struct Rewrite {
    path: Vec<usize>,
    from: Term,
    to: Term,
    eq: Formula,
}

/// Rewrites turning `a` (at `path`) into `b`, congruence edges expanded
/// into their argument rewrites.
fn collect_rewrites(
    eg: &EGraph,
    a: &Term,
    b: &Term,
    path: &mut Vec<usize>,
    out: &mut Vec<Rewrite>,
) -> Result<(), String> {
    let expl = eg.explain(a, b).map_err(|e| e.to_string())?;
    for edge in expl.edges {
        match edge.justification {
            EdgeJustification::External { lhs, rhs } => {
                out.push(Rewrite { path: path.clone(), from: edge.from, to: edge.to, eq: Formula::Eq(lhs, rhs) })
            }
            EdgeJustification::Congruence(..) => {
                let (Term::App(_, xs), Term::App(_, ys)) = (&edge.from, &edge.to) else {
                    return Err("congruence edge between non-applications".into());
                };
                for (i, (x, y)) in xs.iter().zip(ys).enumerate() {
                    path.push(i);
                    collect_rewrites(eg, x, y, path, out)?;
                    path.pop();
                }
            }
        }
    }
    Ok(())
}

/// Rewrites taking atom `from` to atom `to`, one argument at a time.
fn atom_rewrites(eg: &EGraph, from: &Formula, to: &Formula) -> Result<Vec<Rewrite>, String> {
    let (Some(Term::App(_, xs)), Some(Term::App(_, ys))) = (atom_to_term(from), atom_to_term(to)) else {
        return Err("not an atom".into());
    };
    let mut out = Vec::new();
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        collect_rewrites(eg, x, y, &mut vec![i], &mut out)?;
    }
    Ok(out)
}

/// Total number of explanation edges (congruence children included) needed
/// to close `s` by congruence.
pub fn congruence_edge_count(s: &Sequent) -> Option<usize> {
    let eg = seed_egraph(s);
    let (from, to) = matched_atoms(s, find_case(&eg, s)?);
    let (Some(Term::App(_, xs)), Some(Term::App(_, ys))) = (atom_to_term(&from), atom_to_term(&to)) else {
        return None;
    };
    xs.iter().zip(&ys).map(|(x, y)| eg.recursive_edge_count(x, y).ok()).sum()
}

/// The atom rewritten (first) and its target (second) for a case.
fn matched_atoms(s: &Sequent, case: CongruenceCase) -> (Formula, Formula) {
    match case {
        CongruenceCase::Hyp { left, right } => (s.left[left].clone(), s.right[right].clone()),
        CongruenceCase::LeftHyp { pos, neg } => {
            let Formula::Not(b) = &s.left[neg] else { unreachable!("leftHyp case has a negation") };
            (s.left[pos].clone(), (**b).clone())
        }
        CongruenceCase::RightRefl { right } => {
            let Formula::Eq(a, _) = &s.right[right] else { unreachable!("rightRefl case has an equality") };
            (Formula::Eq(a.clone(), a.clone()), s.right[right].clone())
        }
    }
}

fn position(fs: &[Formula], f: &Formula) -> Option<usize> {
    fs.iter().position(|g| alpha_equal(f, g))
}

fn with_formula(fs: &[Formula], f: &Formula) -> Vec<Formula> {
    let mut v = fs.to_vec();
    if position(&v, f).is_none() {
        v.push(f.clone());
    }
    v
}

fn fresh_var(base: &str, seen: impl IntoIterator<Item = BTreeSet<String>>) -> String {
    let mut avoid = BTreeSet::new();
    for s in seen {
        avoid.extend(s);
    }
    if avoid.contains(base) {
        fresh_variant(base, &avoid)
    } else {
        base.to_string()
    }
}

fn names_in(f: &Formula) -> BTreeSet<String> {
    let mut s = BTreeSet::new();
    f.all_var_names(&mut s);
    s
}

fn verify(s: &ProofStep, emitted: &[ProofStep]) -> Result<(), ElabError> {
    let by_name: HashMap<&str, &Sequent> = emitted.iter().map(|e| (e.name.as_str(), &e.sequent)).collect();
    for e in emitted {
        let inf = e.inference.as_ref().expect("emitted steps are inferred");
        let RuleRef::Known(rule) = resolve_rule_name(&inf.rule) else { unreachable!() };
        let prems: Vec<&Sequent> =
            inf.premises.iter().map(|p| *by_name.get(p.as_str()).expect("chain premises are emitted")).collect();
        check_rule(rule, &inf.params, &e.sequent, &prems)
            .map_err(|f| invalid(s, format!("emitted step {} fails: {f}", e.name)))?;
    }
    Ok(())
}

/// Level-1 fragment for a congruence step; the last element carries the
/// original step's name and sequent.
pub fn unfold_congruence(s: &ProofStep, names: &mut NameGen) -> Result<Vec<ProofStep>, ElabError> {
    let seq = &s.sequent;
    let eg = seed_egraph(seq);
    let case = find_case(&eg, seq).ok_or_else(|| invalid(s, "no congruence case applies"))?;
    let (start, target) = matched_atoms(seq, case);
    let rewrites = atom_rewrites(&eg, &start, &target).map_err(|m| invalid(s, m))?;

    let mut atoms = vec![start];
    for rw in &rewrites {
        let cur = atom_to_term(atoms.last().expect("nonempty")).expect("atom");
        debug_assert_eq!(cur.at(&rw.path[..]), Some(&rw.from));
        let next = cur.replace_at(&rw.path, &rw.to).ok_or_else(|| invalid(s, "bad rewrite path"))?;
        atoms.push(term_to_atom(next));
    }
    let m = rewrites.len();
    // The chain rewrites a left atom for leftHyp and a right atom otherwise.
    let side = if matches!(case, CongruenceCase::LeftHyp { .. }) { Side::Left } else { Side::Right };
    let seq_with = |a: &Formula| match side {
        Side::Left => Sequent::new(with_formula(&seq.left, a), seq.right.clone()),
        Side::Right => Sequent::new(seq.left.clone(), with_formula(&seq.right, a)),
    };

    // Sequent k holds atom k; the leaf is at m for leftHyp (the chain walks
    // back to the original atom) and at 0 otherwise.
    let order: Vec<usize> = if side == Side::Left { (0..=m).rev().collect() } else { (0..=m).collect() };
    let mut step_names = Vec::with_capacity(m + 1);
    for (pos, _) in order.iter().enumerate() {
        step_names.push(if pos == m { s.name.clone() } else { names.fresh(&s.name) });
    }

    let mut emitted = Vec::with_capacity(m + 1);
    for (pos, &k) in order.iter().enumerate() {
        let sequent = if pos == m { seq.clone() } else { seq_with(&atoms[k]) };
        let inference = if pos == 0 {
            let params = match case {
                CongruenceCase::Hyp { .. } => {
                    let i = position(&sequent.left, &atoms[0]).expect("hyp atom on the left");
                    let j = position(&sequent.right, &atoms[0]).expect("added on the right");
                    (Rule::Hyp, vec![Param::Int(i), Param::Int(j)])
                }
                CongruenceCase::LeftHyp { .. } => {
                    let neg = Formula::not(atoms[m].clone());
                    let i = position(&sequent.left, &atoms[m]).expect("added on the left");
                    let j = position(&sequent.left, &neg).expect("negated atom on the left");
                    (Rule::LeftHyp, vec![Param::Int(i), Param::Int(j)])
                }
                CongruenceCase::RightRefl { .. } => {
                    let i = position(&sequent.right, &atoms[0]).expect("added on the right");
                    (Rule::RightRefl, vec![Param::Int(i)])
                }
            };
            Inference::new(params.0.name(), params.1, vec![])
        } else {
            // For leftHyp the premise holds atom k+1 and the conclusion atom
            // k; otherwise the premise holds k-1 and the conclusion k.
            let rw = if side == Side::Left { &rewrites[k] } else { &rewrites[k - 1] };
            let cur = if side == Side::Left { &atoms[k] } else { &atoms[k - 1] };
            let z = fresh_var("Z", [names_in(cur), rw.to.free_vars(), rw.from.free_vars()]);
            let tmpl = atom_to_term(cur).expect("atom").replace_at(&rw.path, &Term::var(z.as_str())).expect("path");
            let i = position(&sequent.left, &rw.eq).ok_or_else(|| invalid(s, "equality missing from the left"))?;
            let rule = if side == Side::Left { Rule::LeftSubst } else { Rule::RightSubst };
            let params = vec![Param::Int(i), Param::Formula(term_to_atom(tmpl)), Param::Var(z)];
            Inference::new(rule.name(), params, vec![step_names[pos - 1].clone()])
        };
        let role = if pos == m { s.role } else { Role::Plain };
        emitted.push(ProofStep::inferred(step_names[pos].clone(), role, sequent, inference));
    }
    verify(s, &emitted)?;
    Ok(emitted)
}

/// Chain of single substitutions for a SubstMulti step with premise
/// sequent `prem`; the last element carries the original name and sequent.
pub fn unfold_subst_multi(s: &ProofStep, prem: &Sequent, names: &mut NameGen) -> Result<Vec<ProofStep>, ElabError> {
    let inf = s.inference.as_ref().ok_or_else(|| invalid(s, "not an inferred step"))?;
    let rule = match resolve_rule_name(&inf.rule) {
        RuleRef::Known(r @ (Rule::LeftSubstMulti | Rule::RightSubstMulti)) => r,
        _ => return Err(invalid(s, "not a SubstMulti step")),
    };
    let bad = || invalid(s, "malformed SubstMulti parameters");
    let idx = inf.params.first().and_then(Param::as_int_list).ok_or_else(bad)?;
    let tmpl = inf.params.get(1).and_then(Param::as_formula).ok_or_else(bad)?;
    let vars: Vec<String> =
        inf.params.get(2).and_then(Param::as_var_list).ok_or_else(bad)?.into_iter().map(String::from).collect();
    if idx.len() != vars.len() || idx.is_empty() {
        return Err(bad());
    }
    let mut eqs = Vec::new();
    for &i in idx {
        match s.sequent.left.get(i) {
            Some(Formula::Eq(l, r)) => eqs.push((l.clone(), r.clone())),
            _ => return Err(invalid(s, format!("index {i} is not an equality"))),
        }
    }
    let (side, single) =
        if rule == Rule::LeftSubstMulti { (Side::Left, Rule::LeftSubst) } else { (Side::Right, Rule::RightSubst) };

    let mut last_err = None;
    for flipped in [false, true] {
        let pairs: Vec<(Term, Term)> =
            eqs.iter().map(|(l, r)| if flipped { (r.clone(), l.clone()) } else { (l.clone(), r.clone()) }).collect();
        match subst_chain(s, prem, side, single, tmpl, &vars, &pairs, names) {
            Ok(steps) => match verify_with_premise(s, prem, inf, &steps) {
                Ok(()) => return Ok(steps),
                Err(e) => last_err = Some(e),
            },
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("two attempts"))
}

/// Formula with positions `< k` at their target and the rest at their source.
fn interpolate(tmpl: &Formula, vars: &[String], pairs: &[(Term, Term)], k: usize) -> Formula {
    let map: Vec<(String, Term)> = vars
        .iter()
        .zip(pairs)
        .enumerate()
        .map(|(j, (z, (t, u)))| (z.clone(), if j < k { u.clone() } else { t.clone() }))
        .collect();
    substitute_many(tmpl, &map)
}

#[allow(clippy::too_many_arguments)]
fn subst_chain(
    s: &ProofStep,
    prem: &Sequent,
    side: Side,
    single: Rule,
    tmpl: &Formula,
    vars: &[String],
    pairs: &[(Term, Term)],
    names: &mut NameGen,
) -> Result<Vec<ProofStep>, ElabError> {
    let n = vars.len();
    let f: Vec<Formula> = (0..=n).map(|k| interpolate(tmpl, vars, pairs, k)).collect();
    let concl_side = s.sequent.side(side);
    let context: Vec<Formula> = concl_side.iter().filter(|g| !alpha_equal(g, &f[n])).cloned().collect();
    let extra = position(prem.side(side), &f[n]).map(|_| f[n].clone());
    let sequent_k = |k: usize| {
        let mut v = context.clone();
        if let Some(e) = &extra {
            v = with_formula(&v, e);
        }
        v = with_formula(&v, &f[k]);
        match side {
            Side::Left => Sequent::new(v, s.sequent.right.clone()),
            Side::Right => Sequent::new(s.sequent.left.clone(), v),
        }
    };

    // Seen names include every variable in play so that a fresh template
    // variable never collides with one inside a substituted term.
    let mut seen = names_in(tmpl);
    for (t, u) in pairs {
        seen.extend(t.free_vars());
        seen.extend(u.free_vars());
    }

    let mut prev = s.premises()[0].clone();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let last = j + 1 == n;
        let name = if last { s.name.clone() } else { names.fresh(&s.name) };
        let sequent = if last { s.sequent.clone() } else { sequent_k(j + 1) };
        let zj = &vars[j];
        let clash = pairs.iter().any(|(t, u)| t.contains_var(zj) || u.contains_var(zj));
        let z = if clash { fresh_var(zj, [seen.clone()]) } else { zj.clone() };
        let map: Vec<(String, Term)> = vars
            .iter()
            .zip(pairs)
            .enumerate()
            .map(|(i, (v, (t, u)))| {
                let term = if i < j {
                    u.clone()
                } else if i > j {
                    t.clone()
                } else {
                    Term::var(z.as_str())
                };
                (v.clone(), term)
            })
            .collect();
        let step_tmpl = substitute_many(tmpl, &map);
        let eq = Formula::Eq(pairs[j].0.clone(), pairs[j].1.clone());
        let flipped = Formula::Eq(pairs[j].1.clone(), pairs[j].0.clone());
        let i = position(&sequent.left, &eq)
            .or_else(|| position(&sequent.left, &flipped))
            .ok_or_else(|| invalid(s, "equality missing from the left"))?;
        let params = vec![Param::Int(i), Param::Formula(step_tmpl), Param::Var(z)];
        let role = if last { s.role } else { Role::Plain };
        let inference = Inference::new(single.name(), params, vec![prev.clone()]);
        out.push(ProofStep::inferred(name.clone(), role, sequent, inference));
        prev = name;
    }
    Ok(out)
}

fn verify_with_premise(s: &ProofStep, prem: &Sequent, inf: &Inference, steps: &[ProofStep]) -> Result<(), ElabError> {
    let mut by_name: HashMap<&str, &Sequent> = steps.iter().map(|e| (e.name.as_str(), &e.sequent)).collect();
    by_name.insert(inf.premises[0].as_str(), prem);
    for e in steps {
        let ei = e.inference.as_ref().expect("inferred");
        let RuleRef::Known(rule) = resolve_rule_name(&ei.rule) else { unreachable!() };
        let prems: Vec<&Sequent> = ei.premises.iter().map(|p| by_name[p.as_str()]).collect();
        check_rule(rule, &ei.params, &e.sequent, &prems)
            .map_err(|f| invalid(s, format!("emitted step {} fails: {f}", e.name)))?;
    }
    Ok(())
}
