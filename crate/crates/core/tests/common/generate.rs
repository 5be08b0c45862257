use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sctptp::checker::check_proof;
use sctptp::elaborator::{congruence_edge_count, eliminate_level2};
use sctptp::logic::sequent_sets_equal;
use sctptp::rules::{resolve_rule_name, RuleRef};
use sctptp::syntax::parse_derivation;
use sctptp::{Param, Term};

const CONSTS: &[&str] = &["a", "b", "c", "d", "e", "k"];

fn random_term(rng: &mut impl Rng, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.5) {
        return Term::constant(*CONSTS.choose(rng).unwrap());
    }
    if rng.gen_bool(0.6) {
        Term::app("f", vec![random_term(rng, depth - 1)])
    } else {
        Term::app("g", vec![random_term(rng, depth - 1), random_term(rng, depth - 1)])
    }
}

fn positions(t: &Term, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Term)>) {
    out.push((path.clone(), t.clone()));
    if let Term::App(_, args) = t {
        for (i, a) in args.iter().enumerate() {
            path.push(i);
            positions(a, path, out);
            path.pop();
        }
    }
}

/// Applies up to `steps` random rewrites with `eqs`, in either direction.
fn rewrite(rng: &mut impl Rng, t: &Term, eqs: &[(Term, Term)], steps: usize) -> Term {
    let mut t = t.clone();
    for _ in 0..steps {
        let mut pos = Vec::new();
        positions(&t, &mut Vec::new(), &mut pos);
        let candidates: Vec<(Vec<usize>, Term)> = pos
            .into_iter()
            .flat_map(|(p, s)| {
                eqs.iter()
                    .filter_map(move |(l, r)| {
                        if &s == l {
                            Some((p.clone(), r.clone()))
                        } else if &s == r {
                            Some((p.clone(), l.clone()))
                        } else {
                            None
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let Some((p, to)) = candidates.choose(rng) else { break };
        t = t.replace_at(p, to).unwrap();
    }
    t
}

fn list(items: &[String]) -> String {
    format!("[{}]", items.join(", "))
}

pub fn congruence_fixture(rng: &mut impl Rng) -> String {
    let eqs: Vec<(Term, Term)> =
        (0..rng.gen_range(1..=4)).map(|_| (random_term(rng, 1), random_term(rng, 1))).collect();
    let arity = rng.gen_range(1..=2);
    let xs: Vec<Term> = (0..arity)
        .map(|_| {
            let base = eqs.choose(rng).unwrap().0.clone();
            if rng.gen_bool(0.5) {
                Term::app("f", vec![base])
            } else {
                base
            }
        })
        .collect();
    let ys: Vec<Term> = xs
        .iter()
        .map(|x| {
            let steps = rng.gen_range(1..=4);
            rewrite(rng, x, &eqs, steps)
        })
        .collect();
    let atom = |ts: &[Term]| format!("p({})", ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "));
    let mut left: Vec<String> = eqs.iter().map(|(l, r)| format!("{l} = {r}")).collect();
    if rng.gen_bool(0.3) {
        left.push("q(a)".into());
    }
    let mut right = Vec::new();
    match rng.gen_range(0..3) {
        0 => {
            left.push(atom(&xs));
            right.push(atom(&ys));
        }
        1 => {
            left.push(atom(&xs));
            left.push(format!("~{}", atom(&ys)));
        }
        _ => right.push(format!("{} = {}", xs[0], ys[0])),
    }
    left.shuffle(rng);
    format!("fof(s, plain, {} --> {}, inference(congruence, [status(thm)], [])).\n", list(&left), list(&right))
}

pub fn subst_multi_fixture(rng: &mut impl Rng) -> String {
    let n = rng.gen_range(1..=3);
    let mut consts: Vec<&str> = CONSTS.to_vec();
    consts.shuffle(rng);
    let pairs: Vec<(&str, &str)> = (0..n).map(|i| (consts[2 * i], consts[2 * i + 1])).collect();
    let flipped = rng.gen_bool(0.3);
    let eqs: Vec<String> =
        pairs.iter().map(|(s, t)| if flipped { format!("{t} = {s}") } else { format!("{s} = {t}") }).collect();
    let vars: Vec<String> = (1..=n).map(|i| format!("Z{i}")).collect();
    let shape = |args: &[String]| -> String {
        let wrapped: Vec<String> =
            args.iter().enumerate().map(|(i, a)| if i % 2 == 1 { format!("f({a})") } else { a.clone() }).collect();
        format!("r({})", wrapped.join(", "))
    };
    let tmpl = shape(&vars);
    let from = shape(&pairs.iter().map(|p| p.0.to_string()).collect::<Vec<_>>());
    let to = shape(&pairs.iter().map(|p| p.1.to_string()).collect::<Vec<_>>());
    let idx: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let params = format!("{}, $fof({tmpl}), {}", list(&idx), list(&vars));
    if rng.gen_bool(0.5) {
        let mut prem = eqs.clone();
        prem.push(from);
        let mut concl = eqs.clone();
        concl.push(to);
        format!(
            "fof(a1, axiom, {} --> []).\nfof(s, plain, {} --> [], inference(leftSubstMulti, [status(thm), {params}], [a1])).\n",
            list(&prem),
            list(&concl)
        )
    } else {
        format!(
            "fof(a1, axiom, {} --> [{from}]).\nfof(s, plain, {} --> [{to}], inference(rightSubstMulti, [status(thm), {params}], [a1])).\n",
            list(&eqs),
            list(&eqs)
        )
    }
}

#[derive(Debug, Default)]
pub struct Stats {
    pub fixtures: usize,
    pub congruence: usize,
    pub nontrivial: usize,
    pub total_edges: usize,
}

/// Elaborates `n` random valid level-2 fixtures, alternating congruence and
/// SubstMulti, and checks every conservativity property.
pub fn run(n: usize, seed: u64) -> Result<Stats, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = Stats { fixtures: n, ..Stats::default() };
    for i in 0..n {
        let src = if i % 2 == 0 { congruence_fixture(&mut rng) } else { subst_multi_fixture(&mut rng) };
        let fail = |msg: String| format!("{msg}\n{src}");
        let d = parse_derivation(&src).map_err(|e| fail(e.to_string()))?;
        let report = check_proof(&d, 2);
        if !report.is_valid() {
            return Err(fail(format!("generated fixture does not check: {}", report.human())));
        }
        let res = eliminate_level2(&d).map_err(|e| fail(e.to_string()))?;
        let out = &res.derivation;
        for s in out.steps() {
            if let Some(inf) = &s.inference {
                if !matches!(resolve_rule_name(&inf.rule), RuleRef::Known(r) if r.level() == 1) {
                    return Err(fail(format!("{} remains", inf.rule)));
                }
            }
        }
        let recheck = check_proof(out, 1);
        if !recheck.is_valid() {
            return Err(fail(recheck.human()));
        }
        let (before, after) = (d.final_step().unwrap(), out.final_step().unwrap());
        if !sequent_sets_equal(&before.sequent, &after.sequent) {
            return Err(fail(format!("final sequent changed to {}", after.sequent)));
        }

        let step = d.get("s").unwrap();
        let emitted = res.step_map.get("s").map_or(1, Vec::len);
        if i % 2 == 0 {
            st.congruence += 1;
            let edges = congruence_edge_count(&step.sequent).ok_or_else(|| fail("no congruence case".into()))?;
            if emitted > 4 * edges + 1 {
                return Err(fail(format!("{emitted} steps for {edges} edges")));
            }
            st.total_edges += edges;
            st.nontrivial += usize::from(edges > 0);
        } else {
            let Some(Param::IntList(idx)) = step.inference.as_ref().unwrap().params.first() else {
                return Err(fail("missing index list".into()));
            };
            if emitted != idx.len() {
                return Err(fail(format!("{emitted} steps for {} equalities", idx.len())));
            }
        }

        let again = eliminate_level2(out).map_err(|e| fail(e.to_string()))?;
        if !again.step_map.is_empty() || again.derivation.steps() != out.steps() {
            return Err(fail("elaboration is not idempotent".into()));
        }
    }
    Ok(st)
}
