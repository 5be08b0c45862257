use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sctptp::egraph::{EGraph, EdgeJustification};
use sctptp::Term;

fn random_term(rng: &mut impl Rng, consts: &[Term], depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.4) {
        return consts.choose(rng).unwrap().clone();
    }
    if rng.gen_bool(0.6) {
        Term::app("f", vec![random_term(rng, consts, depth - 1)])
    } else {
        Term::app("g", vec![random_term(rng, consts, depth - 1), random_term(rng, consts, depth - 1)])
    }
}

pub fn subterms(t: &Term, out: &mut BTreeSet<Term>) {
    out.insert(t.clone());
    if let Term::App(_, args) = t {
        args.iter().for_each(|a| subterms(a, out));
    }
}

/// Congruence closure by naive fixpoint over a finite term set.
pub struct Closure {
    pub terms: Vec<Term>,
    pub class: Vec<usize>,
}

impl Closure {
    pub fn new(terms: &BTreeSet<Term>, eqs: &[(Term, Term)]) -> Self {
        let terms: Vec<Term> = terms.iter().cloned().collect();
        let mut cl = Closure { class: (0..terms.len()).collect(), terms };
        for (l, r) in eqs {
            cl.join(cl.idx(l), cl.idx(r));
        }
        loop {
            let mut changed = false;
            for i in 0..cl.terms.len() {
                for j in 0..cl.terms.len() {
                    if cl.class[i] == cl.class[j] {
                        continue;
                    }
                    if let (Term::App(f, xs), Term::App(g, ys)) = (&cl.terms[i], &cl.terms[j]) {
                        if f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| cl.same(x, y)) {
                            cl.join(i, j);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return cl;
            }
        }
    }

    fn idx(&self, t: &Term) -> usize {
        self.terms.iter().position(|u| u == t).unwrap()
    }

    fn join(&mut self, i: usize, j: usize) {
        let (from, to) = (self.class[i], self.class[j]);
        for c in &mut self.class {
            if *c == from {
                *c = to;
            }
        }
    }

    pub fn same(&self, t: &Term, u: &Term) -> bool {
        self.class[self.idx(t)] == self.class[self.idx(u)]
    }
}

/// Checks that `explain(t, u)` is a chain from `t` to `u` whose edges are
/// input equalities or congruences with recursively explained arguments.
pub fn replay(eg: &EGraph, eqs: &[(Term, Term)], t: &Term, u: &Term) -> Result<(), String> {
    let e = eg.explain(t, u).map_err(|e| e.to_string())?;
    let mut at = t.clone();
    for edge in &e.edges {
        if edge.from != at {
            return Err(format!("chain breaks at {at}"));
        }
        let same_pair = |a: &Term, b: &Term| (a == &edge.from && b == &edge.to) || (a == &edge.to && b == &edge.from);
        match &edge.justification {
            EdgeJustification::External { lhs, rhs } => {
                if !same_pair(lhs, rhs) || !eqs.iter().any(|(l, r)| l == lhs && r == rhs) {
                    return Err(format!("bogus external edge {lhs} = {rhs}"));
                }
            }
            EdgeJustification::Congruence(x, y) => {
                let (Term::App(f, xs), Term::App(g, ys)) = (x, y) else { return Err("congruence on variables".into()) };
                if !same_pair(x, y) || f != g || xs.len() != ys.len() {
                    return Err(format!("bogus congruence edge {x} ~ {y}"));
                }
                for (xa, ya) in xs.iter().zip(ys) {
                    replay(eg, eqs, xa, ya)?;
                }
            }
        }
        at = edge.to.clone();
    }
    if &at != u {
        return Err(format!("chain ends at {at}, not {u}"));
    }
    Ok(())
}

/// Runs `instances` random instances against the brute-force closure and
/// replays every explanation. Returns (pairs checked, congruent pairs).
pub fn run(instances: usize, seed: u64) -> Result<(usize, usize), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut pairs, mut congruent) = (0, 0);
    for instance in 0..instances {
        let n = rng.gen_range(1..=8);
        let consts: Vec<Term> = (0..n).map(|i| Term::constant(format!("c{i}"))).collect();
        let extra: Vec<Term> = (0..rng.gen_range(0..8)).map(|_| random_term(&mut rng, &consts, 2)).collect();
        let eqs: Vec<(Term, Term)> = (0..rng.gen_range(0..=10))
            .map(|_| (random_term(&mut rng, &consts, 2), random_term(&mut rng, &consts, 2)))
            .collect();

        let mut eg = EGraph::new();
        let (early, late) = extra.split_at(extra.len() / 2);
        for t in early {
            eg.add_term(t);
        }
        for (l, r) in &eqs {
            eg.assert_eq(l, r);
        }
        for t in late.iter().chain(&consts) {
            eg.add_term(t);
        }

        let mut all = BTreeSet::new();
        for t in consts.iter().chain(&extra).chain(eqs.iter().flat_map(|(l, r)| [l, r])) {
            subterms(t, &mut all);
        }
        let oracle = Closure::new(&all, &eqs);
        for t in &all {
            for u in &all {
                let expected = oracle.same(t, u);
                if eg.congruent(t, u) != expected {
                    return Err(format!("instance {instance}: {t} vs {u} should be {expected}, eqs {eqs:?}"));
                }
                if expected {
                    congruent += 1;
                    replay(&eg, &eqs, t, u).map_err(|e| format!("instance {instance}: {t} = {u}: {e}"))?;
                } else if eg.explain(t, u).is_ok() {
                    return Err(format!("instance {instance}: explained {t} = {u}"));
                }
                pairs += 1;
            }
        }
        let classes = oracle.class.iter().collect::<BTreeSet<_>>().len();
        if eg.class_count() != classes {
            return Err(format!("instance {instance}: {} classes, expected {classes}", eg.class_count()));
        }
    }
    Ok((pairs, congruent))
}
