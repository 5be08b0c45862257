#![allow(dead_code)]

pub mod closure;
pub mod generate;
pub mod props;
pub mod rules;

use std::collections::HashMap;

use sctptp::logic::NamelessForm;
use sctptp::syntax::parse_derivation;
use sctptp::{Derivation, Formula, Sequent};

pub const GOLDEN: &[&str] = &["example31.s", "drinker.s", "rightand.s", "rightex.s", "leftsubst.s", "propositional.s"];

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn load(name: &str) -> Derivation {
    parse_derivation(&fixture(name)).unwrap()
}

/// Truth-table semantics over propositional atoms. Anything that is not a
/// connective (predicates, equalities, quantified formulas) is an atom,
/// identified up to alpha-equivalence.
#[derive(Default)]
pub struct Atoms {
    ids: HashMap<NamelessForm, usize>,
}

impl Atoms {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn collect(&mut self, f: &Formula) {
        match f {
            Formula::True | Formula::False => {}
            Formula::Not(a) => self.collect(a),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.collect(a);
                self.collect(b);
            }
            _ => {
                let n = self.ids.len();
                self.ids.entry(NamelessForm::of(f)).or_insert(n);
            }
        }
    }

    pub fn eval(&self, f: &Formula, v: u64) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Not(a) => !self.eval(a, v),
            Formula::And(a, b) => self.eval(a, v) && self.eval(b, v),
            Formula::Or(a, b) => self.eval(a, v) || self.eval(b, v),
            Formula::Implies(a, b) => !self.eval(a, v) || self.eval(b, v),
            Formula::Iff(a, b) => self.eval(a, v) == self.eval(b, v),
            _ => v >> self.ids[&NamelessForm::of(f)] & 1 == 1,
        }
    }

    pub fn sequent(&self, s: &Sequent, v: u64) -> bool {
        !s.left.iter().all(|f| self.eval(f, v)) || s.right.iter().any(|f| self.eval(f, v))
    }
}

/// `Some(true)` if the premises propositionally entail the conclusion,
/// `Some(false)` if not, `None` above `max_atoms` atoms.
pub fn entails(prems: &[&Sequent], concl: &Sequent, max_atoms: usize) -> Option<bool> {
    let mut atoms = Atoms::default();
    for s in prems.iter().copied().chain([concl]) {
        s.formulas().for_each(|f| atoms.collect(f));
    }
    if atoms.len() > max_atoms {
        return None;
    }
    Some((0..1u64 << atoms.len()).all(|v| !prems.iter().all(|p| atoms.sequent(p, v)) || atoms.sequent(concl, v)))
}
