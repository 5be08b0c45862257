//! Annotated proof steps and derivations.

use std::collections::HashMap;
use std::fmt;

use crate::logic::{Formula, Sequent, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    Conjecture,
    Assumption,
    Plain,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
            Role::Assumption => "assumption",
            Role::Plain => "plain",
        }
    }

    pub fn parse(s: &str) -> Option<Role> {
        Some(match s {
            "axiom" => Role::Axiom,
            "conjecture" => Role::Conjecture,
            "assumption" => Role::Assumption,
            "plain" => Role::Plain,
            _ => return None,
        })
    }

    /// Assumption and plain steps are inferred and carry an inference record.
    pub fn is_inferred(self) -> bool {
        matches!(self, Role::Assumption | Role::Plain)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One inference parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Int(usize),
    /// `$fot(t)`
    Term(Term),
    /// `$fof(f)`
    Formula(Formula),
    /// A bare variable name.
    Var(String),
    /// `[i1, ..., in]`
    IntList(Vec<usize>),
    /// `[Z1, ..., Zn]`
    VarList(Vec<String>),
}

impl Param {
    pub fn as_int(&self) -> Option<usize> {
        match self {
            Param::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            Param::Term(t) => Some(t),
            _ => None,
        }
    }

    /// Term parameter, reading a bare variable as a variable term.
    pub fn to_term(&self) -> Option<Term> {
        match self {
            Param::Term(t) => Some(t.clone()),
            Param::Var(v) => Some(Term::var(v.as_str())),
            _ => None,
        }
    }

    pub fn as_formula(&self) -> Option<&Formula> {
        match self {
            Param::Formula(f) => Some(f),
            _ => None,
        }
    }

    /// Variable named either bare (`Z`) or wrapped (`$fot(Z)`).
    pub fn as_var(&self) -> Option<&str> {
        match self {
            Param::Var(v) => Some(v),
            Param::Term(Term::Var(v)) => Some(v),
            _ => None,
        }
    }

    pub fn as_int_list(&self) -> Option<&[usize]> {
        match self {
            Param::IntList(l) => Some(l),
            _ => None,
        }
    }

    pub fn as_var_list(&self) -> Option<Vec<&str>> {
        match self {
            Param::VarList(l) => Some(l.iter().map(String::as_str).collect()),
            Param::IntList(l) if l.is_empty() => Some(Vec::new()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    /// The rule token exactly as written; see [`crate::rules::resolve_rule_name`].
    pub rule: String,
    /// Contents of the leading `status(...)` slot, normally `thm`.
    pub status: String,
    pub params: Vec<Param>,
    pub premises: Vec<String>,
}

impl Inference {
    pub fn new(rule: impl Into<String>, params: Vec<Param>, premises: Vec<String>) -> Self {
        Inference { rule: rule.into(), status: "thm".into(), params, premises }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub name: String,
    pub role: Role,
    pub sequent: Sequent,
    /// The statement was written as a bare formula rather than a sequent.
    pub bare_formula: bool,
    pub inference: Option<Inference>,
}

impl ProofStep {
    pub fn new(name: impl Into<String>, role: Role, sequent: Sequent) -> Self {
        ProofStep { name: name.into(), role, sequent, bare_formula: false, inference: None }
    }

    pub fn inferred(name: impl Into<String>, role: Role, sequent: Sequent, inference: Inference) -> Self {
        ProofStep { inference: Some(inference), ..ProofStep::new(name, role, sequent) }
    }

    pub fn premises(&self) -> &[String] {
        self.inference.as_ref().map(|i| i.premises.as_slice()).unwrap_or(&[])
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("duplicate step name `{0}`")]
    DuplicateName(String),
    #[error("step `{step}` cites `{premise}`, which is not an earlier step")]
    DanglingPremise { step: String, premise: String },
}

/// An ordered list of steps, each premise naming an earlier step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation {
    steps: Vec<ProofStep>,
    index: HashMap<String, usize>,
}

impl Derivation {
    pub fn new(steps: Vec<ProofStep>) -> Result<Self, DerivationError> {
        let mut index = HashMap::with_capacity(steps.len());
        for (i, s) in steps.iter().enumerate() {
            for p in s.premises() {
                if !index.contains_key(p) {
                    return Err(DerivationError::DanglingPremise { step: s.name.clone(), premise: p.clone() });
                }
            }
            if index.insert(s.name.clone(), i).is_some() {
                return Err(DerivationError::DuplicateName(s.name.clone()));
            }
        }
        Ok(Derivation { steps, index })
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<ProofStep> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&ProofStep> {
        self.index.get(name).map(|&i| &self.steps[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// Premise steps of `step`, in citation order.
    pub fn premises_of<'a>(&'a self, step: &'a ProofStep) -> impl Iterator<Item = &'a ProofStep> {
        step.premises().iter().filter_map(move |p| self.get(p))
    }

    pub fn conjecture(&self) -> Option<&ProofStep> {
        self.steps.iter().find(|s| s.role == Role::Conjecture)
    }

    /// The last inferred step in file order, taken as the proof's root.
    pub fn final_step(&self) -> Option<&ProofStep> {
        self.steps.iter().rev().find(|s| s.role.is_inferred())
    }
}
