//! Static catalog of deduction rules.
//!
//! Level 1 holds the 30 basic sequent rules; level 2 holds rules that are
//! checked directly and can be unfolded into level-1 steps (except `NNF`,
//! which is only checked).

use std::fmt;

use crate::derivation::Param;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    // structural
    Hyp,
    LeftHyp,
    LeftWeaken,
    RightWeaken,
    Cut,
    // left introduction
    LeftAnd,
    LeftOr,
    LeftImp1,
    LeftImp2,
    LeftIff,
    LeftNot,
    LeftEx,
    LeftAll,
    // right introduction
    RightAnd,
    RightOr,
    RightImp,
    RightIff,
    RightNot,
    RightEx,
    RightAll,
    // left negation
    LeftNotAnd,
    LeftNotOr,
    LeftNotImp,
    LeftNotIff,
    LeftNotNot,
    LeftNotEx,
    LeftNotAll,
    // equality
    RightRefl,
    RightSubst,
    LeftSubst,
    // level 2
    Nnf,
    Congruence,
    RightSubstMulti,
    LeftSubstMulti,
}

/// Kind of one parameter slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    Term,
    /// A variable, written bare or as `$fot(X)`.
    Var,
    Formula,
    IntList,
    VarList,
}

impl ParamKind {
    pub fn accepts(self, p: &Param) -> bool {
        match self {
            ParamKind::Int => p.as_int().is_some(),
            ParamKind::Term => matches!(p, Param::Term(_) | Param::Var(_)),
            ParamKind::Var => p.as_var().is_some(),
            ParamKind::Formula => p.as_formula().is_some(),
            ParamKind::IntList => p.as_int_list().is_some(),
            ParamKind::VarList => p.as_var_list().is_some(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleDescriptor {
    pub rule: Rule,
    pub name: &'static str,
    pub level: u8,
    pub premises: usize,
    pub params: &'static [ParamKind],
}

use ParamKind::{Formula as F, Int as I, IntList as IL, Term as T, Var as V, VarList as VL};

const fn desc(
    rule: Rule,
    name: &'static str,
    level: u8,
    premises: usize,
    params: &'static [ParamKind],
) -> RuleDescriptor {
    RuleDescriptor { rule, name, level, premises, params }
}

pub static CATALOG: [RuleDescriptor; 34] = [
    desc(Rule::Hyp, "hyp", 1, 0, &[I, I]),
    desc(Rule::LeftHyp, "leftHyp", 1, 0, &[I, I]),
    desc(Rule::LeftWeaken, "leftWeaken", 1, 1, &[I]),
    desc(Rule::RightWeaken, "rightWeaken", 1, 1, &[I]),
    desc(Rule::Cut, "cut", 1, 2, &[I]),
    desc(Rule::LeftAnd, "leftAnd", 1, 1, &[I]),
    desc(Rule::LeftOr, "leftOr", 1, 2, &[I]),
    desc(Rule::LeftImp1, "leftImp1", 1, 2, &[I]),
    desc(Rule::LeftImp2, "leftImp2", 1, 2, &[I]),
    desc(Rule::LeftIff, "leftIff", 1, 1, &[I]),
    desc(Rule::LeftNot, "leftNot", 1, 1, &[I]),
    desc(Rule::LeftEx, "leftEx", 1, 1, &[I, V]),
    desc(Rule::LeftAll, "leftAll", 1, 1, &[I, T]),
    desc(Rule::RightAnd, "rightAnd", 1, 2, &[I]),
    desc(Rule::RightOr, "rightOr", 1, 1, &[I]),
    desc(Rule::RightImp, "rightImp", 1, 1, &[I]),
    desc(Rule::RightIff, "rightIff", 1, 2, &[I]),
    desc(Rule::RightNot, "rightNot", 1, 1, &[I]),
    desc(Rule::RightEx, "rightEx", 1, 1, &[I, T]),
    desc(Rule::RightAll, "rightAll", 1, 1, &[I, V]),
    desc(Rule::LeftNotAnd, "leftNotAnd", 1, 2, &[I]),
    desc(Rule::LeftNotOr, "leftNotOr", 1, 1, &[I]),
    desc(Rule::LeftNotImp, "leftNotImp", 1, 1, &[I]),
    desc(Rule::LeftNotIff, "leftNotIff", 1, 2, &[I]),
    desc(Rule::LeftNotNot, "leftNotNot", 1, 1, &[I]),
    desc(Rule::LeftNotEx, "leftNotEx", 1, 1, &[I, T]),
    desc(Rule::LeftNotAll, "leftNotAll", 1, 1, &[I, V]),
    desc(Rule::RightRefl, "rightRefl", 1, 0, &[I]),
    desc(Rule::RightSubst, "rightSubst", 1, 1, &[I, F, V]),
    desc(Rule::LeftSubst, "leftSubst", 1, 1, &[I, F, V]),
    desc(Rule::Nnf, "NNF", 2, 1, &[]),
    desc(Rule::Congruence, "congruence", 2, 0, &[]),
    desc(Rule::RightSubstMulti, "rightSubstMulti", 2, 1, &[IL, F, VL]),
    desc(Rule::LeftSubstMulti, "leftSubstMulti", 2, 1, &[IL, F, VL]),
];

/// Alternative spellings seen in producer output.
const ALIASES: &[(&str, Rule)] = &[("leftNotForall", Rule::LeftNotAll), ("leftNotExists", Rule::LeftNotEx)];

impl Rule {
    pub fn descriptor(self) -> &'static RuleDescriptor {
        CATALOG.iter().find(|d| d.rule == self).expect("every rule is catalogued")
    }

    pub fn name(self) -> &'static str {
        self.descriptor().name
    }

    pub fn level(self) -> u8 {
        self.descriptor().level
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn lookup(name: &str) -> Option<&'static RuleDescriptor> {
    CATALOG.iter().find(|d| d.name == name)
}

/// Result of resolving a rule token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleRef {
    Known(Rule),
    Unknown(String),
}

pub fn resolve_rule_name(token: &str) -> RuleRef {
    if let Some(d) = lookup(token) {
        return RuleRef::Known(d.rule);
    }
    ALIASES
        .iter()
        .find(|(alias, _)| *alias == token)
        .map(|&(_, r)| RuleRef::Known(r))
        .unwrap_or_else(|| RuleRef::Unknown(token.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("{rule} takes {expected} premise(s), got {found}")]
    ArityMismatch { rule: &'static str, expected: usize, found: usize },
    #[error("{rule} expects parameters {expected}, got {found}")]
    ParamShapeMismatch { rule: &'static str, expected: String, found: String },
}

/// Structural check of parameter kinds and premise count.
pub fn validate_param_shape(r: &RuleDescriptor, params: &[Param], premises: &[String]) -> Result<(), ShapeError> {
    if premises.len() != r.premises {
        return Err(ShapeError::ArityMismatch { rule: r.name, expected: r.premises, found: premises.len() });
    }
    let ok = params.len() == r.params.len() && r.params.iter().zip(params).all(|(k, p)| k.accepts(p));
    if !ok {
        return Err(ShapeError::ParamShapeMismatch {
            rule: r.name,
            expected: format!("{:?}", r.params),
            found: params.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        });
    }
    Ok(())
}
