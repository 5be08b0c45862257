//! Sequent-calculus derivations in SC-TPTP form: parsing, checking,
//! elaboration of level-2 steps and export to Coq.

pub mod checker;
pub mod coq;
pub mod derivation;
pub mod egraph;
pub mod elaborator;
pub mod logic;
pub mod rules;
pub mod syntax;

pub use derivation::{Derivation, Inference, Param, ProofStep, Role};
pub use logic::{Formula, Sequent, Term};
