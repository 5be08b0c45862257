//! Reading and writing SC-TPTP text.

mod lexer;
mod parser;
mod printer;

pub use lexer::Pos;
pub use parser::{parse_derivation, parse_formula, parse_sequent, parse_term, ParseError};
pub use printer::print_derivation;
