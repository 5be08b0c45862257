//! Recursive-descent parser for SC-TPTP derivation files.
//!
//! Accepted input is the `fof` dialect with sequent statements. Some
//! conventions worth knowing:
//!
//! * `-->` and `->` are both accepted as the sequent arrow.
//! * `![X,Y]: F` is read as `![X]: ![Y]: F`, and quantifier bodies extend
//!   as far to the right as possible.
//! * A bare `o` in a parameter slot is read as the integer `0`; some
//!   published derivations are typeset that way.
//! * Annotations of axiom and conjecture steps are skipped.

use crate::derivation::{Derivation, DerivationError, Inference, Param, ProofStep, Role};
use crate::logic::{Formula, Sequent, Term};

use super::lexer::{tokenize, Pos, Tok, Token};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error at `{found}`: {message}")]
    Syntax { line: usize, col: usize, found: String, message: String },
    #[error("duplicate step name `{0}`")]
    DuplicateName(String),
    #[error("step `{step}` cites `{premise}`, which is not an earlier step")]
    DanglingPremise { step: String, premise: String },
}

impl From<DerivationError> for ParseError {
    fn from(e: DerivationError) -> Self {
        match e {
            DerivationError::DuplicateName(n) => ParseError::DuplicateName(n),
            DerivationError::DanglingPremise { step, premise } => ParseError::DanglingPremise { step, premise },
        }
    }
}

type Result<T> = std::result::Result<T, ParseError>;

pub fn parse_derivation(src: &str) -> Result<Derivation> {
    let mut p = Parser::new(src)?;
    let mut steps = Vec::new();
    while p.peek() != &Tok::Eof {
        steps.push(p.annotated()?);
    }
    Ok(Derivation::new(steps)?)
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser::new(src)?;
    let f = p.formula()?;
    p.expect(Tok::Eof)?;
    Ok(f)
}

pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// A sequent `[..] --> [..]` or a bare formula (as `[] --> [f]`).
pub fn parse_sequent(src: &str) -> Result<Sequent> {
    let mut p = Parser::new(src)?;
    let (s, _) = p.statement()?;
    p.expect(Tok::Eof)?;
    Ok(s)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let toks = tokenize(src).map_err(|e| ParseError::Syntax {
            line: e.pos.line,
            col: e.pos.col,
            found: e.found,
            message: e.message,
        })?;
        Ok(Parser { toks, i: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].tok.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let Pos { line, col } = self.pos();
        Err(ParseError::Syntax { line, col, found: self.peek().to_string(), message: message.into() })
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{t}`"))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn annotated(&mut self) -> Result<ProofStep> {
        match self.peek() {
            Tok::LowerWord(w) if w == "fof" => {
                self.bump();
            }
            _ => return self.error("expected `fof(`"),
        }
        self.expect(Tok::LParen)?;
        let name = self.name()?;
        self.expect(Tok::Comma)?;
        let role = match self.peek() {
            Tok::LowerWord(w) => match Role::parse(w) {
                Some(r) => {
                    self.bump();
                    r
                }
                None => return self.error("expected one of axiom, conjecture, assumption, plain"),
            },
            _ => return self.error("expected a formula role"),
        };
        self.expect(Tok::Comma)?;
        let (sequent, bare_formula) = self.statement()?;
        let mut inference = None;
        if self.eat(&Tok::Comma) {
            if role.is_inferred() {
                inference = Some(self.inference()?);
            } else {
                self.skip_annotation()?;
            }
        } else if role.is_inferred() {
            return self.error(format!("{role} step `{name}` needs an inference(...) annotation"));
        }
        self.expect(Tok::RParen)?;
        self.expect(Tok::Dot)?;
        Ok(ProofStep { name, role, sequent, bare_formula, inference })
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::LowerWord(w) | Tok::Int(w) | Tok::SingleQuoted(w) => {
                self.bump();
                Ok(w)
            }
            _ => self.error("expected a step name"),
        }
    }

    fn statement(&mut self) -> Result<(Sequent, bool)> {
        let mut opens = 0;
        while *self.peek_at(opens) == Tok::LParen {
            opens += 1;
        }
        if *self.peek_at(opens) != Tok::LBracket {
            return Ok((Sequent::formula(self.formula()?), true));
        }
        for _ in 0..opens {
            self.bump();
        }
        let left = self.formula_tuple()?;
        if !self.eat(&Tok::Arrow) {
            return self.error("expected sequent arrow `-->`");
        }
        let right = self.formula_tuple()?;
        for _ in 0..opens {
            self.expect(Tok::RParen)?;
        }
        Ok((Sequent::new(left, right), false))
    }

    fn formula_tuple(&mut self) -> Result<Vec<Formula>> {
        self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.expect(Tok::RBracket)?;
            return Ok(out);
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.assoc_formula()?;
        let build: fn(Formula, Formula) -> Formula = match self.peek() {
            Tok::Implies => Formula::implies,
            Tok::RevImplies => |a, b| Formula::implies(b, a),
            Tok::Iff => Formula::iff,
            Tok::Xor => |a, b| Formula::not(Formula::iff(a, b)),
            Tok::Nor => |a, b| Formula::not(Formula::or(a, b)),
            Tok::Nand => |a, b| Formula::not(Formula::and(a, b)),
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.assoc_formula()?;
        if is_binary_op(self.peek()) {
            return self.error("non-associative connectives need parentheses");
        }
        Ok(build(lhs, rhs))
    }

    fn assoc_formula(&mut self) -> Result<Formula> {
        let mut acc = self.unitary()?;
        let op = self.peek().clone();
        if op != Tok::Amp && op != Tok::Pipe {
            return Ok(acc);
        }
        while self.eat(&op) {
            let rhs = self.unitary()?;
            acc = if op == Tok::Amp { Formula::and(acc, rhs) } else { Formula::or(acc, rhs) };
        }
        if matches!(self.peek(), Tok::Amp | Tok::Pipe) {
            return self.error("mixing `&` and `|` needs parentheses");
        }
        Ok(acc)
    }

    fn unitary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unitary()?))
            }
            Tok::Bang | Tok::Question => {
                let universal = self.bump() == Tok::Bang;
                self.expect(Tok::LBracket)?;
                let mut vars = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::UpperWord(v) => {
                            self.bump();
                            vars.push(v);
                        }
                        _ => return self.error("expected a variable"),
                    }
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::Colon)?;
                let body = self.formula()?;
                Ok(vars.into_iter().rev().fold(body, |acc, v| {
                    if universal {
                        Formula::forall(v, acc)
                    } else {
                        Formula::exists(v, acc)
                    }
                }))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::DollarWord(w) => {
                let f = match w.as_str() {
                    "$true" => Formula::True,
                    "$false" => Formula::False,
                    _ => return self.error("unsupported defined word"),
                };
                self.bump();
                Ok(f)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let start = self.i;
        let lhs = self.term()?;
        if self.eat(&Tok::Equals) {
            return Ok(Formula::eq(lhs, self.term()?));
        }
        if self.eat(&Tok::NotEquals) {
            return Ok(Formula::not(Formula::eq(lhs, self.term()?)));
        }
        match lhs {
            Term::App(p, args) => Ok(Formula::Pred(p, args)),
            Term::Var(_) => {
                self.i = start;
                self.error("a variable cannot stand as a formula")
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let (name, is_var) = match self.peek().clone() {
            Tok::LowerWord(w) | Tok::SingleQuoted(w) => (w, false),
            Tok::UpperWord(w) => (w, true),
            _ => return self.error("expected a term"),
        };
        self.bump();
        if !self.eat(&Tok::LParen) {
            return Ok(if is_var { Term::Var(name) } else { Term::App(name, Vec::new()) });
        }
        let mut args = vec![self.term()?];
        while self.eat(&Tok::Comma) {
            args.push(self.term()?);
        }
        self.expect(Tok::RParen)?;
        Ok(Term::App(name, args))
    }

    fn inference(&mut self) -> Result<Inference> {
        match self.peek() {
            Tok::LowerWord(w) if w == "inference" => {
                self.bump();
            }
            _ => return self.error("expected `inference(`"),
        }
        self.expect(Tok::LParen)?;
        let rule = match self.peek().clone() {
            Tok::LowerWord(w) | Tok::UpperWord(w) | Tok::SingleQuoted(w) => {
                self.bump();
                w
            }
            _ => return self.error("expected a rule name"),
        };
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBracket)?;
        let status = self.status()?;
        let mut params = Vec::new();
        while self.eat(&Tok::Comma) {
            params.push(self.param()?);
        }
        self.expect(Tok::RBracket)?;
        self.expect(Tok::Comma)?;
        self.expect(Tok::LBracket)?;
        let mut premises = Vec::new();
        if !self.eat(&Tok::RBracket) {
            loop {
                premises.push(self.name()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBracket)?;
        }
        self.expect(Tok::RParen)?;
        Ok(Inference { rule, status, params, premises })
    }

    fn status(&mut self) -> Result<String> {
        match self.peek() {
            Tok::LowerWord(w) if w == "status" => {
                self.bump();
            }
            _ => return self.error("the first parameter must be `status(thm)`"),
        }
        self.expect(Tok::LParen)?;
        let s = match self.bump() {
            Tok::LowerWord(w) => w,
            _ => return self.error("expected a status word"),
        };
        self.expect(Tok::RParen)?;
        Ok(s)
    }

    fn param(&mut self) -> Result<Param> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.parse().map(Param::Int).or_else(|_| self.error("index out of range"))
            }
            Tok::LowerWord(w) if w == "o" => {
                self.bump();
                Ok(Param::Int(0))
            }
            Tok::UpperWord(v) => {
                self.bump();
                Ok(Param::Var(v))
            }
            Tok::DollarWord(w) if w == "$fot" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Param::Term(t))
            }
            Tok::DollarWord(w) if w == "$fof" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Param::Formula(f))
            }
            Tok::LBracket => {
                self.bump();
                let mut ints = Vec::new();
                let mut vars = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        match self.peek().clone() {
                            Tok::Int(n) if vars.is_empty() => {
                                self.bump();
                                ints.push(n.parse().or_else(|_| self.error("index out of range"))?);
                            }
                            Tok::UpperWord(v) if ints.is_empty() => {
                                self.bump();
                                vars.push(v);
                            }
                            _ => return self.error("expected a list of indices or of variables"),
                        }
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket)?;
                }
                Ok(if vars.is_empty() { Param::IntList(ints) } else { Param::VarList(vars) })
            }
            _ => self.error("expected an inference parameter"),
        }
    }

    /// Skips a general TPTP annotation up to the closing `)` of the statement.
    fn skip_annotation(&mut self) -> Result<()> {
        let mut depth = 0usize;
        loop {
            match self.peek() {
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket if depth == 0 => return Ok(()),
                Tok::RParen | Tok::RBracket => depth -= 1,
                Tok::Eof => return self.error("unterminated annotation"),
                _ => {}
            }
            self.bump();
        }
    }
}

fn is_binary_op(t: &Tok) -> bool {
    matches!(t, Tok::Implies | Tok::RevImplies | Tok::Iff | Tok::Xor | Tok::Nor | Tok::Nand)
}
