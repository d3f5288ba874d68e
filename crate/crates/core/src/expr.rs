//! Representation expressions such as `2*y`, `x_i + y` or `3 - x_i - x_j - x_k`.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr := ['-'] term (('+' | '-') term)*
//! term := [int '*'] name | int
//! ```
//!
//! A bare integer n stands for n copies of the trivial character.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chartab::CharacterTable;
use crate::repring::VirtualCharacter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown irreducible {0:?}")]
    UnknownName(String),
    #[error("integer terms need a trivial character in the table")]
    NoTrivialCharacter,
    #[error("{0} is not a genuine representation")]
    NotGenuine(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    /// Signed multiplicity.
    pub coefficient: BigInt,
    /// `None` for a bare integer (the trivial character).
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepExpression {
    pub terms: Vec<Term>,
}

impl RepExpression {
    pub fn evaluate(&self, table: &Arc<CharacterTable>) -> Result<VirtualCharacter, ExprError> {
        let mut coeffs = vec![BigInt::zero(); table.num_irreducibles()];
        for term in &self.terms {
            let idx = match &term.name {
                Some(name) => table.irreducible_index(name).ok_or_else(|| ExprError::UnknownName(name.clone()))?,
                None => table.trivial_index().ok_or(ExprError::NoTrivialCharacter)?,
            };
            coeffs[idx] += &term.coefficient;
        }
        Ok(VirtualCharacter::new(table.clone(), coeffs).expect("one coefficient per irreducible"))
    }

    /// Evaluates and rejects results with a negative coefficient.
    pub fn evaluate_genuine(&self, table: &Arc<CharacterTable>) -> Result<VirtualCharacter, ExprError> {
        let v = self.evaluate(table)?;
        if v.is_genuine() {
            Ok(v)
        } else {
            Err(ExprError::NotGenuine(v.to_string()))
        }
    }
}

impl fmt::Display for RepExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, term) in self.terms.iter().enumerate() {
            let mag = term.coefficient.abs();
            match (i, term.coefficient.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match &term.name {
                None => write!(f, "{mag}")?,
                Some(name) if mag.is_one() => f.write_str(name)?,
                Some(name) => write!(f, "{mag}*{name}")?,
            }
        }
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse { position: self.pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> BigInt {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().expect("digits")
    }

    fn name(&mut self) -> Result<String, ExprError> {
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return self.err("expected an irreducible name"),
        }
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '^') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self, negative: bool) -> Result<Term, ExprError> {
        let (coefficient, name) = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer();
                if self.peek() == Some('*') {
                    self.pos += 1;
                    (n, Some(self.name()?))
                } else {
                    (n, None)
                }
            }
            Some(_) => (BigInt::one(), Some(self.name()?)),
            None => return self.err("expected a term"),
        };
        Ok(Term { coefficient: if negative { -coefficient } else { coefficient }, name })
    }

    fn expr(&mut self) -> Result<RepExpression, ExprError> {
        let mut negative = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            negative = true;
        }
        let mut terms = vec![self.term(negative)?];
        loop {
            match self.peek() {
                None => return Ok(RepExpression { terms }),
                Some('+') => {
                    self.pos += 1;
                    terms.push(self.term(false)?);
                }
                Some('-') => {
                    self.pos += 1;
                    terms.push(self.term(true)?);
                }
                Some(c) => return self.err(format!("unexpected {c:?}")),
            }
        }
    }
}

/// Parses `s` and resolves every name against `t`.
pub fn parse_rep_expression(s: &str, t: &CharacterTable) -> Result<RepExpression, ExprError> {
    let expr = Parser { chars: s.chars().collect(), pos: 0 }.expr()?;
    for term in &expr.terms {
        match &term.name {
            Some(name) if t.irreducible_index(name).is_none() => return Err(ExprError::UnknownName(name.clone())),
            None if t.trivial_index().is_none() => return Err(ExprError::NoTrivialCharacter),
            _ => {}
        }
    }
    Ok(expr)
}
