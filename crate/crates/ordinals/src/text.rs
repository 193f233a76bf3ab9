//! Text form of notations.
//!
//! Grammar (ASCII):
//!
//! ```text
//! sum     := summand ('+' summand)*
//! summand := NUM | 'w' ['^' atom] | '<' [sum (',' sum)*] '>' | '(' sum ')'
//! atom    := NUM | 'w' ['^' atom] | '<' ... '>' | '(' sum ')'
//! ```
//!
//! `0` is the empty notation, a numeral `n` abbreviates `1+...+1`, `w` is
//! `w^1` and `w^a` is the single-exponent notation `<a>`. A sum concatenates
//! exponent lists (strict mode) or folds with ordinal addition (normalize
//! mode). The printer always emits the sum form.

use std::fmt;

use thiserror::Error;

use crate::notation::{add, is_notation, omega_pow, Ordinal, RawTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not in Cantor normal form: {0}")]
    NotNotation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Reject input whose literal reading is not a notation.
    Strict,
    /// Combine summands with ordinal addition.
    Normalize,
}

#[derive(Debug, Clone)]
enum Expr {
    Sum(Vec<Expr>),
    Num(usize),
    Pow(Box<Expr>),
    Brackets(Vec<Expr>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, TextError> {
        Err(TextError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, TextError> {
        let mut parts = vec![self.summand()?];
        while self.eat(b'+') {
            parts.push(self.summand()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Sum(parts)
        })
    }

    fn summand(&mut self) -> Result<Expr, TextError> {
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, TextError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match text.parse::<usize>() {
                    Ok(n) if n <= 1 << 16 => Ok(Expr::Num(n)),
                    _ => {
                        self.pos = start;
                        self.err("numeral too large")
                    }
                }
            }
            Some(b'w') => {
                self.pos += 1;
                if self.eat(b'^') {
                    if self.peek().is_none() {
                        return self.err("missing exponent after '^'");
                    }
                    Ok(Expr::Pow(Box::new(self.atom()?)))
                } else {
                    Ok(Expr::Pow(Box::new(Expr::Num(1))))
                }
            }
            Some(b'<') => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat(b'>') {
                    loop {
                        items.push(self.sum()?);
                        if self.eat(b',') {
                            continue;
                        }
                        if self.eat(b'>') {
                            break;
                        }
                        return self.err("expected ',' or '>'");
                    }
                }
                Ok(Expr::Brackets(items))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr, TextError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Exponent list of the literal reading, without any checks.
fn raw_exponents(e: &Expr) -> Vec<RawTree> {
    match e {
        Expr::Num(n) => vec![RawTree::empty(); *n],
        Expr::Pow(a) => vec![raw_of(a)],
        Expr::Brackets(items) => items.iter().map(raw_of).collect(),
        Expr::Sum(parts) => parts.iter().flat_map(raw_exponents).collect(),
    }
}

fn raw_of(e: &Expr) -> RawTree {
    RawTree::new(raw_exponents(e))
}

fn normalized(e: &Expr) -> Ordinal {
    match e {
        Expr::Num(n) => crate::notation::from_nat(*n),
        Expr::Pow(a) => omega_pow(&normalized(a)),
        Expr::Brackets(items) => items
            .iter()
            .fold(Ordinal::zero(), |acc, x| add(&acc, &omega_pow(&normalized(x)))),
        Expr::Sum(parts) => parts
            .iter()
            .fold(Ordinal::zero(), |acc, x| add(&acc, &normalized(x))),
    }
}

/// Reads any raw tree; no normal form discipline is imposed.
pub fn parse_raw(text: &str) -> Result<RawTree, TextError> {
    Ok(raw_of(&parse_expr(text)?))
}

pub fn parse_ordinal(text: &str, mode: ParseMode) -> Result<Ordinal, TextError> {
    let e = parse_expr(text)?;
    match mode {
        ParseMode::Strict => {
            let raw = raw_of(&e);
            if is_notation(&raw) {
                Ok(Ordinal::from_raw(raw).expect("checked"))
            } else {
                Err(TextError::NotNotation(raw.to_brackets()))
            }
        }
        ParseMode::Normalize => Ok(normalized(&e)),
    }
}

fn write_exponent(out: &mut String, e: &RawTree) {
    let exps = e.exponents();
    if exps.len() > 1 && exps.iter().all(|x| x.is_empty()) {
        out.push_str(&exps.len().to_string());
    } else if exps.len() == 1 {
        write_sum(out, e);
    } else {
        out.push('(');
        write_sum(out, e);
        out.push(')');
    }
}

fn write_sum(out: &mut String, t: &RawTree) {
    let exps = t.exponents();
    if exps.is_empty() {
        out.push('0');
        return;
    }
    let mut i = 0;
    let mut first = true;
    while i < exps.len() {
        if !first {
            out.push('+');
        }
        first = false;
        if exps[i].is_empty() {
            let mut j = i;
            while j < exps.len() && exps[j].is_empty() {
                j += 1;
            }
            out.push_str(&(j - i).to_string());
            i = j;
            continue;
        }
        let e = &exps[i];
        if e.exponents().len() == 1 && e.exponents()[0].is_empty() {
            out.push('w');
        } else {
            out.push_str("w^");
            write_exponent(out, e);
        }
        i += 1;
    }
}

/// Sum form of a raw tree, e.g. `w^w+w+2`.
pub fn print_raw(t: &RawTree) -> String {
    let mut s = String::new();
    write_sum(&mut s, t);
    s
}

pub fn print_ordinal(a: &Ordinal) -> String {
    print_raw(a.raw())
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_ordinal(self))
    }
}

impl fmt::Display for RawTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_raw(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{from_nat, succ};

    fn strict(s: &str) -> Ordinal {
        parse_ordinal(s, ParseMode::Strict).unwrap()
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(strict("0"), Ordinal::zero());
        assert_eq!(strict("1"), Ordinal::one());
        assert_eq!(strict("w"), Ordinal::omega());
        assert_eq!(strict("w+1"), succ(&Ordinal::omega()));
        assert_eq!(strict("<<>,<>>"), from_nat(2));
        assert_eq!(strict("w^0"), Ordinal::one());
    }

    #[test]
    fn strict_rejects_non_normal_form() {
        assert!(matches!(
            parse_ordinal("1+w", ParseMode::Strict),
            Err(TextError::NotNotation(_))
        ));
        assert_eq!(parse_ordinal("1+w", ParseMode::Normalize).unwrap(), Ordinal::omega());
    }

    #[test]
    fn malformed() {
        assert!(matches!(parse_ordinal("w^", ParseMode::Strict), Err(TextError::Syntax { .. })));
        assert!(matches!(parse_ordinal("w+", ParseMode::Strict), Err(TextError::Syntax { .. })));
        assert!(matches!(parse_ordinal("x", ParseMode::Strict), Err(TextError::Syntax { .. })));
    }

    #[test]
    fn printing() {
        assert_eq!(from_nat(6).to_string(), "6");
        assert_eq!(Ordinal::zero().to_string(), "0");
        assert_eq!(strict("w+4").to_string(), "w+4");
        assert_eq!(strict("w^w^2+w^(w+1)+w+1").to_string(), "w^w^2+w^(w+1)+w+1");
        assert_eq!(strict("<<<>,<>>>").to_string(), "w^2");
    }

    #[test]
    fn round_trip_enumeration() {
        for a in crate::notation::enumerate_up_to(7) {
            assert_eq!(strict(&a.to_string()), a);
        }
        for r in crate::notation::enumerate_raw_up_to(6) {
            assert_eq!(parse_raw(&r.to_string()).unwrap(), r);
        }
    }
}
