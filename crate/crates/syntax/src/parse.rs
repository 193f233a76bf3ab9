//! Parser for the ASCII formula grammar.
//!
//! ```text
//! term    := '0' | var | 'S(' term ')' | '(' term '+' term ')' | '(' term '*' term ')'
//!          | fun '(' [term (',' term)*] ')'
//! atom    := term '=' term | term '<=' term | 'X(' term ')' | Pred ['(' term,* ')']
//! formula := atom | '!' formula | '(' formula ('&' | '|' | '->') formula ')'
//!          | '(' formula ')' | 'all' var '.' formula | 'ex' var '.' formula
//! ```
//!
//! Variables and function symbols are lowercase identifiers (a function
//! symbol is followed by `(`), predicate symbols are capitalised. `!` and
//! `->` are eliminated through negation.

use thiserror::Error;

use crate::formula::{implies, Formula, Rel};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> PResult<T> {
        Err(SyntaxError {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(tok)
    }

    fn eat(&mut self, tok: &str) -> bool {
        if self.at(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(&format!("expected '{tok}'"))
        }
    }

    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '\''))
            .unwrap_or(rest.len());
        Some(&rest[..len])
    }

    fn ident(&mut self) -> PResult<&'a str> {
        match self.peek_ident() {
            Some(id) => {
                self.pos += id.len();
                Ok(id)
            }
            None => self.err("expected identifier"),
        }
    }

    fn var_name(&mut self) -> PResult<String> {
        let start = self.pos;
        let id = self.ident()?;
        if !id.starts_with(|c: char| c.is_ascii_lowercase()) || id == "all" || id == "ex" {
            self.pos = start;
            return self.err("expected variable");
        }
        Ok(id.to_string())
    }

    fn args(&mut self) -> PResult<Vec<Term>> {
        self.expect("(")?;
        let mut out = Vec::new();
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.eat(",") {
                continue;
            }
            self.expect(")")?;
            return Ok(out);
        }
    }

    fn term(&mut self) -> PResult<Term> {
        self.skip_ws();
        if self.eat("0") {
            return Ok(Term::Zero);
        }
        if self.eat("(") {
            let a = self.term()?;
            let plus = if self.eat("+") {
                true
            } else if self.eat("*") {
                false
            } else {
                return self.err("expected '+' or '*'");
            };
            let b = self.term()?;
            self.expect(")")?;
            return Ok(if plus { Term::plus(a, b) } else { Term::times(a, b) });
        }
        match self.peek_ident() {
            Some("S") => {
                self.pos += 1;
                self.expect("(")?;
                let a = self.term()?;
                self.expect(")")?;
                Ok(Term::succ(a))
            }
            Some(id) if id.starts_with(|c: char| c.is_ascii_lowercase()) && id != "all" && id != "ex" => {
                self.pos += id.len();
                if self.at("(") {
                    Ok(Term::app(id, self.args()?))
                } else {
                    Ok(Term::var(id))
                }
            }
            _ => self.err("expected term"),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek_ident() {
            Some(id) if id.starts_with(|c: char| c.is_ascii_uppercase()) && id != "S" => {
                self.pos += id.len();
                let args = if self.at("(") { self.args()? } else { Vec::new() };
                if id == "X" {
                    if args.len() != 1 {
                        return self.err("X takes one argument");
                    }
                    return Ok(Formula::prime(Rel::X, args));
                }
                Ok(Formula::pred(id, args))
            }
            _ => {
                let a = self.term()?;
                let rel = if self.eat("<=") {
                    Rel::Le
                } else if self.eat("=") {
                    Rel::Eq
                } else {
                    return self.err("expected '=' or '<='");
                };
                let b = self.term()?;
                Ok(Formula::prime(rel, vec![a, b]))
            }
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        self.skip_ws();
        if self.eat("!") {
            return Ok(self.formula()?.negate());
        }
        if let Some(kw @ ("all" | "ex")) = self.peek_ident() {
            self.pos += kw.len();
            let x = self.var_name()?;
            self.expect(".")?;
            let body = self.formula()?;
            return Ok(if kw == "all" {
                Formula::all(&x, body)
            } else {
                Formula::ex(&x, body)
            });
        }
        if self.at("(") {
            let start = self.pos;
            let first = self.paren_formula();
            match first {
                Ok(f) => return Ok(f),
                Err(e1) => {
                    self.pos = start;
                    return match self.atom() {
                        Ok(f) => Ok(f),
                        Err(e2) => Err(if e1.pos >= e2.pos { e1 } else { e2 }),
                    };
                }
            }
        }
        self.atom()
    }

    fn paren_formula(&mut self) -> PResult<Formula> {
        self.expect("(")?;
        let a = self.formula()?;
        if self.eat(")") {
            return Ok(a);
        }
        let f = if self.eat("&") {
            Formula::and(a, self.formula()?)
        } else if self.eat("|") {
            Formula::or(a, self.formula()?)
        } else if self.eat("->") {
            implies(&a, &self.formula()?)
        } else {
            return self.err("expected '&', '|', '->' or ')'");
        };
        self.expect(")")?;
        Ok(f)
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut p = Parser { src: text, pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < text.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser { src: text, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos < text.len() {
        return p.err("trailing input");
    }
    Ok(t)
}
