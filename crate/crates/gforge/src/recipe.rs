//! Recipe files: infinitary derivations written as compositions of the
//! named constructors.
//!
//! ```text
//! # comment
//! a = em "all x. X(x)"
//! b = weaken a 5 1 "X(0)"
//! c = elimfull b
//! ```
//!
//! Each line binds a name to a constructor applied to arguments. Arguments
//! are bare words or double-quoted strings. The recipe denotes the last
//! binding. Constructors:
//!
//! | form | result |
//! |------|--------|
//! | `truth F` | `⊢^{rk F}_0 F` for a true arithmetic sentence |
//! | `em F` | `⊢^{2 rk F}_0 F, ¬F` |
//! | `eqax` | the equality axiom for `X` |
//! | `induction F x` | the induction axiom for `F` in `x` |
//! | `prog B` | `Prog` for the coded order with bound `B` |
//! | `ti B` | the cut free `TI` derivation for the same order |
//! | `assemble T P B n` | `⊢ X n̄` by a cut on `TI` |
//! | `embed FILE SUBST` | embedding of a finitary derivation file (`SUBST` is `x=t,...` or `-`) |
//! | `weaken D BOUND CUT F...` | weakening to a larger bound, cut rank and end sequent |
//! | `cut D0 D1 F` | a cut on `F`: `D0` derives `Γ, F`, `D1` derives `Δ, ¬F` |
//! | `invert D F I` | inversion of the conjunctive `F` at index `I` |
//! | `reduce N P F` | reduction with `N ⊢ Γ, ¬F` and `P ⊢ Δ, F` |
//! | `replace D F G` | replaces `F` by the value-equal `G` |
//! | `elim D` | one cut elimination step |
//! | `elimfull D` | cut elimination down to rank 0 |
//!
//! Ordinals are written as for `ord`, indices as `b0`, `b1`, a numeral or
//! a closed term.

use std::collections::BTreeMap;
use std::path::Path;

use gforge_finitary::FinDerivation;
use gforge_infinitary::*;
use gforge_ordinals::{max, parse_ordinal, succ, CodedOrder, ParseMode};
use gforge_syntax::{parse_formula, parse_term, Formula, Index, Sequent, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeError {
    /// The recipe text is malformed.
    Syntax { line: usize, msg: String },
    /// A constructor refused its arguments.
    Build { line: usize, msg: String },
}

impl std::fmt::Display for RecipeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RecipeError::Syntax { line, msg } => write!(f, "recipe line {line}: {msg}"),
            RecipeError::Build { line, msg } => write!(f, "recipe line {line}: {msg}"),
        }
    }
}

fn tokens(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(ch) => s.push(ch),
                    None => return Err("unterminated string".into()),
                }
            }
            out.push(s);
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// `b0`, `b1`, a decimal numeral, or a closed term.
pub fn parse_index(s: &str) -> Result<Index, String> {
    match s {
        "b0" => Ok(Index::Bit(0)),
        "b1" => Ok(Index::Bit(1)),
        _ => match s.parse::<u64>() {
            Ok(n) => Ok(Index::Term(Term::numeral(n))),
            Err(_) => parse_term(s).map(Index::Term).map_err(|e| format!("bad index {s}: {e}")),
        },
    }
}

/// Paths separated by `;`, indices within a path by `/`.
pub fn parse_paths(s: &str) -> Result<Vec<Vec<Index>>, String> {
    s.split(';')
        .map(|p| {
            let p = p.trim();
            if p.is_empty() {
                Ok(Vec::new())
            } else {
                p.split('/').map(|i| parse_index(i.trim())).collect()
            }
        })
        .collect()
}

/// `x=t,y=u` or `-` for the empty substitution.
pub fn parse_subst(s: &str) -> Result<BTreeMap<String, Term>, String> {
    let mut out = BTreeMap::new();
    if s.trim().is_empty() || s.trim() == "-" {
        return Ok(out);
    }
    for part in s.split(',') {
        let (x, t) = part.split_once('=').ok_or_else(|| format!("expected x=term, got {part}"))?;
        let t = parse_term(t.trim()).map_err(|e| format!("bad term in {part}: {e}"))?;
        out.insert(x.trim().to_string(), t);
    }
    Ok(out)
}

struct Ctx<'a> {
    names: BTreeMap<String, InfDerivation>,
    dir: &'a Path,
    line: usize,
}

impl Ctx<'_> {
    fn syntax(&self, msg: impl Into<String>) -> RecipeError {
        RecipeError::Syntax { line: self.line, msg: msg.into() }
    }

    fn build(&self, msg: impl ToString) -> RecipeError {
        RecipeError::Build { line: self.line, msg: msg.to_string() }
    }

    fn get(&self, name: &str) -> Result<InfDerivation, RecipeError> {
        self.names.get(name).cloned().ok_or_else(|| self.syntax(format!("unknown name {name}")))
    }

    fn formula(&self, s: &str) -> Result<Formula, RecipeError> {
        parse_formula(s).map_err(|e| self.syntax(format!("{s}: {e}")))
    }

    fn nat(&self, s: &str) -> Result<u64, RecipeError> {
        s.parse().map_err(|_| self.syntax(format!("expected a number, got {s}")))
    }

    fn order(&self, s: &str) -> Result<LhdOrder, RecipeError> {
        Ok(LhdOrder::new(CodedOrder::build(self.nat(s)?)))
    }

    fn apply(&self, op: &str, args: &[String]) -> Result<InfDerivation, RecipeError> {
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(self.syntax(format!("{op} takes {n} arguments, got {}", args.len())))
            }
        };
        match op {
            "truth" => {
                arity(1)?;
                derive_truth(&self.formula(&args[0])?).map_err(|e| self.build(e))
            }
            "em" => {
                arity(1)?;
                derive_excluded_middle(&self.formula(&args[0])?).map_err(|e| self.build(e))
            }
            "eqax" => {
                arity(0)?;
                Ok(derive_equality_axiom_x())
            }
            "induction" => {
                arity(2)?;
                derive_induction(&self.formula(&args[0])?, &args[1]).map_err(|e| self.build(e))
            }
            "prog" => {
                arity(1)?;
                Ok(derive_prog(&self.order(&args[0])?))
            }
            "ti" => {
                arity(1)?;
                Ok(derive_ti_finite(&self.order(&args[0])?))
            }
            "assemble" => {
                arity(4)?;
                let (t, p) = (self.get(&args[0])?, self.get(&args[1])?);
                assemble_ti(&t, &p, &self.order(&args[2])?, self.nat(&args[3])?).map_err(|e| self.build(e))
            }
            "embed" => {
                arity(2)?;
                let path = self.dir.join(&args[0]);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| self.build(format!("cannot read {}: {e}", path.display())))?;
                let fin = FinDerivation::from_json(&text).map_err(|e| self.syntax(e.to_string()))?;
                let subst = parse_subst(&args[1]).map_err(|e| self.syntax(e))?;
                embed_fin(&fin, &subst).map_err(|e| self.build(e))
            }
            "weaken" => {
                if args.len() < 3 {
                    return Err(self.syntax("weaken takes a derivation, a bound, a cut rank and formulas"));
                }
                let d = self.get(&args[0])?;
                let bound = parse_ordinal(&args[1], ParseMode::Strict).map_err(|e| self.syntax(e.to_string()))?;
                let cut = self.nat(&args[2])? as usize;
                let extra = args[3..].iter().map(|f| self.formula(f)).collect::<Result<Sequent, _>>()?;
                weaken(&d, bound, cut, &extra).map_err(|e| self.build(e))
            }
            "cut" => {
                arity(3)?;
                let (p0, p1) = (self.get(&args[0])?, self.get(&args[1])?);
                let f = self.formula(&args[2])?;
                let neg = f.negate();
                let mut end: Sequent = p0.end().iter().filter(|g| **g != f).cloned().collect();
                end.extend(p1.end().iter().filter(|g| **g != neg).cloned());
                let bound = succ(&max(p0.bound(), p1.bound()));
                let d = p0.cut_rank().max(p1.cut_rank()).max(f.rank() + 1);
                mk_cut(end, f, bound, d, move |i| if *i == Index::Bit(0) { p0.clone() } else { p1.clone() })
                    .map_err(|e| self.build(e))
            }
            "invert" => {
                arity(3)?;
                let i = parse_index(&args[2]).map_err(|e| self.syntax(e))?;
                invert(&self.get(&args[0])?, &self.formula(&args[1])?, &i).map_err(|e| self.build(e))
            }
            "reduce" => {
                arity(3)?;
                reduce(&self.get(&args[0])?, &self.get(&args[1])?, &self.formula(&args[2])?).map_err(|e| self.build(e))
            }
            "replace" => {
                arity(3)?;
                same_value_replace(&self.get(&args[0])?, &self.formula(&args[1])?, &self.formula(&args[2])?)
                    .map_err(|e| self.build(e))
            }
            "elim" => {
                arity(1)?;
                cut_elim_step(&self.get(&args[0])?).map_err(|e| self.build(e))
            }
            "elimfull" => {
                arity(1)?;
                Ok(cut_elim_full(&self.get(&args[0])?))
            }
            _ => Err(self.syntax(format!("unknown constructor {op}"))),
        }
    }
}

/// Evaluates a recipe. Files named by `embed` are resolved against `dir`.
pub fn run_recipe(text: &str, dir: &Path) -> Result<InfDerivation, RecipeError> {
    let mut ctx = Ctx { names: BTreeMap::new(), dir, line: 0 };
    let mut last = None;
    for (k, raw) in text.lines().enumerate() {
        ctx.line = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks = tokens(line).map_err(|e| ctx.syntax(e))?;
        if toks.len() < 3 || toks[1] != "=" {
            return Err(ctx.syntax("expected `name = constructor args...`"));
        }
        let d = ctx.apply(&toks[2], &toks[3..])?;
        ctx.names.insert(toks[0].clone(), d);
        last = Some(toks[0].clone());
    }
    match last {
        Some(name) => Ok(ctx.names[&name].clone()),
        None => Err(RecipeError::Syntax { line: 0, msg: "empty recipe".into() }),
    }
}
