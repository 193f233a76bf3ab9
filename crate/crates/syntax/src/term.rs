use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// First order terms. `Bound` is a de Bruijn index and only occurs below a
/// quantifier; terms handed to the public API never contain one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Zero,
    Var(Arc<str>),
    Bound(usize),
    Succ(Arc<Term>),
    Plus(Arc<Term>, Arc<Term>),
    Times(Arc<Term>, Arc<Term>),
    /// Function symbol outside arithmetic; a constant when `args` is empty.
    App(Arc<str>, Vec<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("not evaluable: {0}")]
    NotEvaluable(String),
    #[error("arithmetic overflow while evaluating {0}")]
    Overflow(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    pub fn plus(a: Term, b: Term) -> Term {
        Term::Plus(Arc::new(a), Arc::new(b))
    }

    pub fn times(a: Term, b: Term) -> Term {
        Term::Times(Arc::new(a), Arc::new(b))
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    /// The numeral `S(...S(0))`.
    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::succ(t))
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Var(_) | Term::Bound(_) => false,
            Term::Succ(a) => a.is_closed(),
            Term::Plus(a, b) | Term::Times(a, b) => a.is_closed() && b.is_closed(),
            Term::App(_, args) => args.iter().all(Term::is_closed),
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Var(_) | Term::Bound(_) => 1,
            Term::Succ(a) => 1 + a.size(),
            Term::Plus(a, b) | Term::Times(a, b) => 1 + a.size() + b.size(),
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.to_string());
            }
            Term::Zero | Term::Bound(_) => {}
            Term::Succ(a) => a.free_vars_into(out),
            Term::Plus(a, b) | Term::Times(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.free_vars_into(&mut s);
        s
    }

    /// Function symbols occurring in the term.
    pub fn symbols_into(&self, out: &mut BTreeSet<FnSym>) {
        match self {
            Term::Zero => {
                out.insert(FnSym::Zero);
            }
            Term::Var(_) | Term::Bound(_) => {}
            Term::Succ(a) => {
                out.insert(FnSym::Succ);
                a.symbols_into(out);
            }
            Term::Plus(a, b) | Term::Times(a, b) => {
                out.insert(if matches!(self, Term::Plus(..)) { FnSym::Plus } else { FnSym::Times });
                a.symbols_into(out);
                b.symbols_into(out);
            }
            Term::App(f, args) => {
                out.insert(FnSym::Named(f.to_string(), args.len()));
                args.iter().for_each(|a| a.symbols_into(out));
            }
        }
    }

    /// Applies `f` to every leaf (`Var` or `Bound`), rebuilding the term.
    pub(crate) fn map_leaves(&self, f: &impl Fn(&Term) -> Option<Term>) -> Term {
        match self {
            Term::Var(_) | Term::Bound(_) => f(self).unwrap_or_else(|| self.clone()),
            Term::Zero => Term::Zero,
            Term::Succ(a) => Term::succ(a.map_leaves(f)),
            Term::Plus(a, b) => Term::plus(a.map_leaves(f), b.map_leaves(f)),
            Term::Times(a, b) => Term::times(a.map_leaves(f), b.map_leaves(f)),
            Term::App(n, args) => Term::App(n.clone(), args.iter().map(|a| a.map_leaves(f)).collect()),
        }
    }

    pub fn substitute(&self, x: &str, t: &Term) -> Term {
        self.map_leaves(&|leaf| match leaf {
            Term::Var(v) if &**v == x => Some(t.clone()),
            _ => None,
        })
    }

    /// Value in the standard model; only closed arithmetic terms have one.
    pub fn eval(&self) -> Result<u64, EvalError> {
        let over = || EvalError::Overflow(self.to_string());
        match self {
            Term::Zero => Ok(0),
            Term::Succ(a) => a.eval()?.checked_add(1).ok_or_else(over),
            Term::Plus(a, b) => a.eval()?.checked_add(b.eval()?).ok_or_else(over),
            Term::Times(a, b) => a.eval()?.checked_mul(b.eval()?).ok_or_else(over),
            _ => Err(EvalError::NotEvaluable(self.to_string())),
        }
    }

    /// Equal up to replacing closed subterms by closed subterms of the same
    /// value.
    pub fn value_equivalent(&self, other: &Term) -> bool {
        if self == other {
            return true;
        }
        if self.is_closed() && other.is_closed() {
            if let (Ok(a), Ok(b)) = (self.eval(), other.eval()) {
                return a == b;
            }
        }
        match (self, other) {
            (Term::Succ(a), Term::Succ(b)) => a.value_equivalent(b),
            (Term::Plus(a, b), Term::Plus(c, d)) | (Term::Times(a, b), Term::Times(c, d)) => {
                a.value_equivalent(c) && b.value_equivalent(d)
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.value_equivalent(y))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "0"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Bound(i) => write!(f, "#{i}"),
            Term::Succ(a) => write!(f, "S({a})"),
            Term::Plus(a, b) => write!(f, "({a}+{b})"),
            Term::Times(a, b) => write!(f, "({a}*{b})"),
            Term::App(n, args) => {
                write!(f, "{n}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Function symbols available to a term enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum FnSym {
    Zero,
    Succ,
    Plus,
    Times,
    Named(String, usize),
}

impl FnSym {
    pub fn arity(&self) -> usize {
        match self {
            FnSym::Zero => 0,
            FnSym::Succ => 1,
            FnSym::Plus | FnSym::Times => 2,
            FnSym::Named(_, n) => *n,
        }
    }

    fn build(&self, mut args: Vec<Term>) -> Term {
        match self {
            FnSym::Zero => Term::Zero,
            FnSym::Succ => Term::succ(args.pop().unwrap()),
            FnSym::Plus => {
                let b = args.pop().unwrap();
                Term::plus(args.pop().unwrap(), b)
            }
            FnSym::Times => {
                let b = args.pop().unwrap();
                Term::times(args.pop().unwrap(), b)
            }
            FnSym::Named(n, _) => Term::App(n.as_str().into(), args),
        }
    }
}

/// The `i`-th variable of the fixed enumeration `x, y, z, x1, y1, z1, x2, ...`.
pub fn variable(i: usize) -> String {
    let base = ["x", "y", "z"][i % 3];
    match i / 3 {
        0 => base.to_string(),
        k => format!("{base}{k}"),
    }
}

/// First variable of the fixed enumeration outside `avoid`.
pub fn first_var_not_in(avoid: &BTreeSet<String>) -> String {
    (0..).map(variable).find(|v| !avoid.contains(v)).unwrap()
}

/// Fresh name derived from `base`: `base` itself, else `base1`, `base2`, ...
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|v| !avoid.contains(v))
        .unwrap()
}

/// Enumerates terms by weight. Symbols weigh one plus their arguments, the
/// `i`-th variable weighs `i + 1`. Within a weight: constants, then the
/// variable, then applications in signature order with argument weights and
/// arguments in lexicographic order.
#[derive(Debug, Clone)]
pub struct TermEnumerator {
    symbols: Vec<FnSym>,
    with_vars: bool,
    by_weight: Vec<Vec<Term>>,
    flat: Vec<Term>,
}

impl TermEnumerator {
    pub fn new(symbols: Vec<FnSym>, with_vars: bool) -> TermEnumerator {
        TermEnumerator {
            symbols,
            with_vars,
            by_weight: vec![Vec::new()],
            flat: Vec::new(),
        }
    }

    /// Closed terms of arithmetic: `0`, `S`, `+`, `*`.
    pub fn arithmetic() -> TermEnumerator {
        TermEnumerator::new(vec![FnSym::Zero, FnSym::Succ, FnSym::Plus, FnSym::Times], false)
    }

    fn is_finite(&self) -> bool {
        !self.with_vars && self.symbols.iter().all(|s| s.arity() == 0)
    }

    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 0 {
            return if total == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in 1..=total.saturating_sub(parts - 1) {
            for mut rest in Self::compositions(total - first, parts - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    fn grow(&mut self) {
        let w = self.by_weight.len();
        let mut level = Vec::new();
        if w == 1 {
            for s in &self.symbols {
                if s.arity() == 0 {
                    level.push(s.build(Vec::new()));
                }
            }
        }
        if self.with_vars {
            level.push(Term::var(&variable(w - 1)));
        }
        for s in &self.symbols {
            let n = s.arity();
            if n == 0 || w < n + 1 {
                continue;
            }
            for comp in Self::compositions(w - 1, n) {
                let mut tuples: Vec<Vec<Term>> = vec![Vec::new()];
                for &k in &comp {
                    let mut next = Vec::new();
                    for t in &tuples {
                        for a in &self.by_weight[k] {
                            let mut t2 = t.clone();
                            t2.push(a.clone());
                            next.push(t2);
                        }
                    }
                    tuples = next;
                }
                level.extend(tuples.into_iter().map(|args| s.build(args)));
            }
        }
        self.flat.extend(level.iter().cloned());
        self.by_weight.push(level);
    }

    /// The `i`-th term, or `None` when the universe has fewer terms.
    pub fn get(&mut self, i: usize) -> Option<Term> {
        while self.flat.len() <= i {
            if self.is_finite() && self.by_weight.len() > 1 {
                return None;
            }
            self.grow();
        }
        Some(self.flat[i].clone())
    }

    pub fn take(&mut self, n: usize) -> Vec<Term> {
        (0..n).map_while(|i| self.get(i)).collect()
    }

    /// Position of `t` in the enumeration, searching at most `limit` terms.
    pub fn position(&mut self, t: &Term, limit: usize) -> Option<usize> {
        (0..limit).find(|&i| self.get(i).as_ref() == Some(t))
    }
}
