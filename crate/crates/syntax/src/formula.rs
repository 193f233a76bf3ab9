use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::term::{fresh_name, EvalError, FnSym, Term};

/// Relation symbols. `X` is the distinguished unary set variable; `Pred`
/// covers any other symbol of pure predicate logic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Rel {
    Eq,
    Le,
    X,
    Pred(Arc<str>),
}

/// Formulas in negation normal form. Bound variables are de Bruijn indices;
/// the name stored at a quantifier is only a printing hint and is ignored by
/// equality, ordering and hashing.
#[derive(Clone, Debug)]
pub enum Formula {
    Prime(Rel, Vec<Term>),
    NegPrime(Rel, Vec<Term>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    All(Arc<str>, Arc<Formula>),
    Ex(Arc<str>, Arc<Formula>),
}

use Formula::*;

impl Formula {
    fn tag(&self) -> u8 {
        match self {
            Prime(..) => 0,
            NegPrime(..) => 1,
            And(..) => 2,
            Or(..) => 3,
            All(..) => 4,
            Ex(..) => 5,
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Formula {}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Prime(r, a), Prime(s, b)) | (NegPrime(r, a), NegPrime(s, b)) => {
                r.cmp(s).then_with(|| a.cmp(b))
            }
            (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) => {
                if Arc::ptr_eq(a, c) && Arc::ptr_eq(b, d) {
                    return Ordering::Equal;
                }
                a.cmp(c).then_with(|| b.cmp(d))
            }
            (All(_, a), All(_, b)) | (Ex(_, a), Ex(_, b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                a.cmp(b)
            }
            _ => self.tag().cmp(&other.tag()),
        }
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag().hash(state);
        match self {
            Prime(r, a) | NegPrime(r, a) => {
                r.hash(state);
                a.hash(state);
            }
            And(a, b) | Or(a, b) => {
                a.hash(state);
                b.hash(state);
            }
            All(_, a) | Ex(_, a) => a.hash(state),
        }
    }
}

/// Replaces the leaves of every term of `f`; `depth` counts the binders
/// passed on the way down.
fn map_terms(f: &Formula, depth: usize, g: &impl Fn(&Term, usize) -> Term) -> Formula {
    match f {
        Prime(r, args) => Prime(r.clone(), args.iter().map(|t| g(t, depth)).collect()),
        NegPrime(r, args) => NegPrime(r.clone(), args.iter().map(|t| g(t, depth)).collect()),
        And(a, b) => And(Arc::new(map_terms(a, depth, g)), Arc::new(map_terms(b, depth, g))),
        Or(a, b) => Or(Arc::new(map_terms(a, depth, g)), Arc::new(map_terms(b, depth, g))),
        All(x, a) => All(x.clone(), Arc::new(map_terms(a, depth + 1, g))),
        Ex(x, a) => Ex(x.clone(), Arc::new(map_terms(a, depth + 1, g))),
    }
}

impl Formula {
    pub fn prime(rel: Rel, args: Vec<Term>) -> Formula {
        Prime(rel, args)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Prime(Rel::Eq, vec![a, b])
    }

    pub fn le(a: Term, b: Term) -> Formula {
        Prime(Rel::Le, vec![a, b])
    }

    pub fn x(t: Term) -> Formula {
        Prime(Rel::X, vec![t])
    }

    pub fn pred(name: &str, args: Vec<Term>) -> Formula {
        Prime(Rel::Pred(name.into()), args)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Or(Arc::new(a), Arc::new(b))
    }

    /// `∀x.body`, binding the free occurrences of `x` in `body`.
    pub fn all(x: &str, body: Formula) -> Formula {
        All(x.into(), Arc::new(abstract_var(&body, x, 0)))
    }

    pub fn ex(x: &str, body: Formula) -> Formula {
        Ex(x.into(), Arc::new(abstract_var(&body, x, 0)))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Prime(..) | NegPrime(..))
    }

    /// Whether the formula mentions the set variable `X`.
    pub fn mentions_x(&self) -> bool {
        match self {
            Prime(r, _) | NegPrime(r, _) => *r == Rel::X,
            And(a, b) | Or(a, b) => a.mentions_x() || b.mentions_x(),
            All(_, a) | Ex(_, a) => a.mentions_x(),
        }
    }

    pub fn negate(&self) -> Formula {
        match self {
            Prime(r, a) => NegPrime(r.clone(), a.clone()),
            NegPrime(r, a) => Prime(r.clone(), a.clone()),
            And(a, b) => Formula::or(a.negate(), b.negate()),
            Or(a, b) => Formula::and(a.negate(), b.negate()),
            All(x, a) => Ex(x.clone(), Arc::new(a.negate())),
            Ex(x, a) => All(x.clone(), Arc::new(a.negate())),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Prime(..) | NegPrime(..) => 0,
            And(a, b) | Or(a, b) => a.rank().max(b.rank()) + 1,
            All(_, a) | Ex(_, a) => a.rank() + 1,
        }
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Prime(_, args) | NegPrime(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            And(a, b) | Or(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            All(_, a) | Ex(_, a) => a.free_vars_into(out),
        }
    }

    pub fn symbols_into(&self, out: &mut BTreeSet<FnSym>) {
        match self {
            Prime(_, args) | NegPrime(_, args) => args.iter().for_each(|t| t.symbols_into(out)),
            And(a, b) | Or(a, b) => {
                a.symbols_into(out);
                b.symbols_into(out);
            }
            All(_, a) | Ex(_, a) => a.symbols_into(out),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut s = BTreeSet::new();
        self.free_vars_into(&mut s);
        s
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// `self[x/t]`. Bound variables are indices, so nothing can be captured.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        map_terms(self, 0, &|term, _| term.substitute(x, t))
    }

    /// Simultaneous substitution for several variables.
    pub fn substitute_all(&self, subst: &[(String, Term)]) -> Formula {
        map_terms(self, 0, &|term, _| {
            term.map_leaves(&|leaf| match leaf {
                Term::Var(v) => subst.iter().find(|(x, _)| **x == **v).map(|(_, t)| t.clone()),
                _ => None,
            })
        })
    }

    /// For `∀x.φ` or `∃x.φ`, the instance `φ[x/t]`.
    pub fn instantiate(&self, t: &Term) -> Option<Formula> {
        match self {
            All(_, body) | Ex(_, body) => Some(open(body, t)),
            _ => None,
        }
    }

    /// Name hint of a quantifier.
    pub fn binder_name(&self) -> Option<&str> {
        match self {
            All(x, _) | Ex(x, _) => Some(x),
            _ => None,
        }
    }

    /// The body of a quantifier opened with a variable that does not occur
    /// free in it; the name is the hint when possible.
    pub fn open_fresh(&self) -> Option<(String, Formula)> {
        match self {
            All(x, body) | Ex(x, body) => {
                let name = fresh_name(x, &body.free_vars());
                let opened = open(body, &Term::var(&name));
                Some((name, opened))
            }
            _ => None,
        }
    }

    /// Truth of a closed formula without quantifiers and without `X`.
    pub fn eval_literal(&self) -> Result<bool, EvalError> {
        match self {
            Prime(r, args) => eval_prime(r, args),
            NegPrime(r, args) => eval_prime(r, args).map(|b| !b),
            _ => Err(EvalError::NotEvaluable(crate::print::print_formula(self))),
        }
    }

    /// Equal up to exchanging closed subterms of equal value.
    pub fn value_equivalent(&self, other: &Formula) -> bool {
        match (self, other) {
            (Prime(r, a), Prime(s, b)) | (NegPrime(r, a), NegPrime(s, b)) => {
                r == s && a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.value_equivalent(y))
            }
            (And(a, b), And(c, d)) | (Or(a, b), Or(c, d)) => a.value_equivalent(c) && b.value_equivalent(d),
            (All(_, a), All(_, b)) | (Ex(_, a), Ex(_, b)) => a.value_equivalent(b),
            _ => false,
        }
    }
}

fn eval_prime(r: &Rel, args: &[Term]) -> Result<bool, EvalError> {
    match (r, args) {
        (Rel::Eq, [a, b]) => Ok(a.eval()? == b.eval()?),
        (Rel::Le, [a, b]) => Ok(a.eval()? <= b.eval()?),
        _ => {
            let shown = crate::print::print_formula(&Prime(r.clone(), args.to_vec()));
            Err(EvalError::NotEvaluable(shown))
        }
    }
}

/// Replaces the free variable `x` by the bound index matching `depth`.
fn abstract_var(f: &Formula, x: &str, depth: usize) -> Formula {
    map_terms(f, depth, &|term, d| {
        term.map_leaves(&|leaf| match leaf {
            Term::Var(v) if &**v == x => Some(Term::Bound(d)),
            _ => None,
        })
    })
}

/// Replaces the outermost bound index of a quantifier body by `t`.
fn open(body: &Formula, t: &Term) -> Formula {
    map_terms(body, 0, &|term, d| {
        term.map_leaves(&|leaf| match leaf {
            Term::Bound(i) if *i == d => Some(t.clone()),
            _ => None,
        })
    })
}

/// `a → b`, i.e. `¬a ∨ b`.
pub fn implies(a: &Formula, b: &Formula) -> Formula {
    Formula::or(a.negate(), b.clone())
}

/// Gentzen's jump of `f` with respect to its distinguished variable `alpha`:
/// `∀β(β∈ε₀ → (∀γ(γ≺β → f(γ)) → ∀δ(δ = β+ω(α) → ∀γ(γ≺δ → f(γ)))))`.
///
/// The guards are the fixed symbols `E0(b)` for `b∈ε₀`, `Prec(g,b)` for
/// `g≺b` and `Jadd(b,a,d)` for `d = b+ω(a)`.
pub fn jump(f: &Formula, alpha: &str) -> Formula {
    let mut avoid = f.free_vars();
    avoid.insert(alpha.to_string());
    let b = fresh_name("b", &avoid);
    avoid.insert(b.clone());
    let g = fresh_name("g", &avoid);
    avoid.insert(g.clone());
    let d = fresh_name("d", &avoid);
    let (tb, tg, td, ta) = (Term::var(&b), Term::var(&g), Term::var(&d), Term::var(alpha));
    let f_at = |v: &Term| f.substitute(alpha, v);
    let below = |x: &Term, y: &Term| Formula::pred("Prec", vec![x.clone(), y.clone()]);
    let hyp = Formula::all(&g, implies(&below(&tg, &tb), &f_at(&tg)));
    let concl = Formula::all(
        &d,
        implies(
            &Formula::pred("Jadd", vec![tb.clone(), ta, td.clone()]),
            &Formula::all(&g, implies(&below(&tg, &td), &f_at(&tg))),
        ),
    );
    Formula::all(
        &b,
        implies(&Formula::pred("E0", vec![tb.clone()]), &implies(&hyp, &concl)),
    )
}
