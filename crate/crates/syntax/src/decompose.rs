use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{Formula, Rel};
use crate::term::{EvalError, Term};

/// A finite set of formulas.
pub type Sequent = BTreeSet<Formula>;

/// Index of a component `φ_t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Index {
    Bit(u8),
    Term(Term),
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Bit(b) => write!(f, "{b}"),
            Index::Term(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Conjunctive,
    Disjunctive,
    AtomicX,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexSet {
    Empty,
    Bits,
    ClosedTerms,
}

impl IndexSet {
    pub fn contains(&self, i: &Index) -> bool {
        match (self, i) {
            (IndexSet::Bits, Index::Bit(b)) => *b < 2,
            (IndexSet::ClosedTerms, Index::Term(t)) => t.is_closed(),
            _ => false,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Decomposition {
    pub kind: Kind,
    pub index: IndexSet,
}

/// Classifies a closed formula as a (possibly infinite) conjunction or
/// disjunction of its components, or as an `X`-literal.
pub fn decompose(f: &Formula) -> Result<Decomposition, EvalError> {
    let d = |kind, index| Ok(Decomposition { kind, index });
    match f {
        Formula::Prime(Rel::X, _) | Formula::NegPrime(Rel::X, _) => d(Kind::AtomicX, IndexSet::Empty),
        Formula::Prime(..) | Formula::NegPrime(..) => {
            if f.eval_literal()? {
                d(Kind::Conjunctive, IndexSet::Empty)
            } else {
                d(Kind::Disjunctive, IndexSet::Empty)
            }
        }
        Formula::And(..) => d(Kind::Conjunctive, IndexSet::Bits),
        Formula::Or(..) => d(Kind::Disjunctive, IndexSet::Bits),
        Formula::All(..) => d(Kind::Conjunctive, IndexSet::ClosedTerms),
        Formula::Ex(..) => d(Kind::Disjunctive, IndexSet::ClosedTerms),
    }
}

/// The component `φ_i`, when `i` is a valid index of `φ`.
pub fn component(f: &Formula, i: &Index) -> Option<Formula> {
    match (f, i) {
        (Formula::And(a, b) | Formula::Or(a, b), Index::Bit(k)) => match k {
            0 => Some((**a).clone()),
            1 => Some((**b).clone()),
            _ => None,
        },
        (Formula::All(..) | Formula::Ex(..), Index::Term(t)) if t.is_closed() => f.instantiate(t),
        _ => None,
    }
}

pub fn is_conjunctive(f: &Formula) -> bool {
    matches!(decompose(f), Ok(Decomposition { kind: Kind::Conjunctive, .. }))
}

pub fn is_disjunctive(f: &Formula) -> bool {
    matches!(decompose(f), Ok(Decomposition { kind: Kind::Disjunctive, .. }))
}

/// `Γ ∪ {φ}` as a new set.
pub fn with(gamma: &Sequent, f: Formula) -> Sequent {
    let mut s = gamma.clone();
    s.insert(f);
    s
}

/// `Γ \ {φ}` as a new set.
pub fn without(gamma: &Sequent, f: &Formula) -> Sequent {
    let mut s = gamma.clone();
    s.remove(f);
    s
}

pub fn print_sequent(s: &Sequent) -> String {
    s.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = Formula::eq(Term::Zero, Term::Zero);
        assert_eq!(
            decompose(&t).unwrap(),
            Decomposition { kind: Kind::Conjunctive, index: IndexSet::Empty }
        );
        assert_eq!(decompose(&t.negate()).unwrap().kind, Kind::Disjunctive);
        let phi = Formula::le(Term::var("x"), Term::succ(Term::var("x")));
        let all = Formula::all("x", phi.clone());
        let two = Term::numeral(2);
        assert_eq!(component(&all, &Index::Term(two.clone())), Some(phi.substitute("x", &two)));
        assert_eq!(decompose(&Formula::x(Term::Zero)).unwrap().kind, Kind::AtomicX);
        assert_eq!(component(&all, &Index::Term(Term::var("y"))), None);
    }
}
