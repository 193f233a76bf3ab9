use std::fmt;
use std::sync::Arc;

use gforge_ordinals::CodedOrder;
use gforge_syntax::{Formula, Term};

/// The relation `⊲` of the progression rule: a [`CodedOrder`] together with
/// the quantifier free formula defining it.
///
/// `a ⊲ b` is the balanced disjunction of `a = m̄ ∧ b = n̄` over the pairs
/// with `m ⊲ n`, or the false literal `S(0) = 0` when there are none.
#[derive(Clone)]
pub struct LhdOrder {
    coded: Arc<CodedOrder>,
    pairs: Arc<Vec<(u64, u64)>>,
}

impl fmt::Debug for LhdOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LhdOrder(bound {}, {} elements)", self.coded.bound(), self.coded.len())
    }
}

impl PartialEq for LhdOrder {
    fn eq(&self, other: &LhdOrder) -> bool {
        Arc::ptr_eq(&self.coded, &other.coded) || self.coded.bound() == other.coded.bound()
    }
}

impl LhdOrder {
    pub fn new(coded: CodedOrder) -> LhdOrder {
        let pairs = coded.pairs();
        LhdOrder { coded: Arc::new(coded), pairs: Arc::new(pairs) }
    }

    pub fn coded(&self) -> &CodedOrder {
        &self.coded
    }

    /// Size of the domain `{0, .., len-1}`.
    pub fn len(&self) -> u64 {
        self.coded.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.coded.is_empty()
    }

    pub fn lhd(&self, m: u64, n: u64) -> bool {
        self.coded.lhd(m, n)
    }

    /// `s ⊲ t` for closed terms, by their values.
    pub fn lhd_terms(&self, s: &Term, t: &Term) -> bool {
        match (s.eval(), t.eval()) {
            (Ok(m), Ok(n)) => self.lhd(m, n),
            _ => false,
        }
    }

    /// The values below `n`, in increasing numeric order.
    pub fn predecessors(&self, n: u64) -> Vec<u64> {
        self.pairs.iter().filter(|p| p.1 == n).map(|p| p.0).collect()
    }

    /// The defining formula instantiated at `a`, `b`.
    pub fn formula(&self, a: &Term, b: &Term) -> Formula {
        if self.pairs.is_empty() {
            return Formula::eq(Term::succ(Term::Zero), Term::Zero);
        }
        balanced(&self.pairs, a, b)
    }

    /// `rk(x ⊲ y)`.
    pub fn rank(&self) -> usize {
        self.formula(&Term::var("x"), &Term::var("y")).rank()
    }

    /// `Prog = ∀x(∃y(y ⊲ x ∧ ¬Xy) ∨ Xx)`, i.e. `∀x(∀y ⊲ x. Xy → Xx)`.
    pub fn prog(&self) -> Formula {
        let (x, y) = (Term::var("x"), Term::var("y"));
        let below = Formula::ex("y", Formula::and(self.formula(&y, &x), Formula::x(y.clone()).negate()));
        Formula::all("x", Formula::or(below, Formula::x(x)))
    }

    /// `TI = Prog → ∀x.Xx`.
    pub fn ti(&self) -> Formula {
        Formula::or(self.prog().negate(), Formula::all("x", Formula::x(Term::var("x"))))
    }
}

fn balanced(pairs: &[(u64, u64)], a: &Term, b: &Term) -> Formula {
    if let [(m, n)] = pairs {
        return Formula::and(
            Formula::eq(a.clone(), Term::numeral(*m)),
            Formula::eq(b.clone(), Term::numeral(*n)),
        );
    }
    let mid = pairs.len() / 2;
    Formula::or(balanced(&pairs[..mid], a, b), balanced(&pairs[mid..], a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_elements() {
        let o = LhdOrder::new(CodedOrder::build(53));
        assert_eq!(o.len(), 3);
        assert_eq!(o.rank(), 3);
        let f = o.formula(&Term::numeral(0), &Term::numeral(2));
        assert!(f.is_closed());
        assert!(o.lhd_terms(&Term::numeral(1), &Term::plus(Term::numeral(1), Term::numeral(1))));
        assert_eq!(o.predecessors(2), vec![0, 1]);
        assert!(o.ti().is_closed());
    }

    #[test]
    fn empty_relation_is_false() {
        let o = LhdOrder::new(CodedOrder::build(3));
        assert_eq!(o.len(), 1);
        assert_eq!(o.formula(&Term::var("x"), &Term::var("y")).eval_literal(), Ok(false));
        assert_eq!(o.rank(), 0);
    }
}
