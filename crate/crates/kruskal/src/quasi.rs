use gforge_ordinals::{Ordinal, RawTree};

use crate::tree::Tree;

/// `l(<a0,...,an-1>) = l(a0) + ... + l(an-1) + n`.
pub fn length_l(a: &Ordinal) -> usize {
    a.length()
}

/// `f(<>) = o`, `f(<a0,a1,...>) = (f(a0), f(<a1,...>))`.
pub fn quasi_embed(a: &Ordinal) -> Tree {
    raw(a.raw().exponents())
}

fn raw(exps: &[RawTree]) -> Tree {
    match exps.split_first() {
        None => Tree::Leaf,
        Some((head, rest)) => Tree::node(raw(head.exponents()), raw(rest)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gforge_ordinals::from_nat;

    #[test]
    fn small_values() {
        assert_eq!(length_l(&from_nat(0)), 0);
        assert_eq!(length_l(&from_nat(1)), 1);
        assert_eq!(length_l(&Ordinal::omega()), 2);
        assert_eq!(quasi_embed(&from_nat(0)).to_string(), "o");
        assert_eq!(quasi_embed(&from_nat(1)).to_string(), "(o,o)");
        assert_eq!(quasi_embed(&Ordinal::omega()).to_string(), "((o,o),o)");
        assert_eq!(quasi_embed(&from_nat(2)).to_string(), "(o,(o,o))");
    }
}
