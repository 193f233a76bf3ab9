//! Numeric codes for notations.
//!
//! A tree is written as a bit string: `1`, then the strings of its
//! exponents from left to right, then `0`. The code is that bit string read
//! as a binary numeral (it always starts with `1`). Hence `0 = <>` has code
//! `0b10 = 2`, `1 = <<>>` has code `0b1100 = 12` and `w = <<<>>>` has code
//! `0b111000 = 56`. The scheme is prefix free, so decoding is unambiguous.
//! This scheme is fixed; changing it would change every stored code.

use std::cmp::Ordering;

use crate::notation::{compare, is_notation, Ordinal, RawTree};

fn push_bits(t: &RawTree, bits: &mut Vec<bool>) {
    bits.push(true);
    for e in t.exponents() {
        push_bits(e, bits);
    }
    bits.push(false);
}

/// Code of a raw tree; `None` when it does not fit into 128 bits.
pub fn code_raw(t: &RawTree) -> Option<u128> {
    let mut bits = Vec::new();
    push_bits(t, &mut bits);
    if bits.len() > 128 {
        return None;
    }
    Some(bits.iter().fold(0u128, |acc, &b| (acc << 1) | b as u128))
}

pub fn code(a: &Ordinal) -> Option<u128> {
    code_raw(a.raw())
}

fn read_tree(bits: &[bool], pos: &mut usize) -> Option<RawTree> {
    if bits.get(*pos) != Some(&true) {
        return None;
    }
    *pos += 1;
    let mut exps = Vec::new();
    loop {
        match bits.get(*pos) {
            Some(true) => exps.push(read_tree(bits, pos)?),
            Some(false) => {
                *pos += 1;
                return Some(RawTree::new(exps));
            }
            None => return None,
        }
    }
}

/// Inverse of [`code_raw`] on its image.
pub fn decode_raw(n: u128) -> Option<RawTree> {
    if n == 0 {
        return None;
    }
    let width = 128 - n.leading_zeros() as usize;
    let bits: Vec<bool> = (0..width).rev().map(|i| (n >> i) & 1 == 1).collect();
    let mut pos = 0;
    let t = read_tree(&bits, &mut pos)?;
    (pos == bits.len()).then_some(t)
}

/// Decodes `n` when it is the code of a notation.
pub fn decode(n: u128) -> Option<Ordinal> {
    decode_raw(n)
        .filter(is_notation)
        .map(|t| Ordinal::from_raw(t).expect("checked"))
}

/// The codes of notations below a bound together with the increasing
/// enumeration `e` and the induced order `m ⊲ n :<=> e(m) ≺ e(n)`.
#[derive(Debug, Clone)]
pub struct CodedOrder {
    bound: u64,
    codes: Vec<u128>,
    notations: Vec<Ordinal>,
}

impl CodedOrder {
    /// Collects every code below `bound`.
    pub fn build(bound: u64) -> CodedOrder {
        let mut codes = Vec::new();
        let mut notations = Vec::new();
        for n in 0..bound as u128 {
            if let Some(a) = decode(n) {
                codes.push(n);
                notations.push(a);
            }
        }
        CodedOrder {
            bound,
            codes,
            notations,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// Size of the domain `{0, ..., len-1}` of `e`.
    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// `e(m)`.
    pub fn enumerate(&self, m: u64) -> Option<u128> {
        self.codes.get(m as usize).copied()
    }

    pub fn decode_at(&self, m: u64) -> Option<&Ordinal> {
        self.notations.get(m as usize)
    }

    /// Position of a notation in the enumeration.
    pub fn index_of(&self, a: &Ordinal) -> Option<u64> {
        let c = code(a)?;
        self.codes.binary_search(&c).ok().map(|i| i as u64)
    }

    /// `m ⊲ n`. False whenever either argument lies outside the domain.
    pub fn lhd(&self, m: u64, n: u64) -> bool {
        match (self.decode_at(m), self.decode_at(n)) {
            (Some(a), Some(b)) => compare(a, b) == Ordering::Less,
            _ => false,
        }
    }

    /// All pairs `(m, n)` with `m ⊲ n`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        let n = self.len() as u64;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lhd(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{enumerate_raw_up_to, from_nat};

    #[test]
    fn documented_codes() {
        assert_eq!(code(&Ordinal::zero()), Some(2));
        assert_eq!(code(&Ordinal::one()), Some(12));
        assert_eq!(code(&from_nat(2)), Some(52));
        assert_eq!(code(&Ordinal::omega()), Some(56));
    }

    #[test]
    fn decode_inverts_code() {
        for t in enumerate_raw_up_to(7) {
            assert_eq!(decode_raw(code_raw(&t).unwrap()), Some(t));
        }
        assert_eq!(decode_raw(0), None);
        assert_eq!(decode_raw(1), None);
        assert_eq!(decode_raw(3), None);
    }

    #[test]
    fn three_element_order() {
        let ord = CodedOrder::build(53);
        assert_eq!(ord.len(), 3);
        assert!(ord.lhd(0, 1) && ord.lhd(1, 2) && ord.lhd(0, 2));
        assert!(!ord.lhd(1, 0) && !ord.lhd(2, 2) && !ord.lhd(0, 7));
        assert_eq!(ord.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }
}
