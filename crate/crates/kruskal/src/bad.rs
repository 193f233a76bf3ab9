use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use gforge_ordinals::{compare, parse_ordinal, print_ordinal, Ordinal, ParseMode, TextError};
use thiserror::Error;

use crate::tree::{embeds, parse_tree, trees_with_nodes_up_to, Tree, TreeSyntaxError};

/// No earlier entry embeds into a later one.
pub fn is_bad(seq: &[Tree]) -> bool {
    seq.iter().enumerate().all(|(i, s)| seq[i + 1..].iter().all(|t| !embeds(s, t)))
}

/// A nonempty bad sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BadSequence(Vec<Tree>);

impl BadSequence {
    pub fn new(entries: Vec<Tree>) -> Option<BadSequence> {
        (!entries.is_empty() && is_bad(&entries)).then_some(BadSequence(entries))
    }

    pub fn entries(&self) -> &[Tree] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for BadSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_seq(&self.0))
    }
}

/// `<t0, t1, ...>`.
pub fn print_seq(seq: &[Tree]) -> String {
    let parts: Vec<String> = seq.iter().map(|t| t.to_string()).collect();
    format!("<{}>", parts.join(", "))
}

struct Bits(Vec<u64>);

impl Bits {
    fn full(n: usize) -> Bits {
        let mut w = vec![u64::MAX; n.div_ceil(64)];
        if n % 64 != 0 {
            *w.last_mut().unwrap() = (1u64 << (n % 64)) - 1;
        }
        Bits(w)
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn minus(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }
}

/// `rows[i]`: the positions `j` with `u[i] ≤_B u[j]`.
fn embedding_rows(u: &[Tree]) -> Vec<Bits> {
    u.iter()
        .map(|s| {
            let mut row = Bits(vec![0; u.len().div_ceil(64)]);
            for (j, t) in u.iter().enumerate() {
                if embeds(s, t) {
                    row.set(j);
                }
            }
            row
        })
        .collect()
}

/// The longest bad sequence of members of `universe`, and the least such
/// sequence in the order of `universe`.
pub fn longest_bad_in(universe: &[Tree]) -> (usize, Vec<Tree>) {
    let rows = embedding_rows(universe);
    let mut best = Vec::new();
    let mut cur = Vec::new();
    dfs(&rows, &Bits::full(universe.len()), &mut cur, &mut best);
    (best.len(), best.into_iter().map(|i| universe[i].clone()).collect())
}

fn dfs(rows: &[Bits], allowed: &Bits, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if cur.len() + allowed.count() <= best.len() {
        return;
    }
    for j in allowed.iter() {
        cur.push(j);
        dfs(rows, &allowed.minus(&rows[j]), cur, best);
        cur.pop();
        if cur.len() + allowed.count() <= best.len() {
            return;
        }
    }
}

/// Longest bad sequence of trees with at most `budget` vertices each.
pub fn longest_bad_sequence(budget: usize) -> (usize, BadSequence) {
    let (n, w) = longest_bad_in(&trees_with_nodes_up_to(budget.max(1)));
    (n, BadSequence(w))
}

/// Partial order axioms of `≤_B` and the longest bad sequence on a finite
/// set of trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpoReport {
    pub size: usize,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub longest_bad: usize,
    pub witness: Vec<Tree>,
}

impl WpoReport {
    pub fn is_partial_order(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

pub fn wpo_check(universe: &[Tree]) -> WpoReport {
    let mut u = universe.to_vec();
    u.sort();
    u.dedup();
    let rows = embedding_rows(&u);
    let n = u.len();
    let reflexive = (0..n).all(|i| rows[i].get(i));
    let antisymmetric = (0..n).all(|i| rows[i].iter().all(|j| j == i || !rows[j].get(i)));
    let transitive = (0..n).all(|i| rows[i].iter().all(|j| rows[j].subset_of(&rows[i])));
    let (longest_bad, witness) = longest_bad_in(&u);
    WpoReport { size: n, reflexive, antisymmetric, transitive, longest_bad, witness }
}

/// A finite map from bad sequences to notations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReificationTable {
    pub entries: BTreeMap<Vec<Tree>, Ordinal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReificationViolation {
    #[error("{} is not a bad sequence", print_seq(.0))]
    NotBad(Vec<Tree>),
    #[error("r({}) = {} is not below r({}) = {}", print_seq(.longer), print_ordinal(.r_longer), print_seq(.shorter), print_ordinal(.r_shorter))]
    NoDescent { shorter: Vec<Tree>, r_shorter: Ordinal, longer: Vec<Tree>, r_longer: Ordinal },
}

/// Every key is bad, and `r` strictly descends from each key to each of its
/// one-step extensions present in the table.
pub fn check_reification(table: &ReificationTable) -> Result<(), ReificationViolation> {
    for (seq, r) in &table.entries {
        if seq.is_empty() || !is_bad(seq) {
            return Err(ReificationViolation::NotBad(seq.clone()));
        }
        let prefix = &seq[..seq.len() - 1];
        if let Some(rp) = table.entries.get(prefix) {
            if compare(r, rp) != Ordering::Less {
                return Err(ReificationViolation::NoDescent {
                    shorter: prefix.to_vec(),
                    r_shorter: rp.clone(),
                    longer: seq.clone(),
                    r_longer: r.clone(),
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: expected `trees ; ordinal`")]
    Shape { line: usize },
    #[error("line {line}: {err}")]
    Tree { line: usize, err: TreeSyntaxError },
    #[error("line {line}: {err}")]
    Ordinal { line: usize, err: TextError },
    #[error("line {line}: empty sequence")]
    Empty { line: usize },
    #[error("line {line}: sequence listed twice")]
    Duplicate { line: usize },
}

/// Lines `t0 t1 ... ; ordinal`, trees separated by whitespace. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_table(text: &str) -> Result<ReificationTable, TableError> {
    let mut table = ReificationTable::default();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let (seq, ord) = s.split_once(';').ok_or(TableError::Shape { line })?;
        let trees = seq
            .split_whitespace()
            .map(parse_tree)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|err| TableError::Tree { line, err })?;
        if trees.is_empty() {
            return Err(TableError::Empty { line });
        }
        let r = parse_ordinal(ord.trim(), ParseMode::Strict).map_err(|err| TableError::Ordinal { line, err })?;
        if table.entries.insert(trees, r).is_some() {
            return Err(TableError::Duplicate { line });
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits() {
        let b = Bits::full(70);
        assert_eq!(b.count(), 70);
        assert_eq!(b.iter().last(), Some(69));
        let mut one = Bits(vec![0, 0]);
        one.set(65);
        assert_eq!(b.minus(&one).count(), 69);
        assert!(one.subset_of(&b));
    }

    #[test]
    fn table_text() {
        let t = parse_table("# r\n(o,o) ; 1\n(o,o) o ; 0\n").unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(check_reification(&t), Ok(()));
        assert!(matches!(parse_table("(o,o) 1"), Err(TableError::Shape { line: 1 })));
        assert!(matches!(parse_table(" ; 1"), Err(TableError::Empty { .. })));
        assert!(matches!(parse_table("o ; 1\no ; 2"), Err(TableError::Duplicate { line: 2 })));
    }
}
