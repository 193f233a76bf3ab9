use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A finite rooted tree whose successors are ordered. Every notation is such
/// a tree, but not conversely.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RawTree {
    exps: Arc<[RawTree]>,
}

impl RawTree {
    pub fn new(exps: Vec<RawTree>) -> RawTree {
        RawTree { exps: exps.into() }
    }

    pub fn empty() -> RawTree {
        RawTree::new(Vec::new())
    }

    pub fn exponents(&self) -> &[RawTree] {
        &self.exps
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of non-root vertices, i.e. the length measure `l`.
    pub fn length(&self) -> usize {
        self.exps.iter().map(|e| e.length() + 1).sum()
    }

    /// Bracket form `<a0,...,an>`.
    pub fn to_brackets(&self) -> String {
        let inner: Vec<String> = self.exps.iter().map(|e| e.to_brackets()).collect();
        format!("<{}>", inner.join(","))
    }
}

impl fmt::Debug for RawTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brackets())
    }
}

/// Lexicographic comparison of exponent lists. Total on all raw trees.
pub fn compare_raw(a: &RawTree, b: &RawTree) -> Ordering {
    if Arc::ptr_eq(&a.exps, &b.exps) {
        return Ordering::Equal;
    }
    for (x, y) in a.exps.iter().zip(b.exps.iter()) {
        match compare_raw(x, y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.exps.len().cmp(&b.exps.len())
}

impl PartialOrd for RawTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RawTree {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_raw(self, other)
    }
}

/// Checks the Cantor normal form discipline at every vertex.
pub fn is_notation(raw: &RawTree) -> bool {
    raw.exps.iter().all(is_notation)
        && raw
            .exps
            .windows(2)
            .all(|w| compare_raw(&w[1], &w[0]) != Ordering::Greater)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("not in Cantor normal form: {0}")]
    NotNotation(String),
}

/// An ordinal notation below epsilon_0: a raw tree that is in Cantor normal
/// form at every vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal(RawTree);

impl Ordinal {
    pub fn from_raw(raw: RawTree) -> Result<Ordinal, OrdinalError> {
        if is_notation(&raw) {
            Ok(Ordinal(raw))
        } else {
            Err(OrdinalError::NotNotation(raw.to_brackets()))
        }
    }

    pub fn from_exponents(exps: Vec<Ordinal>) -> Result<Ordinal, OrdinalError> {
        Ordinal::from_raw(RawTree::new(exps.into_iter().map(|e| e.0).collect()))
    }

    pub fn zero() -> Ordinal {
        Ordinal(RawTree::empty())
    }

    pub fn one() -> Ordinal {
        omega_pow(&Ordinal::zero())
    }

    pub fn omega() -> Ordinal {
        omega_pow(&Ordinal::one())
    }

    pub fn raw(&self) -> &RawTree {
        &self.0
    }

    pub fn into_raw(self) -> RawTree {
        self.0
    }

    pub fn exponent_count(&self) -> usize {
        self.0.exps.len()
    }

    pub fn exponent(&self, i: usize) -> Ordinal {
        Ordinal(self.0.exps[i].clone())
    }

    pub fn exponents(&self) -> impl Iterator<Item = Ordinal> + '_ {
        self.0.exps.iter().map(|e| Ordinal(e.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn length(&self) -> usize {
        self.0.length()
    }

    /// `Some(n)` when the notation is the finite ordinal `n`.
    pub fn as_nat(&self) -> Option<usize> {
        if self.0.exps.iter().all(|e| e.is_empty()) {
            Some(self.0.exps.len())
        } else {
            None
        }
    }

    pub fn to_brackets(&self) -> String {
        self.0.to_brackets()
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub fn compare(a: &Ordinal, b: &Ordinal) -> Ordering {
    compare_raw(&a.0, &b.0)
}

/// `a + b`: the exponents of `a` that are at least the leading exponent of
/// `b` survive, followed by all of `b`.
pub fn add(a: &Ordinal, b: &Ordinal) -> Ordinal {
    let Some(b0) = b.0.exps.first() else {
        return a.clone();
    };
    let keep = a
        .0
        .exps
        .iter()
        .position(|x| compare_raw(x, b0) == Ordering::Less)
        .unwrap_or(a.0.exps.len());
    let mut exps: Vec<RawTree> = a.0.exps[..keep].to_vec();
    exps.extend(b.0.exps.iter().cloned());
    Ordinal(RawTree::new(exps))
}

pub fn omega_pow(a: &Ordinal) -> Ordinal {
    Ordinal(RawTree::new(vec![a.0.clone()]))
}

pub fn succ(a: &Ordinal) -> Ordinal {
    add(a, &Ordinal::one())
}

pub fn from_nat(n: usize) -> Ordinal {
    Ordinal(RawTree::new(vec![RawTree::empty(); n]))
}

/// `omega(a, 0) = a`, `omega(a, n+1) = omega(omega(a, n))`.
pub fn omega_tower(a: &Ordinal, n: usize) -> Ordinal {
    (0..n).fold(a.clone(), |acc, _| omega_pow(&acc))
}

/// The larger of two notations.
pub fn max(a: &Ordinal, b: &Ordinal) -> Ordinal {
    if compare(a, b) == Ordering::Less {
        b.clone()
    } else {
        a.clone()
    }
}

/// All raw trees with exactly `len` non-root vertices, memoized by size.
fn raw_trees_by_length(k: usize) -> Vec<Vec<RawTree>> {
    // forests[n] = ordered forests with n vertices in total
    let mut trees: Vec<Vec<RawTree>> = Vec::with_capacity(k + 1);
    let mut forests: Vec<Vec<Vec<RawTree>>> = vec![vec![Vec::new()]];
    for n in 0..=k {
        let level: Vec<RawTree> = forests[n].iter().map(|f| RawTree::new(f.clone())).collect();
        trees.push(level);
        let size = n + 1;
        let mut next = Vec::new();
        for first in 1..=size {
            for head in &trees[first - 1] {
                for tail in &forests[size - first] {
                    let mut f = Vec::with_capacity(tail.len() + 1);
                    f.push(head.clone());
                    f.extend(tail.iter().cloned());
                    next.push(f);
                }
            }
        }
        forests.push(next);
    }
    trees
}

/// All raw trees with length measure at most `k`.
pub fn enumerate_raw_up_to(k: usize) -> Vec<RawTree> {
    raw_trees_by_length(k).into_iter().flatten().collect()
}

/// All notations with length measure at most `k`, strictly increasing.
pub fn enumerate_up_to(k: usize) -> Vec<Ordinal> {
    let mut out: Vec<Ordinal> = enumerate_raw_up_to(k)
        .into_iter()
        .filter(is_notation)
        .map(Ordinal)
        .collect();
    out.sort();
    out.dedup();
    out
}

/// An infinite strictly descending sequence of raw trees:
/// `<1>, <0,1>, <0,0,1>, ...`. None of its members beyond the first is a
/// notation.
pub fn raw_descent(i: usize) -> RawTree {
    let one = RawTree::new(vec![RawTree::empty()]);
    let mut exps = vec![RawTree::empty(); i];
    exps.push(one);
    RawTree::new(exps)
}
