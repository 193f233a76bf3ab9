use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// A finite binary tree: every vertex has zero or two successors.
///
/// The derived order puts `Leaf` first and compares nodes left subtree
/// first; witnesses are reported minimal in this order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Arc<Tree>, Arc<Tree>),
}

impl Tree {
    pub fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Arc::new(l), Arc::new(r))
    }

    /// `h(o) = 0`, `h((s,t)) = max(h(s), h(t)) + 1`.
    pub fn height(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => l.height().max(r.height()) + 1,
        }
    }

    /// Number of vertices, leaves included.
    pub fn nodes(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.nodes() + r.nodes() + 1,
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("o"),
            Tree::Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tree syntax error at {pos}: {msg}")]
pub struct TreeSyntaxError {
    pub pos: usize,
    pub msg: String,
}

/// Parses `o` and `(s,t)`. No whitespace is accepted.
pub fn parse_tree(text: &str) -> Result<Tree, TreeSyntaxError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let t = parse_at(bytes, &mut pos)?;
    if pos != bytes.len() {
        return Err(TreeSyntaxError { pos, msg: "trailing input".into() });
    }
    Ok(t)
}

fn parse_at(b: &[u8], pos: &mut usize) -> Result<Tree, TreeSyntaxError> {
    let expect = |pos: &mut usize, c: u8| {
        if b.get(*pos) == Some(&c) {
            *pos += 1;
            Ok(())
        } else {
            Err(TreeSyntaxError { pos: *pos, msg: format!("expected '{}'", c as char) })
        }
    };
    match b.get(*pos) {
        Some(b'o') => {
            *pos += 1;
            Ok(Tree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_at(b, pos)?;
            expect(pos, b',')?;
            let r = parse_at(b, pos)?;
            expect(pos, b')')?;
            Ok(Tree::node(l, r))
        }
        _ => Err(TreeSyntaxError { pos: *pos, msg: "expected 'o' or '('".into() }),
    }
}

/// Memo tables keyed by the addresses of shared subtrees. A memo must only
/// be used while the trees it has seen are alive.
#[derive(Default)]
struct Memo {
    table: HashMap<(usize, usize), bool>,
}

impl Memo {
    fn run(&mut self, s: &Tree, t: &Tree, unordered: bool) -> bool {
        let key = (s as *const Tree as usize, t as *const Tree as usize);
        if let Some(v) = self.table.get(&key) {
            return *v;
        }
        let v = match (s, t) {
            (Tree::Leaf, _) => true,
            (_, Tree::Leaf) => false,
            (Tree::Node(s0, s1), Tree::Node(t0, t1)) => {
                (self.run(s0, t0, unordered) && self.run(s1, t1, unordered))
                    || (unordered && self.run(s0, t1, unordered) && self.run(s1, t0, unordered))
                    || self.run(s, t0, unordered)
                    || self.run(s, t1, unordered)
            }
        };
        self.table.insert(key, v);
        v
    }
}

/// Plain recursion, for pairs too small to be worth a memo table.
fn direct(s: &Tree, t: &Tree, unordered: bool) -> bool {
    match (s, t) {
        (Tree::Leaf, _) => true,
        (_, Tree::Leaf) => false,
        (Tree::Node(s0, s1), Tree::Node(t0, t1)) => {
            (direct(s0, t0, unordered) && direct(s1, t1, unordered))
                || (unordered && direct(s0, t1, unordered) && direct(s1, t0, unordered))
                || direct(s, t0, unordered)
                || direct(s, t1, unordered)
        }
    }
}

const DIRECT_LIMIT: usize = 12;

fn run(s: &Tree, t: &Tree, unordered: bool) -> bool {
    if s.height() + t.height() <= DIRECT_LIMIT / 2 && s.nodes() * t.nodes() <= DIRECT_LIMIT * DIRECT_LIMIT {
        direct(s, t, unordered)
    } else {
        Memo::default().run(s, t, unordered)
    }
}

/// `s ≤_B t`.
pub fn embeds(s: &Tree, t: &Tree) -> bool {
    run(s, t, false)
}

/// `s ≤_B⁻ t`: also matches the subtrees of `s` crosswise.
pub fn embeds_unordered(s: &Tree, t: &Tree) -> bool {
    run(s, t, true)
}

/// `s =_B t`.
pub fn tree_eq(s: &Tree, t: &Tree) -> bool {
    embeds_unordered(s, t) && embeds_unordered(t, s)
}

/// All trees with at most `n` vertices, ascending.
pub fn trees_with_nodes_up_to(n: usize) -> Vec<Tree> {
    // by_size[k]: trees with 2k+1 vertices
    let mut by_size: Vec<Vec<Tree>> = Vec::new();
    let mut k = 0;
    while 2 * k < n {
        let level = if k == 0 {
            vec![Tree::Leaf]
        } else {
            let mut out = Vec::new();
            for i in 0..k {
                for l in &by_size[i] {
                    for r in &by_size[k - 1 - i] {
                        out.push(Tree::node(l.clone(), r.clone()));
                    }
                }
            }
            out
        };
        by_size.push(level);
        k += 1;
    }
    let mut all: Vec<Tree> = by_size.into_iter().flatten().collect();
    all.sort();
    all
}

/// All trees of height at most `h`, ascending.
pub fn trees_of_height_up_to(h: usize) -> Vec<Tree> {
    let mut all = vec![Tree::Leaf];
    for _ in 0..h {
        let mut next = vec![Tree::Leaf];
        for l in &all {
            for r in &all {
                next.push(Tree::node(l.clone(), r.clone()));
            }
        }
        all = next;
    }
    all.sort();
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        parse_tree(s).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for s in ["o", "(o,o)", "((o,o),(o,(o,o)))"] {
            assert_eq!(t(s).to_string(), s);
        }
        assert!(parse_tree("(o, o)").is_err());
        assert!(parse_tree("(o,o").is_err());
        assert!(parse_tree("oo").is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(trees_with_nodes_up_to(3), vec![t("o"), t("(o,o)")]);
        assert_eq!(trees_with_nodes_up_to(7).len(), 1 + 1 + 2 + 5);
        assert_eq!(trees_of_height_up_to(2).len(), 5);
        assert_eq!(trees_of_height_up_to(3).len(), 26);
    }

    #[test]
    fn embedding_examples() {
        assert!(embeds(&t("o"), &t("((o,o),o)")));
        assert!(!embeds(&t("(o,o)"), &t("o")));
        assert!(embeds(&t("(o,o)"), &t("(o,(o,o))")));
        assert!(!embeds(&t("((o,o),o)"), &t("(o,(o,o))")));
        assert!(embeds_unordered(&t("((o,o),o)"), &t("(o,(o,o))")));
        assert!(tree_eq(&t("((o,o),o)"), &t("(o,(o,o))")));
    }

    #[test]
    fn memo_and_direct_agree() {
        let u = trees_of_height_up_to(3);
        for a in &u {
            for b in &u {
                for unordered in [false, true] {
                    assert_eq!(direct(a, b, unordered), Memo::default().run(a, b, unordered));
                }
            }
        }
    }
}
