use std::cmp::Ordering;

use gforge_kruskal::*;
use gforge_ordinals::{compare, enumerate_up_to, from_nat, parse_ordinal, Ordinal, ParseMode};

fn t(s: &str) -> Tree {
    parse_tree(s).unwrap()
}

/// Vertices as paths from the root, `false` for left.
fn vertices(t: &Tree, here: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, bool)>) {
    match t {
        Tree::Leaf => out.push((here.clone(), true)),
        Tree::Node(l, r) => {
            out.push((here.clone(), false));
            here.push(false);
            vertices(l, here, out);
            here.pop();
            here.push(true);
            vertices(r, here, out);
            here.pop();
        }
    }
}

fn extends(long: &[bool], short: &[bool], dir: bool) -> bool {
    long.len() > short.len() && long.starts_with(short) && long[short.len()] == dir
}

/// Brute force over maps `g` from the vertices of `s` to those of `t`: the
/// left (right) successor of an inner vertex `v` goes strictly into the
/// left (right) part below `g(v)`; with `swap`, both sides may trade places.
fn oracle(s: &Tree, t: &Tree, swap: bool) -> bool {
    let mut vs = Vec::new();
    vertices(s, &mut Vec::new(), &mut vs);
    let mut vt = Vec::new();
    vertices(t, &mut Vec::new(), &mut vt);
    let mut g: Vec<Vec<bool>> = Vec::new();
    assign(&vs, &vt, &mut g, swap)
}

fn assign(vs: &[(Vec<bool>, bool)], vt: &[(Vec<bool>, bool)], g: &mut Vec<Vec<bool>>, swap: bool) -> bool {
    let k = g.len();
    if k == vs.len() {
        return swap_consistent(vs, g, swap);
    }
    let (v, _) = &vs[k];
    for (u, _) in vt {
        let ok = match v.split_last() {
            None => true,
            Some((dir, parent)) => {
                let pi = vs.iter().position(|(p, _)| p == parent).unwrap();
                extends(u, &g[pi], *dir) || (swap && extends(u, &g[pi], !*dir))
            }
        };
        if ok {
            g.push(u.clone());
            if assign(vs, vt, g, swap) {
                return true;
            }
            g.pop();
        }
    }
    false
}

/// Both successors of an inner vertex must land on different sides.
fn swap_consistent(vs: &[(Vec<bool>, bool)], g: &[Vec<bool>], swap: bool) -> bool {
    if !swap {
        return true;
    }
    vs.iter().enumerate().filter(|(_, (_, leaf))| !leaf).all(|(i, (v, _))| {
        let side = |dir: bool| {
            let mut c = v.clone();
            c.push(dir);
            let j = vs.iter().position(|(p, _)| *p == c).unwrap();
            g[j][g[i].len()]
        };
        side(false) != side(true)
    })
}

#[test]
fn height_values() {
    assert_eq!(t("o").height(), 0);
    assert_eq!(t("(o,o)").height(), 1);
    assert_eq!(t("((o,o),o)").height(), 2);
}

#[test]
fn embedding_agrees_with_the_map_oracle() {
    let mut u = trees_of_height_up_to(2);
    u.extend(trees_with_nodes_up_to(7));
    u.sort();
    u.dedup();
    for s in &u {
        for r in &u {
            assert_eq!(embeds(s, r), oracle(s, r, false), "{s} <= {r}");
            assert_eq!(embeds_unordered(s, r), oracle(s, r, true), "{s} <=- {r}");
        }
    }
}

#[test]
fn embedding_examples() {
    for r in trees_of_height_up_to(3) {
        assert!(embeds(&Tree::Leaf, &r));
        assert_eq!(embeds(&r, &Tree::Leaf), r == Tree::Leaf);
        assert!(tree_eq(&r, &r));
    }
    assert!(embeds(&t("(o,o)"), &t("(o,(o,o))")));
}

#[test]
fn partial_order_on_height_three() {
    let u = trees_of_height_up_to(3);
    for a in &u {
        assert!(embeds(a, a));
        for b in &u {
            if embeds(a, b) {
                assert!(embeds_unordered(a, b));
                if embeds(b, a) {
                    assert_eq!(a, b);
                }
                for c in &u {
                    if embeds(b, c) {
                        assert!(embeds(a, c), "{a} <= {b} <= {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn swapped_children_embed_unordered() {
    let u = trees_of_height_up_to(2);
    for a in &u {
        for b in &u {
            assert!(embeds_unordered(&Tree::node(a.clone(), b.clone()), &Tree::node(b.clone(), a.clone())));
        }
    }
}

#[test]
fn bad_sequences() {
    assert!(is_bad(&[t("((o,o),o)")]));
    for r in trees_of_height_up_to(2) {
        assert!(!is_bad(&[Tree::Leaf, r]));
    }
    assert!(is_bad(&[t("(o,o)"), t("o")]));
    assert!(BadSequence::new(vec![]).is_none());
    assert!(BadSequence::new(vec![t("o"), t("o")]).is_none());
}

/// Longest bad sequence by trying every ordering of every subset.
fn brute_longest(u: &[Tree]) -> usize {
    fn go(u: &[Tree], used: &mut Vec<usize>) -> usize {
        let mut best = used.len();
        for j in 0..u.len() {
            if used.contains(&j) || used.iter().any(|&i| embeds(&u[i], &u[j])) {
                continue;
            }
            used.push(j);
            best = best.max(go(u, used));
            used.pop();
        }
        best
    }
    go(u, &mut Vec::new())
}

#[test]
fn longest_bad_sequences() {
    let (n, w) = longest_bad_sequence(3);
    assert_eq!(n, 2);
    assert_eq!(w.entries(), &[t("(o,o)"), t("o")]);
    let mut last = 0;
    for budget in [1, 3, 5, 7] {
        let (n, w) = longest_bad_sequence(budget);
        assert!(is_bad(w.entries()));
        assert_eq!(w.len(), n);
        assert!(w.entries().iter().all(|x| x.nodes() <= budget));
        assert_eq!(n, brute_longest(&trees_with_nodes_up_to(budget)));
        assert!(n >= last);
        last = n;
    }
}

#[test]
fn wpo_reports() {
    let r = wpo_check(&trees_of_height_up_to(2));
    assert!(r.is_partial_order());
    assert_eq!(r.size, 5);
    assert!(is_bad(&r.witness));
    assert_eq!(r.longest_bad, brute_longest(&trees_of_height_up_to(2)));
    assert_eq!(wpo_check(&[Tree::Leaf]).longest_bad, 1);

    let inner: Vec<Tree> = trees_with_nodes_up_to(7).into_iter().filter(|x| *x != Tree::Leaf).collect();
    for mask in 1u32..(1 << inner.len()) {
        let u: Vec<Tree> = (0..inner.len()).filter(|i| mask >> i & 1 == 1).map(|i| inner[i].clone()).collect();
        let without = wpo_check(&u).longest_bad;
        let mut with = u.clone();
        with.push(Tree::Leaf);
        let l = wpo_check(&with).longest_bad;
        assert!(l >= without && l <= without + 1);
    }
}

#[test]
fn reification_tables() {
    let ord = |s: &str| parse_ordinal(s, ParseMode::Strict).unwrap();
    let (a, b) = (t("((o,o),o)"), t("(o,o)"));
    let mut table = ReificationTable::default();
    assert_eq!(check_reification(&table), Ok(()));
    table.entries.insert(vec![a.clone()], ord("1"));
    table.entries.insert(vec![a.clone(), b.clone()], ord("0"));
    assert_eq!(check_reification(&table), Ok(()));
    table.entries.insert(vec![a.clone()], ord("0"));
    table.entries.insert(vec![a.clone(), b.clone()], ord("1"));
    match check_reification(&table) {
        Err(ReificationViolation::NoDescent { shorter, longer, .. }) => {
            assert_eq!(shorter, vec![a.clone()]);
            assert_eq!(longer, vec![a.clone(), b.clone()]);
        }
        other => panic!("expected a descent violation, got {other:?}"),
    }
    let mut table = ReificationTable::default();
    table.entries.insert(vec![b.clone(), a.clone()], ord("w"));
    assert!(matches!(check_reification(&table), Err(ReificationViolation::NotBad(_))));
}

#[test]
fn quasi_embedding_values() {
    assert_eq!(length_l(&from_nat(0)), 0);
    assert_eq!(length_l(&from_nat(1)), 1);
    assert_eq!(length_l(&Ordinal::omega()), 2);
    assert_eq!(quasi_embed(&from_nat(0)), Tree::Leaf);
    assert_eq!(quasi_embed(&from_nat(1)), t("(o,o)"));
    assert_eq!(quasi_embed(&Ordinal::omega()), t("((o,o),o)"));
}

#[test]
fn quasi_embedding_reflects_the_order() {
    let all = enumerate_up_to(7);
    assert!(all.len() > 100);
    let images: Vec<Tree> = all.iter().map(quasi_embed).collect();
    for (a, fa) in all.iter().zip(&images) {
        assert_eq!(fa.nodes(), 2 * length_l(a) + 1);
        for (b, fb) in all.iter().zip(&images) {
            if embeds(fa, fb) {
                assert_ne!(compare(a, b), Ordering::Greater, "f({a:?}) <= f({b:?})");
            }
            if a != b {
                assert_ne!(fa, fb);
            }
        }
    }
}

#[test]
fn descending_chains_map_to_bad_sequences() {
    // Badness is a condition on pairs, so every strictly descending chain
    // has a bad image iff every descending pair does.
    let all = enumerate_up_to(7);
    for a in &all {
        for b in &all {
            if compare(a, b) == Ordering::Greater {
                assert!(is_bad(&[quasi_embed(a), quasi_embed(b)]));
            }
        }
    }
    // Whole chains of the notations with length at most 4.
    let small: Vec<Tree> = enumerate_up_to(4).iter().map(quasi_embed).collect();
    assert!(small.len() <= 20);
    let mut chains = 0;
    for mask in 1u32..(1 << small.len()) {
        let chain: Vec<Tree> = (0..small.len()).rev().filter(|i| mask >> i & 1 == 1).map(|i| small[i].clone()).collect();
        assert!(is_bad(&chain));
        chains += 1;
    }
    assert!(chains > 1000);
}
