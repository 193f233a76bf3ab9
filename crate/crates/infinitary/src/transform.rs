use std::sync::Arc;

use gforge_ordinals::{add, omega_pow};
use gforge_syntax::{component, decompose, with, without, Formula, Index, Kind, Rel, Sequent};

use crate::node::{replace, weaken_or_gap, InfDerivation, InfError, InfRule, PremiseFn};

/// `⊢^α_d Γ` gives `⊢^α_d Γ∖{φ}, φ_i` for a conjunctive `φ` and `i ∈ ι(φ)`.
pub fn invert(d: &InfDerivation, phi: &Formula, i: &Index) -> Result<InfDerivation, InfError> {
    match decompose(phi) {
        Ok(dec) if dec.kind == Kind::Conjunctive => {
            if !dec.index.contains(i) {
                return Err(InfError::BadIndex { formula: phi.clone(), index: i.clone() });
            }
        }
        _ => return Err(InfError::NotConjunctive(phi.clone())),
    }
    let minor = component(phi, i).expect("valid index");
    Ok(inv(d, phi, i, &minor))
}

fn inv(d: &InfDerivation, phi: &Formula, i: &Index, minor: &Formula) -> InfDerivation {
    if !d.end().contains(phi) {
        return weaken_or_gap(d, d.bound(), d.cut_rank(), &Sequent::from([minor.clone()]));
    }
    let end = with(&without(d.end(), phi), minor.clone());
    match d.rule() {
        InfRule::Conj(f) if f == phi => {
            let q = inv(&d.premise_or_gap(i), phi, i, minor);
            weaken_or_gap(&q, d.bound(), d.cut_rank(), &end)
        }
        InfRule::AxiomTrue(_) | InfRule::AxiomX(..) | InfRule::Gap(_) => {
            InfDerivation::raw(end, d.bound().clone(), d.cut_rank(), d.rule().clone(), None)
        }
        rule => {
            let (orig, phi, i, minor) = (d.clone(), phi.clone(), i.clone(), minor.clone());
            let premise: PremiseFn = Arc::new(move |j: &Index| inv(&orig.premise_or_gap(j), &phi, &i, &minor));
            InfDerivation::raw(end, d.bound().clone(), d.cut_rank(), rule.clone(), Some(premise))
        }
    }
}

/// Formulas a reduction can be performed on: disjunctive ones and `¬Xt`.
pub fn is_reducible(phi: &Formula) -> bool {
    matches!(phi, Formula::NegPrime(Rel::X, _))
        || matches!(decompose(phi), Ok(d) if d.kind == Kind::Disjunctive)
}

/// From `⊢^α_d Γ, ¬φ` (`neg`) and `⊢^β_d Γ, φ` (`pos`) obtain
/// `⊢^{α+β}_d Γ`, where `Γ` collects both end sequents without `¬φ`, `φ`.
pub fn reduce(neg: &InfDerivation, pos: &InfDerivation, phi: &Formula) -> Result<InfDerivation, InfError> {
    if !is_reducible(phi) {
        return Err(InfError::Precondition(format!("{phi} is neither disjunctive nor a negated X atom")));
    }
    let d = neg.cut_rank().max(pos.cut_rank());
    if phi.rank() > d {
        return Err(InfError::Precondition(format!("rank of {phi} exceeds the cut rank {d}")));
    }
    let mut gamma = without(neg.end(), &phi.negate());
    gamma.extend(without(pos.end(), phi));
    Ok(red(&gamma, neg, pos, phi, d))
}

fn red(gamma: &Sequent, neg: &InfDerivation, pos: &InfDerivation, phi: &Formula, d: usize) -> InfDerivation {
    let bound = add(neg.bound(), pos.bound());
    if !pos.end().contains(phi) {
        return weaken_or_gap(pos, &bound, d, gamma);
    }
    match pos.rule() {
        InfRule::AxiomX(xs, nxt) if nxt == phi => {
            let moved = replace(neg, vec![(phi.negate(), xs.clone())]);
            weaken_or_gap(&moved, &bound, d, gamma)
        }
        InfRule::Disj(f, i) if f == phi => {
            let minor = component(phi, i).expect("valid index");
            let rule = InfRule::Cut(minor.clone());
            let (g, n, p, phi, i) = (gamma.clone(), neg.clone(), pos.clone(), phi.clone(), i.clone());
            let premise: PremiseFn = Arc::new(move |k: &Index| match k {
                Index::Bit(0) => {
                    let g1 = with(&g, minor.clone());
                    let n1 = weaken_or_gap(&n, n.bound(), n.cut_rank(), &Sequent::from([minor.clone()]));
                    red(&g1, &n1, &p.premise_or_gap(&i), &phi, d)
                }
                _ => {
                    let neg_phi = phi.negate();
                    inv(&n, &neg_phi, &i, &minor.negate())
                }
            });
            InfDerivation::raw(gamma.clone(), bound, d, rule, Some(premise))
        }
        rule => {
            let (g, n, p, phi) = (gamma.clone(), neg.clone(), pos.clone(), phi.clone());
            let premise: PremiseFn = Arc::new(move |k: &Index| {
                let q = p.premise_or_gap(k);
                match p.minor(k) {
                    Some(m) => {
                        let g1 = with(&g, m.clone());
                        let n1 = weaken_or_gap(&n, n.bound(), n.cut_rank(), &Sequent::from([m]));
                        red(&g1, &n1, &q, &phi, d)
                    }
                    None => q,
                }
            });
            let premise = pos.premise_fn().map(|_| premise);
            InfDerivation::raw(gamma.clone(), bound, d, rule.clone(), premise)
        }
    }
}

/// `⊢^α_{d+1} Γ` gives `⊢^{ω(α)}_d Γ`.
pub fn cut_elim_step(dd: &InfDerivation) -> Result<InfDerivation, InfError> {
    if dd.cut_rank() == 0 {
        return Err(InfError::Precondition("nothing to eliminate".into()));
    }
    Ok(step(dd, dd.cut_rank() - 1))
}

fn step(node: &InfDerivation, d: usize) -> InfDerivation {
    let bound = omega_pow(node.bound());
    match node.rule() {
        InfRule::Cut(f) if f.rank() >= d => {
            if f.rank() > d {
                let msg = format!("cut formula {f} has rank above {d}");
                return InfDerivation::gap(node.end().clone(), bound, d, msg);
            }
            let p0 = step(&node.premise_or_gap(&Index::Bit(0)), d);
            let p1 = step(&node.premise_or_gap(&Index::Bit(1)), d);
            let r = if is_reducible(f) {
                red(node.end(), &p1, &p0, f, d)
            } else {
                red(node.end(), &p0, &p1, &f.negate(), d)
            };
            weaken_or_gap(&r, &bound, d, node.end())
        }
        InfRule::AxiomTrue(_) | InfRule::AxiomX(..) | InfRule::Gap(_) => {
            InfDerivation::raw(node.end().clone(), bound, d, node.rule().clone(), None)
        }
        rule => {
            let orig = node.clone();
            let premise: PremiseFn = Arc::new(move |i: &Index| step(&orig.premise_or_gap(i), d));
            InfDerivation::raw(node.end().clone(), bound, d, rule.clone(), Some(premise))
        }
    }
}

/// Applies [`cut_elim_step`] until the cut rank is `0`; the bound becomes
/// `ω(α, d)`.
pub fn cut_elim_full(d: &InfDerivation) -> InfDerivation {
    let mut cur = d.clone();
    while cur.cut_rank() > 0 {
        cur = step(&cur, cur.cut_rank() - 1);
    }
    cur
}
