use std::collections::BTreeMap;
use std::sync::Arc;

use gforge_finitary::{FinDerivation, Rule};
use gforge_ordinals::{add, from_nat, Ordinal};
use gforge_syntax::{component, implies, is_conjunctive, Formula, FnSym, Index, Rel, Sequent, Term};

use crate::node::{
    mk_axiom, mk_conj, mk_cut, mk_disj, mk_disj_with, mk_prog, replace, weaken_or_gap, InfDerivation, InfError,
};
use crate::order::LhdOrder;

/// Quantifiers of arithmetic sentences are decided by inspecting the
/// numerals below this limit; witnesses are searched in the same range.
pub const SEARCH_LIMIT: u64 = 64;

fn seq<const N: usize>(items: [Formula; N]) -> Sequent {
    items.into_iter().collect()
}

fn unwrap_node(r: Result<InfDerivation, InfError>, end: &Sequent, bound: &Ordinal) -> InfDerivation {
    r.unwrap_or_else(|e| InfDerivation::gap(end.clone(), bound.clone(), 0, e.to_string()))
}

/// Truth of a closed arithmetic sentence, quantifiers bounded by
/// [`SEARCH_LIMIT`].
pub fn truth(phi: &Formula) -> Result<bool, InfError> {
    match phi {
        Formula::Prime(..) | Formula::NegPrime(..) => {
            if phi.mentions_x() {
                return Err(InfError::NotArithmetic(phi.clone()));
            }
            phi.eval_literal().map_err(|_| InfError::NotArithmetic(phi.clone()))
        }
        Formula::And(a, b) => Ok(truth(a)? && truth(b)?),
        Formula::Or(a, b) => Ok(truth(a)? || truth(b)?),
        Formula::All(..) => {
            for n in 0..SEARCH_LIMIT {
                if !truth(&phi.instantiate(&Term::numeral(n)).unwrap())? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Ex(..) => Ok(witness(phi)?.is_some()),
    }
}

fn witness(phi: &Formula) -> Result<Option<u64>, InfError> {
    for n in 0..SEARCH_LIMIT {
        if truth(&phi.instantiate(&Term::numeral(n)).unwrap())? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// `⊢^{rk φ}_0 φ` for a true closed arithmetic sentence.
pub fn derive_truth(phi: &Formula) -> Result<InfDerivation, InfError> {
    if !phi.is_closed() {
        return Err(InfError::NotClosed(phi.clone()));
    }
    if !truth(phi)? {
        return Err(InfError::False(phi.clone()));
    }
    Ok(truth_node(phi.clone()))
}

fn truth_node(phi: Formula) -> InfDerivation {
    let end = seq([phi.clone()]);
    let bound = from_nat(phi.rank());
    let r = match &phi {
        Formula::Prime(..) | Formula::NegPrime(..) => mk_axiom(end.clone(), bound.clone(), 0),
        Formula::And(..) | Formula::All(..) => {
            let f = phi.clone();
            mk_conj(end.clone(), phi.clone(), bound.clone(), 0, move |i| truth_node(component(&f, i).unwrap()))
        }
        Formula::Or(a, _) => {
            let side = if truth(a).unwrap_or(false) { 0 } else { 1 };
            let minor = component(&phi, &Index::Bit(side)).unwrap();
            mk_disj(end.clone(), phi.clone(), Index::Bit(side), bound.clone(), 0, move |_| truth_node(minor.clone()))
        }
        Formula::Ex(..) => match witness(&phi) {
            Ok(Some(n)) => {
                let minor = phi.instantiate(&Term::numeral(n)).unwrap();
                let idx = Index::Term(Term::numeral(n));
                mk_disj(end.clone(), phi.clone(), idx, bound.clone(), 0, move |_| truth_node(minor.clone()))
            }
            _ => Err(InfError::False(phi.clone())),
        },
    };
    unwrap_node(r, &end, &bound)
}

fn check_sentence(phi: &Formula) -> Result<(), InfError> {
    if !phi.is_closed() {
        return Err(InfError::NotClosed(phi.clone()));
    }
    let mut syms = std::collections::BTreeSet::new();
    phi.symbols_into(&mut syms);
    if syms.iter().any(|s| matches!(s, FnSym::Named(..))) || has_other_predicate(phi) {
        return Err(InfError::NotArithmetic(phi.clone()));
    }
    Ok(())
}

fn has_other_predicate(phi: &Formula) -> bool {
    match phi {
        Formula::Prime(r, _) | Formula::NegPrime(r, _) => matches!(r, Rel::Pred(_)),
        Formula::And(a, b) | Formula::Or(a, b) => has_other_predicate(a) || has_other_predicate(b),
        Formula::All(_, a) | Formula::Ex(_, a) => has_other_predicate(a),
    }
}

/// `⊢^{2·rk φ}_0 φ, ¬φ` for any sentence `φ` over arithmetic and `X`.
pub fn derive_excluded_middle(phi: &Formula) -> Result<InfDerivation, InfError> {
    check_sentence(phi)?;
    Ok(em_node(phi.clone()))
}

fn em_node(phi: Formula) -> InfDerivation {
    let neg = phi.negate();
    let end = seq([phi.clone(), neg.clone()]);
    let rank = phi.rank();
    let bound = from_nat(2 * rank);
    if phi.is_literal() {
        return unwrap_node(mk_axiom(end.clone(), bound.clone(), 0), &end, &bound);
    }
    let (c, d) = if is_conjunctive(&phi) { (phi, neg) } else { (neg, phi) };
    let inner_bound = from_nat(2 * rank - 1);
    let conj_end = end.clone();
    let r = mk_conj(end.clone(), c.clone(), bound.clone(), 0, move |i| {
        let ci = component(&c, i).unwrap();
        let mut e = conj_end.clone();
        e.insert(ci.clone());
        let r = mk_disj(e.clone(), d.clone(), i.clone(), inner_bound.clone(), 0, move |_| em_node(ci.clone()));
        unwrap_node(r, &e, &inner_bound)
    });
    unwrap_node(r, &end, &bound)
}

/// The ω-rule over numerals: a conjunction node for `∀x.φ ∈ target` whose
/// premise at a closed term `t` is `premises(n)` for the value `n` of `t`,
/// with `φ[x/n̄]` replaced by `φ[x/t]`.
pub fn omega_rule_numerals(
    premises: impl Fn(u64) -> InfDerivation + Send + Sync + 'static,
    target: Sequent,
    all: Formula,
    bound: Ordinal,
    cut_rank: usize,
) -> Result<InfDerivation, InfError> {
    if !matches!(all, Formula::All(..)) {
        return Err(InfError::NotConjunctive(all));
    }
    let f = all.clone();
    mk_conj(target, all, bound.clone(), cut_rank, move |i| {
        let Index::Term(t) = i else { unreachable!("universal premises are indexed by terms") };
        match t.eval() {
            Ok(n) => {
                let p = premises(n);
                let from = f.instantiate(&Term::numeral(n)).unwrap();
                let to = f.instantiate(t).unwrap();
                replace(&p, vec![(from, to)])
            }
            Err(e) => InfDerivation::gap(Sequent::new(), bound.clone(), cut_rank, e.to_string()),
        }
    })
}

/// `∀x∀y(x = y ∧ Xx → Xy)`.
pub fn equality_axiom_x() -> Formula {
    let (x, y) = (Term::var("x"), Term::var("y"));
    let body = implies(&Formula::and(Formula::eq(x.clone(), y.clone()), Formula::x(x)), &Formula::x(y));
    Formula::all("x", Formula::all("y", body))
}

/// `⊢^6_0 ∀x∀y(x = y ∧ Xx → Xy)`.
pub fn derive_equality_axiom_x() -> InfDerivation {
    let root = equality_axiom_x();
    let end = seq([root.clone()]);
    let r = mk_conj(end.clone(), root.clone(), from_nat(6), 0, move |i| {
        let ys = component(&root, i).unwrap();
        let e = seq([ys.clone()]);
        let f = ys.clone();
        let r = mk_conj(e.clone(), ys, from_nat(5), 0, move |j| equality_instance(component(&f, j).unwrap()));
        unwrap_node(r, &e, &from_nat(5))
    });
    unwrap_node(r, &end, &from_nat(6))
}

/// `⊢^4_0 (¬s=t ∨ ¬Xs) ∨ Xt`.
fn equality_instance(f: Formula) -> InfDerivation {
    let a = component(&f, &Index::Bit(0)).unwrap();
    let xt = component(&f, &Index::Bit(1)).unwrap();
    let neq = component(&a, &Index::Bit(0)).unwrap();
    let nxs = component(&a, &Index::Bit(1)).unwrap();
    let build = || -> Result<InfDerivation, InfError> {
        let n0 = mk_axiom(seq([neq.clone(), nxs.clone(), xt.clone()]), from_nat(0), 0)?;
        let n1 = mk_disj_with(seq([a.clone(), nxs.clone(), xt.clone()]), a.clone(), Index::Bit(0), from_nat(1), 0, n0)?;
        let n2 = mk_disj_with(seq([a.clone(), xt.clone()]), a.clone(), Index::Bit(1), from_nat(2), 0, n1)?;
        let n3 = mk_disj_with(seq([f.clone(), xt.clone()]), f.clone(), Index::Bit(0), from_nat(3), 0, n2)?;
        mk_disj_with(seq([f.clone()]), f.clone(), Index::Bit(1), from_nat(4), 0, n3)
    };
    unwrap_node(build(), &seq([f.clone()]), &from_nat(4))
}

/// `ψ[x/0] ∧ ∀x(ψ → ψ[x/Sx]) → ∀x.ψ`.
pub fn induction_axiom(psi: &Formula, x: &str) -> Formula {
    let base = psi.substitute(x, &Term::Zero);
    let step = Formula::all(x, implies(psi, &psi.substitute(x, &Term::succ(Term::var(x)))));
    implies(&Formula::and(base, step), &Formula::all(x, psi.clone()))
}

/// `⊢^{ω+4}_0` of the induction axiom for `ψ`, whose only free variable is
/// `x`.
pub fn derive_induction(psi: &Formula, x: &str) -> Result<InfDerivation, InfError> {
    let extra: Vec<String> = psi.free_vars().into_iter().filter(|v| v != x).collect();
    if !extra.is_empty() {
        return Err(InfError::Precondition(format!("free variables other than {x}: {}", extra.join(", "))));
    }
    let f = induction_axiom(psi, x);
    check_sentence(&f)?;
    let l = component(&f, &Index::Bit(0)).unwrap();
    let c = component(&f, &Index::Bit(1)).unwrap();
    let a = component(&l, &Index::Bit(0)).unwrap();
    let b = component(&l, &Index::Bit(1)).unwrap();
    let ind = Arc::new(Induction { a: a.clone(), b: b.clone(), c: c.clone(), rank: psi.rank() });
    let omega = Ordinal::omega();
    let plus = |k: usize| add(&omega, &from_nat(k));
    let i2 = ind.clone();
    let top = omega_rule_numerals(move |n| i2.step(n), seq([a.clone(), b.clone(), c.clone()]), c.clone(), omega.clone(), 0)?;
    let n1 = mk_disj_with(seq([l.clone(), b.clone(), c.clone()]), l.clone(), Index::Bit(0), plus(1), 0, top)?;
    let n2 = mk_disj_with(seq([l.clone(), c.clone()]), l.clone(), Index::Bit(1), plus(2), 0, n1)?;
    let n3 = mk_disj_with(seq([f.clone(), c.clone()]), f.clone(), Index::Bit(0), plus(3), 0, n2)?;
    mk_disj_with(seq([f.clone()]), f.clone(), Index::Bit(1), plus(4), 0, n3)
}

struct Induction {
    a: Formula,
    b: Formula,
    c: Formula,
    rank: usize,
}

impl Induction {
    /// `⊢^{2(rk ψ + n)}_0 ¬ψ[x/0], ∃x(ψ ∧ ¬ψ[x/Sx]), ψ[x/n̄]`.
    fn step(self: &Arc<Self>, n: u64) -> InfDerivation {
        let psi_n = self.c.instantiate(&Term::numeral(n)).unwrap();
        let end = seq([self.a.clone(), self.b.clone(), psi_n.clone()]);
        let bound = from_nat(2 * (self.rank + n as usize));
        if n == 0 {
            return weaken_or_gap(&em_node(psi_n), &bound, 0, &end);
        }
        let me = self.clone();
        let r = (|| {
            let conj = self.b.instantiate(&Term::numeral(n - 1)).unwrap();
            let mut e = end.clone();
            e.insert(conj.clone());
            let mid = from_nat(2 * (self.rank + n as usize) - 1);
            let inner = mk_conj(e, conj, mid, 0, move |i| match i {
                Index::Bit(0) => me.step(n - 1),
                _ => em_node(me.c.instantiate(&Term::numeral(n)).unwrap()),
            })?;
            mk_disj_with(end.clone(), self.b.clone(), Index::Term(Term::numeral(n - 1)), bound.clone(), 0, inner)
        })();
        unwrap_node(r, &end, &bound)
    }
}

/// `⊢^{rk(x⊲y)+6}_0 Prog`.
pub fn derive_prog(order: &LhdOrder) -> InfDerivation {
    let prog = order.prog();
    let r = order.rank();
    let end = seq([prog.clone()]);
    let o = order.clone();
    let f = prog.clone();
    let res = mk_conj(end.clone(), prog, from_nat(r + 6), 0, move |i| {
        prog_instance(&o, component(&f, i).unwrap(), r)
    });
    unwrap_node(res, &end, &from_nat(r + 6))
}

/// `⊢^{r+5}_0 ∃y(y⊲t ∧ ¬Xy) ∨ Xt`.
fn prog_instance(order: &LhdOrder, pt: Formula, r: usize) -> InfDerivation {
    let e = component(&pt, &Index::Bit(0)).unwrap();
    let xt = component(&pt, &Index::Bit(1)).unwrap();
    let build = || -> Result<InfDerivation, InfError> {
        let e2 = e.clone();
        let prog = mk_prog(seq([e.clone(), xt.clone()]), xt.clone(), order.clone(), from_nat(r + 3), 0, move |i| {
            let Index::Term(s) = i else { unreachable!("progression premises are indexed by terms") };
            below(&e2, s, r)
        })?;
        let n4 = mk_disj_with(seq([pt.clone(), xt.clone()]), pt.clone(), Index::Bit(0), from_nat(r + 4), 0, prog)?;
        mk_disj_with(seq([pt.clone()]), pt.clone(), Index::Bit(1), from_nat(r + 5), 0, n4)
    };
    unwrap_node(build(), &seq([pt.clone()]), &from_nat(r + 5))
}

/// `⊢^{r+2}_0 ∃y(y⊲t ∧ ¬Xy), Xs` for `s ⊲ t`.
fn below(e: &Formula, s: &Term, r: usize) -> InfDerivation {
    let xs = Formula::x(s.clone());
    let conj = e.instantiate(s).unwrap();
    let lhd = component(&conj, &Index::Bit(0)).unwrap();
    let build = || -> Result<InfDerivation, InfError> {
        let truth = derive_truth(&lhd)?;
        let ax = mk_axiom(seq([xs.negate(), xs.clone()]), from_nat(0), 0)?;
        let c = mk_conj(seq([conj.clone(), xs.clone()]), conj.clone(), from_nat(r + 1), 0, move |i| match i {
            Index::Bit(0) => truth.clone(),
            _ => ax.clone(),
        })?;
        mk_disj_with(seq([e.clone(), xs.clone()]), e.clone(), Index::Term(s.clone()), from_nat(r + 2), 0, c)
    };
    unwrap_node(build(), &seq([e.clone(), xs.clone()]), &from_nat(r + 2))
}

/// Embeds a finitary derivation over arithmetic and `X`, closing its free
/// variables by `subst`. Premise bounds are heights, so the root bound is
/// the height of `d`.
pub fn embed_fin(d: &FinDerivation, subst: &BTreeMap<String, Term>) -> Result<InfDerivation, InfError> {
    d.check().map_err(|v| InfError::Precondition(format!("finitary derivation invalid: {v}")))?;
    if let Some((v, t)) = subst.iter().find(|(_, t)| !t.is_closed()) {
        return Err(InfError::Precondition(format!("substitution {v} := {t} is not closed")));
    }
    let mut free = std::collections::BTreeSet::new();
    d.conclusion.iter().for_each(|f| f.free_vars_into(&mut free));
    if let Some(v) = free.iter().find(|v| !subst.contains_key(*v)) {
        return Err(InfError::Precondition(format!("substitution does not close the conclusion: {v} is free")));
    }
    fin_arithmetic(d)?;
    let cut_rank = fin_cut_rank(d);
    Ok(embed_node(Arc::new(d.clone()), subst.clone(), cut_rank))
}

fn fin_arithmetic(d: &FinDerivation) -> Result<(), InfError> {
    for f in &d.conclusion {
        let mut syms = std::collections::BTreeSet::new();
        f.symbols_into(&mut syms);
        if syms.iter().any(|s| matches!(s, FnSym::Named(..))) || has_other_predicate(f) {
            return Err(InfError::NotArithmetic(f.clone()));
        }
    }
    d.premises.iter().try_for_each(fin_arithmetic)
}

fn fin_cut_rank(d: &FinDerivation) -> usize {
    let here = match &d.rule {
        Rule::Cut(f) => f.rank() + 1,
        _ => 0,
    };
    d.premises.iter().map(fin_cut_rank).fold(here, usize::max)
}

fn close_free(f: &Formula, subst: &mut BTreeMap<String, Term>) {
    for v in f.free_vars() {
        subst.entry(v).or_insert(Term::Zero);
    }
}

fn instance(f: &Formula, subst: &BTreeMap<String, Term>) -> Formula {
    let pairs: Vec<(String, Term)> = subst.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    f.substitute_all(&pairs)
}

fn embed_node(d: Arc<FinDerivation>, mut subst: BTreeMap<String, Term>, cut_rank: usize) -> InfDerivation {
    d.conclusion.iter().for_each(|f| close_free(f, &mut subst));
    let end: Sequent = d.conclusion.iter().map(|f| instance(f, &subst)).collect();
    let bound = from_nat(d.height());
    let premise = |k: usize| Arc::new(d.premises[k].clone());
    let r = match &d.rule {
        Rule::Axiom(_) => mk_axiom(end.clone(), bound.clone(), cut_rank),
        Rule::And(f) => {
            let ps = [premise(0), premise(1)];
            let s = subst.clone();
            mk_conj(end.clone(), instance(f, &subst), bound.clone(), cut_rank, move |i| {
                let Index::Bit(k) = i else { unreachable!("conjunction premises are indexed by bits") };
                embed_node(ps[*k as usize].clone(), s.clone(), cut_rank)
            })
        }
        Rule::Or(f, side) => {
            let p = embed_node(premise(0), subst.clone(), cut_rank);
            mk_disj_with(end.clone(), instance(f, &subst), Index::Bit(*side as u8), bound.clone(), cut_rank, p)
        }
        Rule::All(f, y) => {
            let p = premise(0);
            let (s, y) = (subst.clone(), y.clone());
            mk_conj(end.clone(), instance(f, &subst), bound.clone(), cut_rank, move |i| {
                let Index::Term(t) = i else { unreachable!("universal premises are indexed by terms") };
                let mut s = s.clone();
                s.insert(y.clone(), t.clone());
                embed_node(p.clone(), s, cut_rank)
            })
        }
        Rule::Ex(f, w) => {
            let mut s = subst.clone();
            for v in w.free_vars() {
                s.entry(v).or_insert(Term::Zero);
            }
            let witness = s.iter().fold(w.clone(), |t, (v, r)| t.substitute(v, r));
            let p = embed_node(premise(0), s, cut_rank);
            mk_disj_with(end.clone(), instance(f, &subst), Index::Term(witness), bound.clone(), cut_rank, p)
        }
        Rule::Cut(f) => {
            let mut s = subst.clone();
            close_free(f, &mut s);
            let ps = [premise(0), premise(1)];
            let cf = instance(f, &s);
            mk_cut(end.clone(), cf, bound.clone(), cut_rank, move |i| {
                let Index::Bit(k) = i else { unreachable!("cut premises are indexed by bits") };
                embed_node(ps[*k as usize].clone(), s.clone(), cut_rank)
            })
        }
    };
    r.unwrap_or_else(|e| InfDerivation::gap(end, bound, cut_rank, e.to_string()))
}
