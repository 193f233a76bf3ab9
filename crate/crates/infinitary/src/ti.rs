use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use gforge_ordinals::{add, compare, from_nat, succ, Ordinal};
use gforge_syntax::{component, Formula, Index, Sequent, Term};

use crate::node::{mk_axiom, mk_conj, mk_cut, mk_disj_with, weaken, x_term, InfDerivation, InfError, InfRule};
use crate::order::LhdOrder;

/// `∃x.¬Xx`.
fn some_not_x() -> Formula {
    Formula::ex("x", Formula::x(Term::var("x")).negate())
}

/// From `⊢^α_d TI` and `⊢^α'_e Prog` with `α' ⪯ α` build `⊢^{α+2} X n̄` by
/// a cut on `TI` against `Prog ∧ ∃x.¬Xx`.
pub fn assemble_ti(ti: &InfDerivation, prog: &InfDerivation, order: &LhdOrder, n: u64) -> Result<InfDerivation, InfError> {
    let ti_f = order.ti();
    let prog_f = order.prog();
    if ti.end() != &Sequent::from([ti_f.clone()]) {
        return Err(InfError::Precondition("the first derivation must end in exactly TI".into()));
    }
    if prog.end() != &Sequent::from([prog_f.clone()]) {
        return Err(InfError::Precondition("the second derivation must end in exactly Prog".into()));
    }
    let alpha = ti.bound().clone();
    if compare(prog.bound(), &alpha) == Ordering::Greater {
        return Err(InfError::Precondition("the Prog derivation has a larger bound than the TI derivation".into()));
    }
    if alpha.is_zero() {
        return Err(InfError::Precondition("the TI derivation has bound 0".into()));
    }
    let xn = Formula::x(Term::numeral(n));
    let ex = some_not_x();
    let conj = Formula::and(prog_f, ex.clone());
    let leaf = mk_axiom(Sequent::from([xn.negate(), xn.clone()]), from_nat(0), 0)?;
    let one = mk_disj_with(Sequent::from([ex.clone(), xn.clone()]), ex, Index::Term(Term::numeral(n)), from_nat(1), 0, leaf)?;
    let p = weaken(prog, alpha.clone(), prog.cut_rank(), &Sequent::new())?;
    let conj_node = mk_conj(
        Sequent::from([conj.clone(), xn.clone()]),
        conj.clone(),
        succ(&alpha),
        prog.cut_rank(),
        move |i| match i {
            Index::Bit(0) => p.clone(),
            _ => one.clone(),
        },
    )?;
    let d = ti.cut_rank().max(prog.cut_rank()).max(conj.rank() + 1);
    let ti = ti.clone();
    mk_cut(Sequent::from([xn]), ti_f, add(&alpha, &from_nat(2)), d, move |i| match i {
        Index::Bit(0) => ti.clone(),
        _ => conj_node.clone(),
    })
}

/// A cut free derivation of `TI` for a finite order. The node for `Xt`
/// derives `¬Prog, Xt` by choosing the witness `t` in `¬Prog`; below `t`
/// it refers to the nodes for the predecessors.
pub fn derive_ti_finite(order: &LhdOrder) -> InfDerivation {
    let r = order.rank();
    let mut beta: BTreeMap<u64, usize> = BTreeMap::new();
    for v in 0..order.len() {
        compute_beta(order, v, r, &mut beta);
    }
    let top = beta.values().copied().fold(r + 4, usize::max);
    let ti = order.ti();
    let not_prog = component(&ti, &Index::Bit(0)).unwrap();
    let all_x = component(&ti, &Index::Bit(1)).unwrap();
    let fin = Arc::new(FiniteTi { order: order.clone(), not_prog: not_prog.clone(), beta, rank: r });
    let build = || -> Result<InfDerivation, InfError> {
        let f = fin.clone();
        let all = mk_conj(Sequent::from([not_prog.clone(), all_x.clone()]), all_x, from_nat(top + 1), 0, move |i| {
            let Index::Term(t) = i else { unreachable!("universal premises are indexed by terms") };
            f.node(t)
        })?;
        let n1 = mk_disj_with(Sequent::from([ti.clone(), not_prog.clone()]), ti.clone(), Index::Bit(1), from_nat(top + 2), 0, all)?;
        mk_disj_with(Sequent::from([ti.clone()]), ti.clone(), Index::Bit(0), from_nat(top + 3), 0, n1)
    };
    build().unwrap_or_else(|e| InfDerivation::gap(Sequent::from([order.ti()]), from_nat(top + 3), 0, e.to_string()))
}

fn compute_beta(order: &LhdOrder, v: u64, r: usize, memo: &mut BTreeMap<u64, usize>) -> usize {
    if let Some(b) = memo.get(&v) {
        return *b;
    }
    let below = order.predecessors(v).into_iter().map(|m| compute_beta(order, m, r, memo)).fold(r, usize::max);
    memo.insert(v, below + 4);
    below + 4
}

struct FiniteTi {
    order: LhdOrder,
    not_prog: Formula,
    beta: BTreeMap<u64, usize>,
    rank: usize,
}

impl FiniteTi {
    fn beta(&self, t: &Term) -> usize {
        t.eval().ok().and_then(|v| self.beta.get(&v).copied()).unwrap_or(self.rank + 4)
    }

    /// `⊢^{β(t)}_0 ¬Prog, Xt`.
    fn node(self: &Arc<Self>, t: &Term) -> InfDerivation {
        let xt = Formula::x(t.clone());
        let gamma = Sequent::from([self.not_prog.clone(), xt.clone()]);
        let b = self.beta(t);
        let gamma_b = gamma.clone();
        let build = || -> Result<InfDerivation, InfError> {
            let c = self.not_prog.instantiate(t).unwrap();
            let a = component(&c, &Index::Bit(0)).unwrap();
            let with = |f: &Formula| {
                let mut s = gamma.clone();
                s.insert(f.clone());
                s
            };
            let ax = mk_axiom(with(&xt.negate()), from_nat(0), 0)?;
            let me = self.clone();
            let (a2, t2) = (a.clone(), t.clone());
            let gamma2 = gamma.clone();
            let all = mk_conj(with(&a), a.clone(), from_nat(b - 2), 0, move |i| {
                let Index::Term(s) = i else { unreachable!("universal premises are indexed by terms") };
                me.instance(&gamma2, &a2, &t2, s, b - 3)
            })?;
            let conj = mk_conj(with(&c), c.clone(), from_nat(b - 1), 0, move |i| match i {
                Index::Bit(0) => all.clone(),
                _ => ax.clone(),
            })?;
            mk_disj_with(gamma.clone(), self.not_prog.clone(), Index::Term(t.clone()), from_nat(b), 0, conj)
        };
        build().unwrap_or_else(|e| InfDerivation::gap(gamma_b, from_nat(b), 0, e.to_string()))
    }

    /// `⊢^{bound}_0 Γ, ¬s⊲t ∨ Xs`.
    fn instance(self: &Arc<Self>, gamma: &Sequent, a: &Formula, t: &Term, s: &Term, bound: usize) -> InfDerivation {
        let bs = a.instantiate(s).unwrap();
        let mut end = gamma.clone();
        end.insert(bs.clone());
        let r = if self.order.lhd_terms(s, t) {
            mk_disj_with(end.clone(), bs, Index::Bit(1), from_nat(bound), 0, self.node(s))
        } else {
            let not_lhd = component(&bs, &Index::Bit(0)).unwrap();
            crate::build::derive_truth(&not_lhd)
                .and_then(|p| mk_disj_with(end.clone(), bs, Index::Bit(0), from_nat(bound), 0, p))
        };
        r.unwrap_or_else(|e| InfDerivation::gap(end, from_nat(bound), 0, e.to_string()))
    }
}

/// An assignment `o` on part of the domain of a finite order with
/// `m ⊲ n ⇒ o(m) ≺ o(n)` and `o(witness) ⪯ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    /// `o` on `witness` and everything below it.
    pub assignment: BTreeMap<u64, Ordinal>,
    pub witness: u64,
    pub bound: Ordinal,
}

impl RankCertificate {
    /// Re-checks both invariants.
    pub fn verify(&self, order: &LhdOrder) -> Result<(), String> {
        for (m, om) in &self.assignment {
            if compare(om, &self.bound) == Ordering::Greater {
                return Err(format!("o({m}) = {om:?} exceeds the bound {:?}", self.bound));
            }
            for (n, on) in &self.assignment {
                if order.lhd(*m, *n) && compare(om, on) != Ordering::Less {
                    return Err(format!("{m} ⊲ {n} but o({m}) = {om:?} is not below o({n}) = {on:?}"));
                }
            }
        }
        if !self.assignment.contains_key(&self.witness) {
            return Err(format!("o({}) is not assigned", self.witness));
        }
        Ok(())
    }
}

/// `o(n)`: the least ordinal above `o(m)` for all `m ⊲ n`.
pub fn o_function(order: &LhdOrder, n: u64, memo: &mut BTreeMap<u64, Ordinal>) -> Ordinal {
    if let Some(o) = memo.get(&n) {
        return o.clone();
    }
    let mut least = from_nat(0);
    for m in order.predecessors(n) {
        let om = o_function(order, m, memo);
        if compare(&om, &least) != Ordering::Less {
            least = succ(&om);
        }
    }
    memo.insert(n, least.clone());
    least
}

/// Follows a cut free derivation of X atoms along its progression
/// inferences and certifies `o(t) ⪯ α` for one atom `Xt` of the end
/// sequent.
pub fn rank_extract(d: &InfDerivation, order: &LhdOrder) -> Result<RankCertificate, InfError> {
    if d.cut_rank() != 0 {
        return Err(InfError::Precondition("the derivation has cut rank above 0".into()));
    }
    if let Some(f) = d.end().iter().find(|f| x_term(f).is_none()) {
        return Err(InfError::Precondition(format!("{f} is not an X atom")));
    }
    let mut memo = BTreeMap::new();
    let witness = certify(d, order, &mut memo)?;
    let mut assignment = BTreeMap::new();
    for (v, o) in &memo {
        if *v == witness || order.lhd(*v, witness) {
            assignment.insert(*v, o.clone());
        }
    }
    assignment.insert(witness, o_function(order, witness, &mut memo));
    Ok(RankCertificate { assignment, witness, bound: d.bound().clone() })
}

fn value_of(f: &Formula) -> Option<u64> {
    x_term(f).and_then(|t| t.eval().ok())
}

/// The value `v` of an atom of `d`'s end sequent with `o(v) ⪯ d.bound`.
fn certify(d: &InfDerivation, order: &LhdOrder, memo: &mut BTreeMap<u64, Ordinal>) -> Result<u64, InfError> {
    let xt = match d.rule() {
        InfRule::Prog(xt, _) => xt.clone(),
        other => {
            return Err(InfError::Precondition(format!("probe reached a {} node, expected prog", other.name())));
        }
    };
    let v = value_of(&xt).ok_or_else(|| InfError::Precondition(format!("{xt} has no value")))?;
    let atoms: Vec<u64> = d.end().iter().filter_map(value_of).collect();
    for m in order.predecessors(v) {
        let p = d
            .premise(&Index::Term(Term::numeral(m)))
            .ok_or_else(|| InfError::Precondition(format!("no premise at {m}")))?;
        if compare(p.bound(), d.bound()) != Ordering::Less {
            return Err(InfError::Precondition("bound not decreasing".into()));
        }
        let w = certify(&p, order, memo)?;
        if atoms.contains(&w) {
            return Ok(w);
        }
        if w != m {
            return Err(InfError::Precondition(format!("premise at {m} certifies the foreign value {w}")));
        }
    }
    let ov = o_function(order, v, memo);
    if compare(&ov, d.bound()) == Ordering::Greater {
        return Err(InfError::Precondition(format!("o({v}) = {ov:?} exceeds the bound {:?}", d.bound())));
    }
    Ok(v)
}
