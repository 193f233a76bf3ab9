use std::fmt;
use std::sync::Arc;

use gforge_ordinals::{compare, Ordinal};
use gforge_syntax::{component, decompose, print_sequent, Formula, Index, IndexSet, Kind, Rel, Sequent, Term};
use thiserror::Error;

use crate::order::LhdOrder;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InfError {
    #[error("{0} is not in the end sequent")]
    NotInEnd(Formula),
    #[error("end sequent contains the open formula {0}")]
    NotClosed(Formula),
    #[error("no axiom: the end sequent has no true literal and no matching X pair")]
    NoAxiom,
    #[error("{0} is not conjunctive")]
    NotConjunctive(Formula),
    #[error("{0} is not disjunctive")]
    NotDisjunctive(Formula),
    #[error("index {index} is not valid for {formula}")]
    BadIndex { formula: Formula, index: Index },
    #[error("cut formula {formula} has rank {rank}, which is not below the cut rank {cut_rank}")]
    CutRank { formula: Formula, rank: usize, cut_rank: usize },
    #[error("bound decrease from {from} to {to}")]
    BoundDecrease { from: String, to: String },
    #[error("cut rank decrease from {from} to {to}")]
    CutRankDecrease { from: usize, to: usize },
    #[error("values differ: {0} and {1}")]
    UnequalValues(Formula, Formula),
    #[error("{0} is false")]
    False(Formula),
    #[error("{0} is not an arithmetic sentence")]
    NotArithmetic(Formula),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// The inference at a node.
#[derive(Clone, Debug)]
pub enum InfRule {
    /// A true arithmetic literal.
    AxiomTrue(Formula),
    /// `Xs` and `¬Xt` with equal values.
    AxiomX(Formula, Formula),
    /// Premises at every index of the principal formula.
    Conj(Formula),
    /// One premise at the chosen index.
    Disj(Formula, Index),
    /// The progression rule at `Xt`: premises at the closed `s ⊲ t`.
    Prog(Formula, LhdOrder),
    /// Premise `0` adds the cut formula, premise `1` its negation.
    Cut(Formula),
    /// Produced by a lazy construction whose precondition failed at this
    /// node; never valid.
    Gap(String),
}

impl InfRule {
    pub fn name(&self) -> &'static str {
        match self {
            InfRule::AxiomTrue(_) => "axiom-true",
            InfRule::AxiomX(..) => "axiom-x",
            InfRule::Conj(_) => "conj",
            InfRule::Disj(..) => "disj",
            InfRule::Prog(..) => "prog",
            InfRule::Cut(_) => "cut",
            InfRule::Gap(_) => "gap",
        }
    }

    /// The formula the rule acts on; for a cut, the cut formula.
    pub fn formula(&self) -> Option<&Formula> {
        match self {
            InfRule::AxiomTrue(f) | InfRule::Conj(f) | InfRule::Disj(f, _) | InfRule::Prog(f, _) | InfRule::Cut(f) => {
                Some(f)
            }
            InfRule::AxiomX(..) | InfRule::Gap(_) => None,
        }
    }
}

pub(crate) type PremiseFn = Arc<dyn Fn(&Index) -> InfDerivation + Send + Sync>;

struct Node {
    end: Sequent,
    bound: Ordinal,
    cut_rank: usize,
    rule: InfRule,
    premise: Option<PremiseFn>,
}

/// A node `⊢^α_d Γ` of a possibly infinite derivation. Premises are
/// computed on demand.
#[derive(Clone)]
pub struct InfDerivation(Arc<Node>);

impl fmt::Debug for InfDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|-^{:?}_{} {} [{}]", self.0.bound, self.0.cut_rank, print_sequent(&self.0.end), self.0.rule.name())
    }
}

impl InfDerivation {
    pub(crate) fn raw(
        end: Sequent,
        bound: Ordinal,
        cut_rank: usize,
        rule: InfRule,
        premise: Option<PremiseFn>,
    ) -> InfDerivation {
        InfDerivation(Arc::new(Node { end, bound, cut_rank, rule, premise }))
    }

    pub(crate) fn gap(end: Sequent, bound: Ordinal, cut_rank: usize, msg: String) -> InfDerivation {
        InfDerivation::raw(end, bound, cut_rank, InfRule::Gap(msg), None)
    }

    pub fn end(&self) -> &Sequent {
        &self.0.end
    }

    pub fn bound(&self) -> &Ordinal {
        &self.0.bound
    }

    pub fn cut_rank(&self) -> usize {
        self.0.cut_rank
    }

    pub fn rule(&self) -> &InfRule {
        &self.0.rule
    }

    pub(crate) fn premise_fn(&self) -> Option<PremiseFn> {
        self.0.premise.clone()
    }

    pub fn is_valid_index(&self, i: &Index) -> bool {
        match &self.0.rule {
            InfRule::Conj(f) => decompose(f).map(|d| d.index.contains(i)).unwrap_or(false),
            InfRule::Disj(_, j) => i == j,
            InfRule::Prog(xt, ord) => match (i, x_term(xt)) {
                (Index::Term(s), Some(t)) => s.is_closed() && ord.lhd_terms(s, t),
                _ => false,
            },
            InfRule::Cut(_) => matches!(i, Index::Bit(0 | 1)),
            InfRule::AxiomTrue(_) | InfRule::AxiomX(..) | InfRule::Gap(_) => false,
        }
    }

    /// The formula `φ_i` a premise at `i` may add to the end sequent.
    pub fn minor(&self, i: &Index) -> Option<Formula> {
        if !self.is_valid_index(i) {
            return None;
        }
        match (&self.0.rule, i) {
            (InfRule::Conj(f) | InfRule::Disj(f, _), _) => component(f, i),
            (InfRule::Prog(..), Index::Term(s)) => Some(Formula::x(s.clone())),
            (InfRule::Cut(f), Index::Bit(0)) => Some(f.clone()),
            (InfRule::Cut(f), Index::Bit(_)) => Some(f.negate()),
            _ => None,
        }
    }

    /// The premise at `i`, or `None` when `i` is not a premise index.
    pub fn premise(&self, i: &Index) -> Option<InfDerivation> {
        if !self.is_valid_index(i) {
            return None;
        }
        self.0.premise.as_ref().map(|p| p(i))
    }

    /// Follows a path of premise indices from this node.
    pub fn at_path(&self, path: &[Index]) -> Option<InfDerivation> {
        let mut d = self.clone();
        for i in path {
            d = d.premise(i)?;
        }
        Some(d)
    }

    /// Premise at `i`; a gap node when the index is invalid.
    pub(crate) fn premise_or_gap(&self, i: &Index) -> InfDerivation {
        self.premise(i).unwrap_or_else(|| {
            InfDerivation::gap(self.end().clone(), self.bound().clone(), self.cut_rank(), format!("no premise at {i}"))
        })
    }
}

/// The term `t` of `Xt`.
pub(crate) fn x_term(f: &Formula) -> Option<&Term> {
    match f {
        Formula::Prime(Rel::X, args) if args.len() == 1 => Some(&args[0]),
        _ => None,
    }
}

fn check_closed(end: &Sequent) -> Result<(), InfError> {
    match end.iter().find(|f| !f.is_closed()) {
        Some(f) => Err(InfError::NotClosed(f.clone())),
        None => Ok(()),
    }
}

fn require_in(end: &Sequent, f: &Formula) -> Result<(), InfError> {
    if end.contains(f) {
        Ok(())
    } else {
        Err(InfError::NotInEnd(f.clone()))
    }
}

/// Whether `f` is a true arithmetic literal.
pub(crate) fn is_true_literal(f: &Formula) -> bool {
    f.is_literal() && !f.mentions_x() && f.eval_literal() == Ok(true)
}

/// The pair `Xs, ¬Xt` with equal values, if the sequent has one.
pub(crate) fn x_pair(end: &Sequent) -> Option<(Formula, Formula)> {
    for pos in end.iter().filter(|f| x_term(f).is_some()) {
        let s = x_term(pos).unwrap().eval();
        for neg in end.iter().filter(|f| matches!(f, Formula::NegPrime(Rel::X, _))) {
            if s.is_ok() && x_term(&neg.negate()).map(|t| t.eval()) == Some(s.clone()) {
                return Some((pos.clone(), neg.clone()));
            }
        }
    }
    None
}

/// Axiom node; a true literal is preferred over an `X` pair.
pub fn mk_axiom(end: Sequent, bound: Ordinal, cut_rank: usize) -> Result<InfDerivation, InfError> {
    check_closed(&end)?;
    if let Some(lit) = end.iter().find(|f| is_true_literal(f)).cloned() {
        return Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::AxiomTrue(lit), None));
    }
    match x_pair(&end) {
        Some((p, n)) => Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::AxiomX(p, n), None)),
        None => Err(InfError::NoAxiom),
    }
}

pub fn mk_conj(
    end: Sequent,
    principal: Formula,
    bound: Ordinal,
    cut_rank: usize,
    premise: impl Fn(&Index) -> InfDerivation + Send + Sync + 'static,
) -> Result<InfDerivation, InfError> {
    check_closed(&end)?;
    require_in(&end, &principal)?;
    match decompose(&principal) {
        Ok(d) if d.kind == Kind::Conjunctive && d.index != IndexSet::Empty => {}
        _ => return Err(InfError::NotConjunctive(principal)),
    }
    Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::Conj(principal), Some(Arc::new(premise))))
}

pub fn mk_disj(
    end: Sequent,
    principal: Formula,
    index: Index,
    bound: Ordinal,
    cut_rank: usize,
    premise: impl Fn(&Index) -> InfDerivation + Send + Sync + 'static,
) -> Result<InfDerivation, InfError> {
    check_closed(&end)?;
    require_in(&end, &principal)?;
    match decompose(&principal) {
        Ok(d) if d.kind == Kind::Disjunctive && d.index.contains(&index) => {}
        Ok(d) if d.kind == Kind::Disjunctive => return Err(InfError::BadIndex { formula: principal, index }),
        _ => return Err(InfError::NotDisjunctive(principal)),
    }
    Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::Disj(principal, index), Some(Arc::new(premise))))
}

/// Disjunction node whose single premise is given directly.
pub fn mk_disj_with(
    end: Sequent,
    principal: Formula,
    index: Index,
    bound: Ordinal,
    cut_rank: usize,
    premise: InfDerivation,
) -> Result<InfDerivation, InfError> {
    mk_disj(end, principal, index, bound, cut_rank, move |_| premise.clone())
}

pub fn mk_prog(
    end: Sequent,
    xt: Formula,
    order: LhdOrder,
    bound: Ordinal,
    cut_rank: usize,
    premise: impl Fn(&Index) -> InfDerivation + Send + Sync + 'static,
) -> Result<InfDerivation, InfError> {
    check_closed(&end)?;
    require_in(&end, &xt)?;
    if x_term(&xt).is_none() {
        return Err(InfError::Precondition(format!("{xt} is not of the form Xt")));
    }
    Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::Prog(xt, order), Some(Arc::new(premise))))
}

pub fn mk_cut(
    end: Sequent,
    formula: Formula,
    bound: Ordinal,
    cut_rank: usize,
    premise: impl Fn(&Index) -> InfDerivation + Send + Sync + 'static,
) -> Result<InfDerivation, InfError> {
    check_closed(&end)?;
    if !formula.is_closed() {
        return Err(InfError::NotClosed(formula));
    }
    if formula.rank() >= cut_rank {
        let rank = formula.rank();
        return Err(InfError::CutRank { formula, rank, cut_rank });
    }
    Ok(InfDerivation::raw(end, bound, cut_rank, InfRule::Cut(formula), Some(Arc::new(premise))))
}

/// Enlarges the end sequent, bound and cut rank; the rule and premises are
/// shared with `d`.
pub fn weaken(d: &InfDerivation, bound: Ordinal, cut_rank: usize, extra: &Sequent) -> Result<InfDerivation, InfError> {
    if compare(d.bound(), &bound) == std::cmp::Ordering::Greater {
        return Err(InfError::BoundDecrease { from: format!("{:?}", d.bound()), to: format!("{bound:?}") });
    }
    if d.cut_rank() > cut_rank {
        return Err(InfError::CutRankDecrease { from: d.cut_rank(), to: cut_rank });
    }
    check_closed(extra)?;
    if extra.is_subset(d.end()) && bound == *d.bound() && cut_rank == d.cut_rank() {
        return Ok(d.clone());
    }
    let mut end = d.end().clone();
    end.extend(extra.iter().cloned());
    Ok(InfDerivation::raw(end, bound, cut_rank, d.rule().clone(), d.premise_fn()))
}

/// [`weaken`] inside lazy constructions, where a failure becomes a gap node.
pub(crate) fn weaken_or_gap(d: &InfDerivation, bound: &Ordinal, cut_rank: usize, extra: &Sequent) -> InfDerivation {
    weaken(d, bound.clone(), cut_rank, extra).unwrap_or_else(|e| {
        let mut end = d.end().clone();
        end.extend(extra.iter().cloned());
        InfDerivation::gap(end, bound.clone(), cut_rank, e.to_string())
    })
}

/// Replaces `from` by the value equivalent `to` throughout the derivation;
/// bound and cut rank stay the same.
pub fn same_value_replace(d: &InfDerivation, from: &Formula, to: &Formula) -> Result<InfDerivation, InfError> {
    if !from.is_closed() || !to.is_closed() {
        return Err(InfError::Precondition("replaced formulas must be closed".into()));
    }
    if !from.value_equivalent(to) {
        return Err(InfError::UnequalValues(from.clone(), to.clone()));
    }
    Ok(replace(d, vec![(from.clone(), to.clone())]))
}

pub(crate) fn replace(d: &InfDerivation, pairs: Vec<(Formula, Formula)>) -> InfDerivation {
    let pairs: Vec<(Formula, Formula)> = pairs.into_iter().filter(|(f, t)| f != t && d.end().contains(f)).collect();
    if pairs.is_empty() {
        return d.clone();
    }
    let sub = {
        let pairs = pairs.clone();
        move |f: &Formula| pairs.iter().find(|(a, _)| a == f).map(|(_, b)| b.clone()).unwrap_or_else(|| f.clone())
    };
    let end: Sequent = d.end().iter().map(&sub).collect();
    let rule = match d.rule() {
        InfRule::AxiomTrue(l) => InfRule::AxiomTrue(sub(l)),
        InfRule::AxiomX(a, b) => InfRule::AxiomX(sub(a), sub(b)),
        InfRule::Conj(f) => InfRule::Conj(sub(f)),
        InfRule::Disj(f, i) => InfRule::Disj(sub(f), i.clone()),
        InfRule::Prog(f, o) => InfRule::Prog(sub(f), o.clone()),
        other => other.clone(),
    };
    let principal = match d.rule() {
        InfRule::Conj(f) | InfRule::Disj(f, _) => pairs.iter().find(|(a, _)| a == f).cloned(),
        _ => None,
    };
    let orig = d.clone();
    let premise: Option<PremiseFn> = d.premise_fn().map(|_| {
        Arc::new(move |i: &Index| {
            let mut ps = pairs.clone();
            if let Some((a, b)) = &principal {
                if let (Some(ai), Some(bi)) = (component(a, i), component(b, i)) {
                    ps.push((ai, bi));
                }
            }
            replace(&orig.premise_or_gap(i), ps)
        }) as PremiseFn
    });
    InfDerivation::raw(end, d.bound().clone(), d.cut_rank(), rule, premise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gforge_ordinals::from_nat;
    use gforge_syntax::parse_formula;

    fn seq(items: &[&str]) -> Sequent {
        items.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    #[test]
    fn axioms() {
        let d = mk_axiom(seq(&["0=0"]), from_nat(0), 0).unwrap();
        assert!(matches!(d.rule(), InfRule::AxiomTrue(_)));
        let d = mk_axiom(seq(&["X(S(0))", "!X((0+S(0)))"]), from_nat(0), 0).unwrap();
        assert!(matches!(d.rule(), InfRule::AxiomX(..)));
        assert_eq!(mk_axiom(seq(&["X(S(0))", "!X(0)"]), from_nat(0), 0).unwrap_err(), InfError::NoAxiom);
        assert!(matches!(mk_axiom(seq(&["X(x)"]), from_nat(0), 0), Err(InfError::NotClosed(_))));
    }

    #[test]
    fn cut_rank_is_strict() {
        let ax = mk_axiom(seq(&["0=0"]), from_nat(0), 0).unwrap();
        let phi = parse_formula("((0=0 & 0=0) | (0=0 & (0=0 | 0=0)))").unwrap();
        assert_eq!(phi.rank(), 3);
        let err = mk_cut(seq(&["0=0"]), phi.clone(), from_nat(1), 3, move |_| ax.clone()).unwrap_err();
        assert!(matches!(err, InfError::CutRank { rank: 3, cut_rank: 3, .. }));
    }

    #[test]
    fn replacement_keeps_axioms_valid() {
        let d = mk_axiom(seq(&["X(S(0))", "!X(S(0))"]), from_nat(0), 0).unwrap();
        let from = parse_formula("X(S(0))").unwrap();
        let to = parse_formula("X((0+S(0)))").unwrap();
        let r = same_value_replace(&d, &from, &to).unwrap();
        assert!(r.end().contains(&to) && !r.end().contains(&from));
        assert_eq!(x_pair(r.end()).map(|p| p.0), Some(to.clone()));
        assert!(same_value_replace(&d, &from, &parse_formula("X(0)").unwrap()).is_err());
        let same = same_value_replace(&d, &from, &from).unwrap();
        assert!(Arc::ptr_eq(&same.0, &d.0));
    }

    #[test]
    fn weakening() {
        let d = mk_axiom(seq(&["0=0"]), from_nat(1), 0).unwrap();
        assert!(Arc::ptr_eq(&weaken(&d, from_nat(1), 0, &Sequent::new()).unwrap().0, &d.0));
        assert!(matches!(weaken(&d, from_nat(0), 0, &Sequent::new()), Err(InfError::BoundDecrease { .. })));
        let w = weaken(&d, from_nat(2), 1, &seq(&["X(0)"])).unwrap();
        assert_eq!(w.end().len(), 2);
        assert_eq!(w.bound(), &from_nat(2));
    }
}
