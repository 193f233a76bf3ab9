use std::collections::BTreeSet;

use gforge_syntax::{first_var_not_in, fresh_name, Formula, FnSym, Sequent, Term, TermEnumerator};
use thiserror::Error;

use crate::derivation::{FinDerivation, Rule};

/// Number of enumerated terms a quantifier is probed at when a formula is
/// evaluated in a term model; terms occurring in the branch are added.
pub const DEFAULT_PROBE: usize = 64;

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(FinDerivation),
    /// The leftmost branch still open at the fuel horizon, one ordered
    /// sequent per level, and the model it determines.
    Exhausted { branch: Vec<Vec<Formula>>, model: TermModel },
}

impl SearchOutcome {
    pub fn derivation(&self) -> Option<&FinDerivation> {
        match self {
            SearchOutcome::Found(d) => Some(d),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("branch is closable: contains {0} and its negation")]
    Closable(Formula),
}

fn closing_literal(s: &Sequent) -> Option<Formula> {
    s.iter()
        .find(|f| matches!(f, Formula::Prime(..)) && s.contains(&f.negate()))
        .cloned()
}

/// Term universe over the symbols of `formulas`, including variables, with
/// a fresh constant when no constant occurs.
pub fn universe_for<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> TermEnumerator {
    let mut syms = BTreeSet::new();
    for f in formulas {
        f.symbols_into(&mut syms);
    }
    if !syms.iter().any(|s| s.arity() == 0) {
        let names = syms
            .iter()
            .filter_map(|s| match s {
                FnSym::Named(n, _) => Some(n.clone()),
                _ => None,
            })
            .collect();
        syms.insert(FnSym::Named(fresh_name("c", &names), 0));
    }
    TermEnumerator::new(syms.into_iter().collect(), true)
}

struct Search {
    terms: TermEnumerator,
    fuel: usize,
}

impl Search {
    /// Either a derivation of `seq` or the open branch below it, deepest
    /// sequent first.
    fn run(&mut self, seq: Vec<Formula>, depth: usize) -> Result<FinDerivation, Vec<Vec<Formula>>> {
        let set: Sequent = seq.iter().cloned().collect();
        if let Some(theta) = closing_literal(&set) {
            return Ok(FinDerivation::new(Rule::Axiom(theta), set, Vec::new()));
        }
        if depth >= self.fuel || seq.is_empty() {
            return Err(vec![seq]);
        }
        let phi = seq[0].clone();
        let delta = &seq[1..];
        let extend = |extra: Option<Formula>| {
            let mut next: Vec<Formula> = delta.to_vec();
            next.push(phi.clone());
            if let Some(e) = extra {
                if !next.contains(&e) {
                    next.push(e);
                }
            }
            next
        };
        let res = match &phi {
            Formula::Prime(..) | Formula::NegPrime(..) => self.run(extend(None), depth + 1),
            // A left premise with the same set as the conclusion derives it
            // on its own; the right premise is then not explored.
            Formula::And(a, _) if delta.contains(a) => self.run(extend(None), depth + 1),
            Formula::And(a, b) => {
                match self.run(extend(Some((**a).clone())), depth + 1) {
                    Err(branch) => Err(branch),
                    Ok(left) => self
                        .run(extend(Some((**b).clone())), depth + 1)
                        .map(|r| FinDerivation::new(Rule::And(phi.clone()), set, vec![left, r])),
                }
            }
            Formula::Or(a, b) => {
                let side = if delta.contains(a) { 1 } else { 0 };
                let minor = if side == 0 { a } else { b };
                self.run(extend(Some((**minor).clone())), depth + 1)
                    .map(|p| FinDerivation::new(Rule::Or(phi.clone(), side), set, vec![p]))
            }
            Formula::All(..) => {
                let mut free = BTreeSet::new();
                seq.iter().for_each(|f| f.free_vars_into(&mut free));
                let y = first_var_not_in(&free);
                let minor = phi.instantiate(&Term::var(&y)).expect("quantifier");
                self.run(extend(Some(minor)), depth + 1)
                    .map(|p| FinDerivation::new(Rule::All(phi.clone(), y), set, vec![p]))
            }
            Formula::Ex(..) => {
                // Distinct terms give distinct instances unless the
                // quantifier is vacuous, so the scan stops after |Δ|+1 terms.
                let found = (0..=delta.len())
                    .map(|k| {
                        let t = self.terms.get(k).expect("infinite universe");
                        let m = phi.instantiate(&t).expect("quantifier");
                        (t, m)
                    })
                    .find(|(_, m)| !delta.contains(m));
                match found {
                    Some((t, minor)) => self
                        .run(extend(Some(minor)), depth + 1)
                        .map(|p| FinDerivation::new(Rule::Ex(phi.clone(), t), set, vec![p])),
                    None => self.run(extend(None), depth + 1),
                }
            }
        };
        res.map_err(|b| with_parent(b, seq))
    }
}

fn with_parent(mut branch: Vec<Vec<Formula>>, parent: Vec<Formula>) -> Vec<Vec<Formula>> {
    branch.push(parent);
    branch
}

/// Backwards proof search by deduction chains. `fuel` bounds the depth of
/// the constructed tree.
pub fn proof_search(goal: &[Formula], fuel: usize) -> SearchOutcome {
    let mut seq: Vec<Formula> = Vec::new();
    for f in goal {
        if !seq.contains(f) {
            seq.push(f.clone());
        }
    }
    let mut s = Search { terms: universe_for(&seq), fuel };
    match s.run(seq, 0) {
        Ok(d) => SearchOutcome::Found(d),
        Err(mut branch) => {
            branch.reverse();
            let model = extract_countermodel(&branch).expect("open branches are not closable");
            SearchOutcome::Exhausted { branch, model }
        }
    }
}

/// The model over terms determined by a branch: a prime formula holds iff
/// it does not occur on the branch.
#[derive(Clone, Debug)]
pub struct TermModel {
    pub facts: Sequent,
    probe_terms: Vec<Term>,
}

pub fn extract_countermodel(branch: &[Vec<Formula>]) -> Result<TermModel, ModelError> {
    let facts: Sequent = branch.iter().flatten().cloned().collect();
    if let Some(theta) = closing_literal(&facts) {
        return Err(ModelError::Closable(theta));
    }
    Ok(TermModel::new(facts, DEFAULT_PROBE))
}

fn subterms(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    match t {
        Term::Succ(a) => subterms(a, out),
        Term::Plus(a, b) | Term::Times(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        Term::App(_, args) => args.iter().for_each(|a| subterms(a, out)),
        _ => {}
    }
}

fn formula_terms(f: &Formula, out: &mut Vec<Term>) {
    match f {
        Formula::Prime(_, args) | Formula::NegPrime(_, args) => {
            args.iter().filter(|t| !has_bound(t)).for_each(|t| subterms(t, out))
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            formula_terms(a, out);
            formula_terms(b, out);
        }
        Formula::All(_, a) | Formula::Ex(_, a) => formula_terms(a, out),
    }
}

fn has_bound(t: &Term) -> bool {
    match t {
        Term::Bound(_) => true,
        Term::Zero | Term::Var(_) => false,
        Term::Succ(a) => has_bound(a),
        Term::Plus(a, b) | Term::Times(a, b) => has_bound(a) || has_bound(b),
        Term::App(_, args) => args.iter().any(has_bound),
    }
}

impl TermModel {
    /// Model with the given false prime formulas; quantifiers range over the
    /// first `probe` terms plus every term occurring in `facts`.
    pub fn new(facts: Sequent, probe: usize) -> TermModel {
        let mut probe_terms = universe_for(&facts).take(probe);
        for f in &facts {
            formula_terms(f, &mut probe_terms);
        }
        TermModel { facts, probe_terms }
    }

    pub fn probe_terms(&self) -> &[Term] {
        &self.probe_terms
    }

    /// Truth under the identity assignment, quantifiers probed.
    pub fn holds(&self, f: &Formula) -> bool {
        match f {
            Formula::Prime(..) => !self.facts.contains(f),
            Formula::NegPrime(..) => self.facts.contains(&f.negate()),
            Formula::And(a, b) => self.holds(a) && self.holds(b),
            Formula::Or(a, b) => self.holds(a) || self.holds(b),
            Formula::All(..) => self.probe_terms.iter().all(|t| self.holds(&f.instantiate(t).unwrap())),
            Formula::Ex(..) => self.probe_terms.iter().any(|t| self.holds(&f.instantiate(t).unwrap())),
        }
    }

    /// Atoms of the branch that the model makes true, i.e. the positive
    /// facts read off from negated literals.
    pub fn positive_atoms(&self) -> Vec<Formula> {
        self.facts
            .iter()
            .filter(|f| matches!(f, Formula::NegPrime(..)))
            .map(|f| f.negate())
            .collect()
    }

    pub fn negative_atoms(&self) -> Vec<Formula> {
        self.facts.iter().filter(|f| matches!(f, Formula::Prime(..))).cloned().collect()
    }
}
