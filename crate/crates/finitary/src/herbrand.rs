use std::collections::BTreeSet;

use gforge_syntax::{Formula, Sequent, Term};
use thiserror::Error;

use crate::derivation::{FinDerivation, Rule};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("precondition violated: {0}")]
pub struct HerbrandError(pub String);

#[derive(Clone, Debug)]
pub struct Herbrand {
    /// The existential formula `ex x. θ` that was eliminated.
    pub formula: Formula,
    pub terms: Vec<Term>,
    /// Derives the original end sequent with `ex x. θ` replaced by the
    /// instances `θ[x/t]`.
    pub derivation: FinDerivation,
}

impl Herbrand {
    pub fn instances(&self) -> Vec<Formula> {
        self.terms.iter().map(|t| self.formula.instantiate(t).unwrap()).collect()
    }

    /// Greedily drops terms, last first, while the instances remain a
    /// propositional tautology.
    pub fn minimal_terms(&self) -> Vec<Term> {
        let mut terms = self.terms.clone();
        let inst = |ts: &[Term]| -> Vec<Formula> { ts.iter().map(|t| self.formula.instantiate(t).unwrap()).collect() };
        for i in (0..terms.len()).rev() {
            let mut fewer = terms.clone();
            fewer.remove(i);
            if is_tautology(&inst(&fewer)) == Some(true) {
                terms = fewer;
            }
        }
        terms
    }
}

fn quantifier_free(f: &Formula) -> bool {
    match f {
        Formula::Prime(..) | Formula::NegPrime(..) => true,
        Formula::And(a, b) | Formula::Or(a, b) => quantifier_free(a) && quantifier_free(b),
        Formula::All(..) | Formula::Ex(..) => false,
    }
}

fn push_new(out: &mut Vec<Term>, t: &Term) {
    if !out.contains(t) {
        out.push(t.clone());
    }
}

/// Herbrand terms of a cut free derivation whose end sequent contains
/// exactly one existential formula with quantifier free matrix and
/// otherwise only quantifier free formulas.
pub fn herbrand(d: &FinDerivation) -> Result<Herbrand, HerbrandError> {
    let quantified: Vec<&Formula> = d.conclusion.iter().filter(|f| !quantifier_free(f)).collect();
    let e = match quantified.as_slice() {
        [f @ Formula::Ex(..)] if quantifier_free(&f.instantiate(&Term::Zero).unwrap()) => (*f).clone(),
        _ => {
            return Err(HerbrandError(
                "end sequent must contain exactly one existential formula with quantifier free matrix".into(),
            ))
        }
    };
    let (terms, derivation) = eliminate(d, &e)?;
    Ok(Herbrand { formula: e, terms, derivation })
}

fn eliminate(d: &FinDerivation, e: &Formula) -> Result<(Vec<Term>, FinDerivation), HerbrandError> {
    let conclusion = |terms: &[Term]| -> Sequent {
        let mut s = d.conclusion.clone();
        s.remove(e);
        s.extend(terms.iter().map(|t| e.instantiate(t).unwrap()));
        s
    };
    match &d.rule {
        Rule::Cut(_) => Err(HerbrandError("derivation contains a cut".into())),
        Rule::All(f, _) => Err(HerbrandError(format!("universal inference on {f}"))),
        Rule::Ex(f, t) if f == e => {
            let (rest, p) = eliminate(&d.premises[0], e)?;
            let mut terms = vec![t.clone()];
            rest.iter().for_each(|s| push_new(&mut terms, s));
            let c = conclusion(&terms);
            Ok((terms, p.weaken(&c)))
        }
        Rule::Ex(f, _) => Err(HerbrandError(format!("existential inference on {f}"))),
        Rule::Axiom(_) | Rule::And(_) | Rule::Or(..) => {
            let mut terms = Vec::new();
            let mut premises = Vec::new();
            for p in &d.premises {
                let (ts, q) = eliminate(p, e)?;
                ts.iter().for_each(|t| push_new(&mut terms, t));
                premises.push(q);
            }
            Ok((terms.clone(), FinDerivation::new(d.rule.clone(), conclusion(&terms), premises)))
        }
    }
}

fn atoms_into(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::Prime(..) => {
            out.insert(f.clone());
        }
        Formula::NegPrime(..) => {
            out.insert(f.negate());
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            atoms_into(a, out);
            atoms_into(b, out);
        }
        Formula::All(_, a) | Formula::Ex(_, a) => atoms_into(a, out),
    }
}

fn eval_prop(f: &Formula, truth: &dyn Fn(&Formula) -> bool) -> bool {
    match f {
        Formula::Prime(..) => truth(f),
        Formula::NegPrime(..) => !truth(&f.negate()),
        Formula::And(a, b) => eval_prop(a, truth) && eval_prop(b, truth),
        Formula::Or(a, b) => eval_prop(a, truth) || eval_prop(b, truth),
        Formula::All(..) | Formula::Ex(..) => false,
    }
}

/// Whether the disjunction of quantifier free `formulas` is true under
/// every assignment to its prime formulas. `None` above 24 atoms.
pub fn is_tautology(formulas: &[Formula]) -> Option<bool> {
    let mut atoms = BTreeSet::new();
    formulas.iter().for_each(|f| atoms_into(f, &mut atoms));
    let atoms: Vec<Formula> = atoms.into_iter().collect();
    if atoms.len() > 24 {
        return None;
    }
    Some((0u32..1 << atoms.len()).all(|mask| {
        let truth = |a: &Formula| {
            let i = atoms.iter().position(|b| b == a).unwrap();
            mask >> i & 1 == 1
        };
        formulas.iter().any(|f| eval_prop(f, &truth))
    }))
}
