use std::collections::BTreeSet;
use std::fmt;

use gforge_syntax::{parse_formula, parse_term, print_sequent, Formula, Sequent, Term};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The last inference of a derivation together with its principal formula.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rule {
    /// Closes a sequent containing the prime formula and its negation.
    Axiom(Formula),
    And(Formula),
    Or(Formula, u8),
    /// Universal introduction with the eigenvariable.
    All(Formula, String),
    /// Existential introduction with the witness.
    Ex(Formula, Term),
    Cut(Formula),
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom(_) => "axiom",
            Rule::And(_) => "and",
            Rule::Or(..) => "or",
            Rule::All(..) => "all",
            Rule::Ex(..) => "ex",
            Rule::Cut(_) => "cut",
        }
    }

    pub fn formula(&self) -> &Formula {
        match self {
            Rule::Axiom(f) | Rule::And(f) | Rule::Or(f, _) | Rule::All(f, _) | Rule::Ex(f, _) | Rule::Cut(f) => f,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinDerivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<FinDerivation>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("violation at node {path:?} ({rule}): {msg}")]
pub struct Violation {
    /// Premise indices leading from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub msg: String,
}

impl FinDerivation {
    pub fn new(rule: Rule, conclusion: Sequent, premises: Vec<FinDerivation>) -> FinDerivation {
        FinDerivation { rule, conclusion, premises }
    }

    pub fn height(&self) -> usize {
        self.premises.iter().map(|p| p.height() + 1).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(FinDerivation::size).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        !matches!(self.rule, Rule::Cut(_)) && self.premises.iter().all(FinDerivation::is_cut_free)
    }

    pub fn count_rule(&self, name: &str) -> usize {
        (self.rule.name() == name) as usize + self.premises.iter().map(|p| p.count_rule(name)).sum::<usize>()
    }

    /// Adds `extra` to the end sequent. Side conditions only relate premises
    /// to their conclusion, so nothing else changes.
    pub fn weaken(&self, extra: &Sequent) -> FinDerivation {
        let mut d = self.clone();
        d.conclusion.extend(extra.iter().cloned());
        d
    }

    pub fn check(&self) -> Result<(), Violation> {
        let mut path = Vec::new();
        self.check_at(&mut path)
    }

    fn check_at(&self, path: &mut Vec<usize>) -> Result<(), Violation> {
        let fail = |msg: String| Violation { path: path.clone(), rule: self.rule.name(), msg };
        let arity = match self.rule {
            Rule::Axiom(_) => 0,
            Rule::And(_) | Rule::Cut(_) => 2,
            _ => 1,
        };
        if self.premises.len() != arity {
            return Err(fail(format!("expected {arity} premises, found {}", self.premises.len())));
        }
        let principal = self.rule.formula();
        if !matches!(self.rule, Rule::Cut(_)) && !self.conclusion.contains(principal) {
            return Err(fail(format!("principal formula {principal} not in the conclusion")));
        }
        let minors: Vec<Formula> = match (&self.rule, principal) {
            (Rule::Axiom(_), Formula::Prime(..)) => {
                if !self.conclusion.contains(&principal.negate()) {
                    return Err(fail(format!("{} not in the conclusion", principal.negate())));
                }
                Vec::new()
            }
            (Rule::And(_), Formula::And(a, b)) => vec![(**a).clone(), (**b).clone()],
            (Rule::Or(_, 0), Formula::Or(a, _)) => vec![(**a).clone()],
            (Rule::Or(_, 1), Formula::Or(_, b)) => vec![(**b).clone()],
            (Rule::All(_, y), Formula::All(..)) => {
                let minor = principal.instantiate(&Term::var(y)).expect("quantifier");
                if principal.free_vars().contains(y) {
                    return Err(fail(format!("eigenvariable {y} free in {principal}")));
                }
                let mut side = self.premises[0].conclusion.clone();
                side.remove(&minor);
                if let Some(f) = side.iter().find(|f| f.free_vars().contains(y)) {
                    return Err(fail(format!("eigenvariable {y} free in side formula {f}")));
                }
                vec![minor]
            }
            (Rule::Ex(_, t), Formula::Ex(..)) => vec![principal.instantiate(t).expect("quantifier")],
            (Rule::Cut(_), _) => vec![principal.clone(), principal.negate()],
            _ => return Err(fail(format!("rule does not apply to {principal}"))),
        };
        for (i, (p, minor)) in self.premises.iter().zip(&minors).enumerate() {
            if let Some(f) = p.conclusion.iter().find(|f| *f != minor && !self.conclusion.contains(f)) {
                return Err(fail(format!("premise {i} contains {f}, which is neither minor nor in the conclusion")));
            }
        }
        for (i, p) in self.premises.iter().enumerate() {
            path.push(i);
            p.check_at(path)?;
            path.pop();
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&Node::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FinDerivation, FormatError> {
        let node: Node = serde_json::from_str(text).map_err(|e| FormatError(e.to_string()))?;
        node.try_into()
    }
}

impl fmt::Display for FinDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(d: &FinDerivation, indent: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            writeln!(f, "{:indent$}{} [{}]", "", print_sequent(&d.conclusion), d.rule.name())?;
            d.premises.iter().try_for_each(|p| go(p, indent + 2, f))
        }
        go(self, 0, f)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("malformed derivation file: {0}")]
pub struct FormatError(pub String);

/// On-disk form of a derivation node.
#[derive(Serialize, Deserialize)]
struct Node {
    rule: String,
    formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    side: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eigen: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    conclusion: Vec<String>,
    #[serde(default)]
    premises: Vec<Node>,
}

impl From<&FinDerivation> for Node {
    fn from(d: &FinDerivation) -> Node {
        let (side, eigen, witness) = match &d.rule {
            Rule::Or(_, i) => (Some(*i), None, None),
            Rule::All(_, y) => (None, Some(y.clone()), None),
            Rule::Ex(_, t) => (None, None, Some(t.to_string())),
            _ => (None, None, None),
        };
        Node {
            rule: d.rule.name().to_string(),
            formula: d.rule.formula().to_string(),
            side,
            eigen,
            witness,
            conclusion: d.conclusion.iter().map(|f| f.to_string()).collect(),
            premises: d.premises.iter().map(Node::from).collect(),
        }
    }
}

impl TryFrom<Node> for FinDerivation {
    type Error = FormatError;

    fn try_from(n: Node) -> Result<FinDerivation, FormatError> {
        let parse = |s: &str| parse_formula(s).map_err(|e| FormatError(format!("{s:?}: {e}")));
        let formula = parse(&n.formula)?;
        let missing = |field: &str| FormatError(format!("rule {} needs field {field}", n.rule));
        let rule = match n.rule.as_str() {
            "axiom" => Rule::Axiom(formula),
            "and" => Rule::And(formula),
            "or" => Rule::Or(formula, n.side.ok_or_else(|| missing("side"))?),
            "all" => Rule::All(formula, n.eigen.clone().ok_or_else(|| missing("eigen"))?),
            "ex" => {
                let w = n.witness.as_deref().ok_or_else(|| missing("witness"))?;
                Rule::Ex(formula, parse_term(w).map_err(|e| FormatError(format!("{w:?}: {e}")))?)
            }
            "cut" => Rule::Cut(formula),
            other => return Err(FormatError(format!("unknown rule {other:?}"))),
        };
        let conclusion = n.conclusion.iter().map(|s| parse(s)).collect::<Result<BTreeSet<_>, _>>()?;
        let premises = n.premises.into_iter().map(FinDerivation::try_from).collect::<Result<_, _>>()?;
        Ok(FinDerivation { rule, conclusion, premises })
    }
}
