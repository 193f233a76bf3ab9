use std::cmp::Ordering;
use std::fmt;

use gforge_ordinals::compare;
use gforge_syntax::{decompose, print_sequent, Formula, Index, IndexSet, Kind, Term, TermEnumerator};

use crate::node::{is_true_literal, x_term, InfDerivation, InfRule};

/// Which premises [`local_check`] evaluates.
///
/// At depth `k` below the root an infinitely branching node is probed at
/// `max(1, samples >> k)` closed terms: numerals first, then the other
/// closed arithmetic terms in enumeration order. Every path in `paths` is
/// followed as well. At most `node_cap` nodes are visited.
#[derive(Clone, Debug)]
pub struct ProbePlan {
    pub samples: usize,
    pub depth: usize,
    pub paths: Vec<Vec<Index>>,
    pub node_cap: usize,
}

impl ProbePlan {
    pub fn with_budget(budget: usize) -> ProbePlan {
        ProbePlan { samples: budget, depth: budget, paths: Vec::new(), node_cap: 20_000 }
    }

    pub fn paths_only(paths: Vec<Vec<Index>>) -> ProbePlan {
        ProbePlan { samples: 0, depth: 0, paths, node_cap: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeViolation {
    pub path: Vec<Index>,
    pub msg: String,
}

impl fmt::Display for ProbeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", format_path(&self.path), self.msg)
    }
}

impl std::error::Error for ProbeViolation {}

pub fn format_path(path: &[Index]) -> String {
    let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Statistics of a successful check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProbeReport {
    pub nodes: usize,
    pub max_depth: usize,
}

/// `n` closed terms to probe at: the first `⌈n/2⌉` numerals, then other
/// arithmetic terms in enumeration order.
pub fn sample_terms(n: usize) -> Vec<Term> {
    let mut out: Vec<Term> = (0..n.div_ceil(2) as u64).map(Term::numeral).collect();
    let mut en = TermEnumerator::arithmetic();
    let mut k = 0;
    while out.len() < n {
        let t = en.get(k).expect("infinite enumeration");
        if !out.contains(&t) {
            out.push(t);
        }
        k += 1;
    }
    out
}

/// Checks the node invariants at `d` alone: axiom conditions, principal
/// formula membership and cut rank.
pub fn check_node(d: &InfDerivation) -> Result<(), String> {
    if let Some(f) = d.end().iter().find(|f| !f.is_closed()) {
        return Err(format!("open formula {f} in the end sequent"));
    }
    let need = |f: &Formula| {
        if d.end().contains(f) {
            Ok(())
        } else {
            Err(format!("principal formula {f} is not in the end sequent {}", print_sequent(d.end())))
        }
    };
    match d.rule() {
        InfRule::AxiomTrue(l) => {
            need(l)?;
            if !is_true_literal(l) {
                return Err(format!("{l} is not a true literal"));
            }
        }
        InfRule::AxiomX(p, n) => {
            need(p)?;
            need(n)?;
            let pos = n.negate();
            match (x_term(p).map(|s| s.eval()), x_term(&pos).map(|t| t.eval())) {
                (Some(Ok(a)), Some(Ok(b))) if a == b => {}
                _ => return Err(format!("{p} and {n} do not form an axiom")),
            }
        }
        InfRule::Conj(f) => {
            need(f)?;
            match decompose(f) {
                Ok(dec) if dec.kind == Kind::Conjunctive && dec.index != IndexSet::Empty => {}
                _ => return Err(format!("{f} is not a conjunction")),
            }
        }
        InfRule::Disj(f, i) => {
            need(f)?;
            match decompose(f) {
                Ok(dec) if dec.kind == Kind::Disjunctive && dec.index.contains(i) => {}
                _ => return Err(format!("{i} is not a disjunctive index of {f}")),
            }
        }
        InfRule::Prog(f, _) => {
            need(f)?;
            if x_term(f).is_none() {
                return Err(format!("{f} is not of the form Xt"));
            }
        }
        InfRule::Cut(f) => {
            if f.rank() >= d.cut_rank() {
                return Err(format!("cut formula {f} has rank {} but the cut rank is {}", f.rank(), d.cut_rank()));
            }
        }
        InfRule::Gap(msg) => return Err(format!("unjustified node: {msg}")),
    }
    Ok(())
}

/// Checks the conditions linking `d` with its premise `p` at `i`.
pub fn check_edge(d: &InfDerivation, i: &Index, p: &InfDerivation) -> Result<(), String> {
    if compare(p.bound(), d.bound()) != Ordering::Less {
        return Err(format!("bound not decreasing: premise {:?} against {:?}", p.bound(), d.bound()));
    }
    if p.cut_rank() > d.cut_rank() {
        return Err(format!("cut rank increasing: premise {} against {}", p.cut_rank(), d.cut_rank()));
    }
    let minor = d.minor(i).ok_or_else(|| format!("{i} is not a premise index"))?;
    if let Some(f) = p.end().iter().find(|f| **f != minor && !d.end().contains(f)) {
        return Err(format!("premise formula {f} is neither in the end sequent nor the minor formula {minor}"));
    }
    Ok(())
}

/// Indices probed at `d` when `width` terms are allowed.
fn probe_indices(d: &InfDerivation, width: usize) -> Vec<Index> {
    match d.rule() {
        InfRule::Disj(_, i) => vec![i.clone()],
        InfRule::Cut(_) => vec![Index::Bit(0), Index::Bit(1)],
        InfRule::Conj(f) => match decompose(f).map(|x| x.index) {
            Ok(IndexSet::Bits) => vec![Index::Bit(0), Index::Bit(1)],
            Ok(IndexSet::ClosedTerms) => sample_terms(width).into_iter().map(Index::Term).collect(),
            _ => Vec::new(),
        },
        InfRule::Prog(_, order) => {
            let Some(t) = d.rule().formula().and_then(x_term) else { return Vec::new() };
            let Ok(v) = t.eval() else { return Vec::new() };
            let preds = order.predecessors(v);
            let mut out: Vec<Index> = preds.iter().map(|m| Index::Term(Term::numeral(*m))).collect();
            // Non-numeral terms of the same values.
            for m in preds.iter().take(width) {
                if *m > 0 {
                    out.push(Index::Term(Term::plus(Term::numeral(m - 1), Term::numeral(1))));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

struct Checker<'a> {
    plan: &'a ProbePlan,
    report: ProbeReport,
}

impl Checker<'_> {
    fn visit(&mut self, d: &InfDerivation, path: &mut Vec<Index>) -> Result<(), ProbeViolation> {
        let fail = |path: &Vec<Index>, msg: String| ProbeViolation { path: path.clone(), msg };
        if self.report.nodes >= self.plan.node_cap {
            return Ok(());
        }
        self.report.nodes += 1;
        self.report.max_depth = self.report.max_depth.max(path.len());
        check_node(d).map_err(|m| fail(path, m))?;
        if path.len() >= self.plan.depth {
            return Ok(());
        }
        let width = self.plan.samples.checked_shr(path.len() as u32).unwrap_or(0).max(1);
        for i in probe_indices(d, width) {
            let p = d.premise(&i).ok_or_else(|| fail(path, format!("no premise at {i}")))?;
            check_edge(d, &i, &p).map_err(|m| fail(path, format!("premise {i}: {m}")))?;
            path.push(i);
            self.visit(&p, path)?;
            path.pop();
        }
        Ok(())
    }

    fn follow(&mut self, d: &InfDerivation, route: &[Index]) -> Result<(), ProbeViolation> {
        let mut node = d.clone();
        let mut path = Vec::new();
        check_node(&node).map_err(|msg| ProbeViolation { path: path.clone(), msg })?;
        for i in route {
            let p = node.premise(i).ok_or_else(|| ProbeViolation {
                path: path.clone(),
                msg: format!("{i} is not a premise index of this {} node", node.rule().name()),
            })?;
            check_edge(&node, i, &p).map_err(|m| ProbeViolation { path: path.clone(), msg: format!("premise {i}: {m}") })?;
            path.push(i.clone());
            check_node(&p).map_err(|msg| ProbeViolation { path: path.clone(), msg })?;
            self.report.nodes += 1;
            self.report.max_depth = self.report.max_depth.max(path.len());
            node = p;
        }
        Ok(())
    }
}

/// Evaluates the premises selected by `plan` and checks every invariant at
/// each visited node.
pub fn local_check(d: &InfDerivation, plan: &ProbePlan) -> Result<ProbeReport, ProbeViolation> {
    let mut c = Checker { plan, report: ProbeReport::default() };
    c.visit(d, &mut Vec::new())?;
    for route in &plan.paths {
        c.follow(d, route)?;
    }
    Ok(c.report)
}
