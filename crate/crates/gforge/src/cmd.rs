use std::fmt::Write as _;
use std::path::Path;

use gforge_finitary::{herbrand, is_tautology, proof_search, FinDerivation, SearchOutcome};
use gforge_infinitary::{
    assemble_ti, cut_elim_full, derive_prog, derive_ti_finite, embed_fin, local_check, rank_extract, InfDerivation,
    LhdOrder, ProbePlan,
};
use gforge_kruskal::{
    check_reification, embeds, embeds_unordered, is_bad, length_l, longest_bad_sequence, parse_table, parse_tree,
    print_seq, quasi_embed, trees_of_height_up_to, wpo_check, Tree,
};
use gforge_ordinals::{
    add, code, compare, decode, enumerate_up_to, from_nat, omega_pow, omega_tower, parse_ordinal, print_ordinal,
    CodedOrder, Ordinal, ParseMode, TextError,
};
use gforge_syntax::{parse_formula, print_sequent, Formula};
use serde_json::{json, Value};

use crate::recipe::{parse_paths, parse_subst, run_recipe, RecipeError};
use crate::{Command, InfCmd, KruskalCmd, OrdCmd, Probe, TreeCmd};

pub struct Out {
    pub text: String,
    pub json: Value,
}

impl Out {
    fn line(s: impl Into<String>) -> Out {
        let s = s.into();
        Out { text: format!("{s}\n"), json: Value::String(s) }
    }
}

pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
        }
    }

    pub fn msg(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

type Res = Result<Out, CliError>;

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(e: impl ToString) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn dispatch(c: Command) -> Res {
    match c {
        Command::Ord(o) => ord(o),
        Command::Prove { formula, fuel, emit } => prove(&formula, fuel, emit.as_deref()),
        Command::Check { file } => check(&file),
        Command::Herbrand { file } => herbrand_cmd(&file),
        Command::Inf(i) => inf(i),
        Command::Tree(t) => tree(t),
        Command::Kruskal(k) => kruskal(k),
    }
}

fn ordinal(s: &str) -> Result<Ordinal, CliError> {
    parse_ordinal(s, ParseMode::Strict).map_err(|e| match e {
        TextError::Syntax { .. } => usage(e),
        TextError::NotNotation(_) => domain(e),
    })
}

fn ord(c: OrdCmd) -> Res {
    let p = print_ordinal;
    Ok(match c {
        OrdCmd::Cmp { a, b } => {
            let r = match compare(&ordinal(&a)?, &ordinal(&b)?) {
                std::cmp::Ordering::Less => "LT",
                std::cmp::Ordering::Equal => "EQ",
                std::cmp::Ordering::Greater => "GT",
            };
            Out::line(r)
        }
        OrdCmd::Add { a, b } => Out::line(p(&add(&ordinal(&a)?, &ordinal(&b)?))),
        OrdCmd::Omega { a } => Out::line(p(&omega_pow(&ordinal(&a)?))),
        OrdCmd::Tower { a, n } => Out::line(p(&omega_tower(&ordinal(&a)?, n))),
        OrdCmd::Fromnat { n } => Out::line(p(&from_nat(n))),
        OrdCmd::Validate { a } => {
            let o = ordinal(&a)?;
            Out { text: format!("valid {}\n", o.to_brackets()), json: json!({ "valid": true, "brackets": o.to_brackets() }) }
        }
        OrdCmd::Enum { k } => {
            let all: Vec<String> = enumerate_up_to(k).iter().map(p).collect();
            let text = all.iter().map(|s| format!("{s}\n")).collect();
            Out { text, json: json!(all) }
        }
        OrdCmd::Code { a } => match code(&ordinal(&a)?) {
            Some(n) => Out { text: format!("{n}\n"), json: json!(n.to_string()) },
            None => return Err(domain("the code does not fit in 128 bits")),
        },
        OrdCmd::Decode { code } => match decode(code) {
            Some(o) => Out::line(p(&o)),
            None => return Err(domain(format!("{code} is not the code of a notation"))),
        },
    })
}

fn formula(s: &str) -> Result<Formula, CliError> {
    parse_formula(s).map_err(|e| usage(format!("{s}: {e}")))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn derivation_file(path: &Path) -> Result<FinDerivation, CliError> {
    FinDerivation::from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn prove(f: &str, fuel: usize, emit: Option<&Path>) -> Res {
    let goal = formula(f)?;
    match proof_search(std::slice::from_ref(&goal), fuel) {
        SearchOutcome::Found(d) => {
            if let Some(path) = emit {
                std::fs::write(path, d.to_json() + "\n").map_err(|e| domain(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Out {
                text: format!("Found\nheight: {}\nsize: {}\n", d.height(), d.size()),
                json: json!({ "outcome": "Found", "height": d.height(), "size": d.size() }),
            })
        }
        SearchOutcome::Exhausted { branch, model } => {
            let show = |v: Vec<Formula>| v.iter().map(|f| f.to_string()).collect::<Vec<_>>();
            let (pos, neg) = (show(model.positive_atoms()), show(model.negative_atoms()));
            let holds = model.holds(&goal);
            Ok(Out {
                text: format!(
                    "Exhausted\nbranch length: {}\ntrue atoms: {}\nfalse atoms: {}\ngoal holds: {holds}\n",
                    branch.len(),
                    pos.join(", "),
                    neg.join(", ")
                ),
                json: json!({ "outcome": "Exhausted", "branch_length": branch.len(), "true_atoms": pos, "false_atoms": neg, "goal_holds": holds }),
            })
        }
    }
}

fn check(file: &Path) -> Res {
    let d = derivation_file(file)?;
    d.check().map_err(domain)?;
    Ok(Out {
        text: format!("ok\nheight: {}\nsize: {}\ncut free: {}\n", d.height(), d.size(), d.is_cut_free()),
        json: json!({ "valid": true, "height": d.height(), "size": d.size(), "cut_free": d.is_cut_free() }),
    })
}

fn herbrand_cmd(file: &Path) -> Res {
    let d = derivation_file(file)?;
    d.check().map_err(domain)?;
    let h = herbrand(&d).map_err(domain)?;
    let terms: Vec<String> = h.terms.iter().map(|t| t.to_string()).collect();
    let minimal: Vec<String> = h.minimal_terms().iter().map(|t| t.to_string()).collect();
    let instances: Vec<String> = h.instances().iter().map(|f| f.to_string()).collect();
    let taut = is_tautology(&h.instances());
    let taut_s = taut.map_or("undetermined".to_string(), |b| b.to_string());
    Ok(Out {
        text: format!(
            "formula: {}\nterms: {}\nminimal terms: {}\ninstances: {}\ntautology: {taut_s}\n",
            h.formula,
            terms.join(", "),
            minimal.join(", "),
            instances.join(" | "),
        ),
        json: json!({ "formula": h.formula.to_string(), "terms": terms, "minimal_terms": minimal, "instances": instances, "tautology": taut }),
    })
}

fn budget(p: &Probe) -> Result<usize, CliError> {
    if let Some(b) = p.probe {
        return Ok(b);
    }
    match std::env::var("GFORGE_PROBE_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("GFORGE_PROBE_BUDGET is not a number: {v}"))),
        Err(_) => Ok(20),
    }
}

fn describe(label: &str, d: &InfDerivation, text: &mut String) -> Value {
    let end = print_sequent(d.end());
    let bound = print_ordinal(d.bound());
    let _ = writeln!(text, "{label}end: {end}\n{label}bound: {bound}\n{label}cut rank: {}\n{label}rule: {}", d.cut_rank(), d.rule().name());
    json!({ "end": end, "bound": bound, "cut_rank": d.cut_rank(), "rule": d.rule().name() })
}

fn probe(d: &InfDerivation, plan: &ProbePlan, text: &mut String) -> Result<Value, CliError> {
    let r = local_check(d, plan).map_err(|v| domain(format!("probe failed {v}")))?;
    let _ = writeln!(text, "probe: ok ({} nodes, depth {})", r.nodes, r.max_depth);
    Ok(json!({ "nodes": r.nodes, "depth": r.max_depth }))
}

fn recipe(path: &Path) -> Result<InfDerivation, CliError> {
    let text = read(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    run_recipe(&text, dir).map_err(|e| match e {
        RecipeError::Syntax { .. } => usage(e),
        RecipeError::Build { .. } => domain(e),
    })
}

fn single(d: &InfDerivation, plan: &ProbePlan) -> Res {
    let mut text = String::new();
    let node = describe("", d, &mut text);
    let p = probe(d, plan, &mut text)?;
    Ok(Out { text, json: json!({ "root": node, "probe": p }) })
}

fn inf(c: InfCmd) -> Res {
    match c {
        InfCmd::Embed { file, subst, probe: pb } => {
            let fin = derivation_file(&file)?;
            let s = parse_subst(&subst).map_err(usage)?;
            let d = embed_fin(&fin, &s).map_err(domain)?;
            single(&d, &ProbePlan::with_budget(budget(&pb)?))
        }
        InfCmd::Cutelim { recipe: r, probe: pb } => {
            let plan = ProbePlan::with_budget(budget(&pb)?);
            let d = recipe(&r)?;
            let e = cut_elim_full(&d);
            let mut text = String::new();
            let input = describe("input ", &d, &mut text);
            let output = describe("output ", &e, &mut text);
            let p = probe(&e, &plan, &mut text)?;
            Ok(Out { text, json: json!({ "input": input, "output": output, "probe": p }) })
        }
        InfCmd::Check { recipe: r, paths, probe: pb } => {
            let mut plan = ProbePlan::with_budget(budget(&pb)?);
            plan.paths = parse_paths(&paths).map_err(usage)?;
            single(&recipe(&r)?, &plan)
        }
        InfCmd::Prog { order, probe: pb } => {
            let o = LhdOrder::new(CodedOrder::build(order));
            single(&derive_prog(&o), &ProbePlan::with_budget(budget(&pb)?))
        }
        InfCmd::Ti { order, n, probe: pb } => ti(order, n, budget(&pb)?),
    }
}

fn ti(bound: u64, n: u64, budget: usize) -> Res {
    let order = LhdOrder::new(CodedOrder::build(bound));
    if n >= order.len() as u64 {
        return Err(domain(format!("{n} is outside the order, which has {} elements", order.len())));
    }
    let t = derive_ti_finite(&order);
    let prog = derive_prog(&order);
    let a = assemble_ti(&t, &prog, &order, n).map_err(domain)?;
    let e = cut_elim_full(&a);
    let mut text = String::new();
    let _ = writeln!(text, "order: {} elements, rank of x<|y {}", order.len(), order.rank());
    let _ = writeln!(text, "ti bound: {}\nprog bound: {}", print_ordinal(t.bound()), print_ordinal(prog.bound()));
    let assembled = describe("assembled ", &a, &mut text);
    let eliminated = describe("eliminated ", &e, &mut text);
    let p = probe(&e, &ProbePlan::with_budget(budget), &mut text)?;
    let cert = rank_extract(&e, &order).map_err(domain)?;
    cert.verify(&order).map_err(domain)?;
    let _ = writeln!(text, "witness: {}", cert.witness);
    let mut o = serde_json::Map::new();
    for (m, v) in &cert.assignment {
        let _ = writeln!(text, "o({m}) = {}", print_ordinal(v));
        o.insert(m.to_string(), json!(print_ordinal(v)));
    }
    Ok(Out {
        text,
        json: json!({
            "order_size": order.len(), "rank": order.rank(),
            "ti_bound": print_ordinal(t.bound()), "prog_bound": print_ordinal(prog.bound()),
            "assembled": assembled, "eliminated": eliminated, "probe": p,
            "witness": cert.witness, "o": o,
        }),
    })
}

fn parse_t(s: &str) -> Result<Tree, CliError> {
    parse_tree(s).map_err(|e| usage(format!("{s}: {e}")))
}

fn boolean(b: bool) -> Out {
    Out { text: format!("{b}\n"), json: json!(b) }
}

fn tree(c: TreeCmd) -> Res {
    Ok(match c {
        TreeCmd::Embed { s, t } => boolean(embeds(&parse_t(&s)?, &parse_t(&t)?)),
        TreeCmd::Uembed { s, t } => boolean(embeds_unordered(&parse_t(&s)?, &parse_t(&t)?)),
        TreeCmd::Qembed { a } => {
            let o = ordinal(&a)?;
            let t = quasi_embed(&o);
            Out { text: format!("{t}\nlength: {}\n", length_l(&o)), json: json!({ "tree": t.to_string(), "length": length_l(&o) }) }
        }
        TreeCmd::Height { t } => {
            let h = parse_t(&t)?.height();
            Out { text: format!("{h}\n"), json: json!(h) }
        }
    })
}

fn kruskal(c: KruskalCmd) -> Res {
    Ok(match c {
        KruskalCmd::Bad { trees } => {
            if trees.is_empty() {
                return Err(usage("bad needs at least one tree"));
            }
            let ts = trees.iter().map(|s| parse_t(s)).collect::<Result<Vec<_>, _>>()?;
            boolean(is_bad(&ts))
        }
        KruskalCmd::LongestBad { nodes } => {
            if nodes == 0 {
                return Err(usage("--nodes must be at least 1"));
            }
            let (n, w) = longest_bad_sequence(nodes);
            Out { text: format!("length: {n}\nwitness: {w}\n"), json: json!({ "length": n, "witness": w.to_string() }) }
        }
        KruskalCmd::Wpo { height } => {
            if height > 3 {
                return Err(domain("heights above 3 are not supported: the universe has 677 or more trees"));
            }
            let r = wpo_check(&trees_of_height_up_to(height));
            let w = print_seq(&r.witness);
            Out {
                text: format!(
                    "trees: {}\nreflexive: {}\nantisymmetric: {}\ntransitive: {}\nlongest bad: {}\nwitness: {w}\n",
                    r.size, r.reflexive, r.antisymmetric, r.transitive, r.longest_bad
                ),
                json: json!({ "trees": r.size, "reflexive": r.reflexive, "antisymmetric": r.antisymmetric,
                    "transitive": r.transitive, "longest_bad": r.longest_bad, "witness": w }),
            }
        }
        KruskalCmd::CheckReif { file } => {
            let table = parse_table(&read(&file)?).map_err(usage)?;
            check_reification(&table).map_err(domain)?;
            Out { text: format!("ok ({} entries)\n", table.entries.len()), json: json!({ "ok": true, "entries": table.entries.len() }) }
        }
    })
}
