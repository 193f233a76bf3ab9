use std::fmt;

use crate::formula::{Formula, Rel};
use crate::term::Term;

fn write_prime(out: &mut String, r: &Rel, args: &[Term]) {
    let list = |args: &[Term]| args.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
    match (r, args) {
        (Rel::Eq, [a, b]) => out.push_str(&format!("{a}={b}")),
        (Rel::Le, [a, b]) => out.push_str(&format!("{a}<={b}")),
        (Rel::X, _) => out.push_str(&format!("X({})", list(args))),
        (Rel::Eq, _) => out.push_str(&format!("Eq({})", list(args))),
        (Rel::Le, _) => out.push_str(&format!("Le({})", list(args))),
        (Rel::Pred(p), []) => out.push_str(p),
        (Rel::Pred(p), _) => out.push_str(&format!("{p}({})", list(args))),
    }
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::Prime(r, args) => write_prime(out, r, args),
        Formula::NegPrime(r, args) => {
            out.push('!');
            write_prime(out, r, args);
        }
        Formula::And(a, b) => {
            out.push('(');
            write_formula(out, a);
            out.push_str(" & ");
            write_formula(out, b);
            out.push(')');
        }
        Formula::Or(a, b) => {
            out.push('(');
            if let Formula::NegPrime(r, args) = &**a {
                write_prime(out, r, args);
                out.push_str(" -> ");
            } else {
                write_formula(out, a);
                out.push_str(" | ");
            }
            write_formula(out, b);
            out.push(')');
        }
        Formula::All(..) | Formula::Ex(..) => {
            let (name, body) = f.open_fresh().expect("quantifier");
            out.push_str(if matches!(f, Formula::All(..)) { "all " } else { "ex " });
            out.push_str(&name);
            out.push_str(". ");
            write_formula(out, &body);
        }
    }
}

/// ASCII text of a formula. A disjunction whose left side is a negated
/// prime formula is shown as an implication.
pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f);
    s
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
