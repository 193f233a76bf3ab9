//! Terms and formulas of first order arithmetic extended by a unary set
//! variable `X`, together with further predicate and function symbols for
//! pure logic.
//!
//! Formulas are kept in negation normal form; negation is an operation on
//! formulas. Bound variables are de Bruijn indices, so substitution never
//! captures and formulas that differ only in bound names are equal.

mod decompose;
mod formula;
mod parse;
mod print;
mod term;

pub use decompose::{
    component, decompose, is_conjunctive, is_disjunctive, print_sequent, with, without, Decomposition,
    Index, IndexSet, Kind, Sequent,
};
pub use formula::{implies, jump, Formula, Rel};
pub use parse::{parse_formula, parse_term, SyntaxError};
pub use print::print_formula;
pub use term::{first_var_not_in, fresh_name, variable, EvalError, FnSym, Term, TermEnumerator};
