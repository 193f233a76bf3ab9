//! Derivations in the infinitary calculus with the ω-rule and the
//! progression rule along a coded order.
//!
//! Derivations may branch infinitely, so a node stores its premises as a
//! function from index to node, evaluated on demand. Constructors check
//! what a node determines by itself; [`local_check`] probes premises.

mod build;
mod check;
mod node;
mod order;
mod ti;
mod transform;

pub use build::{
    derive_equality_axiom_x, derive_excluded_middle, derive_induction, derive_prog, derive_truth, embed_fin,
    equality_axiom_x, induction_axiom, omega_rule_numerals, truth, SEARCH_LIMIT,
};
pub use check::{check_edge, check_node, format_path, local_check, sample_terms, ProbePlan, ProbeReport, ProbeViolation};
pub use node::{
    mk_axiom, mk_conj, mk_cut, mk_disj, mk_disj_with, mk_prog, same_value_replace, weaken, InfDerivation, InfError,
    InfRule,
};
pub use order::LhdOrder;
pub use ti::{assemble_ti, derive_ti_finite, o_function, rank_extract, RankCertificate};
pub use transform::{cut_elim_full, cut_elim_step, invert, is_reducible, reduce};
