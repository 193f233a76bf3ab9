//! The finite Tait calculus for predicate logic: derivation objects and
//! their checker, backwards proof search by deduction chains with
//! countermodels for open branches, and Herbrand terms of cut free proofs.

mod derivation;
mod herbrand;
mod search;

pub use derivation::{FinDerivation, FormatError, Rule, Violation};
pub use herbrand::{herbrand, is_tautology, Herbrand, HerbrandError};
pub use search::{
    extract_countermodel, proof_search, universe_for, ModelError, SearchOutcome, TermModel, DEFAULT_PROBE,
};
