//! Binary trees under the embedding `≤_B`, the quasi-embedding of the
//! ordinal notations into trees, and bad sequences.
//!
//! The searches here are exhaustive over small finite universes. They
//! serve as oracles, not as proofs of the tree theorem.

mod bad;
mod quasi;
mod tree;

pub use bad::{
    check_reification, is_bad, longest_bad_in, longest_bad_sequence, parse_table, print_seq, wpo_check, BadSequence,
    ReificationTable, ReificationViolation, TableError, WpoReport,
};
pub use quasi::{length_l, quasi_embed};
pub use tree::{
    embeds, embeds_unordered, parse_tree, tree_eq, trees_of_height_up_to, trees_with_nodes_up_to, Tree,
    TreeSyntaxError,
};
