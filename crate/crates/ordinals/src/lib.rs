//! Ordinal notations below epsilon_0.
//!
//! A notation is a nested list `<a0,...,an-1>` of notations with
//! `a(i) ⪯ a(i-1)`; it stands for `w^a0 + ... + w^an-1`. Comparison is
//! lexicographic and is defined on all raw trees, which is why
//! [`RawTree`] and [`Ordinal`] are kept apart.

mod coding;
mod notation;
mod text;

pub use coding::{code, code_raw, decode, decode_raw, CodedOrder};
pub use notation::{
    add, compare, compare_raw, enumerate_raw_up_to, enumerate_up_to, from_nat, is_notation, max,
    omega_pow, omega_tower, raw_descent, succ, Ordinal, OrdinalError, RawTree,
};
pub use text::{parse_ordinal, parse_raw, print_ordinal, print_raw, ParseMode, TextError};
