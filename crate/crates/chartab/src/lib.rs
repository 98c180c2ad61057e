//! Exact character tables for finite permutation groups, with verdicts on
//! how many conjugacy classes the even-degree irreducible characters
//! vanish on.
//!
//! The pipeline: build a group from generators or a named constructor,
//! enumerate its elements and conjugacy classes, compute the character table
//! by simultaneous diagonalization of the class matrices over a prime field
//! followed by an exact cyclotomic lift, then evaluate the zero-class
//! predicates and classifiers on the table.

pub mod cli;
pub mod cyclo;
pub mod dixon;
pub mod groups;
pub mod error;
pub mod permgroup;
pub mod props;

pub use error::{Error, Result};
