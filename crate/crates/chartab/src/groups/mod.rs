//! Group constructors: linear groups over small finite fields, alternating
//! and symmetric groups, Frobenius groups with an inverting involution,
//! small named 2-groups and direct products.

pub mod build;
pub mod field;

pub use build::{
    build_alternating, build_cyclic, build_dihedral, build_frobenius_c2, build_psl2, build_q8,
    build_sd16, build_sl2, build_symmetric, direct_product, GroupSpecResult,
};
pub use field::{prime_power, FiniteField};
