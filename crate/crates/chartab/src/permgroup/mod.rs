//! Finite permutation group engine: elements, stabilizer chains, conjugacy
//! classes and the structural subroutines the classifiers need.

pub mod classes;
pub mod group;
pub mod perm;
pub mod structure;

pub use classes::{ClassData, ConjugacyClasses};
pub use group::{ElementTable, PermGroup, ENUMERATION_CAP};
pub use perm::Permutation;
pub use structure::{
    center, coset_action, derived_subgroup, is_simple, is_solvable, normal_closure, sylow_2,
    Sylow2,
};
