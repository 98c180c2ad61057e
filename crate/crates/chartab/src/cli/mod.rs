//! Command-line surface: the group-spec grammar, permutation files, catalog
//! ingestion and deterministic report emission.

pub mod builder;
pub mod catalog;
pub mod commands;
pub mod grammar;
pub mod permfile;
pub mod report;

pub use builder::{build_from_ast, build_spec};
pub use catalog::{build_entry, load_catalog, CatalogDocument, CatalogEntry, ExpectedVerdicts};
pub use commands::{run, EXIT_INPUT, EXIT_MISMATCH, EXIT_VERIFIED};
pub use grammar::{parse_group_spec, render_group_spec, GroupSpecAst};
pub use permfile::parse_perm_file;
