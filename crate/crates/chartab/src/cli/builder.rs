//! Turning parsed group specs into groups.

use std::collections::BTreeSet;
use std::fs;

use crate::cli::grammar::{render_group_spec, GroupSpecAst};
use crate::cli::permfile::parse_perm_file;
use crate::error::{Error, Result};
use crate::groups::{
    build_alternating, build_cyclic, build_dihedral, build_frobenius_c2, build_psl2, build_q8,
    build_sd16, build_sl2, build_symmetric, direct_product, GroupSpecResult,
};
use crate::permgroup::{is_solvable, PermGroup};

pub fn build_from_ast(ast: &GroupSpecAst) -> Result<GroupSpecResult> {
    match ast {
        GroupSpecAst::Psl2(q) => build_psl2(*q),
        GroupSpecAst::Sl2(q) => build_sl2(*q),
        GroupSpecAst::Alternating(n) => build_alternating(*n),
        GroupSpecAst::Symmetric(n) => build_symmetric(*n),
        GroupSpecAst::Cyclic(n) => build_cyclic(*n),
        GroupSpecAst::Dihedral(n) => build_dihedral(*n),
        GroupSpecAst::Frobenius(ms) => build_frobenius_c2(ms),
        GroupSpecAst::Q8 => build_q8(),
        GroupSpecAst::Sd16 => build_sd16(),
        GroupSpecAst::PermFile(path) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            let (degree, generators) = parse_perm_file(&text)?;
            let group = PermGroup::from_generators(degree, generators)?;
            group_from_generators(group, render_group_spec(ast), "perm-file")
        }
        GroupSpecAst::Product(a, b) => {
            direct_product(build_from_ast(a)?, build_from_ast(b)?)
        }
    }
}

/// Wraps an explicitly-given permutation group, computing solvability since
/// no construction tags are available.
pub fn group_from_generators(
    group: PermGroup,
    label: String,
    family: &str,
) -> Result<GroupSpecResult> {
    let mut family_tags: BTreeSet<String> = BTreeSet::new();
    family_tags.insert(family.to_string());
    family_tags.insert(
        if is_solvable(&group)? {
            "solvable"
        } else {
            "nonsolvable"
        }
        .to_string(),
    );
    Ok(GroupSpecResult {
        group,
        label,
        family_tags,
    })
}

/// Parses and builds in one step.
pub fn build_spec(text: &str) -> Result<GroupSpecResult> {
    build_from_ast(&crate::cli::grammar::parse_group_spec(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_products_with_canonical_labels() {
        let built = build_spec("psl(2,4) x c(2)").unwrap();
        assert_eq!(built.label, "PSL(2,4) x C(2)");
        assert_eq!(built.group.order(), 120);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            build_spec("perm(/no/such/file.perm)"),
            Err(Error::Io { .. })
        ));
    }
}
