//! Catalog documents: named group specs with expected verdicts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cli::builder::{build_spec, group_from_generators};
use crate::error::{Error, Result};
use crate::groups::GroupSpecResult;
use crate::permgroup::{PermGroup, Permutation};
use crate::props::{TheoremBCase, VerdictReport};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub entries: Vec<CatalogEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    /// A group-spec string; mutually exclusive with `generators`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Explicit generators as 0-based image arrays.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u16>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedVerdicts>,
    /// Names of other entries this one is isomorphic to; equal fingerprints
    /// are only tolerated along these links.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub isomorphic_to: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedVerdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star_star: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_b_case: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proposition3: Option<bool>,
}

impl ExpectedVerdicts {
    /// Differences between the expectations and a computed report.
    pub fn mismatches(&self, report: &VerdictReport) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(star) = self.star {
            if star != report.star {
                out.push(format!("star: expected {star}, computed {}", report.star));
            }
        }
        if let Some(star_star) = self.star_star {
            if star_star != report.star_star {
                out.push(format!(
                    "star_star: expected {star_star}, computed {}",
                    report.star_star
                ));
            }
        }
        if let Some(case) = &self.theorem_b_case {
            if case != report.theorem_b_case.label() {
                out.push(format!(
                    "theorem_b_case: expected {case}, computed {}",
                    report.theorem_b_case.label()
                ));
            }
        }
        if let Some(prop3) = self.proposition3 {
            if prop3 != report.proposition3 {
                out.push(format!(
                    "proposition3: expected {prop3}, computed {}",
                    report.proposition3
                ));
            }
        }
        out
    }
}

pub fn load_catalog(text: &str) -> Result<CatalogDocument> {
    let document: CatalogDocument = serde_json::from_str(text).map_err(|e| Error::Catalog {
        entry: "<document>".into(),
        message: e.to_string(),
    })?;
    let mut names = BTreeSet::new();
    for entry in &document.entries {
        let fail = |message: String| Error::Catalog {
            entry: entry.name.clone(),
            message,
        };
        if entry.name.trim().is_empty() {
            return Err(fail("empty name".into()));
        }
        if !names.insert(entry.name.clone()) {
            return Err(fail("duplicate name".into()));
        }
        match (&entry.spec, &entry.generators) {
            (Some(_), Some(_)) => {
                return Err(fail("give either a spec or generators, not both".into()))
            }
            (None, None) => return Err(fail("missing both spec and generators".into())),
            (Some(_), None) => {
                if entry.degree.is_some() {
                    return Err(fail("degree is only meaningful with generators".into()));
                }
            }
            (None, Some(gens)) => {
                let degree = entry
                    .degree
                    .ok_or_else(|| fail("generators need a stated degree".into()))?;
                for (i, images) in gens.iter().enumerate() {
                    if images.len() != degree {
                        return Err(fail(format!(
                            "generator {i} has {} images, degree is {degree}",
                            images.len()
                        )));
                    }
                    Permutation::from_images(images.clone())
                        .map_err(|e| fail(format!("generator {i}: {e}")))?;
                }
            }
        }
        if let Some(expected) = &entry.expected {
            if let Some(case) = &expected.theorem_b_case {
                if TheoremBCase::from_label(case).is_none() {
                    return Err(fail(format!("unknown theorem_b_case label {case:?}")));
                }
            }
        }
        for other in &entry.isomorphic_to {
            if other == &entry.name {
                return Err(fail("an entry cannot declare itself isomorphic".into()));
            }
        }
    }
    // isomorphic_to references must resolve
    for entry in &document.entries {
        for other in &entry.isomorphic_to {
            if !names.contains(other) {
                return Err(Error::Catalog {
                    entry: entry.name.clone(),
                    message: format!("isomorphic_to references unknown entry {other:?}"),
                });
            }
        }
    }
    Ok(document)
}

pub fn build_entry(entry: &CatalogEntry) -> Result<GroupSpecResult> {
    let fail = |e: Error| Error::Catalog {
        entry: entry.name.clone(),
        message: e.to_string(),
    };
    if let Some(spec) = &entry.spec {
        return build_spec(spec).map_err(fail);
    }
    let degree = entry.degree.expect("validated at load time");
    let generators = entry
        .generators
        .as_ref()
        .expect("validated at load time")
        .iter()
        .map(|images| Permutation::from_images(images.clone()))
        .collect::<Result<Vec<_>>>()
        .map_err(fail)?;
    let group = PermGroup::from_generators(degree, generators).map_err(fail)?;
    group_from_generators(group, entry.name.clone(), "catalog-generators").map_err(fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_a_minimal_catalog() {
        let doc = load_catalog(
            r#"{"entries": [
                {"name": "S3", "spec": "S(3)", "expected": {"star": true}},
                {"name": "by-gens", "degree": 3, "generators": [[1, 2, 0]],
                 "isomorphic_to": []}
            ]}"#,
        )
        .unwrap();
        assert_eq!(doc.entries.len(), 2);
        let built = build_entry(&doc.entries[1]).unwrap();
        assert_eq!(built.group.order(), 3);
        assert!(built.family_tags.contains("solvable"));
    }

    #[test]
    fn errors_name_the_entry() {
        let bad = r#"{"entries": [{"name": "broken", "degree": 3, "generators": [[0, 0, 1]]}]}"#;
        match load_catalog(bad) {
            Err(Error::Catalog { entry, .. }) => assert_eq!(entry, "broken"),
            other => panic!("expected catalog error, got {other:?}"),
        }
        let dup = r#"{"entries": [
            {"name": "x", "spec": "C(2)"},
            {"name": "x", "spec": "C(3)"}
        ]}"#;
        assert!(load_catalog(dup).is_err());
        let both = r#"{"entries": [{"name": "x", "spec": "C(2)", "degree": 2, "generators": [[1,0]]}]}"#;
        assert!(load_catalog(both).is_err());
        let badcase = r#"{"entries": [{"name": "x", "spec": "C(2)", "expected": {"theorem_b_case": "zzz"}}]}"#;
        assert!(load_catalog(badcase).is_err());
    }

    #[test]
    fn malformed_json_is_a_catalog_error() {
        assert!(matches!(
            load_catalog("{"),
            Err(Error::Catalog { .. })
        ));
        assert!(load_catalog(r#"{"entries": [{"name": "x", "spec": "C(2)", "bogus": 1}]}"#).is_err());
    }
}
