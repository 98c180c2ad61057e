//! Command dispatch and exit-code policy.
//!
//! Exit 0: the command's expectation is verified (or it is purely
//! informational). Exit 1: a verdict mismatch. Exit 2: input errors,
//! including capacity and precondition failures.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cli::builder::build_spec;
use crate::cli::catalog::{build_entry, load_catalog, CatalogDocument};
use crate::cli::report::{
    step1_json, step1_text, to_json_bytes, torus_json, torus_text, verdict_json, verdict_text,
    VerdictJson,
};
use crate::dixon::CharacterTable;
use crate::error::{Error, Result};
use crate::permgroup::{is_simple, ConjugacyClasses, ENUMERATION_CAP};
use crate::props::{
    defect_zero_search, defect_zero_vanishing_holds, fingerprint, theorem_c_member,
    torus_class_count, verdict, verify_step1_with_table, TheoremBCase, TorusSide,
};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const BUNDLED_CATALOG: &str = include_str!("../../data/bundled.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

#[derive(Parser)]
#[command(
    name = "chartab",
    about = "Exact character tables and zero-class verdicts for finite permutation groups"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Lower the element-enumeration cap (downward only).
    #[arg(long, global = true)]
    pub max_order: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the exact character table and verdicts for a group spec.
    Table { spec: String },
    /// Verify that every even-degree character vanishes on exactly one class.
    CheckStar { spec: String },
    /// Verify that every even-degree character vanishes on at most two classes.
    #[command(name = "check-starstar")]
    CheckStarstar { spec: String },
    /// Report which case of the one-zero classification the group matches.
    Classify { spec: String },
    /// Check the equivalence: the one-zero property holds exactly when a
    /// classification case matches.
    #[command(name = "verify-theorem-b")]
    VerifyTheoremB { spec: String },
    /// Check that the two-zero property holds exactly for the listed
    /// nonsolvable groups.
    #[command(name = "verify-theorem-c")]
    VerifyTheoremC { spec: String },
    /// For a non-abelian simple group, find even-degree characters of full
    /// p-defect and check their forced vanishing.
    #[command(name = "verify-lemma-2-3")]
    VerifyLemma23 { spec: String },
    /// Check the two alternating-group characters built from fixed-point and
    /// 2-cycle counts: degrees, vanishing elements, norms and row membership.
    #[command(name = "verify-step1")]
    VerifyStep1 { n: u64 },
    /// Count the conjugacy classes meeting a maximal cyclic torus of PSL(2,q).
    #[command(name = "torus-count")]
    TorusCount {
        q: u64,
        #[arg(long, value_enum, default_value_t = SideArg::Plus)]
        side: SideArg,
    },
    /// Run every catalog entry and compare with its expected verdicts.
    #[command(name = "verify-catalog")]
    VerifyCatalog {
        path: Option<PathBuf>,
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success exits
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_VERIFIED };
            let _ = e.print();
            return code;
        }
    };
    let cap = match effective_cap(cli.max_order) {
        Ok(cap) => cap,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command, cli.format, cap) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn effective_cap(max_order: Option<u64>) -> Result<u64> {
    match max_order {
        None => Ok(ENUMERATION_CAP),
        Some(0) => Err(Error::Domain("--max-order must be positive".into())),
        Some(n) if n > ENUMERATION_CAP => Err(Error::Domain(format!(
            "--max-order can only lower the cap; the maximum is {ENUMERATION_CAP}"
        ))),
        Some(n) => Ok(n),
    }
}

#[derive(Serialize)]
struct VerifyJson {
    command: &'static str,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    report: VerdictJson,
}

#[derive(Serialize)]
struct DefectPairJson {
    row: usize,
    degree: u64,
    prime: u64,
}

#[derive(Serialize)]
struct Lemma23Json {
    group: String,
    order: u64,
    applicable: bool,
    pairs: Vec<DefectPairJson>,
    vanishing_verified: bool,
    verified: bool,
}

#[derive(Serialize)]
struct CatalogEntryJson {
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    report: VerdictJson,
    matches_expected: bool,
    mismatches: Vec<String>,
}

#[derive(Serialize)]
struct CatalogJson {
    entries: Vec<CatalogEntryJson>,
    fingerprint_collisions: Vec<[String; 2]>,
    all_match: bool,
}

fn emit(format: FormatArg, json: &impl Serialize, text: String) -> Result<()> {
    match format {
        FormatArg::Json => print!("{}", to_json_bytes(json)?),
        FormatArg::Text => print!("{text}"),
    }
    Ok(())
}

fn verdict_of(spec: &str, cap: u64) -> Result<(crate::props::VerdictReport, Arc<ConjugacyClasses>, CharacterTable, bool)> {
    let built = build_spec(spec)?;
    let solvable = built.solvable();
    let (report, classes, table) = verdict(&built.label, &built.group, cap)?;
    Ok((report, classes, table, solvable))
}

fn dispatch(command: Command, format: FormatArg, cap: u64) -> Result<i32> {
    match command {
        Command::Table { spec } => {
            let (report, _classes, table, _) = verdict_of(&spec, cap)?;
            let json = verdict_json(&report, Some(&table))?;
            emit(format, &json, verdict_text(&json))?;
            Ok(EXIT_VERIFIED)
        }
        Command::CheckStar { spec } => {
            let (report, _, _, _) = verdict_of(&spec, cap)?;
            let ok = report.star;
            let json = verdict_json(&report, None)?;
            emit(format, &json, verdict_text(&json))?;
            Ok(if ok { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::CheckStarstar { spec } => {
            let (report, _, _, _) = verdict_of(&spec, cap)?;
            let ok = report.star_star;
            let json = verdict_json(&report, None)?;
            emit(format, &json, verdict_text(&json))?;
            Ok(if ok { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::Classify { spec } => {
            let (report, _, _, _) = verdict_of(&spec, cap)?;
            let json = verdict_json(&report, None)?;
            emit(format, &json, verdict_text(&json))?;
            Ok(EXIT_VERIFIED)
        }
        Command::VerifyTheoremB { spec } => {
            let (report, _, _, _) = verdict_of(&spec, cap)?;
            let classified = report.theorem_b_case != TheoremBCase::None;
            let verified = report.star == classified;
            let json = VerifyJson {
                command: "verify-theorem-b",
                verified,
                detail: Some(format!(
                    "star = {}, classified case = {}",
                    report.star,
                    report.theorem_b_case.label()
                )),
                report: verdict_json(&report, None)?,
            };
            let text = format!(
                "{}verified: {verified}\n",
                verdict_text(&json.report)
            );
            emit(format, &json, text)?;
            Ok(if verified { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::VerifyTheoremC { spec } => {
            let (report, _, table, solvable) = verdict_of(&spec, cap)?;
            let (verified, detail) = if solvable {
                (
                    true,
                    "not applicable: the group is solvable; the two-zero classification concerns nonsolvable groups".to_string(),
                )
            } else {
                let member = theorem_c_member(&table, cap)?;
                (
                    report.star_star == member,
                    format!("star_star = {}, in classification list = {member}", report.star_star),
                )
            };
            let json = VerifyJson {
                command: "verify-theorem-c",
                verified,
                detail: Some(detail.clone()),
                report: verdict_json(&report, None)?,
            };
            let text = format!("{}{detail}\nverified: {verified}\n", verdict_text(&json.report));
            emit(format, &json, text)?;
            Ok(if verified { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::VerifyLemma23 { spec } => {
            let built = build_spec(&spec)?;
            let classes = Arc::new(ConjugacyClasses::compute(&built.group, cap)?);
            let abelian = classes.classes().iter().all(|c| c.size == 1);
            let applicable = !abelian
                && classes.group_order() > 1
                && is_simple(&built.group, &classes)?;
            if !applicable {
                let text = format!(
                    "group: {}\nnot applicable: the defect-zero search needs a non-abelian simple group\n",
                    built.label
                );
                let json = Lemma23Json {
                    group: built.label.clone(),
                    order: classes.group_order(),
                    applicable: false,
                    pairs: Vec::new(),
                    vanishing_verified: false,
                    verified: false,
                };
                emit(format, &json, text)?;
                return Ok(EXIT_INPUT);
            }
            let table = crate::dixon::character_table_from_classes(&classes)?;
            let pairs = defect_zero_search(&table);
            let vanishing = defect_zero_vanishing_holds(&table, &pairs);
            let verified = !pairs.is_empty() && vanishing;
            let json = Lemma23Json {
                group: built.label.clone(),
                order: classes.group_order(),
                applicable: true,
                pairs: pairs
                    .iter()
                    .map(|&(row, prime)| DefectPairJson {
                        row,
                        degree: table.degree(row),
                        prime,
                    })
                    .collect(),
                vanishing_verified: vanishing,
                verified,
            };
            let mut text = format!("group: {}\norder: {}\npairs:\n", built.label, json.order);
            for p in &json.pairs {
                text.push_str(&format!(
                    "  row {:>3}  degree {:>5}  prime {:>3}\n",
                    p.row, p.degree, p.prime
                ));
            }
            text.push_str(&format!(
                "vanishing_verified: {vanishing}\nverified: {verified}\n"
            ));
            emit(format, &json, text)?;
            Ok(if verified { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::VerifyStep1 { n } => {
            let (report, extras) = verify_step1_with_table(n, cap)?;
            let json = step1_json(
                &report,
                extras.lambda_norm_one,
                extras.rho_norm_one,
                extras.lambda_is_row,
                extras.rho_is_row,
            );
            let verified = json.holds;
            emit(format, &json, step1_text(&json))?;
            Ok(if verified { EXIT_VERIFIED } else { EXIT_MISMATCH })
        }
        Command::TorusCount { q, side } => {
            let side = match side {
                SideArg::Plus => TorusSide::Plus,
                SideArg::Minus => TorusSide::Minus,
            };
            let report = torus_class_count(q, side, cap)?;
            let json = torus_json(&report);
            emit(format, &json, torus_text(&json))?;
            Ok(EXIT_VERIFIED)
        }
        Command::VerifyCatalog { path, catalog } => {
            let chosen = path.or(catalog);
            let text = match &chosen {
                Some(p) => fs::read_to_string(p).map_err(|source| Error::Io {
                    path: p.display().to_string(),
                    source,
                })?,
                None => BUNDLED_CATALOG.to_string(),
            };
            let document = load_catalog(&text)?;
            run_catalog(&document, format, cap)
        }
    }
}

fn run_catalog(document: &CatalogDocument, format: FormatArg, cap: u64) -> Result<i32> {
    let mut entries = Vec::new();
    let mut fingerprints = Vec::new();
    for entry in &document.entries {
        let built = build_entry(entry)?;
        let (report, _classes, table) = verdict(&built.label, &built.group, cap)
            .map_err(|e| Error::Catalog {
                entry: entry.name.clone(),
                message: e.to_string(),
            })?;
        fingerprints.push(fingerprint(&table));
        let mismatches = entry
            .expected
            .as_ref()
            .map(|e| e.mismatches(&report))
            .unwrap_or_default();
        entries.push(CatalogEntryJson {
            name: entry.name.clone(),
            note: entry.note.clone(),
            matches_expected: mismatches.is_empty(),
            mismatches,
            report: verdict_json(&report, None)?,
        });
    }

    // Equal fingerprints are only allowed along declared isomorphisms.
    let index: HashMap<&str, usize> = document
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| (e.name.as_str(), i))
        .collect();
    let mut linked = UnionFind::new(document.entries.len());
    for (i, entry) in document.entries.iter().enumerate() {
        for other in &entry.isomorphic_to {
            linked.union(i, index[other.as_str()]);
        }
    }
    let mut collisions = Vec::new();
    for i in 0..fingerprints.len() {
        for j in i + 1..fingerprints.len() {
            if fingerprints[i] == fingerprints[j] && !linked.same(i, j) {
                collisions.push([
                    document.entries[i].name.clone(),
                    document.entries[j].name.clone(),
                ]);
            }
        }
    }

    let all_match = entries.iter().all(|e| e.matches_expected) && collisions.is_empty();
    let json = CatalogJson {
        entries,
        fingerprint_collisions: collisions,
        all_match,
    };
    let mut text = String::new();
    for e in &json.entries {
        let status = if e.matches_expected { "ok  " } else { "FAIL" };
        text.push_str(&format!(
            "{status} {:<22} order={:<8} classes={:<3} star={:<5} star_star={:<5} case={:<22} prop3={}\n",
            e.name,
            e.report.order,
            e.report.classes,
            e.report.star,
            e.report.star_star,
            e.report.theorem_b_case,
            e.report.proposition3
        ));
        for m in &e.mismatches {
            text.push_str(&format!("     mismatch: {m}\n"));
        }
    }
    for [a, b] in &json.fingerprint_collisions {
        let err = Error::FingerprintCollision {
            left: a.clone(),
            right: b.clone(),
        };
        text.push_str(&format!("FAIL {err}\n"));
    }
    text.push_str(&format!("all_match: {all_match}\n"));
    emit(format, &json, text)?;
    Ok(if all_match { EXIT_VERIFIED } else { EXIT_MISMATCH })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}
