//! Deterministic report emission: JSON with a fixed key order, and a
//! fixed-width text rendering of the same fields.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::dixon::CharacterTable;
use crate::error::{Error, Result};
use crate::props::{Step1Report, TorusReport, VerdictReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Serialize)]
pub struct ValueJson {
    pub conductor: u64,
    pub coeffs: Vec<i64>,
    pub approx: [f64; 2],
}

#[derive(Serialize)]
pub struct CharacterJson {
    pub degree: u64,
    pub zero_classes: Vec<usize>,
    pub zero_class_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<ValueJson>>,
}

#[derive(Serialize)]
pub struct VerdictJson {
    pub group: String,
    pub order: u64,
    pub classes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_orders: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_sizes: Option<Vec<u64>>,
    pub degrees: Vec<u64>,
    pub characters: Vec<CharacterJson>,
    pub star: bool,
    pub star_star: bool,
    pub theorem_b_case: &'static str,
    pub proposition3: bool,
    pub timing_ms: u128,
}

pub fn value_json(v: &Cyclotomic) -> Result<ValueJson> {
    let coeffs = v
        .coeffs()
        .iter()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| Error::Internal("table value coefficient out of i64 range".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (re, im) = v.approx();
    Ok(ValueJson {
        conductor: v.conductor(),
        coeffs,
        approx: [re, im],
    })
}

/// Assembles the JSON document for a verdict; attaching the table adds
/// per-class data and exact values.
pub fn verdict_json(report: &VerdictReport, table: Option<&CharacterTable>) -> Result<VerdictJson> {
    let characters = report
        .degrees
        .iter()
        .enumerate()
        .map(|(row, &degree)| {
            let values = match table {
                Some(t) => Some(
                    t.row(row)
                        .iter()
                        .map(value_json)
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => None,
            };
            Ok(CharacterJson {
                degree,
                zero_classes: report.zero_class_sets[row].clone(),
                zero_class_count: report.zero_class_sets[row].len(),
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (class_orders, class_sizes) = match table {
        Some(t) => {
            let classes = t.classes();
            (
                Some(classes.classes().iter().map(|c| c.element_order).collect()),
                Some(classes.classes().iter().map(|c| c.size).collect()),
            )
        }
        None => (None, None),
    };
    Ok(VerdictJson {
        group: report.group_label.clone(),
        order: report.order,
        classes: report.class_count,
        class_orders,
        class_sizes,
        degrees: report.degrees.clone(),
        characters,
        star: report.star,
        star_star: report.star_star,
        theorem_b_case: report.theorem_b_case.label(),
        proposition3: report.proposition3,
        timing_ms: report.timing_ms,
    })
}

pub fn render_value_text(v: &ValueJson) -> String {
    let coeffs = v
        .coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "z{}[{}]~({:.6},{:.6})",
        v.conductor, coeffs, v.approx[0], v.approx[1]
    )
}

fn text_line(out: &mut String, key: &str, value: String) {
    out.push_str(&format!("{key:<16}{value}\n"));
}

pub fn verdict_text(v: &VerdictJson) -> String {
    let mut out = String::new();
    text_line(&mut out, "group:", v.group.clone());
    text_line(&mut out, "order:", v.order.to_string());
    text_line(&mut out, "classes:", v.classes.to_string());
    if let (Some(orders), Some(sizes)) = (&v.class_orders, &v.class_sizes) {
        text_line(
            &mut out,
            "class_orders:",
            orders.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
        );
        text_line(
            &mut out,
            "class_sizes:",
            sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "),
        );
    }
    text_line(
        &mut out,
        "degrees:",
        v.degrees.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "),
    );
    out.push_str("characters:\n");
    out.push_str(&format!(
        "  {:>4} {:>7} {:>17} {}\n",
        "row", "degree", "zero_class_count", "zero_classes"
    ));
    for (row, c) in v.characters.iter().enumerate() {
        let zeros = if c.zero_classes.is_empty() {
            "-".to_string()
        } else {
            c.zero_classes
                .iter()
                .map(|z| z.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        out.push_str(&format!(
            "  {:>4} {:>7} {:>17} {}\n",
            row, c.degree, c.zero_class_count, zeros
        ));
        if let Some(values) = &c.values {
            let rendered = values.iter().map(render_value_text).collect::<Vec<_>>();
            out.push_str(&format!("       values: {}\n", rendered.join("  ")));
        }
    }
    text_line(&mut out, "star:", v.star.to_string());
    text_line(&mut out, "star_star:", v.star_star.to_string());
    text_line(&mut out, "theorem_b_case:", v.theorem_b_case.to_string());
    text_line(&mut out, "proposition3:", v.proposition3.to_string());
    text_line(&mut out, "timing_ms:", v.timing_ms.to_string());
    out
}

#[derive(Serialize)]
pub struct TorusJson {
    pub q: u64,
    pub side: &'static str,
    pub torus_order: u64,
    pub torus_classes: usize,
    pub full_order_classes: usize,
    pub formula_value: Option<u64>,
    pub matches_formula: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn torus_json(report: &TorusReport) -> TorusJson {
    TorusJson {
        q: report.q,
        side: match report.side {
            crate::props::TorusSide::Plus => "plus",
            crate::props::TorusSide::Minus => "minus",
        },
        torus_order: report.torus_order,
        torus_classes: report.torus_classes,
        full_order_classes: report.full_order_classes,
        formula_value: report.formula_value,
        matches_formula: report.matches_formula,
        note: report.note.clone(),
    }
}

pub fn torus_text(t: &TorusJson) -> String {
    let mut out = String::new();
    out.push_str(&format!("q:                  {}\n", t.q));
    out.push_str(&format!("side:               {}\n", t.side));
    out.push_str(&format!("torus_order:        {}\n", t.torus_order));
    out.push_str(&format!("torus_classes:      {}\n", t.torus_classes));
    out.push_str(&format!("full_order_classes: {}\n", t.full_order_classes));
    match t.formula_value {
        Some(v) => {
            out.push_str(&format!("formula (q-1)/4:    {v}\n"));
            out.push_str(&format!(
                "matches_formula:    {}\n",
                t.matches_formula.unwrap_or(false)
            ));
        }
        None => out.push_str("formula (q-1)/4:    not an integer\n"),
    }
    if let Some(note) = &t.note {
        out.push_str(&format!("note:               {note}\n"));
    }
    out
}

#[derive(Serialize)]
pub struct Step1Json {
    pub n: u64,
    pub lambda_degree: i64,
    pub rho_degree: i64,
    pub lambda_vanishes: [bool; 3],
    pub rho_vanishes: [bool; 3],
    pub a_classes: [usize; 3],
    pub b_classes: [usize; 3],
    pub lambda_norm_one: bool,
    pub rho_norm_one: bool,
    pub lambda_is_row: bool,
    pub rho_is_row: bool,
    pub degrees_match_formulas: bool,
    pub holds: bool,
}

pub fn step1_text(s: &Step1Json) -> String {
    let mut out = String::new();
    out.push_str(&format!("n:                      {}\n", s.n));
    out.push_str(&format!(
        "degrees:                lambda={} rho={} (formulas: {} {})\n",
        s.lambda_degree,
        s.rho_degree,
        (s.n - 1) * (s.n - 2) / 2,
        s.n * (s.n - 3) / 2
    ));
    out.push_str(&format!(
        "vanishing:              lambda={:?} rho={:?}\n",
        s.lambda_vanishes, s.rho_vanishes
    ));
    out.push_str(&format!(
        "classes:                a={:?} b={:?}\n",
        s.a_classes, s.b_classes
    ));
    out.push_str(&format!(
        "norms_one:              lambda={} rho={}\n",
        s.lambda_norm_one, s.rho_norm_one
    ));
    out.push_str(&format!(
        "match_table_rows:       lambda={} rho={}\n",
        s.lambda_is_row, s.rho_is_row
    ));
    out.push_str(&format!("holds:                  {}\n", s.holds));
    out
}

/// Step-1 report extended with the norm and row-membership checks.
pub fn step1_json(
    base: &Step1Report,
    lambda_norm_one: bool,
    rho_norm_one: bool,
    lambda_is_row: bool,
    rho_is_row: bool,
) -> Step1Json {
    let degrees_match_formulas = base.lambda_degree
        == ((base.n - 1) * (base.n - 2) / 2) as i64
        && base.rho_degree == (base.n * (base.n - 3) / 2) as i64;
    let holds = base.holds
        && lambda_norm_one
        && rho_norm_one
        && lambda_is_row
        && rho_is_row
        && degrees_match_formulas;
    Step1Json {
        n: base.n,
        lambda_degree: base.lambda_degree,
        rho_degree: base.rho_degree,
        lambda_vanishes: base.lambda_vanishes,
        rho_vanishes: base.rho_vanishes,
        a_classes: base.a_classes,
        b_classes: base.b_classes,
        lambda_norm_one,
        rho_norm_one,
        lambda_is_row,
        rho_is_row,
        degrees_match_formulas,
        holds,
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}
