//! Text, CSV and JSON renderings. Everything here is deterministic.

use serde::Serialize;
use serde_json::{json, Value};

use super::OutputFormat;
use crate::classify::{enumerate_candidates, CandidateRecord, LinkStatus};
use crate::error::Result;
use crate::link_game::{LinkKind, LinkReport, Singularity};
use crate::linear_systems::SecancyProfile;
use crate::picard_lattice::{twenty_seven_lines, LineOnCubic, SurfaceClass};
use crate::rational::{canonical, compact};
use crate::weyl::MoveWord;

fn tuple(xs: &[i64]) -> String {
    let parts: Vec<String> = xs.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

fn names(lines: &[LineOnCubic]) -> String {
    let parts: Vec<String> = lines.iter().map(LineOnCubic::to_string).collect();
    parts.join(", ")
}

/// `3 x 1/2(1,1,1)` style, equal points grouped, basket order kept.
fn basket_text(basket: &[Singularity]) -> String {
    let mut groups: Vec<(Singularity, usize)> = Vec::new();
    for s in basket {
        match groups.last_mut() {
            Some((last, n)) if last == s => *n += 1,
            _ => groups.push((*s, 1)),
        }
    }
    let parts: Vec<String> = groups
        .iter()
        .map(|(s, n)| if *n == 1 { s.to_string() } else { format!("{n} x {s}") })
        .collect();
    parts.join(", ")
}

fn json_text<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", header.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(header.len())));
    for row in rows {
        out.push_str(&format!("| {} |\n", row.join(" | ")));
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

pub(super) fn lines(format: OutputFormat) -> Result<String> {
    let all = twenty_seven_lines();
    Ok(match format {
        OutputFormat::Md => all.iter().map(|l| format!("{} = {}\n", l.label, l.class)).collect(),
        OutputFormat::Csv => csv_text(
            &["label", "class"],
            &all.iter().map(|l| vec![l.label.to_string(), l.class.to_string()]).collect::<Vec<_>>(),
        ),
        OutputFormat::Json => json_text(
            &all.iter().map(|l| json!({"label": l.label, "class": l.class})).collect::<Vec<_>>(),
        ),
    })
}

pub(super) fn secancy(c: &SurfaceClass, p: &SecancyProfile, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Md => key_values(&[
            ("type", c.to_string()),
            ("e", tuple(&p.e)),
            ("l", tuple(&p.l)),
            ("c", tuple(&p.c)),
        ]),
        OutputFormat::Csv => csv_text(
            &["line", "secancy"],
            &twenty_seven_lines().iter().map(|l| vec![l.to_string(), p.at(l).to_string()]).collect::<Vec<_>>(),
        ),
        OutputFormat::Json => json_text(&json!({"type": c, "e": p.e, "l": p.l, "c": p.c})),
    })
}

pub(super) fn normalize(c: &SurfaceClass, standard: &SurfaceClass, word: &MoveWord, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Md => key_values(&[
            ("type", c.to_string()),
            ("standard", standard.to_string()),
            ("word", word.to_string()),
        ]),
        OutputFormat::Csv => csv_text(
            &["type", "standard", "word"],
            &[vec![c.to_string(), standard.to_string(), word.to_string()]],
        ),
        OutputFormat::Json => json_text(&json!({
            "type": c,
            "standard": standard,
            "word": word.0.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        })),
    })
}

pub(super) fn count(c: &SurfaceClass, what: &str, n: u64, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Md => format!("{n}\n"),
        OutputFormat::Csv => csv_text(&["type", what], &[vec![c.to_string(), n.to_string()]]),
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("type".into(), json!(c));
            obj.insert(what.into(), json!(n));
            json_text(&Value::Object(obj))
        }
    })
}

fn witness_text(status: &LinkStatus) -> String {
    match status {
        LinkStatus::Excluded { witness: (a, b) } => format!("{a}, {b}"),
        _ => String::new(),
    }
}

pub(super) fn classification(c: &SurfaceClass, r: &CandidateRecord, word: &MoveWord, format: OutputFormat) -> Result<String> {
    Ok(match format {
        OutputFormat::Md => {
            let mut pairs = vec![
                ("type", c.to_string()),
                ("standard", r.class.to_string()),
                ("word", word.to_string()),
                ("degree", r.degree.to_string()),
                ("genus", r.genus.to_string()),
                ("weak Fano", r.weak_fano.to_string()),
                ("status", r.status.name().to_string()),
            ];
            if let LinkStatus::Excluded { .. } = r.status {
                pairs.push(("witness", witness_text(&r.status)));
            }
            key_values(&pairs)
        }
        OutputFormat::Csv => csv_text(
            &["type", "standard", "degree", "genus", "weak_fano", "status", "witness"],
            &[vec![
                c.to_string(),
                r.class.to_string(),
                r.degree.to_string(),
                r.genus.to_string(),
                r.weak_fano.to_string(),
                r.status.name().to_string(),
                witness_text(&r.status),
            ]],
        ),
        OutputFormat::Json => {
            let mut value = serde_json::to_value(r).expect("serializable");
            value["input"] = json!(c);
            value["word"] = json!(word.0.iter().map(|m| m.to_string()).collect::<Vec<_>>());
            json_text(&value)
        }
    })
}

/// The candidate table with columns `#, Type, c-vector, l-vector, deg, genus`.
pub fn enumerate_table(records: &[CandidateRecord], format: OutputFormat) -> Result<String> {
    let rows: Vec<Vec<String>> = records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            vec![
                (i + 1).to_string(),
                r.class.to_string(),
                tuple(&r.profile.c),
                tuple(&r.profile.l),
                r.degree.to_string(),
                r.genus.to_string(),
            ]
        })
        .collect();
    Ok(match format {
        OutputFormat::Md => md_table(&["#", "Type", "c-vector", "l-vector", "deg", "genus"], &rows),
        OutputFormat::Csv => csv_text(&["#", "type", "c", "l", "degree", "genus"], &rows),
        OutputFormat::Json => json_text(
            &records
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    json!({
                        "#": i + 1,
                        "type": r.class,
                        "c": r.profile.c,
                        "l": r.profile.l,
                        "degree": r.degree,
                        "genus": r.genus,
                    })
                })
                .collect::<Vec<_>>(),
        ),
    })
}

fn row_number(report: &LinkReport) -> usize {
    enumerate_candidates().iter().position(|r| r.class == report.class).map_or(0, |i| i + 1)
}

fn chain_text(report: &LinkReport) -> String {
    let parts: Vec<String> = report.k3_chain().iter().map(compact).collect();
    parts.join(" -> ")
}

pub(super) fn analysis(report: &LinkReport, format: OutputFormat) -> Result<String> {
    let steps: Vec<String> = report.steps.iter().map(|s| format!("{:?} x {}", s.kind, s.count)).collect();
    Ok(match format {
        OutputFormat::Md => {
            let mut pairs = vec![
                ("type", report.class.to_string()),
                ("degree", report.degree.to_string()),
                ("genus", report.genus.to_string()),
                ("-K_X^3", compact(&report.kx3)),
                ("steps", steps.join(", ")),
                ("flipped", names(&report.contracted_lines.flipped)),
                ("flopped", names(&report.contracted_lines.flopped)),
                ("singularities", basket_text(&report.basket)),
            ];
            match &report.link_kind {
                LinkKind::TypeII { contraction, ky3, fano_weil_index } => {
                    pairs.push(("link", "Type II".into()));
                    pairs.push(("contraction", contraction.to_string()));
                    pairs.push(("-K_Y^3", compact(ky3)));
                    pairs.push(("Fano-Weil index", fano_weil_index.to_string()));
                }
                LinkKind::TypeI { dp_degree, ky03 } => {
                    pairs.push(("link", "Type I".into()));
                    pairs.push(("dP degree", dp_degree.to_string()));
                    pairs.push(("-K_Y0^3", compact(ky03)));
                }
            }
            pairs.push(("-K^3 chain", chain_text(report)));
            key_values(&pairs)
        }
        OutputFormat::Csv => {
            let (kind, contraction, index, dp) = match &report.link_kind {
                LinkKind::TypeII { contraction, fano_weil_index, .. } => {
                    ("TypeII", contraction.to_string(), fano_weil_index.to_string(), String::new())
                }
                LinkKind::TypeI { dp_degree, .. } => ("TypeI", String::new(), String::new(), dp_degree.to_string()),
            };
            csv_text(
                &[
                    "type", "degree", "genus", "kx3", "kind", "contraction", "final_k3", "fano_weil_index", "dp_degree",
                    "basket", "flipped", "flopped",
                ],
                &[vec![
                    report.class.to_string(),
                    report.degree.to_string(),
                    report.genus.to_string(),
                    canonical(&report.kx3),
                    kind.into(),
                    contraction,
                    canonical(report.final_k3()),
                    index,
                    dp,
                    basket_text(&report.basket),
                    names(&report.contracted_lines.flipped),
                    names(&report.contracted_lines.flopped),
                ]],
            )
        }
        OutputFormat::Json => json_text(report),
    })
}

/// The unique-cubic (Type II) and pencil (Type I) summary tables.
pub fn summary_tables(reports: &[LinkReport], format: OutputFormat) -> Result<String> {
    let type_ii: Vec<&LinkReport> = reports.iter().filter(|r| r.is_type_ii()).collect();
    let type_i: Vec<&LinkReport> = reports.iter().filter(|r| !r.is_type_ii()).collect();
    Ok(match format {
        OutputFormat::Md => {
            let rows_ii: Vec<Vec<String>> = type_ii
                .iter()
                .filter_map(|r| match &r.link_kind {
                    LinkKind::TypeII { contraction, ky3, fano_weil_index } => Some(vec![
                        row_number(r).to_string(),
                        contraction.to_string(),
                        basket_text(&r.basket),
                        compact(ky3),
                        fano_weil_index.to_string(),
                    ]),
                    LinkKind::TypeI { .. } => None,
                })
                .collect();
            let rows_i: Vec<Vec<String>> = type_i
                .iter()
                .filter_map(|r| match &r.link_kind {
                    LinkKind::TypeI { dp_degree, ky03 } => Some(vec![
                        row_number(r).to_string(),
                        format!("del Pezzo fibration of degree {dp_degree}"),
                        basket_text(&r.basket),
                        compact(ky03),
                    ]),
                    LinkKind::TypeII { .. } => None,
                })
                .collect();
            format!(
                "## Type II links\n\n{}\n## Type I links\n\n{}",
                md_table(&["#", "Contraction", "Singularities of Y", "-K_Y^3", "Fano-Weil index"], &rows_ii),
                md_table(&["#", "Contraction", "Singularities of Y_0", "-K_Y0^3"], &rows_i),
            )
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = type_ii
                .iter()
                .chain(&type_i)
                .map(|r| {
                    let (kind, contraction, index, dp) = match &r.link_kind {
                        LinkKind::TypeII { contraction, fano_weil_index, .. } => {
                            ("TypeII", contraction.to_string(), fano_weil_index.to_string(), String::new())
                        }
                        LinkKind::TypeI { dp_degree, .. } => {
                            ("TypeI", String::new(), String::new(), dp_degree.to_string())
                        }
                    };
                    vec![
                        row_number(r).to_string(),
                        kind.into(),
                        contraction,
                        basket_text(&r.basket),
                        canonical(r.final_k3()),
                        index,
                        dp,
                    ]
                })
                .collect();
            csv_text(&["#", "kind", "contraction", "singularities", "final_k3", "fano_weil_index", "dp_degree"], &rows)
        }
        OutputFormat::Json => {
            let singularities = |r: &LinkReport| r.basket.iter().map(Singularity::to_string).collect::<Vec<_>>();
            let ii: Vec<Value> = type_ii
                .iter()
                .filter_map(|r| match &r.link_kind {
                    LinkKind::TypeII { contraction, ky3, fano_weil_index } => Some(json!({
                        "#": row_number(r),
                        "type": r.class,
                        "contraction": contraction,
                        "singularities": singularities(r),
                        "ky3": canonical(ky3),
                        "fanoWeilIndex": fano_weil_index,
                    })),
                    LinkKind::TypeI { .. } => None,
                })
                .collect();
            let i: Vec<Value> = type_i
                .iter()
                .filter_map(|r| match &r.link_kind {
                    LinkKind::TypeI { dp_degree, ky03 } => Some(json!({
                        "#": row_number(r),
                        "type": r.class,
                        "dpDegree": dp_degree,
                        "singularities": singularities(r),
                        "ky03": canonical(ky03),
                    })),
                    LinkKind::TypeII { .. } => None,
                })
                .collect();
            json_text(&json!({"typeII": ii, "typeI": i}))
        }
    })
}
