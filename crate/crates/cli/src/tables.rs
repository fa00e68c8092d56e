//! The dimension table: computed values against the embedded expectations.

use rayon::prelude::*;
use serde::Serialize;

use wittx::cohomology::{h2_dimensions, Window};
use wittx::leibniz::hl2_dimension;
use wittx::morphisms::h1_adjoint_dimension;
use wittx::Algebra;

use crate::expected::{expected_dims, ExpectedDims};
use crate::grid::GridSelection;
use crate::Format;

#[derive(Clone, Serialize)]
pub struct TableRow {
    pub algebra: String,
    pub parameters: String,
    pub h2: i64,
    pub hl2: i64,
    pub h1: i64,
    pub expected: ExpectedDims,
    pub ok: bool,
}

fn parameters_of(alg: &Algebra) -> String {
    match alg.base() {
        Algebra::Witt => String::new(),
        Algebra::TensorDensity { a, b } => format!("a={a}, b={b}"),
        Algebra::SeriesA { lambda } | Algebra::SeriesB { lambda } => format!("lambda={lambda}"),
        Algebra::Extended { .. } => unreachable!("grids select base algebras"),
    }
}

fn family_of(alg: &Algebra) -> &'static str {
    match alg.base() {
        Algebra::Witt => "W",
        Algebra::TensorDensity { .. } => "W(a,b)",
        Algebra::SeriesA { .. } => "W_A(lambda)",
        Algebra::SeriesB { .. } => "W_B(lambda)",
        Algebra::Extended { .. } => unreachable!("grids select base algebras"),
    }
}

fn compute_row(alg: &Algebra, w: Window) -> Result<TableRow, String> {
    let expected =
        expected_dims(alg).ok_or_else(|| format!("no expected row for {}", alg.name()))?;
    let h2 = h2_dimensions(alg, w).map_err(|e| e.to_string())?.total;
    let hl2 = hl2_dimension(alg, w).map_err(|e| e.to_string())?;
    let h1 = h1_adjoint_dimension(alg, w).map_err(|e| e.to_string())?;
    let ok = h2 == expected.h2 && hl2 == expected.hl2 && h1 == expected.h1;
    Ok(TableRow {
        algebra: family_of(alg).to_string(),
        parameters: parameters_of(alg),
        h2,
        hl2,
        h1,
        expected,
        ok,
    })
}

fn render_markdown(rows: &[TableRow], window: i64) -> String {
    let mut out = String::new();
    out.push_str(&format!("Cohomology dimensions at window N = {window}\n\n"));
    out.push_str("| algebra | parameters | dim H2 | dim HL2 | dim H1(g;g) | expected | status |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {}/{}/{} | {} |\n",
            r.algebra,
            r.parameters,
            r.h2,
            r.hl2,
            r.h1,
            r.expected.h2,
            r.expected.hl2,
            r.expected.h1,
            if r.ok { "ok" } else { "MISMATCH" },
        ));
    }
    out
}

fn render_csv(rows: &[TableRow]) -> String {
    let mut out =
        String::from("algebra,parameters,h2,hl2,h1,expected_h2,expected_hl2,expected_h1,status\n");
    for r in rows {
        out.push_str(&format!(
            "{},\"{}\",{},{},{},{},{},{},{}\n",
            r.algebra,
            r.parameters,
            r.h2,
            r.hl2,
            r.h1,
            r.expected.h2,
            r.expected.hl2,
            r.expected.h1,
            if r.ok { "ok" } else { "mismatch" },
        ));
    }
    out
}

/// Computes the table, prints it, and reports whether every row matched.
pub fn run(selection: &GridSelection, window: i64, format: Format) -> Result<bool, String> {
    let w = Window::new(window);
    let algebras: Vec<Algebra> = selection
        .algebras()
        .into_iter()
        .filter(|alg| !matches!(alg.base(), Algebra::Witt))
        .collect();
    if algebras.is_empty() {
        return Err("no table rows selected; the pure Witt algebra has no table row".into());
    }
    for alg in &algebras {
        if let Some(note) = alg.normalization_note() {
            eprintln!("warning: {note}");
        }
    }
    let rows: Vec<TableRow> = algebras
        .par_iter()
        .map(|alg| compute_row(alg, w))
        .collect::<Result<_, _>>()?;
    let all_match = rows.iter().all(|r| r.ok);
    let text = match format {
        Format::Markdown => render_markdown(&rows, window),
        Format::Csv => render_csv(&rows),
        Format::Json => {
            #[derive(Serialize)]
            struct TableReport<'a> {
                window: i64,
                rows: &'a [TableRow],
                all_match: bool,
            }
            serde_json::to_string_pretty(&TableReport {
                window,
                rows: &rows,
                all_match,
            })
            .expect("serializable")
                + "\n"
        }
    };
    print!("{text}");
    Ok(all_match)
}
