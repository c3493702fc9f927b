//! Run configuration echo and plain-text table rendering shared by all
//! commands.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use qprop_core::valuation::Membership;
use qprop_core::{Complex64, MembershipMethod, Semantics, Tolerance, TruthValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Table,
}

/// Everything that determines a command's output, echoed into each report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub tol_rank: f64,
    pub tol_residual: f64,
    pub seed: u64,
    pub format: OutputFormat,
    pub method: &'static str,
    pub semantics: &'static str,
    pub inputs: BTreeMap<&'static str, String>,
}

impl RunConfig {
    pub fn new(
        tol: Tolerance,
        seed: u64,
        format: OutputFormat,
        method: MembershipMethod,
        semantics: Semantics,
    ) -> Self {
        Self {
            tol_rank: tol.rank_rel,
            tol_residual: tol.residual_rel,
            seed,
            format,
            method: method.as_str(),
            semantics: semantics.code(),
            inputs: BTreeMap::new(),
        }
    }

    pub fn with_input(mut self, name: &'static str, value: impl Into<String>) -> Self {
        self.inputs.insert(name, value.into());
        self
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new("config")
            .row("tol_rank", format!("{:e}", self.tol_rank))
            .row("tol_residual", format!("{:e}", self.tol_residual))
            .row("seed", self.seed)
            .row("method", self.method)
            .row("semantics", self.semantics);
        for (k, v) in &self.inputs {
            t = t.row(k, v);
        }
        t
    }
}

pub fn membership_str(m: Membership) -> &'static str {
    match m {
        Membership::InRange => "in_range",
        Membership::InKernel => "in_kernel",
        Membership::Neither => "neither",
    }
}

/// `1` for true, `0` for false, matching the 0/1 form of lattice identities.
pub fn truth_bit(t: TruthValue) -> Option<u8> {
    match t {
        TruthValue::True => Some(1),
        TruthValue::False => Some(0),
        TruthValue::Gap => None,
    }
}

pub fn complex_str(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

/// A titled list of key/value rows, rendered with aligned values.
#[derive(Debug, Clone, Default)]
pub struct Table {
    title: String,
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    pub fn row(mut self, key: impl ToString, value: impl ToString) -> Self {
        self.rows.push((key.to_string(), value.to_string()));
        self
    }

    pub fn push(&mut self, key: impl ToString, value: impl ToString) {
        self.rows.push((key.to_string(), value.to_string()));
    }
}

/// Renders tables separated by blank lines.
pub fn render(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "[{}]", t.title);
        let width = t
            .rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        for (k, v) in &t.rows {
            let _ = writeln!(out, "  {k:<width$}  {v}");
        }
    }
    out
}

/// Renders rows under a header line with columns padded to a common width.
pub fn render_grid(title: &str, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        format!("  {}\n", padded.join("  "))
    };
    let mut out = format!("[{title}]\n");
    out += &line(header.to_vec());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}
