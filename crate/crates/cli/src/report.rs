//! The report document emitted by every subcommand.
//!
//! Bit vectors are rendered as strings of `0`/`1` characters, first position
//! leftmost. Matrices are lists of such row strings.

use std::fmt::Write as _;

use gsproto_core::{BitMatrix, PartitionedGraph};
use serde::Serialize;

pub const VERSION: &str = concat!("gsproto ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Serialize)]
pub struct ProtocolReport {
    pub graph: GraphSummary,
    pub viability: Viability,
    pub matrices: Matrices,
    pub results: Option<serde_json::Value>,
    pub timing: Option<Timing>,
    pub version: &'static str,
}

#[derive(Debug, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub e_sr: usize,
    pub e_s: usize,
    pub e_r: usize,
    pub tanner_type: bool,
    pub connected: bool,
    pub senders: Vec<usize>,
    pub receivers: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct Viability {
    pub viable: bool,
    pub rank: usize,
    pub n: usize,
}

#[derive(Debug, Serialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<usize>,
    pub rows: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Matrices {
    pub gamma_t: LabeledMatrix,
    pub gamma_s: LabeledMatrix,
    pub gamma_r: LabeledMatrix,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

fn labeled(m: &BitMatrix, row_labels: &[usize], col_labels: &[usize]) -> LabeledMatrix {
    LabeledMatrix {
        row_labels: row_labels.to_vec(),
        col_labels: col_labels.to_vec(),
        rows: (0..m.rows()).map(|r| m.row(r).to_string()).collect(),
    }
}

impl ProtocolReport {
    pub fn for_graph(g: &PartitionedGraph) -> Self {
        let part = g.classify_edges();
        let sm = g.sub_matrices();
        let senders: Vec<usize> = g.senders().map(|v| g.label(v)).collect();
        let receivers: Vec<usize> = g.receivers().map(|v| g.label(v)).collect();
        let rank = sm.gamma_t.rank();
        Self {
            graph: GraphSummary {
                n: g.n(),
                vertices: g.num_vertices(),
                edges: part.len(),
                e_sr: part.e_sr.len(),
                e_s: part.e_s.len(),
                e_r: part.e_r.len(),
                tanner_type: part.is_tanner_type(),
                connected: g.is_connected(),
                senders: senders.clone(),
                receivers: receivers.clone(),
            },
            viability: Viability {
                viable: rank == g.n(),
                rank,
                n: g.n(),
            },
            matrices: Matrices {
                gamma_t: labeled(&sm.gamma_t, &senders, &receivers),
                gamma_s: labeled(&sm.gamma_s, &senders, &senders),
                gamma_r: labeled(&sm.gamma_r, &receivers, &receivers),
            },
            results: None,
            timing: None,
            version: VERSION,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn verdict_line(&self) -> String {
        let v = &self.viability;
        format!(
            "{}, rank(Γ_T)={}/{}",
            if v.viable { "VIABLE" } else { "NOT VIABLE" },
            v.rank,
            v.n
        )
    }

    /// Graph summary, verdict and matrices as plain text.
    pub fn header_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        writeln!(
            out,
            "graph: n={}, {} vertices, {} edges (E_SR={}, E_S={}, E_R={}){}{}",
            g.n,
            g.vertices,
            g.edges,
            g.e_sr,
            g.e_s,
            g.e_r,
            if g.tanner_type { ", Tanner-type" } else { "" },
            if g.connected {
                ""
            } else {
                ", WARNING: disconnected"
            },
        )
        .unwrap();
        writeln!(out, "{}", self.verdict_line()).unwrap();
        for (name, m) in [
            (
                "Γ_T (rows: senders, cols: receivers)",
                &self.matrices.gamma_t,
            ),
            ("Γ_S", &self.matrices.gamma_s),
            ("Γ_R", &self.matrices.gamma_r),
        ] {
            out.push_str(&render_matrix(name, m));
        }
        out
    }
}

fn render_matrix(name: &str, m: &LabeledMatrix) -> String {
    let width = m
        .row_labels
        .iter()
        .chain(&m.col_labels)
        .map(|l| l.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = format!("{name}\n");
    let header: Vec<String> = m
        .col_labels
        .iter()
        .map(|l| format!("{l:>width$}"))
        .collect();
    writeln!(out, "  {:>width$}   {}", "", header.join(" ")).unwrap();
    for (label, row) in m.row_labels.iter().zip(&m.rows) {
        let cells: Vec<String> = row.chars().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "  {label:>width$} | {}", cells.join(" ")).unwrap();
    }
    out
}
