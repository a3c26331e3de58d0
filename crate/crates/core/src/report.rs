//! Report documents and their JSON / text renderings.

use serde::{Deserialize, Serialize};

use crate::curves::CurveVerdict;
use crate::invariants::InvariantReport;

pub const FORMAT_VERSION: &str = "1";

/// One analysed input. JSON keys are emitted in field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    #[serde(flatten)]
    pub report: InvariantReport,
    pub source: String,
    pub format_version: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub curves: Vec<CurveVerdict>,
}

impl ReportDocument {
    pub fn new(source: impl Into<String>, report: InvariantReport) -> Self {
        Self {
            report,
            source: source.into(),
            format_version: FORMAT_VERSION.to_string(),
            curves: Vec::new(),
        }
    }

    pub fn with_curve(mut self, verdict: CurveVerdict) -> Self {
        self.curves.push(verdict);
        self
    }

    /// Whether the tunnel identity and every curve identity held.
    pub fn ok(&self) -> bool {
        self.report.consistent && self.curves.iter().all(CurveVerdict::all_hold)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

pub fn emit_report(doc: &ReportDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string(doc).expect("report serialises"),
        ReportFormat::Text => text_report(doc),
    }
}

fn text_report(doc: &ReportDocument) -> String {
    let r = &doc.report;
    let c1 = r.c1.map_or_else(|| "-".to_string(), |c| c.to_string());
    let rows: [(&str, String); 9] = [
        ("pixels p", r.p.to_string()),
        ("vertices v", r.v.to_string()),
        ("0-components c", r.c.to_string()),
        ("1-components c1", c1),
        ("proper 1-holes h", r.h.to_string()),
        ("2-blocks b", r.b.to_string()),
        ("tunnels t (direct)", r.t_direct.to_string()),
        ("t = v - 2(p + c - h) + b", r.t_formula.to_string()),
        ("consistent", r.consistent.to_string()),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = format!("source: {}\n", doc.source);
    for (key, value) in rows {
        out.push_str(&format!("  {key:<width$}  {value}\n"));
    }
    for curve in &doc.curves {
        out.push_str(&curve_text(curve));
    }
    out
}

/// Text block for one curve verdict.
pub fn curve_text(curve: &CurveVerdict) -> String {
    let mut out = format!(
        "  curve ({}-adjacency): simple closed {}, simple arc {}, general curve {}\n",
        curve.adjacency, curve.is_simple_closed, curve.is_simple_arc, curve.is_general_curve
    );
    for check in &curve.identity_checks {
        out.push_str(&format!(
            "    {:<40} {} vs {}  {}\n",
            check.name,
            check.lhs,
            check.rhs,
            if check.holds { "holds" } else { "FAILS" }
        ));
    }
    out
}
