use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::f64::consts::PI;
use std::fmt::Write as _;

use super::params::ConstructionParams;
use crate::hyperbolic::GeometricConstants;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub description: String,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryAudit {
    pub residual: f64,
    pub signature: [usize; 3],
    pub mu_face: String,
    pub mu_method: String,
    pub c_consecutive: f64,
    pub d_search: String,
    pub sigma_distance: f64,
    pub constants_overridden: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    /// `"lps"` or `"cyclic"`.
    pub construction: String,
    pub modulus: u64,
    pub group_order: usize,
    pub vertices: usize,
    pub edges: usize,
    pub girth: Option<usize>,
    pub lambda1: Option<f64>,
    pub adjacency_second: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkCheck {
    /// `"full"` or `"spot check"`.
    pub mode: String,
    pub k: usize,
    pub group_order: usize,
    pub base_cells: usize,
    pub sheets: usize,
    pub cover_cells: usize,
    pub euler_base: i64,
    pub euler_cover: i64,
    pub covering_ok: bool,
    pub cone_vertices: usize,
    pub isomorphic_links: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub geometry_ms: u128,
    pub graph_ms: u128,
    pub links_ms: u128,
    pub total_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub schema: u32,
    pub version: String,
    pub params: ConstructionParams,
    pub warnings: Vec<String>,
    pub constants: Option<GeometricConstants>,
    pub geometry: Option<GeometryAudit>,
    pub graph: Option<GraphStats>,
    pub links: Option<LinkCheck>,
    pub ledger: Vec<LedgerEntry>,
    pub required_level: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub verdict: String,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn entry(&self, id: &str) -> Option<&LedgerEntry> {
        self.ledger.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let p = &self.params;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "certificate k={} q={} level={}{}",
            p.k,
            p.q,
            p.level,
            if p.structural { " (structural)" } else { "" }
        );
        if let Some(c) = &self.constants {
            let _ = writeln!(
                s,
                "constants C={:.6} L={:.6} mu={:.6} D={:.6} b={:.6} c={:.4} R={:.4} girth_target={}",
                c.c_interior, c.l_mirror, c.mu, c.d_mirror, c.b, c.c, c.r, c.girth_target
            );
        }
        if let Some(g) = &self.graph {
            let _ = writeln!(
                s,
                "graph {} vertices={} girth={} lambda1={}",
                g.construction,
                g.vertices,
                g.girth.map_or("none".into(), |x| x.to_string()),
                g.lambda1.map_or("n/a".into(), |x| format!("{x:.6}"))
            );
        }
        for e in &self.ledger {
            let status = match (e.skipped, e.pass) {
                (true, _) => "SKIP",
                (false, true) => "PASS",
                (false, false) => "FAIL",
            };
            let _ = write!(s, "[{:>4}] {status} {}: {} vs {}", e.id, e.description, e.lhs, e.rhs);
            if let Some(n) = &e.note {
                let _ = write!(s, " ({n})");
            }
            s.push('\n');
        }
        if let Some(n) = self.required_level {
            let _ = writeln!(s, "required_level {n} (literature bound, not verified here)");
        }
        let _ = writeln!(s, "verdict {}", self.verdict);
        s
    }
}

fn num(v: &Value) -> Option<f64> {
    v.as_f64()
}

/// Recomputes every ledger decision from the raw report fields. Returns the ids of
/// entries whose recorded outcome disagrees with the recomputation.
pub fn recheck_ledger(r: &CertificateReport) -> Vec<String> {
    let mut bad = Vec::new();
    for e in &r.ledger {
        let expected = if e.skipped {
            Some(true)
        } else {
            recompute(r, &e.id)
        };
        if expected != Some(e.pass) {
            bad.push(e.id.clone());
        }
    }
    let all = r.ledger.iter().all(|e| e.pass);
    if (r.verdict == "pass") != all {
        bad.push("verdict".into());
    }
    bad
}

fn recompute(r: &CertificateReport, id: &str) -> Option<bool> {
    let c = r.constants.as_ref();
    let g = r.graph.as_ref();
    let l = r.links.as_ref();
    Some(match id {
        "i" => c.map(|c| c.b < c.mu)?,
        "ii" => c.map(|c| c.r > 2.0 * PI / c.b.sinh())?,
        "iii" => c.map(|c| c.c > PI / c.b.sinh() && c.c < c.r / 2.0)?,
        "iv" => g?.lambda1.is_some_and(|x| x > 0.5),
        "v" => g?.girth.is_some_and(|x| x >= 6),
        "vi" => {
            let c = c?;
            g?.girth.is_some_and(|x| c.c_interior * x as f64 > c.r + c.l_mirror)
        }
        "vii" => r.geometry.as_ref()?.sigma_distance > c?.b,
        "viii" => l.is_some_and(|l| l.cone_vertices > 0 && l.isomorphic_links == l.cone_vertices),
        "ix" => l.is_some_and(|l| l.euler_cover == l.sheets as i64 * l.euler_base),
        "x" => l.is_some_and(|l| l.covering_ok),
        _ => return None,
    })
}

/// Lhs/rhs values serialized into the ledger, checked against the raw fields.
pub fn recheck_values(r: &CertificateReport) -> Vec<String> {
    let mut bad = Vec::new();
    if let Some(c) = &r.constants {
        for e in &r.ledger {
            let want = match e.id.as_str() {
                "i" => Some((c.b, c.mu)),
                "ii" => Some((c.r, 2.0 * PI / c.b.sinh())),
                _ => None,
            };
            if let Some((lhs, rhs)) = want {
                if num(&e.lhs) != Some(lhs) || num(&e.rhs) != Some(rhs) {
                    bad.push(e.id.clone());
                }
            }
        }
    }
    bad
}
