//! Report documents and CSV exports.

use crate::error::CliResult;
use fuzzyfix_core::sequences::NcWitness;
use fuzzyfix_core::solver::{FixedPointAudit, Outcome, TraceRow, UniquenessReport};
use fuzzyfix_core::space::{AxiomReport, AxiomVerdict};
use fuzzyfix_core::tnorm::TNormAxiom;
use fuzzyfix_core::{FuzzySpace, Verdict};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub x: f64,
    pub y: f64,
    pub z: Option<f64>,
    pub t: f64,
    pub s: Option<f64>,
    /// Degrees at `t` for the pairs (x,y), (y,z), (x,z).
    pub m_xy: f64,
    pub m_yz: Option<f64>,
    pub m_xz: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct AxiomDoc {
    pub axiom: &'static str,
    pub verdict: &'static str,
    pub witness: Option<WitnessDoc>,
}

impl AxiomDoc {
    pub fn new(r: &AxiomReport<f64>, space: &FuzzySpace<f64>) -> Self {
        AxiomDoc {
            axiom: r.axiom.name(),
            verdict: match r.verdict {
                AxiomVerdict::PassOnGrid => "pass_on_grid",
                AxiomVerdict::Fail => "fail",
            },
            witness: r.witness.as_ref().map(|w| WitnessDoc {
                x: w.x,
                y: w.y,
                z: w.z,
                t: w.t,
                s: w.s,
                m_xy: space.eval(&w.x, &w.y, w.t),
                m_yz: w.z.map(|z| space.eval(&w.y, &z, w.t)),
                m_xz: w.z.map(|z| space.eval(&w.x, &z, w.t)),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SpaceReport {
    pub experiment: String,
    pub command: &'static str,
    pub space: String,
    pub tnorm: String,
    pub points: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub axioms: Vec<AxiomDoc>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct TNormCheckDoc {
    pub check: String,
    pub passed: bool,
    pub witness: Option<Vec<f64>>,
}

pub fn tnorm_axiom_doc(axiom: TNormAxiom, verdict: &Verdict<(f64, f64, f64)>) -> TNormCheckDoc {
    TNormCheckDoc {
        check: format!("{axiom:?}").to_lowercase(),
        passed: verdict.passed(),
        witness: verdict.witness().map(|&(t, s, r)| vec![t, s, r]),
    }
}

#[derive(Debug, Serialize)]
pub struct TNormReport {
    pub experiment: String,
    pub command: &'static str,
    pub tnorm: String,
    pub continuity_class: String,
    pub grid_points: usize,
    pub checks: Vec<TNormCheckDoc>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct OutcomeDoc {
    pub kind: &'static str,
    pub point: Option<f64>,
    pub clause: Option<String>,
    pub detail: Option<String>,
    pub row: Option<usize>,
}

impl From<&Outcome<f64>> for OutcomeDoc {
    fn from(o: &Outcome<f64>) -> Self {
        let mut doc = OutcomeDoc {
            kind: o.kind(),
            point: None,
            clause: None,
            detail: None,
            row: None,
        };
        match o {
            Outcome::FixedPoint(z) => doc.point = Some(*z),
            Outcome::Nonconvergent => {}
            Outcome::HypothesisViolation { clause, detail, row } => {
                doc.clause = Some(clause.clone());
                doc.detail = Some(detail.clone());
                doc.row = *row;
            }
        }
        doc
    }
}

#[derive(Debug, Serialize)]
pub struct AuditDoc {
    pub margins_hold: bool,
    pub worst_margin: Option<f64>,
    pub failing_row: Option<usize>,
    pub converged: bool,
}

impl From<&FixedPointAudit> for AuditDoc {
    fn from(a: &FixedPointAudit) -> Self {
        AuditDoc {
            margins_hold: a.margins_hold,
            worst_margin: a.worst_margin.filter(|m| m.is_finite()),
            failing_row: a.failing_row,
            converged: a.converged,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct UniquenessDoc {
    pub fp_a: f64,
    pub fp_b: f64,
    pub bridge: f64,
    pub toward_a: AuditDoc,
    pub toward_b: AuditDoc,
    pub discrepancy: Vec<f64>,
    pub orbit_len: usize,
    pub unique: bool,
}

impl UniquenessDoc {
    pub fn new(fp_a: f64, fp_b: f64, bridge: f64, r: &UniquenessReport) -> Self {
        UniquenessDoc {
            fp_a,
            fp_b,
            bridge,
            toward_a: (&r.audit_a).into(),
            toward_b: (&r.audit_b).into(),
            discrepancy: r.discrepancy.clone(),
            orbit_len: r.orbit_len,
            unique: r.unique,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub experiment: String,
    pub command: &'static str,
    pub space: String,
    pub tnorm: String,
    pub relation: String,
    pub theta: String,
    pub map: String,
    pub x0: f64,
    pub variant: String,
    pub termination_mode: &'static str,
    pub outcome: OutcomeDoc,
    pub iterations: usize,
    pub t_grid: Vec<f64>,
    pub assumptions: Vec<String>,
    pub uniqueness: Option<UniquenessDoc>,
}

#[derive(Debug, Serialize)]
pub struct TrendDoc {
    pub window: usize,
    pub found: bool,
    pub limit_gap_outer: Option<f64>,
    pub limit_gap_inner: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct NcReport {
    pub experiment: String,
    pub command: &'static str,
    pub space: String,
    pub sequence_len: usize,
    pub found: bool,
    pub eps0: Option<f64>,
    pub t0: Option<f64>,
    pub pairs: usize,
    pub verified: bool,
    pub limit_gap_outer: Option<f64>,
    pub limit_gap_inner: Option<f64>,
    pub trend: Vec<TrendDoc>,
}

#[derive(Debug, Serialize)]
pub struct SummaryEntry {
    pub experiment: String,
    pub command: String,
    pub exit_code: i32,
    pub outcome: String,
    pub diagnostic: Option<String>,
}

pub fn json<T: Serialize>(doc: &T) -> CliResult<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(doc)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn t_label(t: f64) -> String {
    format!("{t}")
}

/// `n, x_n, M_t<v>..., margin_t<v>...`; missing margins are empty cells.
pub fn trace_csv(t_grid: &[f64], rows: &[TraceRow<f64>]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n".to_string(), "x_n".to_string()];
    header.extend(t_grid.iter().map(|&t| format!("M_t{}", t_label(t))));
    header.extend(t_grid.iter().map(|&t| format!("margin_t{}", t_label(t))));
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.n.to_string(), row.point.to_string()];
        record.extend(row.degrees.iter().map(|d| d.to_string()));
        record.extend(row.margins.iter().map(|m| m.map(|m| m.to_string()).unwrap_or_default()));
        w.write_record(&record)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

/// `k, n_k, m_k, M_outer, M_inner, residual_outer, residual_inner`.
pub fn nc_csv(witness: &NcWitness) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "n_k", "m_k", "M_outer", "M_inner", "residual_outer", "residual_inner"])?;
    let bound = witness.threshold();
    for k in 0..witness.pairs() {
        w.write_record([
            k.to_string(),
            witness.n_k[k].to_string(),
            witness.m_k[k].to_string(),
            witness.outer[k].to_string(),
            witness.inner[k].to_string(),
            (witness.outer[k] - bound).abs().to_string(),
            (witness.inner[k] - bound).abs().to_string(),
        ])?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}
