//! Serializable report documents and their plain-text rendering.

use std::fmt::Write as _;

use jgate_core::gates::{ChainInequality, IterationTrace};
use jgate_core::{BoundaryPoint, GateReport, Outcome, ProofChainReport, Verdict};
use serde::Serialize;

use crate::doc::{matrix_to_entries, to_pair, ComplexPair, MatrixEntries};

/// Process exit code for a verdict.
pub fn exit_code(outcome: &Outcome) -> u8 {
    match outcome {
        Outcome::Inconclusive => 0,
        Outcome::Elementary => 10,
        Outcome::NonDiscrete | Outcome::ElementaryOrNonDiscrete => 11,
        Outcome::NotApplicable(_) => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityDoc {
    pub g_class: String,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReportDoc {
    pub gate: String,
    pub lhs: f64,
    pub bound: f64,
    pub comparison: String,
    pub fired: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityDoc>,
}

impl From<&GateReport> for GateReportDoc {
    fn from(r: &GateReport) -> Self {
        GateReportDoc {
            gate: r.gate.to_string(),
            lhs: r.lhs,
            bound: r.bound,
            comparison: r.comparison.to_string(),
            fired: r.fired,
            equality: r.equality.map(|e| EqualityDoc {
                g_class: e.g_class.to_string(),
                consistent: e.consistent,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictDoc {
    pub outcome: String,
    pub reason: Option<String>,
    pub fired_gates: Vec<String>,
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        let (outcome, reason) = match v.outcome {
            Outcome::NotApplicable(r) => ("NotApplicable".to_string(), Some(r.to_string())),
            other => (other.to_string(), None),
        };
        VerdictDoc {
            outcome,
            reason,
            fired_gates: v.fired_gates.iter().map(|r| r.gate.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainStepDoc {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl From<ChainInequality> for ChainStepDoc {
    fn from(c: ChainInequality) -> Self {
        ChainStepDoc {
            lhs: c.lhs,
            rhs: c.rhs,
            holds: c.holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofChainDoc {
    pub hypothesis_holds: bool,
    pub abcd_sqrt: f64,
    pub bound: f64,
    pub h1: MatrixEntries,
    pub ineq11: ChainStepDoc,
    pub ineq12: ChainStepDoc,
    pub ineq3: ChainStepDoc,
    pub eq4_residual: f64,
    pub trace_identity_residual: f64,
    pub product_identity_residual: f64,
    pub commutator_trace_residual: f64,
    pub h1_abcd_sqrt: f64,
    pub chain_violation: bool,
}

impl From<&ProofChainReport> for ProofChainDoc {
    fn from(r: &ProofChainReport) -> Self {
        ProofChainDoc {
            hypothesis_holds: r.hypothesis_holds,
            abcd_sqrt: r.abcd_sqrt,
            bound: r.bound,
            h1: matrix_to_entries(&r.h1),
            ineq11: r.ineq11.into(),
            ineq12: r.ineq12.into(),
            ineq3: r.ineq3.into(),
            eq4_residual: r.eq4_residual,
            trace_identity_residual: r.trace_identity_residual,
            product_identity_residual: r.product_identity_residual,
            commutator_trace_residual: r.commutator_trace_residual,
            h1_abcd_sqrt: r.h1_abcd_sqrt,
            chain_violation: r.chain_violation,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorDoc {
    /// `"lambda"` or `"matrix"`.
    pub form: String,
    pub class: String,
    pub lambda: Option<ComplexPair>,
    pub lift_sign: Option<i8>,
    pub mg: Option<f64>,
    pub conjugator: Option<MatrixEntries>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HDoc {
    pub input: MatrixEntries,
    /// `h` in the frame where `g = diag(λ, λ⁻¹)`.
    pub normalized: Option<MatrixEntries>,
    pub class: String,
    pub axis_preserving: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateDocument {
    pub g: GeneratorDoc,
    pub h: HDoc,
    pub wjc_bound: Option<f64>,
    pub gates: Vec<GateReportDoc>,
    pub verdict: VerdictDoc,
    pub proof_chain: Option<ProofChainDoc>,
    pub exit_code: u8,
}

fn fmt_pair(p: &ComplexPair) -> String {
    if p[1] == 0.0 {
        format!("{}", p[0])
    } else if p[1] < 0.0 {
        format!("{}-{}i", p[0], -p[1])
    } else {
        format!("{}+{}i", p[0], p[1])
    }
}

fn fmt_matrix(m: &MatrixEntries) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        fmt_pair(&m[0]),
        fmt_pair(&m[1]),
        fmt_pair(&m[2]),
        fmt_pair(&m[3])
    )
}

fn mark(holds: bool) -> &'static str {
    if holds {
        "ok"
    } else {
        "FAILS"
    }
}

impl GateDocument {
    pub fn to_pretty_text(&self) -> String {
        let mut out = String::new();
        let g = &self.g;
        let _ = writeln!(out, "g: {} ({} form)", g.class, g.form);
        if let (Some(l), Some(mg)) = (g.lambda, g.mg) {
            let _ = writeln!(out, "  lambda = {}   M_g = {mg}", fmt_pair(&l));
        }
        if let Some(sign) = g.lift_sign {
            let _ = writeln!(out, "  lift sign = {sign:+}");
        }
        let _ = writeln!(out, "h: {} {}", self.h.class, fmt_matrix(&self.h.input));
        if let Some(n) = &self.h.normalized {
            let _ = writeln!(out, "  normalized = {}", fmt_matrix(n));
        }
        if let Some(b) = self.wjc_bound {
            let _ = writeln!(out, "bound (1 - M_g)/M_g^2 = {b}");
        }
        let _ = writeln!(out, "gates:");
        for r in &self.gates {
            let _ = write!(
                out,
                "  {:<20} {:>14.9} {} {:<14.9} {}",
                r.gate,
                r.lhs,
                r.comparison,
                r.bound,
                if r.fired { "FIRED" } else { "-" }
            );
            if let Some(e) = &r.equality {
                let _ = write!(
                    out,
                    "  (equality; g {} {})",
                    e.g_class,
                    if e.consistent { "consistent" } else { "INCONSISTENT" }
                );
            }
            out.push('\n');
        }
        if let Some(c) = &self.proof_chain {
            let _ = writeln!(out, "conjugation step h1 = hgh^-1 = {}", fmt_matrix(&c.h1));
            let _ = writeln!(out, "  hypothesis |abcd|^1/2 <= bound: {}", c.hypothesis_holds);
            let _ = writeln!(out, "  (11) {:.9} <= {:.9} {}", c.ineq11.lhs, c.ineq11.rhs, mark(c.ineq11.holds));
            let _ = writeln!(out, "  (12) {:.9} <= {:.9} {}", c.ineq12.lhs, c.ineq12.rhs, mark(c.ineq12.holds));
            let _ = writeln!(out, "  (3)  {:.9} <= {:.9} {}", c.ineq3.lhs, c.ineq3.rhs, mark(c.ineq3.holds));
            let _ = writeln!(out, "  eq4 residual {:.3e}, trace identity residual {:.3e}", c.eq4_residual, c.trace_identity_residual);
        }
        let _ = write!(out, "verdict: {}", self.verdict.outcome);
        if let Some(r) = &self.verdict.reason {
            let _ = write!(out, " ({r})");
        }
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum PointDoc {
    Finite(ComplexPair),
    Infinite(&'static str),
}

impl From<BoundaryPoint> for PointDoc {
    fn from(p: BoundaryPoint) -> Self {
        match p {
            BoundaryPoint::Finite(z) => PointDoc::Finite(to_pair(z)),
            BoundaryPoint::Infinity => PointDoc::Infinite("infinity"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyDocument {
    pub class: String,
    pub trace: ComplexPair,
    pub trace_squared: ComplexPair,
    /// `None` for `±I`, which fixes every point.
    pub fixed_points: Option<Vec<PointDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<ComplexPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lift_sign: Option<i8>,
}

impl ClassifyDocument {
    pub fn to_pretty_text(&self) -> String {
        let mut out = format!(
            "class: {}\ntrace: {}\ntrace^2: {}\n",
            self.class,
            fmt_pair(&self.trace),
            fmt_pair(&self.trace_squared)
        );
        let points = match &self.fixed_points {
            None => "all".to_string(),
            Some(ps) => ps
                .iter()
                .map(|p| match p {
                    PointDoc::Finite(z) => fmt_pair(z),
                    PointDoc::Infinite(s) => s.to_string(),
                })
                .collect::<Vec<_>>()
                .join(", "),
        };
        let _ = writeln!(out, "fixed points: {points}");
        if let (Some(l), Some(mg), Some(s)) = (self.lambda, self.mg, self.lift_sign) {
            let _ = writeln!(out, "lambda: {}\nM_g: {mg}\nlift sign: {s:+}", fmt_pair(&l));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepDoc {
    pub n: usize,
    pub h: MatrixEntries,
    pub off_diag: f64,
    pub comm_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterateDocument {
    pub lambda: ComplexPair,
    pub steps: Vec<StepDoc>,
    pub overflowed_at: Option<usize>,
}

impl From<&IterationTrace> for IterateDocument {
    fn from(t: &IterationTrace) -> Self {
        IterateDocument {
            lambda: to_pair(t.lambda),
            steps: t
                .steps
                .iter()
                .map(|s| StepDoc {
                    n: s.n,
                    h: matrix_to_entries(&s.h),
                    off_diag: s.off_diag,
                    comm_defect: s.comm_defect,
                })
                .collect(),
            overflowed_at: t.overflowed_at,
        }
    }
}

impl IterateDocument {
    /// One row per step; an overflow is noted on a trailing `#` comment line.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record([
            "n", "a_re", "a_im", "b_re", "b_im", "c_re", "c_im", "d_re", "d_im", "offDiag",
            "commDefect",
        ])?;
        for s in &self.steps {
            let mut row = vec![s.n.to_string()];
            row.extend(s.h.iter().flat_map(|p| p.iter().map(|x| x.to_string())));
            row.push(s.off_diag.to_string());
            row.push(s.comm_defect.to_string());
            writer.write_record(&row)?;
        }
        let mut text = String::from_utf8(writer.into_inner().map_err(|e| e.into_error())?)
            .expect("csv output is utf-8");
        if let Some(k) = self.overflowed_at {
            let _ = writeln!(text, "# overflowed_at={k}");
        }
        Ok(text)
    }
}
