//! Jørgensen-type inequality gates for a two-generator group `⟨g, h⟩`.
//!
//! Every gate is a necessary condition for discreteness: when a gate fires,
//! the group is elementary or non-discrete. With `g = diag(λ, λ⁻¹)` the
//! elementary case is decided exactly by whether `h` preserves `{0, ∞}`, so
//! a fired gate is refined into [`Outcome::Elementary`] or
//! [`Outcome::NonDiscrete`].
//!
//! The generalized gate compares `|abcd|^{1/2}` with `(1 − M_g)/M_g²` and
//! fires on equality as well: equality cannot occur for a discrete
//! non-elementary group.

use std::fmt;

use thiserror::Error;

use crate::mat2c::{ComplexScalar, UnimodularMatrix};
use crate::moebius::{classify, is_axis_preserving, mg_of, MoebiusClass};

/// Absolute slack allowed when a `≤` gate is tested at equality.
pub const GATE_EQUALITY_TOLERANCE: f64 = 1e-12;

/// `|lhs − 1|` at or below this is reported as classical equality.
pub const JORGENSEN_EQUALITY_TOLERANCE: f64 = 1e-9;

/// Slack for the inequalities of the conjugation-step chain.
pub const CHAIN_SLACK: f64 = 1e-10;

pub const MAX_ITERATIONS: usize = 10_000;

/// Entry modulus at which the conjugation iteration stops.
pub const OVERFLOW_LIMIT: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GateError {
    #[error("|lambda| = {0} is not greater than 1")]
    LambdaNotExpanding(f64),
    #[error("M_g = {0} is outside (0, 1)")]
    MgOutOfRange(f64),
    #[error("requested {0} iterations, limit is {MAX_ITERATIONS}")]
    TooManySteps(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    ClassicalJorgensen,
    Wjc,
    CorollaryBc,
    CorollaryOnePlusBc,
    CorollarySum,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GateKind::ClassicalJorgensen => "ClassicalJorgensen",
            GateKind::Wjc => "WJC",
            GateKind::CorollaryBc => "CorollaryBC",
            GateKind::CorollaryOnePlusBc => "CorollaryOnePlusBC",
            GateKind::CorollarySum => "CorollarySum",
        };
        f.write_str(name)
    }
}

/// The comparison under which a gate fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Le,
    Lt,
    Ge,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Le => "≤",
            Comparison::Lt => "<",
            Comparison::Ge => "≥",
        })
    }
}

/// Annotation for classical equality `|tr²g − 4| + |tr[g,h] − 2| = 1`.
///
/// A discrete non-elementary group can attain equality only when `g` is
/// elliptic or parabolic; `consistent` records whether `g` is one of those.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JorgensenEquality {
    pub g_class: MoebiusClass,
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateReport {
    pub gate: GateKind,
    pub lhs: f64,
    pub bound: f64,
    pub fired: bool,
    pub comparison: Comparison,
    pub equality: Option<JorgensenEquality>,
}

impl GateReport {
    fn non_strict(gate: GateKind, lhs: f64, bound: f64) -> Self {
        GateReport {
            gate,
            lhs,
            bound,
            fired: lhs <= bound + GATE_EQUALITY_TOLERANCE,
            comparison: Comparison::Le,
            equality: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotApplicableReason {
    MgNotLessThanOne,
    NotLoxodromic,
}

impl fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotApplicableReason::MgNotLessThanOne => "MgNotLessThanOne",
            NotApplicableReason::NotLoxodromic => "NotLoxodromic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    NotApplicable(NotApplicableReason),
    Inconclusive,
    ElementaryOrNonDiscrete,
    Elementary,
    NonDiscrete,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::NotApplicable(reason) => write!(f, "NotApplicable({reason})"),
            Outcome::Inconclusive => f.write_str("Inconclusive"),
            Outcome::ElementaryOrNonDiscrete => f.write_str("ElementaryOrNonDiscrete"),
            Outcome::Elementary => f.write_str("Elementary"),
            Outcome::NonDiscrete => f.write_str("NonDiscrete"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub fired_gates: Vec<GateReport>,
}

impl Verdict {
    pub fn not_applicable(reason: NotApplicableReason) -> Self {
        Verdict {
            outcome: Outcome::NotApplicable(reason),
            fired_gates: Vec::new(),
        }
    }

    /// Refines fired gates using `h` in the diagonal frame of `g`.
    fn refine(reports: &[GateReport], h: &UnimodularMatrix) -> Self {
        let fired_gates: Vec<GateReport> = reports.iter().copied().filter(|r| r.fired).collect();
        let outcome = if fired_gates.is_empty() {
            Outcome::Inconclusive
        } else if is_axis_preserving(h) {
            Outcome::Elementary
        } else {
            Outcome::NonDiscrete
        };
        Verdict {
            outcome,
            fired_gates,
        }
    }
}

/// `|tr²(g) − 4| + |tr[g,h] − 2|`, fired when below 1.
pub fn classical_jorgensen(g: &UnimodularMatrix, h: &UnimodularMatrix) -> GateReport {
    let tr = g.trace();
    let lhs = (tr * tr - 4.0).norm() + (g.commutator(h).trace() - 2.0).norm();
    let at_equality = (lhs - 1.0).abs() <= JORGENSEN_EQUALITY_TOLERANCE;
    let equality = at_equality.then(|| {
        let g_class = classify(g);
        JorgensenEquality {
            g_class,
            consistent: matches!(g_class, MoebiusClass::Elliptic | MoebiusClass::Parabolic),
        }
    });
    GateReport {
        gate: GateKind::ClassicalJorgensen,
        lhs,
        bound: 1.0,
        fired: lhs < 1.0 && !at_equality,
        comparison: Comparison::Lt,
        equality,
    }
}

/// Classical gate for an arbitrary pair, without a diagonal frame to split
/// the elementary case.
pub fn jorgensen_verdict(g: &UnimodularMatrix, h: &UnimodularMatrix) -> Verdict {
    let report = classical_jorgensen(g, h);
    if report.fired {
        Verdict {
            outcome: Outcome::ElementaryOrNonDiscrete,
            fired_gates: vec![report],
        }
    } else {
        Verdict {
            outcome: Outcome::Inconclusive,
            fired_gates: Vec::new(),
        }
    }
}

/// `(1 − M_g)/M_g²` for `0 < M_g < 1`.
pub fn wjc_bound(mg: f64) -> Result<f64, GateError> {
    if !(mg > 0.0 && mg < 1.0) {
        return Err(GateError::MgOutOfRange(mg));
    }
    Ok((1.0 - mg) / (mg * mg))
}

fn check_expanding(lambda: ComplexScalar) -> Result<(), GateError> {
    let modulus = lambda.norm();
    if modulus > 1.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(GateError::LambdaNotExpanding(modulus))
    }
}

/// `M_g` for an expanding `λ`, checked to lie in `(0, 1)`.
fn applicable_mg(lambda: ComplexScalar) -> Result<f64, GateError> {
    check_expanding(lambda)?;
    let mg = mg_of(lambda).expect("expanding lambda is nonzero");
    wjc_bound(mg)?;
    Ok(mg)
}

fn abcd_sqrt(h: &UnimodularMatrix) -> f64 {
    (h.a() * h.b() * h.c() * h.d()).norm().sqrt()
}

fn wjc_report(mg: f64, h: &UnimodularMatrix) -> GateReport {
    let bound = (1.0 - mg) / (mg * mg);
    GateReport::non_strict(GateKind::Wjc, abcd_sqrt(h), bound)
}

/// The generalized gate for `g = diag(λ, λ⁻¹)` and `h = [[a, b], [c, d]]`.
pub fn wjc_gate(lambda: ComplexScalar, h: &UnimodularMatrix) -> Result<Verdict, GateError> {
    check_expanding(lambda)?;
    let mg = mg_of(lambda).expect("expanding lambda is nonzero");
    if mg >= 1.0 {
        return Ok(Verdict::not_applicable(NotApplicableReason::MgNotLessThanOne));
    }
    Ok(Verdict::refine(&[wjc_report(mg, h)], h))
}

/// The three corollary gates on `|bc|^{1/2}`, `|1+bc|^{1/2}` and `|1+bc| + |bc|`.
pub fn corollary_gates(
    lambda: ComplexScalar,
    h: &UnimodularMatrix,
) -> Result<[GateReport; 3], GateError> {
    let mg = applicable_mg(lambda)?;
    let bc = h.b() * h.c();
    let one_plus_bc = (bc + 1.0).norm();
    let linear = (1.0 - mg) / mg;
    let quadratic = 2.0 * (1.0 - mg) / (mg * mg);
    Ok([
        GateReport::non_strict(GateKind::CorollaryBc, bc.norm().sqrt(), linear),
        GateReport::non_strict(GateKind::CorollaryOnePlusBc, one_plus_bc.sqrt(), linear),
        GateReport::non_strict(GateKind::CorollarySum, one_plus_bc + bc.norm(), quadratic),
    ])
}

/// Every gate at once: generalized, corollaries, then classical.
#[derive(Debug, Clone, PartialEq)]
pub struct GateSuite {
    pub mg: f64,
    pub classical: GateReport,
    /// Empty when `M_g ≥ 1`.
    pub generalized: Vec<GateReport>,
    pub verdict: Verdict,
}

impl GateSuite {
    pub fn reports(&self) -> impl Iterator<Item = &GateReport> {
        self.generalized.iter().chain(std::iter::once(&self.classical))
    }
}

/// Runs all gates for `g = diag(λ, λ⁻¹)`. When `M_g ≥ 1` only the classical
/// report is computed and the verdict is not applicable.
pub fn run_all_gates(lambda: ComplexScalar, h: &UnimodularMatrix) -> Result<GateSuite, GateError> {
    check_expanding(lambda)?;
    let mg = mg_of(lambda).expect("expanding lambda is nonzero");
    let classical = classical_jorgensen(&UnimodularMatrix::diagonal(lambda), h);
    if mg >= 1.0 {
        return Ok(GateSuite {
            mg,
            classical,
            generalized: Vec::new(),
            verdict: Verdict::not_applicable(NotApplicableReason::MgNotLessThanOne),
        });
    }
    let mut generalized = vec![wjc_report(mg, h)];
    generalized.extend(corollary_gates(lambda, h)?);
    let mut all = generalized.clone();
    all.push(classical);
    Ok(GateSuite {
        mg,
        classical,
        generalized,
        verdict: Verdict::refine(&all, h),
    })
}

/// `h₁ = h·diag(λ, λ⁻¹)·h⁻¹` in closed form:
/// `a₁ = adλ − bcλ⁻¹`, `b₁ = −(λ − λ⁻¹)ab`, `c₁ = (λ − λ⁻¹)cd`, `d₁ = adλ⁻¹ − bcλ`.
pub fn conjugate_step(lambda: ComplexScalar, h: &UnimodularMatrix) -> UnimodularMatrix {
    let (a, b, c, d) = (h.a(), h.b(), h.c(), h.d());
    let inv = lambda.inv();
    let gap = lambda - inv;
    let ad = a * d;
    let bc = b * c;
    UnimodularMatrix::from_parts(
        ad * lambda - bc * inv,
        -gap * a * b,
        gap * c * d,
        ad * inv - bc * lambda,
    )
}

/// A `lhs ≤ rhs` step of the chain, checked with [`CHAIN_SLACK`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainInequality {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ChainInequality {
    fn new(lhs: f64, rhs: f64) -> Self {
        ChainInequality {
            lhs,
            rhs,
            holds: lhs <= rhs + CHAIN_SLACK,
        }
    }

    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// Numerical check of the argument that equality in the generalized gate is
/// impossible, run on one conjugation step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProofChainReport {
    pub mg: f64,
    pub bound: f64,
    pub abcd_sqrt: f64,
    /// `|abcd|^{1/2} ≤ (1 − M_g)/M_g²`.
    pub hypothesis_holds: bool,
    pub h1: UnimodularMatrix,
    /// `|a₁d₁|^{1/2} ≤ 1/M_g`.
    pub ineq11: ChainInequality,
    /// `|b₁c₁|^{1/2} ≤ (1 − M_g)/M_g`.
    pub ineq12: ChainInequality,
    /// `M_g(1 + |b₁c₁|^{1/2}) ≤ 1`.
    pub ineq3: ChainInequality,
    /// `|(λ − λ⁻¹)²(1 + |b₁c₁|) − 1|`; zero only in the equality case.
    pub eq4_residual: f64,
    /// `|tr²(g) − 4 − (λ − λ⁻¹)²|`.
    pub trace_identity_residual: f64,
    /// `|b₁c₁ + (λ − λ⁻¹)²bc(1 + bc)| / max(1, |b₁c₁|)`.
    pub product_identity_residual: f64,
    /// `|tr[g, h₁] − 2 + (λ − λ⁻¹)²b₁c₁| / max(1, |(λ − λ⁻¹)²b₁c₁|)`.
    pub commutator_trace_residual: f64,
    /// `|a₁b₁c₁d₁|^{1/2}`, the generalized gate quantity for `⟨g, h₁⟩`.
    pub h1_abcd_sqrt: f64,
    /// The hypothesis holds but one of (11), (12), (3) does not.
    pub chain_violation: bool,
}

pub fn proof_chain_report(
    lambda: ComplexScalar,
    h: &UnimodularMatrix,
) -> Result<ProofChainReport, GateError> {
    let mg = applicable_mg(lambda)?;
    let bound = (1.0 - mg) / (mg * mg);
    let abcd = abcd_sqrt(h);
    let hypothesis_holds = abcd <= bound + GATE_EQUALITY_TOLERANCE;

    let g = UnimodularMatrix::diagonal(lambda);
    let h1 = conjugate_step(lambda, h);
    let gap_sq = (lambda - lambda.inv()).powi(2);
    let b1c1 = h1.b() * h1.c();
    let a1d1 = h1.a() * h1.d();
    let b1c1_sqrt = b1c1.norm().sqrt();

    let ineq11 = ChainInequality::new(a1d1.norm().sqrt(), 1.0 / mg);
    let ineq12 = ChainInequality::new(b1c1_sqrt, (1.0 - mg) / mg);
    let ineq3 = ChainInequality::new(mg * (1.0 + b1c1_sqrt), 1.0);

    let eq4_residual = (gap_sq * (1.0 + b1c1.norm()) - 1.0).norm();
    let tr = g.trace();
    let trace_identity_residual = (tr * tr - 4.0 - gap_sq).norm();

    let bc = h.b() * h.c();
    let product_identity_residual =
        (b1c1 + gap_sq * bc * (bc + 1.0)).norm() / b1c1.norm().max(1.0);
    let expected_comm = gap_sq * b1c1;
    let commutator_trace_residual =
        (g.commutator(&h1).trace() - 2.0 + expected_comm).norm() / expected_comm.norm().max(1.0);

    let chain_violation = hypothesis_holds && !(ineq11.holds && ineq12.holds && ineq3.holds);

    Ok(ProofChainReport {
        mg,
        bound,
        abcd_sqrt: abcd,
        hypothesis_holds,
        h1,
        ineq11,
        ineq12,
        ineq3,
        eq4_residual,
        trace_identity_residual,
        product_identity_residual,
        commutator_trace_residual,
        h1_abcd_sqrt: abcd_sqrt(&h1),
        chain_violation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStep {
    pub n: usize,
    pub h: UnimodularMatrix,
    /// `|b_n| + |c_n|`.
    pub off_diag: f64,
    /// Largest entry modulus of `h_n·g − g·h_n`.
    pub comm_defect: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace {
    pub lambda: ComplexScalar,
    pub steps: Vec<IterationStep>,
    /// Index of the first step whose entries exceeded [`OVERFLOW_LIMIT`];
    /// `steps` stops just before it.
    pub overflowed_at: Option<usize>,
}

impl IterationTrace {
    pub fn overflowed(&self) -> bool {
        self.overflowed_at.is_some()
    }
}

fn iteration_step(n: usize, g: &UnimodularMatrix, h: UnimodularMatrix) -> IterationStep {
    let defect = h.mul(g).entries();
    let other = g.mul(&h).entries();
    let comm_defect = defect
        .iter()
        .zip(other.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    IterationStep {
        n,
        h,
        off_diag: h.b().norm() + h.c().norm(),
        comm_defect,
    }
}

/// Applies [`conjugate_step`] `n` times, recording `n + 1` steps unless an
/// entry grows past [`OVERFLOW_LIMIT`].
pub fn iterate_conjugation(
    lambda: ComplexScalar,
    h: &UnimodularMatrix,
    n: usize,
) -> Result<IterationTrace, GateError> {
    check_expanding(lambda)?;
    if n > MAX_ITERATIONS {
        return Err(GateError::TooManySteps(n));
    }
    let g = UnimodularMatrix::diagonal(lambda);
    let mut steps = Vec::with_capacity(n + 1);
    steps.push(iteration_step(0, &g, *h));
    let mut current = *h;
    let mut overflowed_at = None;
    for k in 1..=n {
        let next = conjugate_step(lambda, &current);
        if !next.is_finite() || next.max_norm() > OVERFLOW_LIMIT {
            overflowed_at = Some(k);
            break;
        }
        steps.push(iteration_step(k, &g, next));
        current = next;
    }
    Ok(IterationTrace {
        lambda,
        steps,
        overflowed_at,
    })
}
