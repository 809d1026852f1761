//! The `gate`, `classify` and `iterate` commands, independent of process I/O.

use jgate_core::gates::NotApplicableReason;
use jgate_core::{
    classical_jorgensen, classify, diagonalize_loxodromic, fixed_points, is_axis_preserving,
    iterate_conjugation, proof_chain_report, run_all_gates, ComplexScalar, GateError,
    MoebiusClass, MoebiusError, UnimodularMatrix, Verdict,
};

use crate::doc::{
    entries_to_matrix, matrix_to_entries, resolve_tolerance, to_complex, to_pair, GeneratorSpec,
    InputDocument, MatrixDocument,
};
use crate::error::CliError;
use crate::report::{
    exit_code, ClassifyDocument, GateDocument, GateReportDoc, GeneratorDoc, HDoc,
    IterateDocument, ProofChainDoc, VerdictDoc,
};

/// Steps used by `iterate` when neither the flag nor the document sets one.
pub const DEFAULT_STEPS: usize = 10;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Moebius(MoebiusError::NotLoxodromic(_)) => 2,
            _ => 1,
        }
    }
}

/// `g` in the diagonal frame, or the reason the frame does not exist.
struct Frame {
    lambda: ComplexScalar,
    h: UnimodularMatrix,
    generator: GeneratorDoc,
}

enum Normalized {
    Frame(Frame),
    NotLoxodromic {
        g: UnimodularMatrix,
        generator: GeneratorDoc,
    },
}

fn parse_lambda(pair: [f64; 2]) -> Result<ComplexScalar, CliError> {
    let lambda = to_complex(pair);
    if !lambda.is_finite() || lambda.norm() == 0.0 {
        return Err(CliError::Parse(format!(
            "lambda must be finite and nonzero, got [{}, {}]",
            pair[0], pair[1]
        )));
    }
    Ok(lambda)
}

fn normalize(doc: &InputDocument, h: &UnimodularMatrix, tolerance: f64) -> Result<Normalized, CliError> {
    match &doc.g {
        GeneratorSpec::Lambda { lambda } => {
            let lambda = parse_lambda(*lambda)?;
            let g = UnimodularMatrix::diagonal(lambda);
            let class = classify(&g);
            if class != MoebiusClass::Loxodromic {
                return Ok(Normalized::NotLoxodromic {
                    g,
                    generator: GeneratorDoc {
                        form: "lambda".into(),
                        class: class.to_string(),
                        lambda: Some(to_pair(lambda)),
                        lift_sign: None,
                        mg: None,
                        conjugator: None,
                    },
                });
            }
            if lambda.norm() <= 1.0 {
                return Err(GateError::LambdaNotExpanding(lambda.norm()).into());
            }
            let mg = jgate_core::mg_of(lambda)?;
            Ok(Normalized::Frame(Frame {
                lambda,
                h: *h,
                generator: GeneratorDoc {
                    form: "lambda".into(),
                    class: class.to_string(),
                    lambda: Some(to_pair(lambda)),
                    lift_sign: Some(1),
                    mg: Some(mg),
                    conjugator: None,
                },
            }))
        }
        GeneratorSpec::Matrix(entries) => {
            let g = entries_to_matrix(entries, tolerance)?;
            match diagonalize_loxodromic(&g) {
                Ok(n) => Ok(Normalized::Frame(Frame {
                    lambda: n.lambda,
                    h: n.normalize(h),
                    generator: GeneratorDoc {
                        form: "matrix".into(),
                        class: MoebiusClass::Loxodromic.to_string(),
                        lambda: Some(to_pair(n.lambda)),
                        lift_sign: Some(n.lift_sign),
                        mg: Some(n.mg),
                        conjugator: Some(matrix_to_entries(&n.conjugator)),
                    },
                })),
                Err(MoebiusError::NotLoxodromic(class)) => Ok(Normalized::NotLoxodromic {
                    g,
                    generator: GeneratorDoc {
                        form: "matrix".into(),
                        class: class.to_string(),
                        lambda: None,
                        lift_sign: None,
                        mg: None,
                        conjugator: None,
                    },
                }),
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// Runs every gate on the pair described by `doc`.
pub fn run_gate_command(doc: &InputDocument, env_tolerance: Option<&str>) -> Result<GateDocument, CliError> {
    let tolerance = resolve_tolerance(doc.options.tolerance, env_tolerance)?;
    let h = entries_to_matrix(&doc.h, tolerance)?;
    let h_class = classify(&h).to_string();

    match normalize(doc, &h, tolerance)? {
        Normalized::NotLoxodromic { g, generator } => {
            let classical = classical_jorgensen(&g, &h);
            let verdict = Verdict::not_applicable(NotApplicableReason::NotLoxodromic);
            // The classical gate needs no frame and is still reported.
            Ok(GateDocument {
                g: generator,
                h: HDoc {
                    input: doc.h,
                    normalized: None,
                    class: h_class,
                    axis_preserving: None,
                },
                wjc_bound: None,
                gates: vec![GateReportDoc::from(&classical)],
                exit_code: exit_code(&verdict.outcome),
                verdict: VerdictDoc::from(&verdict),
                proof_chain: None,
            })
        }
        Normalized::Frame(frame) => {
            let suite = run_all_gates(frame.lambda, &frame.h)?;
            let wjc_bound = jgate_core::wjc_bound(suite.mg).ok();
            let proof_chain = wjc_bound
                .map(|_| proof_chain_report(frame.lambda, &frame.h))
                .transpose()?
                .map(|r| ProofChainDoc::from(&r));
            Ok(GateDocument {
                g: frame.generator,
                h: HDoc {
                    input: doc.h,
                    normalized: Some(matrix_to_entries(&frame.h)),
                    class: h_class,
                    axis_preserving: Some(is_axis_preserving(&frame.h)),
                },
                wjc_bound,
                gates: suite.reports().map(GateReportDoc::from).collect(),
                exit_code: exit_code(&suite.verdict.outcome),
                verdict: VerdictDoc::from(&suite.verdict),
                proof_chain,
            })
        }
    }
}

pub fn run_classify_command(doc: &MatrixDocument, env_tolerance: Option<&str>) -> Result<ClassifyDocument, CliError> {
    let tolerance = resolve_tolerance(None, env_tolerance)?;
    let m = entries_to_matrix(doc.entries(), tolerance)?;
    let class = classify(&m);
    let tr = m.trace();
    let fixed = match fixed_points(&m) {
        Ok(pts) => Some(pts.into_iter().map(Into::into).collect()),
        Err(MoebiusError::IsIdentity) => None,
        Err(e) => return Err(e.into()),
    };
    let normalization = if class == MoebiusClass::Loxodromic {
        Some(diagonalize_loxodromic(&m)?)
    } else {
        None
    };
    Ok(ClassifyDocument {
        class: class.to_string(),
        trace: to_pair(tr),
        trace_squared: to_pair(tr * tr),
        fixed_points: fixed,
        lambda: normalization.map(|n| to_pair(n.lambda)),
        mg: normalization.map(|n| n.mg),
        lift_sign: normalization.map(|n| n.lift_sign),
    })
}

/// Iterates `h ↦ hgh⁻¹` in the diagonal frame of `g`.
pub fn run_iterate_command(
    doc: &InputDocument,
    steps: Option<usize>,
    env_tolerance: Option<&str>,
) -> Result<IterateDocument, CliError> {
    let tolerance = resolve_tolerance(doc.options.tolerance, env_tolerance)?;
    let h = entries_to_matrix(&doc.h, tolerance)?;
    let n = steps.or(doc.options.steps).unwrap_or(DEFAULT_STEPS);
    match normalize(doc, &h, tolerance)? {
        Normalized::NotLoxodromic { g, .. } => {
            Err(MoebiusError::NotLoxodromic(classify(&g)).into())
        }
        Normalized::Frame(frame) => {
            let trace = iterate_conjugation(frame.lambda, &frame.h, n)?;
            Ok(IterateDocument::from(&trace))
        }
    }
}
