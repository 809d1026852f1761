//! Jørgensen-type discreteness gates for two-generator subgroups of SL(2,ℂ).
//!
//! - [`mat2c`]: unimodular complex 2×2 matrices.
//! - [`moebius`]: classification, fixed points, loxodromic normal form and `M_g`.
//! - [`gates`]: the classical and generalized inequality gates, the
//!   conjugation step `h ↦ hgh⁻¹` and its diagnostics.

pub mod gates;
pub mod mat2c;
pub mod moebius;

pub use gates::{
    classical_jorgensen, conjugate_step, corollary_gates, iterate_conjugation, proof_chain_report,
    run_all_gates, wjc_bound, wjc_gate, GateError, GateKind, GateReport, GateSuite,
    IterationTrace, Outcome, ProofChainReport, Verdict,
};
pub use mat2c::{ComplexScalar, MatrixError, UnimodularMatrix};
pub use moebius::{
    classify, diagonalize_loxodromic, fixed_points, is_axis_preserving, mg_of, BoundaryPoint,
    LoxodromicNormalization, MoebiusClass, MoebiusError,
};
