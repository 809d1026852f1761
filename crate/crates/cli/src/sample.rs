//! Seeded sampling sweep over `(λ, h)` that records every gate quantity as CSV.
//!
//! # Random stream
//!
//! Row `i` (0-based) draws from its own xoshiro256++ generator. That
//! generator is seeded, through the usual SplitMix64 state expansion, with the
//! `(i + 1)`-th output of SplitMix64 started at the user seed. Uniform reals
//! in `[0, 1)` are `(x >> 11) · 2⁻⁵³` for a raw 64-bit output `x`. Each row
//! consumes uniforms in this order:
//!
//! 1. `|λ| = min + (max − min)·u`, `arg λ = 2π·u`, repeated until `M_g < 1`;
//! 2. `|b| = s·(1 − u)`, `arg b = 2π·u`, then the same for `c` (`s` is the h scale);
//! 3. `arg a = 2π·u`, with `|a| = |1 + bc|^{1/2}` (1 if `bc = −1`) and `d = (1 + bc)/a`.
//!
//! Rows are computed in parallel and written in index order, so identical
//! configurations give identical bytes.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::PathBuf;

use jgate_core::{
    is_axis_preserving, mg_of, run_all_gates, ComplexScalar, GateKind, UnimodularMatrix,
};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::{SplitMix64, Xoshiro256PlusPlus};
use rayon::prelude::*;

use crate::error::CliError;

/// `|λ|` at or above the golden ratio forces `M_g ≥ 1` for every argument.
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Draw attempts per row before the λ range is declared unusable.
pub const MAX_LAMBDA_ATTEMPTS: usize = 1_000_000;

pub const BASE_COLUMNS: [&str; 16] = [
    "seedIndex",
    "lambda_re",
    "lambda_im",
    "mg",
    "bound",
    "abcd_sqrt",
    "bc_sqrt",
    "onePlusBc_sqrt",
    "sumBcOnePlusBc",
    "jorgensenLhs",
    "wjcFired",
    "cor1Fired",
    "cor2Fired",
    "cor3Fired",
    "classicalFired",
    "axisPreserving",
];

pub const H_COLUMNS: [&str; 8] = [
    "h_a_re", "h_a_im", "h_b_re", "h_b_im", "h_c_re", "h_c_im", "h_d_re", "h_d_im",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub seed: u64,
    pub count: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub h_scale: f64,
    pub output: PathBuf,
    pub emit_h: bool,
}

impl SampleConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (lo, hi) = (self.lambda_min, self.lambda_max);
        if !(lo.is_finite() && hi.is_finite()) || lo <= 1.0 || hi < lo {
            return Err(CliError::InvalidRange(format!(
                "need 1 < lambda-min <= lambda-max, got ({lo}, {hi})"
            )));
        }
        if lo >= GOLDEN_RATIO {
            return Err(CliError::InvalidRange(format!(
                "lambda-min = {lo} leaves no lambda with M_g < 1 (needs < {GOLDEN_RATIO})"
            )));
        }
        if !(self.h_scale.is_finite() && self.h_scale > 0.0) {
            return Err(CliError::InvalidRange(format!(
                "h-scale must be positive, got {}",
                self.h_scale
            )));
        }
        Ok(())
    }
}

/// Per-row generator, see the module docs.
pub struct RowStream(Xoshiro256PlusPlus);

impl RowStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut mixer = SplitMix64::seed_from_u64(seed.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
        RowStream(Xoshiro256PlusPlus::seed_from_u64(mixer.next_u64()))
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn polar(&mut self, modulus: f64) -> ComplexScalar {
        ComplexScalar::from_polar(modulus, TAU * self.uniform())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRow {
    pub index: usize,
    pub lambda: ComplexScalar,
    pub h: UnimodularMatrix,
    pub mg: f64,
    pub bound: f64,
    pub abcd_sqrt: f64,
    pub bc_sqrt: f64,
    pub one_plus_bc_sqrt: f64,
    pub sum_bc_one_plus_bc: f64,
    pub jorgensen_lhs: f64,
    pub wjc_fired: bool,
    pub cor1_fired: bool,
    pub cor2_fired: bool,
    pub cor3_fired: bool,
    pub classical_fired: bool,
    pub axis_preserving: bool,
}

fn draw_lambda(stream: &mut RowStream, cfg: &SampleConfig) -> Result<ComplexScalar, CliError> {
    for _ in 0..MAX_LAMBDA_ATTEMPTS {
        let modulus = cfg.lambda_min + (cfg.lambda_max - cfg.lambda_min) * stream.uniform();
        let lambda = stream.polar(modulus);
        if mg_of(lambda)? < 1.0 {
            return Ok(lambda);
        }
    }
    Err(CliError::InvalidRange(format!(
        "no lambda with M_g < 1 found in ({}, {})",
        cfg.lambda_min, cfg.lambda_max
    )))
}

fn draw_h(stream: &mut RowStream, scale: f64) -> Result<UnimodularMatrix, CliError> {
    let b_modulus = scale * (1.0 - stream.uniform());
    let b = stream.polar(b_modulus);
    let c_modulus = scale * (1.0 - stream.uniform());
    let c = stream.polar(c_modulus);
    let one_plus_bc = b * c + 1.0;
    let modulus = one_plus_bc.norm();
    let a = stream.polar(if modulus > 0.0 { modulus.sqrt() } else { 1.0 });
    let d = one_plus_bc / a;
    Ok(UnimodularMatrix::new(a, b, c, d)?)
}

pub fn sample_row(cfg: &SampleConfig, index: usize) -> Result<SampleRow, CliError> {
    let mut stream = RowStream::new(cfg.seed, index as u64);
    let lambda = draw_lambda(&mut stream, cfg)?;
    let h = draw_h(&mut stream, cfg.h_scale)?;
    let suite = run_all_gates(lambda, &h)?;
    let find = |kind: GateKind| {
        *suite
            .generalized
            .iter()
            .find(|r| r.gate == kind)
            .expect("all generalized gates run when M_g < 1")
    };
    let wjc = find(GateKind::Wjc);
    let cor1 = find(GateKind::CorollaryBc);
    let cor2 = find(GateKind::CorollaryOnePlusBc);
    let cor3 = find(GateKind::CorollarySum);
    Ok(SampleRow {
        index,
        lambda,
        h,
        mg: suite.mg,
        bound: wjc.bound,
        abcd_sqrt: wjc.lhs,
        bc_sqrt: cor1.lhs,
        one_plus_bc_sqrt: cor2.lhs,
        sum_bc_one_plus_bc: cor3.lhs,
        jorgensen_lhs: suite.classical.lhs,
        wjc_fired: wjc.fired,
        cor1_fired: cor1.fired,
        cor2_fired: cor2.fired,
        cor3_fired: cor3.fired,
        classical_fired: suite.classical.fired,
        axis_preserving: is_axis_preserving(&h),
    })
}

impl SampleRow {
    pub fn record(&self, emit_h: bool) -> Vec<String> {
        let mut fields = vec![
            self.index.to_string(),
            self.lambda.re.to_string(),
            self.lambda.im.to_string(),
            self.mg.to_string(),
            self.bound.to_string(),
            self.abcd_sqrt.to_string(),
            self.bc_sqrt.to_string(),
            self.one_plus_bc_sqrt.to_string(),
            self.sum_bc_one_plus_bc.to_string(),
            self.jorgensen_lhs.to_string(),
            self.wjc_fired.to_string(),
            self.cor1_fired.to_string(),
            self.cor2_fired.to_string(),
            self.cor3_fired.to_string(),
            self.classical_fired.to_string(),
            self.axis_preserving.to_string(),
        ];
        if emit_h {
            fields.extend(
                self.h
                    .entries()
                    .iter()
                    .flat_map(|z| [z.re.to_string(), z.im.to_string()]),
            );
        }
        fields
    }
}

/// Writes the sweep as CSV to `out`.
pub fn write_sample<W: Write>(cfg: &SampleConfig, out: W) -> Result<(), CliError> {
    cfg.validate()?;
    let rows = (0..cfg.count)
        .into_par_iter()
        .map(|i| sample_row(cfg, i))
        .collect::<Result<Vec<_>, _>>()?;
    let mut writer = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = BASE_COLUMNS.to_vec();
    if cfg.emit_h {
        header.extend(H_COLUMNS);
    }
    writer.write_record(&header)?;
    for row in &rows {
        writer.write_record(row.record(cfg.emit_h))?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes the sweep to `cfg.output`.
pub fn run_sample_command(cfg: &SampleConfig) -> Result<(), CliError> {
    cfg.validate()?;
    let file = std::fs::File::create(&cfg.output)?;
    write_sample(cfg, std::io::BufWriter::new(file))
}
