//! Möbius classification of SL(2,ℂ) elements, fixed points on the Riemann
//! sphere, and reduction of a loxodromic element to `diag(λ, λ⁻¹)`.

use std::fmt;

use thiserror::Error;

use crate::mat2c::{ComplexScalar, UnimodularMatrix};

/// Tolerance for "trace² is real" (relative) and "trace² = 4" (absolute).
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;

/// Tolerance on entry moduli used by [`is_axis_preserving`].
pub const AXIS_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoebiusClass {
    /// `±I`, acting trivially.
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

impl fmt::Display for MoebiusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MoebiusClass::Identity => "Identity",
            MoebiusClass::Parabolic => "Parabolic",
            MoebiusClass::Elliptic => "Elliptic",
            MoebiusClass::Loxodromic => "Loxodromic",
        };
        f.write_str(name)
    }
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(ComplexScalar),
    Infinity,
}

impl BoundaryPoint {
    /// Image of this point under `z ↦ (az + b)/(cz + d)`.
    pub fn apply(&self, m: &UnimodularMatrix) -> BoundaryPoint {
        match *self {
            BoundaryPoint::Infinity => {
                if m.c().norm() == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(m.a() / m.c())
                }
            }
            BoundaryPoint::Finite(z) => {
                let den = m.c() * z + m.d();
                if den.norm() == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((m.a() * z + m.b()) / den)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MoebiusError {
    #[error("identity acts trivially; every point is fixed")]
    IsIdentity,
    #[error("element is not loxodromic ({0})")]
    NotLoxodromic(MoebiusClass),
    #[error("lambda must be nonzero")]
    ZeroLambda,
}

/// Diagonalizing data for a loxodromic element `A`:
/// `conjugator · (lift_sign · A) · conjugator⁻¹ = diag(lambda, lambda⁻¹)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoxodromicNormalization {
    pub lambda: ComplexScalar,
    pub conjugator: UnimodularMatrix,
    pub lift_sign: i8,
    pub mg: f64,
}

impl LoxodromicNormalization {
    /// Moves `h` into the frame where `g` is diagonal.
    pub fn normalize(&self, h: &UnimodularMatrix) -> UnimodularMatrix {
        self.conjugator.conjugate_by(h)
    }

    pub fn normal_form(&self) -> UnimodularMatrix {
        UnimodularMatrix::diagonal(self.lambda)
    }
}

fn is_plus_minus_identity(m: &UnimodularMatrix) -> bool {
    let off = m.b().norm().max(m.c().norm());
    if off > CLASSIFY_TOLERANCE {
        return false;
    }
    [1.0, -1.0].iter().any(|&s| {
        (m.a() - s).norm() <= CLASSIFY_TOLERANCE && (m.d() - s).norm() <= CLASSIFY_TOLERANCE
    })
}

/// Classifies by trace²: parabolic at 4, elliptic on `[0, 4)`, loxodromic otherwise.
pub fn classify(m: &UnimodularMatrix) -> MoebiusClass {
    if is_plus_minus_identity(m) {
        return MoebiusClass::Identity;
    }
    let t = m.trace() * m.trace();
    if (t - 4.0).norm() <= CLASSIFY_TOLERANCE {
        return MoebiusClass::Parabolic;
    }
    let is_real = t.im.abs() <= CLASSIFY_TOLERANCE * t.norm().max(1.0);
    if is_real && t.re >= -CLASSIFY_TOLERANCE && t.re < 4.0 {
        MoebiusClass::Elliptic
    } else {
        MoebiusClass::Loxodromic
    }
}

/// Fixed points of `z ↦ (az + b)/(cz + d)`: roots of `cz² + (d − a)z − b = 0`,
/// with ∞ fixed exactly when `c = 0`.
pub fn fixed_points(m: &UnimodularMatrix) -> Result<Vec<BoundaryPoint>, MoebiusError> {
    let class = classify(m);
    if class == MoebiusClass::Identity {
        return Err(MoebiusError::IsIdentity);
    }
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    let a_minus_d = a - d;

    if c.norm() == 0.0 {
        // Affine map z ↦ (a/d)z + b/d.
        if class == MoebiusClass::Parabolic {
            return Ok(vec![BoundaryPoint::Infinity]);
        }
        return Ok(vec![
            BoundaryPoint::Finite(b / (d - a)),
            BoundaryPoint::Infinity,
        ]);
    }

    if class == MoebiusClass::Parabolic {
        return Ok(vec![BoundaryPoint::Finite(a_minus_d / (2.0 * c))]);
    }

    // (a − d)² + 4bc = tr² − 4. Pick the root sign that avoids cancellation
    // and recover the other root from the product −b/c.
    let mut s = (m.trace() * m.trace() - 4.0).sqrt();
    if (a_minus_d.conj() * s).re < 0.0 {
        s = -s;
    }
    let q = a_minus_d + s;
    let z1 = q / (2.0 * c);
    let z2 = -2.0 * b / q;
    Ok(vec![BoundaryPoint::Finite(z1), BoundaryPoint::Finite(z2)])
}

/// `|λ − 1| + |λ⁻¹ − 1|`.
pub fn mg_of(lambda: ComplexScalar) -> Result<f64, MoebiusError> {
    if lambda.norm() == 0.0 {
        return Err(MoebiusError::ZeroLambda);
    }
    Ok((lambda - 1.0).norm() + (lambda.inv() - 1.0).norm())
}

/// True when `h` preserves `{0, ∞}`: either diagonal or antidiagonal.
pub fn is_axis_preserving(h: &UnimodularMatrix) -> bool {
    h.b().norm().max(h.c().norm()) <= AXIS_TOLERANCE
        || h.a().norm().max(h.d().norm()) <= AXIS_TOLERANCE
}

/// Eigenvalue of modulus ≥ 1 for a matrix with the given trace.
fn expanding_eigenvalue(trace: ComplexScalar) -> ComplexScalar {
    let mut s = (trace * trace - 4.0).sqrt();
    if (trace.conj() * s).re < 0.0 {
        s = -s;
    }
    (trace + s) / 2.0
}

/// A left eigenvector `u` with `u · m = mu · u`, unit length.
fn left_eigenvector(m: &UnimodularMatrix, mu: ComplexScalar) -> [ComplexScalar; 2] {
    // u (m − μI) = 0: two candidate rows, take the better conditioned one.
    let first = [m.c(), mu - m.a()];
    let second = [mu - m.d(), m.b()];
    let norm = |v: &[ComplexScalar; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let v = if norm(&first) >= norm(&second) { first } else { second };
    let n = norm(&v);
    [v[0] / n, v[1] / n]
}

/// Reduces a loxodromic `A` to `diag(λ, λ⁻¹)` with `|λ| > 1`.
///
/// Of the two lifts `±A` the one with smaller `M_g` is used (ties keep `+A`).
/// The conjugator has determinant one, equal row norms, and the first nonzero
/// entry of its first column is real positive.
pub fn diagonalize_loxodromic(
    m: &UnimodularMatrix,
) -> Result<LoxodromicNormalization, MoebiusError> {
    let class = classify(m);
    if class != MoebiusClass::Loxodromic {
        return Err(MoebiusError::NotLoxodromic(class));
    }
    let lambda_plus = expanding_eigenvalue(m.trace());
    if lambda_plus.norm() <= 1.0 {
        return Err(MoebiusError::NotLoxodromic(class));
    }
    let mg_plus = mg_of(lambda_plus)?;
    let mg_minus = mg_of(-lambda_plus)?;
    let (lift_sign, lambda, mg) = if mg_minus < mg_plus {
        (-1i8, -lambda_plus, mg_minus)
    } else {
        (1i8, lambda_plus, mg_plus)
    };
    let lifted = if lift_sign < 0 { -*m } else { *m };

    // Rows of the conjugator are left eigenvectors for λ and λ⁻¹.
    let u1 = left_eigenvector(&lifted, lambda);
    let u2 = left_eigenvector(&lifted, lambda.inv());
    let det = u1[0] * u2[1] - u1[1] * u2[0];
    let scale = det.sqrt().inv();
    let (mut r1, mut r2) = (
        [u1[0] * scale, u1[1] * scale],
        [u2[0] * scale, u2[1] * scale],
    );

    // Remaining freedom: rows (s·r1, r2/s) with |s| = 1.
    let phase = if r1[0].norm() > 0.0 {
        ComplexScalar::from_polar(1.0, -r1[0].arg())
    } else {
        ComplexScalar::from_polar(1.0, r2[0].arg())
    };
    r1 = [r1[0] * phase, r1[1] * phase];
    r2 = [r2[0] / phase, r2[1] / phase];

    let conjugator = UnimodularMatrix::from_parts(r1[0], r1[1], r2[0], r2[1]);
    Ok(LoxodromicNormalization {
        lambda,
        conjugator,
        lift_sign,
        mg,
    })
}
