//! Complex 2×2 matrices of determinant one.
//!
//! Everything in the crate is built on [`UnimodularMatrix`]. The constructor
//! rejects near-unimodular input instead of rescaling it, since rescaling
//! would perturb quantities such as `|abcd|` that the gates compare.

use std::fmt;
use std::ops::Neg;

use num_complex::Complex64;
use thiserror::Error;

/// The base field element.
pub type ComplexScalar = Complex64;

/// Default absolute tolerance on `|det - 1|` at construction.
pub const UNIMODULAR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: ComplexScalar },
    #[error("matrix entry is NaN or infinite")]
    NonFiniteEntry,
}

/// A matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Clone, Copy, PartialEq)]
pub struct UnimodularMatrix {
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    d: ComplexScalar,
}

impl UnimodularMatrix {
    /// Builds a matrix, checking `|ad - bc - 1| <= 1e-9`.
    pub fn new(
        a: ComplexScalar,
        b: ComplexScalar,
        c: ComplexScalar,
        d: ComplexScalar,
    ) -> Result<Self, MatrixError> {
        Self::with_tolerance(a, b, c, d, UNIMODULAR_TOLERANCE)
    }

    /// Same as [`UnimodularMatrix::new`] with a caller-chosen determinant tolerance.
    pub fn with_tolerance(
        a: ComplexScalar,
        b: ComplexScalar,
        c: ComplexScalar,
        d: ComplexScalar,
        tolerance: f64,
    ) -> Result<Self, MatrixError> {
        if ![a, b, c, d].iter().all(|z| z.is_finite()) {
            return Err(MatrixError::NonFiniteEntry);
        }
        let det = a * d - b * c;
        if (det - 1.0).norm() > tolerance {
            return Err(MatrixError::NotUnimodular { det });
        }
        Ok(Self { a, b, c, d })
    }

    /// Builds from row-major entries.
    pub fn from_entries(entries: [ComplexScalar; 4]) -> Result<Self, MatrixError> {
        let [a, b, c, d] = entries;
        Self::new(a, b, c, d)
    }

    /// Construction for results of exact-determinant formulas (products,
    /// adjugates, closed-form conjugates). The determinant is one
    /// algebraically; only rounding separates it from one.
    pub(crate) fn from_parts(
        a: ComplexScalar,
        b: ComplexScalar,
        c: ComplexScalar,
        d: ComplexScalar,
    ) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_parts(1.0.into(), 0.0.into(), 0.0.into(), 1.0.into())
    }

    /// `diag(lambda, lambda⁻¹)`. Panics if `lambda` is zero or not finite.
    pub fn diagonal(lambda: ComplexScalar) -> Self {
        assert!(
            lambda.is_finite() && lambda.norm() > 0.0,
            "diagonal entry must be finite and nonzero"
        );
        Self::from_parts(lambda, 0.0.into(), 0.0.into(), lambda.inv())
    }

    /// The elliptic order-four element `[[0, -1], [1, 0]]`.
    pub fn antidiagonal() -> Self {
        Self::from_parts(0.0.into(), (-1.0).into(), 1.0.into(), 0.0.into())
    }

    pub fn a(&self) -> ComplexScalar {
        self.a
    }

    pub fn b(&self) -> ComplexScalar {
        self.b
    }

    pub fn c(&self) -> ComplexScalar {
        self.c
    }

    pub fn d(&self) -> ComplexScalar {
        self.d
    }

    /// Row-major entries `[a, b, c, d]`.
    pub fn entries(&self) -> [ComplexScalar; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> ComplexScalar {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> ComplexScalar {
        self.a + self.d
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_parts(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }

    /// The adjugate `[[d, -b], [-c, a]]`, which is the inverse in SL(2,ℂ).
    pub fn inverse(&self) -> Self {
        Self::from_parts(self.d, -self.b, -self.c, self.a)
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate_by(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse())
    }

    /// The commutator `[g, h] = g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, h: &Self) -> Self {
        self.mul(h).mul(&self.inverse()).mul(&h.inverse())
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }
}

/// Free-function form of [`UnimodularMatrix::new`].
pub fn make_unimodular(
    a: ComplexScalar,
    b: ComplexScalar,
    c: ComplexScalar,
    d: ComplexScalar,
) -> Result<UnimodularMatrix, MatrixError> {
    UnimodularMatrix::new(a, b, c, d)
}

pub fn mul(lhs: &UnimodularMatrix, rhs: &UnimodularMatrix) -> UnimodularMatrix {
    lhs.mul(rhs)
}

pub fn inverse(m: &UnimodularMatrix) -> UnimodularMatrix {
    m.inverse()
}

pub fn trace(m: &UnimodularMatrix) -> ComplexScalar {
    m.trace()
}

pub fn commutator(g: &UnimodularMatrix, h: &UnimodularMatrix) -> UnimodularMatrix {
    g.commutator(h)
}

impl Neg for UnimodularMatrix {
    type Output = UnimodularMatrix;

    fn neg(self) -> Self::Output {
        Self::from_parts(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Debug for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
