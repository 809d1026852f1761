//! Test-only oracle: plain nested-array complex matrices and seeded samplers.
//! Nothing here calls the closed forms under test.

#![allow(dead_code)]

use jgate_core::{ComplexScalar, UnimodularMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = ComplexScalar;
pub type Mat = [[C; 2]; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_mat(m: &UnimodularMatrix) -> Mat {
    let [a, b, c, d] = m.entries();
    [[a, b], [c, d]]
}

pub fn matmul(x: &Mat, y: &Mat) -> Mat {
    let mut out = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    out
}

/// Inverse by Cramer's rule with explicit division by the determinant.
pub fn matinv(x: &Mat) -> Mat {
    let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
    [
        [x[1][1] / det, -x[0][1] / det],
        [-x[1][0] / det, x[0][0] / det],
    ]
}

pub fn trace(x: &Mat) -> C {
    x[0][0] + x[1][1]
}

pub fn max_entry(x: &Mat) -> f64 {
    x.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_diff(x: &Mat, y: &Mat) -> f64 {
    x.iter()
        .flatten()
        .zip(y.iter().flatten())
        .map(|(p, q)| (p - q).norm())
        .fold(0.0, f64::max)
}

pub fn complex_in_box(rng: &mut ChaCha8Rng, half_width: f64) -> C {
    C::new(
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    )
}

/// Random unimodular matrix: entries sampled in a box, then the second row
/// divided by the determinant. Draws with `|det| < 0.1` are rejected.
pub fn random_unimodular(rng: &mut ChaCha8Rng, half_width: f64) -> UnimodularMatrix {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| complex_in_box(rng, half_width));
        let det = a * d - b * c;
        if det.norm() < 0.1 {
            continue;
        }
        if let Ok(m) = UnimodularMatrix::new(a, b, c / det, d / det) {
            return m;
        }
    }
}

/// `λ` with `|λ|` uniform in `(lo, hi)` and uniform argument.
pub fn random_lambda(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C {
    let r = rng.gen_range(lo..hi);
    let theta = rng.gen_range(0.0..std::f64::consts::TAU);
    C::from_polar(r, theta)
}

/// `|λ − 1| + |λ⁻¹ − 1|`, written out independently.
pub fn mg(lambda: C) -> f64 {
    let inv = C::new(1.0, 0.0) / lambda;
    (lambda - C::new(1.0, 0.0)).norm() + (inv - C::new(1.0, 0.0)).norm()
}

/// `λ` with `M_g < 1`, rejecting the rest.
pub fn random_small_mg_lambda(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C {
    loop {
        let l = random_lambda(rng, lo, hi);
        if mg(l) < 1.0 {
            return l;
        }
    }
}

/// Unimodular `h` with prescribed product `bc`; `a` on a random circle and
/// `d = (1 + bc)/a`.
pub fn h_with_bc(rng: &mut ChaCha8Rng, bc: C) -> UnimodularMatrix {
    let split = rng.gen_range(0.2..5.0_f64);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let b = bc.sqrt() * C::from_polar(split, phase);
    let c = bc / b;
    let one_plus = bc + 1.0;
    let a_mod = if one_plus.norm() > 0.0 { one_plus.norm().sqrt() } else { 1.0 };
    let a = C::from_polar(a_mod, rng.gen_range(0.0..std::f64::consts::TAU));
    let d = one_plus / a;
    UnimodularMatrix::new(a, b, c, d).expect("constructed unimodular")
}

/// `t·|1 + t·w|` for `bc = t·w`; its square root is `|abcd|^{1/2}` since `ad = 1 + bc`.
fn abcd_along(t: f64, w: C) -> f64 {
    (t * (C::new(1.0, 0.0) + w * t).norm()).sqrt()
}

/// Solves `|abcd|^{1/2} = target` along the ray `bc = t·w` by bisection.
pub fn solve_bc_modulus(w: C, target: f64) -> f64 {
    let mut hi = 1.0;
    while abcd_along(hi, w) < target {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if abcd_along(mid, w) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// An `h` whose `|abcd|^{1/2}` equals `target` up to rounding.
pub fn h_at_abcd(rng: &mut ChaCha8Rng, target: f64) -> UnimodularMatrix {
    let w = C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    let t = solve_bc_modulus(w, target);
    h_with_bc(rng, w * t)
}

pub fn abcd_sqrt(h: &UnimodularMatrix) -> f64 {
    let [a, b, c, d] = h.entries();
    (a * b * c * d).norm().sqrt()
}

/// Halves `b` and `c` (re-solving `d = (1 + bc)/a`) until `|abcd|^{1/2} ≤ bound`.
pub fn scale_into_hypothesis(h: &UnimodularMatrix, bound: f64) -> UnimodularMatrix {
    let [a, mut b, mut c, _] = h.entries();
    loop {
        let d = (b * c + 1.0) / a;
        let m = UnimodularMatrix::new(a, b, c, d).expect("constructed unimodular");
        if abcd_sqrt(&m) <= bound {
            return m;
        }
        b *= 0.5;
        c *= 0.5;
    }
}
