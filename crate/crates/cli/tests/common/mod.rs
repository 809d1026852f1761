//! Oracle arithmetic for the integration suites: nested-array complex
//! matrices, Cramer-rule inverses and seeded samplers. It does not call the
//! library's closed forms.

#![allow(dead_code)]

use jgate_core::{ComplexScalar, UnimodularMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = ComplexScalar;
pub type Mat = [[C; 2]; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn one() -> C {
    C::new(1.0, 0.0)
}

pub fn zero() -> C {
    C::new(0.0, 0.0)
}

pub fn to_mat(m: &UnimodularMatrix) -> Mat {
    let [a, b, c, d] = m.entries();
    [[a, b], [c, d]]
}

pub fn diag(lambda: C) -> Mat {
    [[lambda, zero()], [zero(), one() / lambda]]
}

pub fn matmul(x: &Mat, y: &Mat) -> Mat {
    let mut out = [[zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                out[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    out
}

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

pub fn commutator(x: &Mat, y: &Mat) -> Mat {
    matmul(&matmul(x, y), &matmul(&matinv(x), &matinv(y)))
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

pub fn mg(lambda: C) -> f64 {
    (lambda - one()).norm() + (one() / lambda - one()).norm()
}

pub fn random_unimodular(rng: &mut ChaCha8Rng, half_width: f64) -> UnimodularMatrix {
    loop {
        let [a, b, c, d] = [0; 4].map(|_| {
            C::new(
                rng.gen_range(-half_width..half_width),
                rng.gen_range(-half_width..half_width),
            )
        });
        let det = a * d - b * c;
        if det.norm() < 0.1 {
            continue;
        }
        if let Ok(m) = UnimodularMatrix::new(a, b, c / det, d / det) {
            return m;
        }
    }
}

pub fn random_lambda(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C {
    C::from_polar(rng.gen_range(lo..hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_small_mg_lambda(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> C {
    loop {
        let l = random_lambda(rng, lo, hi);
        if mg(l) < 1.0 {
            return l;
        }
    }
}

pub fn abcd_sqrt(h: &UnimodularMatrix) -> f64 {
    let [a, b, c, d] = h.entries();
    (a * b * c * d).norm().sqrt()
}

/// Halves `b` and `c`, re-solving `d = (1 + bc)/a`, until `|abcd|^{1/2} ≤ bound`.
pub fn scale_into_hypothesis(h: &UnimodularMatrix, bound: f64) -> UnimodularMatrix {
    let [a, mut b, mut c, _] = h.entries();
    loop {
        let m = UnimodularMatrix::new(a, b, c, (b * c + 1.0) / a).expect("unimodular");
        if abcd_sqrt(&m) <= bound {
            return m;
        }
        b *= 0.5;
        c *= 0.5;
    }
}

fn abcd_along(t: f64, w: C) -> f64 {
    (t * (one() + w * t).norm()).sqrt()
}

/// `h` with `|abcd|^{1/2} = target`: bisection on `t` for `bc = t·w`, then
/// `a` on a random circle and `d = (1 + bc)/a`.
pub fn h_at_abcd(rng: &mut ChaCha8Rng, target: f64) -> UnimodularMatrix {
    let w = C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
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
    let bc = w * (0.5 * (lo + hi));
    let b = bc.sqrt() * C::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
    let c = bc / b;
    let one_plus = bc + 1.0;
    let a = C::from_polar(one_plus.norm().sqrt().max(1e-300), rng.gen_range(0.0..std::f64::consts::TAU));
    UnimodularMatrix::new(a, b, c, one_plus / a).expect("unimodular")
}
