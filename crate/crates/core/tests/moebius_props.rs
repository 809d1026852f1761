mod common;

use common::*;
use jgate_core::{
    classify, diagonalize_loxodromic, fixed_points, mg_of, BoundaryPoint, MoebiusClass,
    UnimodularMatrix,
};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn classification_is_lift_and_conjugation_invariant() {
    let mut rng = rng(10);
    let parabolic = UnimodularMatrix::new(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)).unwrap();
    for i in 0..1_000 {
        let a = match i % 3 {
            0 => random_unimodular(&mut rng, 2.0),
            1 => UnimodularMatrix::diagonal(C::from_polar(1.0, rng.gen_range(0.1..3.0))),
            _ => parabolic,
        };
        let conj = random_unimodular(&mut rng, 1.0).conjugate_by(&a);
        assert_eq!(classify(&a), classify(&-a));
        assert_eq!(classify(&conj), classify(&a), "{a:?} vs {conj:?}");
    }
}

#[test]
fn diagonalization_reconstructs_input() {
    let mut rng = rng(11);
    let mut checked = 0;
    while checked < 1_000 {
        let a = random_unimodular(&mut rng, 2.0);
        if classify(&a) != MoebiusClass::Loxodromic {
            continue;
        }
        let n = diagonalize_loxodromic(&a).unwrap();
        assert!(n.lambda.norm() > 1.0);
        assert!((n.conjugator.det() - 1.0).norm() <= 1e-9);
        assert!((n.mg - mg(n.lambda)).abs() <= 1e-12);
        assert!(n.mg <= mg(-n.lambda));
        let lifted = if n.lift_sign < 0 { -a } else { a };
        let rebuilt = matmul(
            &matmul(&matinv(&to_mat(&n.conjugator)), &to_mat(&n.normal_form())),
            &to_mat(&n.conjugator),
        );
        assert!(max_diff(&rebuilt, &to_mat(&lifted)) <= 1e-8);
        let forward = n.conjugator.conjugate_by(&lifted);
        assert!(forward.max_abs_diff(&n.normal_form()) <= 1e-8);
        checked += 1;
    }
}

fn maps_to_itself(p: &BoundaryPoint, m: &UnimodularMatrix) -> bool {
    match (p, p.apply(m)) {
        (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
        (BoundaryPoint::Finite(z), BoundaryPoint::Finite(w)) => (z - w).norm() <= 1e-8 * z.norm().max(1.0),
        _ => false,
    }
}

#[test]
fn fixed_points_are_fixed() {
    let mut rng = rng(12);
    for _ in 0..1_000 {
        let a = random_unimodular(&mut rng, 2.0);
        let pts = fixed_points(&a).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(maps_to_itself(p, &a), "{a:?} moves {p:?}");
        }
    }
}

proptest! {
    #[test]
    fn mg_has_inversion_and_conjugation_symmetry(r in 0.05f64..20.0, theta in -3.2f64..3.2) {
        let l = C::from_polar(r, theta);
        let base = mg_of(l).unwrap();
        prop_assert!((base - mg_of(l.inv()).unwrap()).abs() <= 1e-12);
        prop_assert!((base - mg_of(l.conj()).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn diagonal_loxodromic_fixes_zero_and_infinity(r in 1.001f64..50.0, theta in -3.2f64..3.2) {
        let g = UnimodularMatrix::diagonal(C::from_polar(r, theta));
        let pts = fixed_points(&g).unwrap();
        prop_assert_eq!(pts.len(), 2);
        prop_assert!(pts.contains(&BoundaryPoint::Infinity));
        prop_assert!(pts.iter().any(|p| matches!(p, BoundaryPoint::Finite(z) if z.norm() == 0.0)));
    }

    #[test]
    fn parabolic_conjugates_have_one_fixed_point(x in -3.0f64..3.0, y in -3.0f64..3.0, s in 0.1f64..3.0) {
        // C·[[1,1],[0,1]]·C⁻¹ with C = [[1, 0], [x + iy, 1]] · diag(s).
        let shear = UnimodularMatrix::new(C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(x, y), C::new(1.0, 0.0)).unwrap();
        let conj = shear.mul(&UnimodularMatrix::diagonal(C::new(s, 0.0)));
        let t = UnimodularMatrix::new(C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)).unwrap();
        let p = conj.conjugate_by(&t);
        prop_assert_eq!(classify(&p), MoebiusClass::Parabolic);
        let pts = fixed_points(&p).unwrap();
        prop_assert_eq!(pts.len(), 1);
        prop_assert!(maps_to_itself(&pts[0], &p));
    }
}
