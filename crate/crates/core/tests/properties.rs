use std::f64::consts::{PI, TAU};

use hexknot::sampling::SampleStream;
use hexknot::{
    build_hexagon, classify, estimate_knotting_probability, extract_action_angle, joint_chirality_curl,
    satisfies_negative_curl, satisfies_r_plus, standardize, ActionAngleCoords, AngleTriple, DiagonalTriple, Handedness,
    KnotClass, Mode, Vec3,
};
use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

fn interior_coords() -> impl Strategy<Value = ActionAngleCoords> {
    ([0.0..2.0f64, 0.0..2.0f64, 0.0..2.0f64], [0.0..TAU, 0.0..TAU, 0.0..TAU])
        .prop_filter("interior of the polytope", |(d, _)| {
            DiagonalTriple::new(d[0], d[1], d[2]).is_interior()
        })
        .prop_map(|(d, t)| ActionAngleCoords::from_array([d[0], d[1], d[2], t[0], t[1], t[2]]))
}

/// Every trefoil in the first `n` samples of `seed`.
fn trefoils(n: u64, seed: u64) -> Vec<(ActionAngleCoords, KnotClass)> {
    SampleStream::new(n, seed)
        .filter_map(|aa| {
            let class = classify(&build_hexagon(&aa).unwrap());
            class.is_trefoil().then_some((aa, class))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn classify_ignores_rigid_motions(
        aa in interior_coords(),
        axis in [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64],
        angle in 0.0..TAU,
        shift in [-5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64],
    ) {
        let axis = Vec3::new(axis[0], axis[1], axis[2]);
        prop_assume!(axis.norm() > 1e-3);
        let h = build_hexagon(&aa).unwrap();
        let moved = h.rotated(&Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle))
            .translated(&Vec3::new(shift[0], shift[1], shift[2]));
        prop_assert_eq!(classify(&moved), classify(&h));
        prop_assert_eq!(classify(&standardize(&moved).unwrap()), classify(&h));
        let back = extract_action_angle(&moved).unwrap();
        for (a, b) in aa.to_array().iter().zip(back.to_array()).take(3) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn reflected_angles_mirror_the_invariant(aa in interior_coords()) {
        let h = build_hexagon(&aa).unwrap();
        let m = build_hexagon(&aa.mirrored()).unwrap();
        if let (Ok(j), Ok(k)) = (joint_chirality_curl(&h), joint_chirality_curl(&m)) {
            prop_assert_eq!((k.chirality, k.curl_part), (-j.chirality, -j.curl_part));
        }
        prop_assert_eq!(
            satisfies_r_plus(&aa).unwrap(),
            satisfies_negative_curl(&aa.mirrored(), Handedness::Left).unwrap()
        );
    }

    #[test]
    fn achiral_hexagons_have_no_curl_part(aa in interior_coords()) {
        if let Ok(j) = joint_chirality_curl(&build_hexagon(&aa).unwrap()) {
            if j.chirality == 0 {
                prop_assert_eq!(j.curl_part, 0);
            }
            prop_assert!(j.chirality.abs() <= 1 && j.curl_part.abs() <= 1);
        }
    }
}

#[test]
fn trefoil_angles_lie_in_curl_half() {
    let found = trefoils(2_000_000, 11);
    assert!(found.len() > 100);
    for (aa, class) in found {
        let j = class.invariant().unwrap();
        let angles = aa.angles;
        if j.curl_part == 1 {
            assert!(angles.all_within(0.0, PI), "{aa:?} {class}");
        } else {
            assert!(angles.all_within(PI, TAU), "{aa:?} {class}");
        }
    }
}

#[test]
fn planar_hexagons_are_unknots() {
    for aa in SampleStream::new(1000, 12) {
        let flat = ActionAngleCoords::new(aa.diagonals, AngleTriple::new(PI, PI, PI));
        assert_eq!(classify(&build_hexagon(&flat).unwrap()), KnotClass::Unknot);
    }
}

#[test]
fn predicate_hits_contain_oracle_hits() {
    let r = estimate_knotting_probability(1_000_000, 13, Mode::Oracle, None).unwrap();
    let a = r.agreement.as_ref().unwrap();
    for (class, c) in &a.per_class {
        assert_eq!(c.both, c.oracle, "{class}");
    }
    assert_eq!(a.filter_violations.predicate, 0);
}

#[test]
fn opposite_classes_are_equally_likely() {
    let r = estimate_knotting_probability(4_000_000, 14, Mode::Oracle, None).unwrap();
    let n = r.usable() as f64;
    for (a, b) in [
        (KnotClass::RightTrefoilCurlPlus, KnotClass::LeftTrefoilCurlMinus),
        (KnotClass::RightTrefoilCurlMinus, KnotClass::LeftTrefoilCurlPlus),
    ] {
        let (p, q) = (r.fraction(a), r.fraction(b));
        let se = ((p * (1.0 - p) + q * (1.0 - q)) / n).sqrt();
        assert!((p - q).abs() <= 3.0 * se, "{a} {p} vs {b} {q}");
    }
}

/// vol(B ∩ P₆) for B = [a0,a1]×[b0,b1]×[c0,c1] by midpoint quadrature over
/// (d1, d2) of the exact d3-interval length.
fn box_volume_oracle(b: [[f64; 2]; 3]) -> f64 {
    let m = 2000;
    let (h1, h2) = ((b[0][1] - b[0][0]) / m as f64, (b[1][1] - b[1][0]) / m as f64);
    let mut total = 0.0;
    for i in 0..m {
        let x = b[0][0] + (i as f64 + 0.5) * h1;
        for j in 0..m {
            let y = b[1][0] + (j as f64 + 0.5) * h2;
            let lo = b[2][0].max((x - y).abs());
            let hi = b[2][1].min(x + y).min(2.0);
            total += (hi - lo).max(0.0);
        }
    }
    total * h1 * h2
}

#[test]
fn sampler_matches_box_volume() {
    let b = [[1.0, 1.8], [0.2, 0.6], [0.2, 2.0]];
    let expected = box_volume_oracle(b) / 4.0;
    let n = 10_000_000u64;
    let hits = SampleStream::new(n, 15)
        .filter(|aa| {
            let d = aa.diagonals.as_array();
            (0..3).all(|k| d[k] > b[k][0] && d[k] < b[k][1])
        })
        .count() as f64;
    let p = hits / n as f64;
    let se = (expected * (1.0 - expected) / n as f64).sqrt();
    assert!((p - expected).abs() <= 3.0 * se, "{p} vs {expected} (se {se})");
}
