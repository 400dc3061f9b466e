//! Closed-form trefoil conditions on action-angle coordinates.
//!
//! For a hexagon with curl `+1` each `Δi = ±1` reduces to the signs of three
//! plane-separation expressions in `(d, θ)`. Writing `D` for the scaled area
//! of the central triangle and `sᵢ = √(4 − dᵢ²)`, the functions `f_k, g_k,
//! h_k` below give those signs for the disk pierced by `e6`/`e1` (k = 1),
//! `e4`/`e5` (k = 2) and `e2`/`e3` (k = 3). `(1, 1)` requires all nine
//! positive; `(−1, 1)` requires every `f` negative and every `g, h` positive.
//! The negative-curl classes are the mirror images, `θ ↦ 2π − θ`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::action_angle::{ActionAngleCoords, AngleTriple};
use crate::error::{Error, Result};
use crate::invariants::{Handedness, JointChiralityCurl, KnotClass};

/// Diagonals closer than this are treated as equal by [`lemma_filters`].
pub const DISTINCT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NineFunctions {
    pub f1: f64,
    pub g1: f64,
    pub h1: f64,
    pub f2: f64,
    pub g2: f64,
    pub h2: f64,
    pub f3: f64,
    pub g3: f64,
    pub h3: f64,
}

impl NineFunctions {
    /// `[f1, g1, h1, f2, g2, h2, f3, g3, h3]`.
    pub fn as_array(&self) -> [f64; 9] {
        [
            self.f1, self.g1, self.h1, self.f2, self.g2, self.h2, self.f3, self.g3, self.h3,
        ]
    }

    pub fn all_positive(&self) -> bool {
        self.as_array().iter().all(|&x| x > 0.0)
    }

    /// Every `f` negative, every `g` and `h` positive.
    pub fn left_pattern(&self) -> bool {
        self.f1 < 0.0
            && self.f2 < 0.0
            && self.f3 < 0.0
            && [self.g1, self.h1, self.g2, self.h2, self.g3, self.h3]
                .iter()
                .all(|&x| x > 0.0)
    }
}

fn check_interior(aa: &ActionAngleCoords) -> Result<()> {
    if aa.diagonals.is_interior() {
        Ok(())
    } else {
        let d = aa.diagonals;
        Err(Error::NotInterior(d.d1, d.d2, d.d3))
    }
}

/// Nine functions evaluated at `(d, θ)` without the interior check.
fn evaluate(aa: &ActionAngleCoords) -> NineFunctions {
    let [d1, d2, d3] = aa.diagonals.as_array();
    let d = aa.scaled_area();
    let (s1, s2, s3) = ((4.0 - d1 * d1).sqrt(), (4.0 - d2 * d2).sqrt(), (4.0 - d3 * d3).sqrt());
    let (sin1, cos1) = aa.angles.t1.sin_cos();
    let (sin2, cos2) = aa.angles.t2.sin_cos();
    let (sin3, cos3) = aa.angles.t3.sin_cos();

    // q_i is the diagonal combination with d_i² negated, e.g. q1 = −d1² + d2² + d3²
    let (dd1, dd2, dd3) = (d1 * d1, d2 * d2, d3 * d3);
    let q1 = -dd1 + dd2 + dd3;
    let q2 = dd1 - dd2 + dd3;
    let q3 = dd1 + dd2 - dd3;

    NineFunctions {
        f1: d2 * s2 * sin2 * (d3 * d - q2 * s3 * cos3) - d3 * s3 * sin3 * (d2 * d - q3 * s2 * cos2),
        g1: s2 * (q1 / (2.0 * d2 * d3) * cos2 * sin3 + sin2 * cos3) - d * sin3 / (2.0 * d3),
        h1: s3 * (q1 / (2.0 * d2 * d3) * cos3 * sin2 + sin3 * cos2) - d * sin2 / (2.0 * d2),
        f2: d3 * s3 * sin3 * (d1 * d - q3 * s1 * cos1) - d1 * s1 * sin1 * (d3 * d - q1 * s3 * cos3),
        g2: s3 * (q2 / (2.0 * d1 * d3) * cos3 * sin1 + sin3 * cos1) - d * sin1 / (2.0 * d1),
        h2: s1 * (q2 / (2.0 * d1 * d3) * cos1 * sin3 + sin1 * cos3) - d * sin3 / (2.0 * d3),
        f3: d1 * s1 * sin1 * (d2 * d - q1 * s2 * cos2) - d2 * s2 * sin2 * (d1 * d - q2 * s1 * cos1),
        g3: s1 * (q3 / (2.0 * d1 * d2) * cos1 * sin2 + sin1 * cos2) - d * sin2 / (2.0 * d2),
        h3: s2 * (q3 / (2.0 * d1 * d2) * cos2 * sin1 + sin2 * cos1) - d * sin1 / (2.0 * d1),
    }
}

pub fn nine_functions(aa: &ActionAngleCoords) -> Result<NineFunctions> {
    check_interior(aa)?;
    Ok(evaluate(aa))
}

fn upper_half(angles: &AngleTriple) -> bool {
    angles.all_within(0.0, PI)
}

/// Necessary condition for joint chirality-curl `(1, 1)`.
pub fn satisfies_r_plus(aa: &ActionAngleCoords) -> Result<bool> {
    check_interior(aa)?;
    Ok(upper_half(&aa.angles) && evaluate(aa).all_positive())
}

/// Necessary condition for joint chirality-curl `(−1, 1)`.
pub fn satisfies_l_plus(aa: &ActionAngleCoords) -> Result<bool> {
    check_interior(aa)?;
    Ok(upper_half(&aa.angles) && evaluate(aa).left_pattern())
}

/// Necessary condition for `(χ, −1)`, with `χ` given by `handedness`.
///
/// The mirror image of a `(χ, −1)` hexagon is `(−χ, 1)` and has angles
/// `2π − θ`, so this is the positive-curl test for the opposite handedness
/// on the reflected angles.
pub fn satisfies_negative_curl(aa: &ActionAngleCoords, handedness: Handedness) -> Result<bool> {
    let mirror = aa.mirrored();
    match handedness {
        Handedness::Left => satisfies_r_plus(&mirror),
        Handedness::Right => satisfies_l_plus(&mirror),
    }
}

/// The trefoil class whose predicate holds at `aa`, if any. At most one can.
pub fn predicate_class(aa: &ActionAngleCoords) -> Result<Option<KnotClass>> {
    check_interior(aa)?;
    let (angles, mirrored) = if upper_half(&aa.angles) {
        (aa.angles, false)
    } else if aa.angles.all_within(PI, 2.0 * PI) {
        (aa.angles.reflected(), true)
    } else {
        return Ok(None);
    };
    let f = evaluate(&ActionAngleCoords::new(aa.diagonals, angles));
    let class = if f.all_positive() {
        KnotClass::RightTrefoilCurlPlus
    } else if f.left_pattern() {
        KnotClass::LeftTrefoilCurlPlus
    } else {
        return Ok(None);
    };
    Ok(Some(if mirrored { class.mirrored() } else { class }))
}

/// Pass/fail of each angle and diagonal condition that a trefoil of the
/// target class must meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub target: KnotClass,
    /// All angles in `(0, π)` for curl `+1`, in `(π, 2π)` for curl `−1`.
    pub curl_range: bool,
    /// Pairwise sums of the (reflected, for curl `−1`) angles below `π`.
    pub angle_sums: bool,
    /// The three diagonals differ pairwise by more than [`DISTINCT_TOL`].
    pub distinct_diagonals: bool,
    /// With `dᵢ` the largest diagonal: `θᵢ ∈ (0, π)`, the other two angles in
    /// `(0, π/2)`, and `θᵢ ∈ (π/2, π)` when `dᵢ² > dⱼ² + dₖ²`. Vacuous when
    /// the diagonals are not distinct.
    pub largest_diagonal_window: bool,
}

impl FilterReport {
    pub fn passes(&self) -> bool {
        self.curl_range && self.angle_sums && self.distinct_diagonals && self.largest_diagonal_window
    }

    /// `(clause name, passed)` in report order.
    pub fn clauses(&self) -> [(&'static str, bool); 4] {
        [
            ("curl_range", self.curl_range),
            ("angle_sums", self.angle_sums),
            ("distinct_diagonals", self.distinct_diagonals),
            ("largest_diagonal_window", self.largest_diagonal_window),
        ]
    }
}

pub fn lemma_filters(aa: &ActionAngleCoords, target: JointChiralityCurl) -> Result<FilterReport> {
    check_interior(aa)?;
    if !target.is_trefoil() {
        return Err(Error::InvalidTarget(target.to_string()));
    }
    let angles = if target.curl_part == 1 {
        aa.angles
    } else {
        aa.angles.reflected()
    };
    let t = angles.as_array();
    let d = aa.diagonals.as_array();

    let curl_range = upper_half(&angles);
    let angle_sums = t[0] + t[1] < PI && t[0] + t[2] < PI && t[1] + t[2] < PI;
    let distinct_diagonals =
        (d[0] - d[1]).abs() > DISTINCT_TOL && (d[1] - d[2]).abs() > DISTINCT_TOL && (d[0] - d[2]).abs() > DISTINCT_TOL;

    let largest_diagonal_window = if distinct_diagonals {
        let i = (0..3).max_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap_or(0);
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let obtuse = d[i] * d[i] > d[j] * d[j] + d[k] * d[k];
        let lower = if obtuse { FRAC_PI_2 } else { 0.0 };
        let acute_window = |x: f64| x > 0.0 && x < FRAC_PI_2;
        t[i] > lower && t[i] < PI && acute_window(t[j]) && acute_window(t[k])
    } else {
        true
    };

    Ok(FilterReport {
        target: KnotClass::from_invariant(target),
        curl_range,
        angle_sums,
        distinct_diagonals,
        largest_diagonal_window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action_angle::build_hexagon;
    use crate::geom::{orientation, Vec3};
    use crate::sampling::SampleStream;

    const RIGHT_PLUS: [f64; 6] = [1.029, 0.927, 0.770, 1.450, 0.474, 0.739];
    const LEFT_PLUS: [f64; 6] = [0.825, 0.912, 0.620, 0.334, 1.674, 0.458];

    fn aa(v: [f64; 6]) -> ActionAngleCoords {
        ActionAngleCoords::from_array(v)
    }

    #[test]
    fn equal_pairs_cancel_f() {
        for (x, t) in [(1.0, 0.7), (1.5, 2.0), (0.4, 4.0)] {
            let n = nine_functions(&aa([x, x, x, t, t, t])).unwrap();
            assert_eq!([n.f1, n.f2, n.f3], [0.0; 3]);
            assert!(!satisfies_r_plus(&aa([x, x, x, t, t, t])).unwrap());
            assert!(!satisfies_l_plus(&aa([x, x, x, t, t, t])).unwrap());
        }
    }

    #[test]
    fn planar_regular_all_zero() {
        let r3 = 3f64.sqrt();
        let n = nine_functions(&aa([r3, r3, r3, PI, PI, PI])).unwrap();
        for x in n.as_array() {
            assert!(x.abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn rejects_exterior() {
        assert!(matches!(
            nine_functions(&aa([0.5, 0.5, 1.5, 1.0, 1.0, 1.0])),
            Err(Error::NotInterior(..))
        ));
        assert!(satisfies_r_plus(&aa([1.0, 1.0, 2.0, 1.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn witnesses() {
        let r = aa(RIGHT_PLUS);
        let l = aa(LEFT_PLUS);
        assert!(satisfies_r_plus(&r).unwrap());
        assert!(!satisfies_l_plus(&r).unwrap());
        assert!(satisfies_l_plus(&l).unwrap());
        assert!(!satisfies_r_plus(&l).unwrap());
        assert!(satisfies_negative_curl(&r.mirrored(), Handedness::Left).unwrap());
        assert!(!satisfies_negative_curl(&r.mirrored(), Handedness::Right).unwrap());
        assert!(satisfies_negative_curl(&l.mirrored(), Handedness::Right).unwrap());
        assert!(!satisfies_negative_curl(&r, Handedness::Left).unwrap());
        assert_eq!(predicate_class(&r).unwrap(), Some(KnotClass::RightTrefoilCurlPlus));
        assert_eq!(predicate_class(&l).unwrap(), Some(KnotClass::LeftTrefoilCurlPlus));
        assert_eq!(
            predicate_class(&r.mirrored()).unwrap(),
            Some(KnotClass::LeftTrefoilCurlMinus)
        );
        assert_eq!(
            predicate_class(&l.mirrored()).unwrap(),
            Some(KnotClass::RightTrefoilCurlMinus)
        );
    }

    #[test]
    fn upper_angle_rules_out_r_plus() {
        let mut v = RIGHT_PLUS;
        v[4] = 4.0;
        assert!(!satisfies_r_plus(&aa(v)).unwrap());
        assert_eq!(predicate_class(&aa(v)).unwrap(), None);
    }

    #[test]
    fn filter_arithmetic() {
        let r = lemma_filters(&aa([1.5, 0.8, 0.9, 2.0, 0.4, 0.3]), JointChiralityCurl::new(1, 1)).unwrap();
        assert!(r.curl_range && r.angle_sums && r.distinct_diagonals && r.largest_diagonal_window);
        assert!(r.passes());

        let r = lemma_filters(&aa([1.0, 1.0, 1.0, 0.5, 0.5, 0.5]), JointChiralityCurl::new(1, 1)).unwrap();
        assert!(!r.distinct_diagonals);

        let r = lemma_filters(&aa([1.5, 0.8, 0.9, 0.4, 0.3, 0.2]), JointChiralityCurl::new(1, 1)).unwrap();
        assert!(r.angle_sums && !r.largest_diagonal_window);

        let r = lemma_filters(&aa([1.5, 0.8, 0.9, 2.0, 1.2, 0.3]), JointChiralityCurl::new(-1, 1)).unwrap();
        assert!(!r.angle_sums);

        // negative curl reads the reflected angles
        let m = aa([1.5, 0.8, 0.9, 2.0, 0.4, 0.3]).mirrored();
        let r = lemma_filters(&m, JointChiralityCurl::new(-1, -1)).unwrap();
        assert!(r.passes());
        assert_eq!(r.target, KnotClass::LeftTrefoilCurlMinus);
        let r = lemma_filters(&m, JointChiralityCurl::new(1, 1)).unwrap();
        assert!(!r.curl_range);

        assert!(matches!(
            lemma_filters(&aa(RIGHT_PLUS), JointChiralityCurl::new(0, 0)),
            Err(Error::InvalidTarget(_))
        ));
    }

    #[test]
    fn filter_report_json() {
        let r = lemma_filters(&aa([1.5, 0.8, 0.9, 2.0, 0.4, 0.3]), JointChiralityCurl::new(1, 1)).unwrap();
        let v: serde_json::Value = serde_json::to_value(r).unwrap();
        assert_eq!(v["target"], "trefoil_R+");
        assert_eq!(v["angle_sums"], true);
        assert_eq!(serde_json::from_value::<FilterReport>(v).unwrap(), r);
    }

    /// Each of the nine functions has the sign of one orientation determinant
    /// of four vertices of the constructed hexagon.
    fn geometric_signs(v: &[Vec3; 6]) -> [f64; 9] {
        let [v1, v2, v3, v4, v5, v6] = v;
        [
            orientation(v1, v3, v6, v4),
            orientation(v1, v4, v6, v5),
            orientation(v3, v4, v6, v5),
            orientation(v2, v3, v5, v6),
            orientation(v1, v2, v6, v3),
            orientation(v1, v2, v6, v5),
            orientation(v1, v2, v4, v5),
            orientation(v2, v3, v4, v5),
            orientation(v1, v2, v4, v3),
        ]
    }

    #[test]
    fn signs_match_geometry() {
        let mut checked = 0;
        for a in SampleStream::new(100_000, 23) {
            let f = nine_functions(&a).unwrap().as_array();
            let h = build_hexagon(&a).unwrap();
            let g = geometric_signs(h.vertices());
            for (x, y) in f.iter().zip(g) {
                if x.abs() > 1e-9 && y.abs() > 1e-9 {
                    assert_eq!(x.signum(), y.signum(), "{a:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 850_000);
    }
}
