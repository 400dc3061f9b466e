//! Action-angle coordinates for equilateral hexagons.
//!
//! The `T135` triangulation splits a hexagon into the central triangle
//! `(v1, v3, v5)` and three unit isosceles "ears" hinged on its sides. The
//! action coordinates are the diagonal lengths `d1 = |v1 − v3|`,
//! `d2 = |v3 − v5|`, `d3 = |v5 − v1|`; the angle coordinates are the dihedral
//! angles of the ears around those diagonals, with the planar regular hexagon
//! at `θ = (π, π, π)`.
//!
//! Angle convention: in standard position (`v1` at the origin, `v3` on the
//! positive x-axis, `v5` in the upper half of the xy-plane) an angle in
//! `(0, π)` lifts the ear apex to positive z, so `curl = +1` exactly when
//! `θ1 ∈ (0, π)`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Vec3, EPS_AREA};
use crate::hexagon::Hexagon;

/// Diagonal lengths `(d1, d2, d3)` of the `T135` triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagonalTriple {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

impl DiagonalTriple {
    pub fn new(d1: f64, d2: f64, d3: f64) -> Self {
        Self { d1, d2, d3 }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.d1, self.d2, self.d3]
    }

    pub fn in_moment_polytope(&self) -> bool {
        in_moment_polytope(self)
    }

    pub fn is_interior(&self) -> bool {
        is_interior(self)
    }

    /// Four times the area of the central triangle,
    /// `√(2(d1d2)² + 2(d1d3)² + 2(d2d3)² − d1⁴ − d2⁴ − d3⁴)`.
    ///
    /// Evaluated in the factored Heron form, which keeps full relative
    /// accuracy on thin triangles where the expanded polynomial cancels.
    pub fn scaled_area(&self) -> f64 {
        let [a, b, c] = self.as_array();
        ((a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)).max(0.0).sqrt()
    }
}

/// Closed triangulation inequalities: `0 ≤ dᵢ ≤ 2` and the three triangle
/// inequalities of the central triangle.
pub fn in_moment_polytope(d: &DiagonalTriple) -> bool {
    let [a, b, c] = d.as_array();
    let bounded = [a, b, c].iter().all(|x| (0.0..=2.0).contains(x));
    bounded && c <= a + b && a <= b + c && b <= a + c
}

/// Strict version of [`in_moment_polytope`].
pub fn is_interior(d: &DiagonalTriple) -> bool {
    let [a, b, c] = d.as_array();
    let bounded = [a, b, c].iter().all(|&x| x > 0.0 && x < 2.0);
    bounded && c < a + b && a < b + c && b < a + c
}

/// Maps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Dihedral angles `(θ1, θ2, θ3)` in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleTriple {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl AngleTriple {
    /// Wraps each angle into `[0, 2π)`.
    pub fn new(t1: f64, t2: f64, t3: f64) -> Self {
        Self {
            t1: wrap_angle(t1),
            t2: wrap_angle(t2),
            t3: wrap_angle(t3),
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }

    /// `θ ↦ 2π − θ` componentwise: the angles of the mirror image.
    pub fn reflected(&self) -> Self {
        Self::new(TAU - self.t1, TAU - self.t2, TAU - self.t3)
    }

    /// True iff every angle lies in the open interval `(lo, hi)`.
    pub fn all_within(&self, lo: f64, hi: f64) -> bool {
        self.as_array().iter().all(|&t| t > lo && t < hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ActionAngleCoords {
    pub diagonals: DiagonalTriple,
    pub angles: AngleTriple,
}

impl ActionAngleCoords {
    pub fn new(diagonals: DiagonalTriple, angles: AngleTriple) -> Self {
        Self { diagonals, angles }
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self::new(
            DiagonalTriple::new(v[0], v[1], v[2]),
            AngleTriple::new(v[3], v[4], v[5]),
        )
    }

    /// `[d1, d2, d3, θ1, θ2, θ3]`, the CSV column order.
    pub fn to_array(&self) -> [f64; 6] {
        let [d1, d2, d3] = self.diagonals.as_array();
        let [t1, t2, t3] = self.angles.as_array();
        [d1, d2, d3, t1, t2, t3]
    }

    /// See [`DiagonalTriple::scaled_area`].
    pub fn scaled_area(&self) -> f64 {
        self.diagonals.scaled_area()
    }

    /// Coordinates of the mirror image through the plane of the central triangle.
    pub fn mirrored(&self) -> Self {
        Self::new(self.diagonals, self.angles.reflected())
    }
}

/// Builds the hexagon with the given action-angle coordinates in standard position.
pub fn build_hexagon(aa: &ActionAngleCoords) -> Result<Hexagon> {
    let DiagonalTriple { d1, d2, d3 } = aa.diagonals;
    if !aa.diagonals.is_interior() {
        return Err(Error::NotInterior(d1, d2, d3));
    }
    let d = aa.scaled_area();
    let (s1, s2, s3) = ((4.0 - d1 * d1).sqrt(), (4.0 - d2 * d2).sqrt(), (4.0 - d3 * d3).sqrt());
    let (sin1, cos1) = aa.angles.t1.sin_cos();
    let (sin2, cos2) = aa.angles.t2.sin_cos();
    let (sin3, cos3) = aa.angles.t3.sin_cos();

    let q12 = d1 * d1 + d2 * d2 - d3 * d3;
    let q13 = d1 * d1 - d2 * d2 + d3 * d3;

    let v1 = Vec3::zeros();
    let v2 = Vec3::new(d1 / 2.0, 0.5 * s1 * cos1, 0.5 * s1 * sin1);
    let v3 = Vec3::new(d1, 0.0, 0.0);
    let v4 = Vec3::new(
        (3.0 * d1 * d1 - d2 * d2 + d3 * d3) / (4.0 * d1) - d / (4.0 * d1 * d2) * s2 * cos2,
        d / (4.0 * d1) - q12 / (4.0 * d1 * d2) * s2 * cos2,
        0.5 * s2 * sin2,
    );
    let v5 = Vec3::new(q13 / (2.0 * d1), d / (2.0 * d1), 0.0);
    // The x term is `+`: the ear over v5v1 folds toward v3 as θ3 → 0, like the other two.
    let v6 = Vec3::new(
        q13 / (4.0 * d1) + d / (4.0 * d1 * d3) * s3 * cos3,
        d / (4.0 * d1) - q13 / (4.0 * d1 * d3) * s3 * cos3,
        0.5 * s3 * sin3,
    );
    Ok(Hexagon::new([v1, v2, v3, v4, v5, v6]))
}

/// Reads the diagonals and dihedral angles off any hexagon (rigid-motion invariant).
///
/// Each angle is `atan2` of the apex offset from its diagonal's midpoint,
/// split into the component along the central triangle's normal and the
/// in-plane component pointing into the central triangle.
pub fn extract_action_angle(h: &Hexagon) -> Result<ActionAngleCoords> {
    let [v1, v2, v3, v4, v5, v6] = *h.vertices();
    let normal = (v3 - v1).cross(&(v5 - v1));
    if 0.5 * normal.norm() <= EPS_AREA {
        return Err(Error::DegenerateFrame);
    }
    let z = normal.normalize();

    let dihedral = |a: Vec3, b: Vec3, apex: Vec3| {
        let axis = (b - a).normalize();
        let inward = z.cross(&axis);
        let offset = apex - (a + b) / 2.0;
        wrap_angle(offset.dot(&z).atan2(offset.dot(&inward)))
    };

    let diagonals = DiagonalTriple::new((v3 - v1).norm(), (v5 - v3).norm(), (v1 - v5).norm());
    let angles = AngleTriple {
        t1: dihedral(v1, v3, v2),
        t2: dihedral(v3, v5, v4),
        t3: dihedral(v5, v1, v6),
    };
    Ok(ActionAngleCoords::new(diagonals, angles))
}
