//! Floating-point 3D primitives for embeddedness tests and intersection numbers.
//!
//! All predicates work in unit-edge scale. Configurations closer than the
//! tolerances below to a degenerate position are reported as [`Degenerate`];
//! for randomly sampled hexagons this set has measure zero.

use nalgebra::Vector3;
use thiserror::Error;

pub type Vec3 = Vector3<f64>;

/// Minimum distance of a segment endpoint from a triangle's plane.
pub const EPS_PLANE: f64 = 1e-10;
/// Minimum distance of a piercing point from the triangle boundary.
pub const EPS_EDGE: f64 = 1e-10;
/// Minimum triangle area.
pub const EPS_AREA: f64 = 1e-12;
/// Two segments closer than this are considered to touch.
pub const EPS_CONTACT: f64 = 1e-12;

/// A configuration too close to a degenerate position to be decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Degenerate {
    #[error("triangle area is below tolerance")]
    FlatTriangle,
    #[error("segment has zero length")]
    ZeroSegment,
    #[error("segment endpoint lies on the triangle's plane")]
    EndpointOnPlane,
    #[error("piercing point lies on the triangle's boundary")]
    PiercingOnBoundary,
    #[error("polygon is not embedded")]
    NotEmbedded,
    #[error("invariants are inconsistent with an embedded hexagon")]
    Inconsistent,
}

/// `(a × b) · c`.
#[inline]
pub fn triple_product(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    a.cross(b).dot(c)
}

/// Signed volume `(q − p) × (r − p) · (s − p)`, six times the volume of the
/// tetrahedron `pqrs`.
#[inline]
pub fn orientation(p: &Vec3, q: &Vec3, r: &Vec3, s: &Vec3) -> f64 {
    triple_product(&(q - p), &(r - p), &(s - p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub p: Vec3,
    pub q: Vec3,
}

impl Segment {
    pub fn new(p: Vec3, q: Vec3) -> Result<Self, Degenerate> {
        if (q - p).norm() > 0.0 {
            Ok(Self { p, q })
        } else {
            Err(Degenerate::ZeroSegment)
        }
    }

    pub fn reversed(&self) -> Self {
        Self { p: self.q, q: self.p }
    }

    pub fn direction(&self) -> Vec3 {
        self.q - self.p
    }
}

/// Triangle `(a, b, c)` oriented by the right-hand rule, normal `(b − a) × (c − a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedTriangle {
    pub a: Vec3,
    pub b: Vec3,
    pub c: Vec3,
    normal: Vec3,
}

impl OrientedTriangle {
    pub fn new(a: Vec3, b: Vec3, c: Vec3) -> Result<Self, Degenerate> {
        let normal = (b - a).cross(&(c - a));
        if 0.5 * normal.norm() <= EPS_AREA {
            return Err(Degenerate::FlatTriangle);
        }
        Ok(Self { a, b, c, normal })
    }

    /// Unnormalised normal; its length is twice the area.
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn area(&self) -> f64 {
        0.5 * self.normal.norm()
    }

    /// `(b, c, a)`: same triangle, same normal.
    pub fn rotated(&self) -> Self {
        Self {
            a: self.b,
            b: self.c,
            c: self.a,
            normal: self.normal,
        }
    }
}

/// Outcome of a segment meeting the open disk of an oriented triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Crossing {
    /// Pierces the interior travelling along the normal.
    Along,
    /// Pierces the interior against the normal.
    Against,
    Miss,
}

impl Crossing {
    pub fn sign(self) -> i32 {
        match self {
            Crossing::Along => 1,
            Crossing::Against => -1,
            Crossing::Miss => 0,
        }
    }
}

/// Signed piercing of the open triangular disk by a segment.
///
/// Uses the signed volumes of the segment's line against the three triangle
/// edges and the two plane-side tests of the endpoints; no intersection point
/// is solved for. Distances are only formed to check the tolerances.
pub fn segment_crossing(seg: &Segment, tri: &OrientedTriangle) -> Result<Crossing, Degenerate> {
    let n = tri.normal;
    let n_len = n.norm();
    let side_p = n.dot(&(seg.p - tri.a));
    let side_q = n.dot(&(seg.q - tri.a));
    // side / |n| is the signed distance to the plane
    if side_p.abs() <= EPS_PLANE * n_len || side_q.abs() <= EPS_PLANE * n_len {
        // a segment resting in the plane well away from the disk cannot pierce it
        return if segment_triangle_distance(seg, tri) > EPS_EDGE {
            Ok(Crossing::Miss)
        } else {
            Err(Degenerate::EndpointOnPlane)
        };
    }
    if (side_p > 0.0) == (side_q > 0.0) {
        return Ok(Crossing::Miss);
    }

    let u = seg.direction();
    let (pa, pb, pc) = (tri.a - seg.p, tri.b - seg.p, tri.c - seg.p);
    let w_ab = triple_product(&pa, &pb, &u);
    let w_bc = triple_product(&pb, &pc, &u);
    let w_ca = triple_product(&pc, &pa, &u);
    // w_ab + w_bc + w_ca = n · u = side_q - side_p, nonzero here
    let total = side_q - side_p;

    // Distance of the piercing point to each edge line: barycentric weight
    // times the height of the opposite vertex, which is |n| / |edge|.
    let dist = [
        w_ab / total * n_len / (tri.b - tri.a).norm(),
        w_bc / total * n_len / (tri.c - tri.b).norm(),
        w_ca / total * n_len / (tri.a - tri.c).norm(),
    ];
    if dist.iter().all(|&x| x > EPS_EDGE) {
        Ok(if total > 0.0 {
            Crossing::Along
        } else {
            Crossing::Against
        })
    } else if dist.iter().all(|&x| x > -EPS_EDGE) {
        Err(Degenerate::PiercingOnBoundary)
    } else {
        Ok(Crossing::Miss)
    }
}

/// Minimum distance between two closed segments.
pub fn segment_distance(s1: &Segment, s2: &Segment) -> f64 {
    let d1 = s1.direction();
    let d2 = s2.direction();
    let r = s1.p - s2.p;
    let a = d1.dot(&d1);
    let e = d2.dot(&d2);
    let f = d2.dot(&r);
    let c = d1.dot(&r);
    let b = d1.dot(&d2);
    let denom = a * e - b * b;

    // Parallel segments get s = 0 and the clamping below finds the true minimum.
    let mut s = if denom > f64::EPSILON * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let c1 = s1.p + d1 * s;
    let c2 = s2.p + d2 * t;
    (c1 - c2).norm()
}

/// Distance from `p` to the closed triangle when its projection falls inside.
fn point_over_triangle(p: &Vec3, tri: &OrientedTriangle) -> Option<f64> {
    let n = tri.normal;
    let (a, b, c) = (tri.a - p, tri.b - p, tri.c - p);
    let inside = [(a, b), (b, c), (c, a)].iter().all(|(x, y)| x.cross(y).dot(&n) >= 0.0);
    inside.then(|| n.dot(&a).abs() / n.norm())
}

/// Minimum distance between a closed segment and a closed triangle.
pub fn segment_triangle_distance(seg: &Segment, tri: &OrientedTriangle) -> f64 {
    let n = tri.normal;
    let (side_p, side_q) = (n.dot(&(seg.p - tri.a)), n.dot(&(seg.q - tri.a)));
    if side_p * side_q < 0.0 {
        let hit = seg.p + seg.direction() * (side_p / (side_p - side_q));
        if point_over_triangle(&hit, tri).is_some() {
            return 0.0;
        }
    }
    let edges = [(tri.a, tri.b), (tri.b, tri.c), (tri.c, tri.a)];
    let to_edges = edges
        .iter()
        .map(|&(x, y)| segment_distance(seg, &Segment { p: x, q: y }));
    let to_face = [seg.p, seg.q].into_iter().filter_map(|p| point_over_triangle(&p, tri));
    to_edges.chain(to_face).fold(f64::INFINITY, f64::min)
}

/// True iff the closed segments come within [`EPS_CONTACT`] of each other.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    segment_distance(s1, s2) <= EPS_CONTACT
}
