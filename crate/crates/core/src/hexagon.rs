//! Closed hexagons in 3-space.

use nalgebra::{Matrix3, Rotation3};

use crate::error::{Error, Result};
use crate::geom::{segments_intersect, Segment, Vec3, EPS_AREA};

/// Six vertices `v1..v6` (stored 0-based) joined cyclically by the edges
/// `e_i = [v_i, v_{i+1}]`.
///
/// Hexagons produced by the action-angle map have unit edges; the type
/// itself accepts any closed hexagon so that user input and hand-built
/// singular configurations can be classified too.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hexagon {
    vertices: [Vec3; 6],
}

impl Hexagon {
    pub fn new(vertices: [Vec3; 6]) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vec3; 6] {
        &self.vertices
    }

    /// 18 coordinates `v1x, v1y, v1z, ..., v6z`.
    pub fn to_row(&self) -> [f64; 18] {
        let mut row = [0.0; 18];
        for (i, v) in self.vertices.iter().enumerate() {
            row[3 * i..3 * i + 3].copy_from_slice(v.as_slice());
        }
        row
    }

    pub fn from_row(row: &[f64; 18]) -> Self {
        let vertices = std::array::from_fn(|i| Vec3::new(row[3 * i], row[3 * i + 1], row[3 * i + 2]));
        Self { vertices }
    }

    /// Edge `e_{i+1} = [v_{i+1}, v_{i+2}]` for a 0-based index `i`.
    pub fn edge(&self, i: usize) -> Option<Segment> {
        Segment::new(self.vertices[i % 6], self.vertices[(i + 1) % 6]).ok()
    }

    pub fn edge_lengths(&self) -> [f64; 6] {
        std::array::from_fn(|i| (self.vertices[(i + 1) % 6] - self.vertices[i]).norm())
    }

    /// Largest deviation of an edge length from 1.
    pub fn max_edge_error(&self) -> f64 {
        self.edge_lengths().iter().map(|l| (l - 1.0).abs()).fold(0.0, f64::max)
    }

    /// `⟨v2, v3, v4, v5, v6, v1⟩`.
    pub fn shifted(&self) -> Self {
        let mut vertices = self.vertices;
        vertices.rotate_left(1);
        Self { vertices }
    }

    /// `⟨v1, v6, v5, v4, v3, v2⟩`.
    pub fn reversed(&self) -> Self {
        let v = &self.vertices;
        Self {
            vertices: [v[0], v[5], v[4], v[3], v[2], v[1]],
        }
    }

    /// Reflection through the xy-plane.
    pub fn mirrored(&self) -> Self {
        self.map(|v| Vec3::new(v.x, v.y, -v.z))
    }

    pub fn translated(&self, by: &Vec3) -> Self {
        self.map(|v| v + by)
    }

    pub fn rotated(&self, rotation: &Rotation3<f64>) -> Self {
        self.map(|v| rotation * v)
    }

    fn map(&self, f: impl Fn(&Vec3) -> Vec3) -> Self {
        Self {
            vertices: std::array::from_fn(|i| f(&self.vertices[i])),
        }
    }
}

/// Rigid motion to standard position: `v1` at the origin, `v3` on the
/// positive x-axis, `v5` in the upper half of the xy-plane.
pub fn standardize(h: &Hexagon) -> Result<Hexagon> {
    let [v1, _, v3, _, v5, _] = *h.vertices();
    let ex = v3 - v1;
    let normal = ex.cross(&(v5 - v1));
    if 0.5 * normal.norm() <= EPS_AREA {
        return Err(Error::DegenerateFrame);
    }
    let ex = ex.normalize();
    let ez = normal.normalize();
    let ey = ez.cross(&ex);
    // rows are the new axes, so this is a proper rotation taking the frame to the standard basis
    let to_standard = Matrix3::from_rows(&[ex.transpose(), ey.transpose(), ez.transpose()]);
    Ok(h.map(|v| to_standard * (v - v1)))
}

/// True iff none of the nine pairs of non-adjacent edges touch.
pub fn is_embedded(h: &Hexagon) -> bool {
    let edges: Option<Vec<Segment>> = (0..6).map(|i| h.edge(i)).collect();
    let Some(edges) = edges else {
        return false;
    };
    (0..6).all(|i| {
        // e_i against e_{i+2} and e_{i+3}; the opposite pair is visited once
        (2..=3).all(|k| {
            let j = i + k;
            (k == 3 && i >= 3) || !segments_intersect(&edges[i], &edges[j % 6])
        })
    })
}
