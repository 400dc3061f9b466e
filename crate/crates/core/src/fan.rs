//! Equilateral n-gons from a fan triangulation: all diagonals start at `v1`.

use crate::error::{Error, Result};
use crate::geom::Vec3;

/// Closed equilateral polygon `v1..vn` built by [`build_fan_polygon`].
#[derive(Debug, Clone, PartialEq)]
pub struct FanPolygon {
    pub n: usize,
    pub vertices: Vec<Vec3>,
}

impl FanPolygon {
    pub fn edge_lengths(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm())
            .collect()
    }

    /// Length of the diagonal `v1 v_{i+2}` (1-based `i`).
    pub fn diagonal(&self, i: usize) -> f64 {
        (self.vertices[i + 1] - self.vertices[0]).norm()
    }
}

fn check_triangle(index: usize, a: f64, b: f64, c: f64) -> Result<()> {
    let ok = a > 0.0 && b > 0.0 && c > 0.0 && a < b + c && b < a + c && c < a + b;
    if ok {
        Ok(())
    } else {
        Err(Error::TriangleInequalityViolated { index, a, b, c })
    }
}

/// Glues the `n - 2` fan triangles `(v1, v_{j+1}, v_{j+2})` along the
/// diagonals `|v1 v_{j+2}| = d_j`, rotating triangle `j + 1` by the dihedral
/// angle `θ_j` about diagonal `j`.
///
/// `θ = π` continues flat, away from the previous apex. `v2` sits below the
/// x-axis, so with all angles `π` a convex polygon lies in the xy-plane.
pub fn build_fan_polygon(n: usize, diagonals: &[f64], angles: &[f64]) -> Result<FanPolygon> {
    let expected = n.saturating_sub(3);
    if n < 4 || diagonals.len() != expected || angles.len() != expected {
        return Err(Error::FanArity {
            n,
            expected,
            diagonals: diagonals.len(),
            angles: angles.len(),
        });
    }
    // |v1 v_{m+1}|; triangle j has sides spoke(j), 1, spoke(j + 1)
    let spoke = |m: usize| if m == 1 || m == n - 1 { 1.0 } else { diagonals[m - 2] };
    for j in 1..=n - 2 {
        check_triangle(j, spoke(j), 1.0, spoke(j + 1))?;
    }

    let d1 = diagonals[0];
    let mut vertices = Vec::with_capacity(n);
    vertices.push(Vec3::zeros());
    vertices.push(Vec3::new(d1 / 2.0, -(1.0 - d1 * d1 / 4.0).sqrt(), 0.0));
    vertices.push(Vec3::new(d1, 0.0, 0.0));

    for (j, &theta) in angles.iter().enumerate() {
        let hinge_len = diagonals[j];
        let axis = vertices[j + 2] / hinge_len;
        let prev = vertices[j + 1];
        let b = spoke(j + 3);
        // foot of the new apex on the hinge and its distance from it
        let x = (hinge_len * hinge_len + b * b - 1.0) / (2.0 * hinge_len);
        let r = (b * b - x * x).max(0.0).sqrt();
        let u = (prev - axis * prev.dot(&axis)).normalize();
        let w = u.cross(&axis);
        vertices.push(axis * x + (u * theta.cos() + w * theta.sin()) * r);
    }
    Ok(FanPolygon { n, vertices })
}
