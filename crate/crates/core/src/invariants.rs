//! Curl, algebraic intersection numbers and the joint chirality-curl
//! invariant `J(H) = (Δ2 Δ4 Δ6, Δ2² Δ4² Δ6² curl)` of an equilateral hexagon.
//!
//! `J` separates the five components of the space of embedded hexagons:
//! `(0, 0)` is the unknot and `(±1, ±1)` are the four trefoil classes.
//! With the orientation conventions below, `Δi = +1` for the right-handed
//! trefoil (positive writhe).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::{segment_crossing, triple_product, Degenerate, OrientedTriangle, Segment, EPS_PLANE};
use crate::hexagon::{is_embedded, Hexagon};

/// Sign of `(v3 − v1) × (v5 − v1) · (v2 − v1)`; 0 within [`EPS_PLANE`].
pub fn curl(h: &Hexagon) -> i32 {
    let [v1, v2, v3, _, v5, _] = *h.vertices();
    let t = triple_product(&(v3 - v1), &(v5 - v1), &(v2 - v1));
    if t.abs() < EPS_PLANE {
        0
    } else {
        t.signum() as i32
    }
}

/// The corner triangles `T_i = (v_{i−1}, v_i, v_{i+1})` for even `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CornerTriangle {
    T2,
    T4,
    T6,
}

impl CornerTriangle {
    pub const ALL: [CornerTriangle; 3] = [CornerTriangle::T2, CornerTriangle::T4, CornerTriangle::T6];

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            2 => Some(Self::T2),
            4 => Some(Self::T4),
            6 => Some(Self::T6),
            _ => None,
        }
    }

    /// 0-based index of the middle vertex `v_i`.
    fn apex(self) -> usize {
        match self {
            Self::T2 => 1,
            Self::T4 => 3,
            Self::T6 => 5,
        }
    }
}

/// Algebraic intersection number of the oriented open disk `T_i` with the
/// two edges of `h` that share no vertex with it (`e4, e5` for `T2`, `e6, e1`
/// for `T4`, `e2, e3` for `T6`).
pub fn delta(h: &Hexagon, tri: CornerTriangle) -> Result<i32, Degenerate> {
    let v = h.vertices();
    let i = tri.apex();
    let disk = OrientedTriangle::new(v[(i + 5) % 6], v[i], v[(i + 1) % 6])?;
    let mut sum = 0;
    for start in [i + 2, i + 3] {
        let edge = Segment::new(v[start % 6], v[(start + 1) % 6])?;
        sum += segment_crossing(&edge, &disk)?.sign();
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JointChiralityCurl {
    pub chirality: i32,
    pub curl_part: i32,
}

impl JointChiralityCurl {
    pub const fn new(chirality: i32, curl_part: i32) -> Self {
        Self { chirality, curl_part }
    }

    pub fn is_trefoil(&self) -> bool {
        self.chirality.abs() == 1 && self.curl_part.abs() == 1
    }
}

impl fmt::Display for JointChiralityCurl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.chirality, self.curl_part)
    }
}

pub fn joint_chirality_curl(h: &Hexagon) -> Result<JointChiralityCurl, Degenerate> {
    let mut chirality = 1;
    for tri in CornerTriangle::ALL {
        chirality *= delta(h, tri)?;
    }
    Ok(JointChiralityCurl {
        chirality,
        curl_part: chirality * chirality * curl(h),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    pub fn chirality(self) -> i32 {
        match self {
            Self::Right => 1,
            Self::Left => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Right => Self::Left,
            Self::Left => Self::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KnotClass {
    #[serde(rename = "unknot")]
    Unknot,
    #[serde(rename = "trefoil_R+")]
    RightTrefoilCurlPlus,
    #[serde(rename = "trefoil_R-")]
    RightTrefoilCurlMinus,
    #[serde(rename = "trefoil_L+")]
    LeftTrefoilCurlPlus,
    #[serde(rename = "trefoil_L-")]
    LeftTrefoilCurlMinus,
    #[serde(rename = "degenerate")]
    Degenerate,
}

impl KnotClass {
    pub const ALL: [KnotClass; 6] = [
        KnotClass::Unknot,
        KnotClass::RightTrefoilCurlPlus,
        KnotClass::RightTrefoilCurlMinus,
        KnotClass::LeftTrefoilCurlPlus,
        KnotClass::LeftTrefoilCurlMinus,
        KnotClass::Degenerate,
    ];

    pub const TREFOILS: [KnotClass; 4] = [
        KnotClass::RightTrefoilCurlPlus,
        KnotClass::RightTrefoilCurlMinus,
        KnotClass::LeftTrefoilCurlPlus,
        KnotClass::LeftTrefoilCurlMinus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unknot => "unknot",
            Self::RightTrefoilCurlPlus => "trefoil_R+",
            Self::RightTrefoilCurlMinus => "trefoil_R-",
            Self::LeftTrefoilCurlPlus => "trefoil_L+",
            Self::LeftTrefoilCurlMinus => "trefoil_L-",
            Self::Degenerate => "degenerate",
        }
    }

    /// The class with invariant `j`; anything outside the five components
    /// of embedded hexagons maps to `Degenerate`.
    pub fn from_invariant(j: JointChiralityCurl) -> Self {
        match (j.chirality, j.curl_part) {
            (0, 0) => Self::Unknot,
            (1, 1) => Self::RightTrefoilCurlPlus,
            (1, -1) => Self::RightTrefoilCurlMinus,
            (-1, 1) => Self::LeftTrefoilCurlPlus,
            (-1, -1) => Self::LeftTrefoilCurlMinus,
            _ => Self::Degenerate,
        }
    }

    pub fn invariant(self) -> Option<JointChiralityCurl> {
        let (c, k) = match self {
            Self::Unknot => (0, 0),
            Self::RightTrefoilCurlPlus => (1, 1),
            Self::RightTrefoilCurlMinus => (1, -1),
            Self::LeftTrefoilCurlPlus => (-1, 1),
            Self::LeftTrefoilCurlMinus => (-1, -1),
            Self::Degenerate => return None,
        };
        Some(JointChiralityCurl::new(c, k))
    }

    pub fn is_trefoil(self) -> bool {
        Self::TREFOILS.contains(&self)
    }

    pub fn handedness(self) -> Option<Handedness> {
        match self.invariant()?.chirality {
            1 => Some(Handedness::Right),
            -1 => Some(Handedness::Left),
            _ => None,
        }
    }

    pub fn mirrored(self) -> Self {
        match self.invariant() {
            Some(j) => Self::from_invariant(JointChiralityCurl::new(-j.chirality, -j.curl_part)),
            None => Self::Degenerate,
        }
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KnotClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown knot class `{s}`")))
    }
}

/// Knot class of `h`; non-embedded or undecidable hexagons are `Degenerate`.
pub fn classify(h: &Hexagon) -> KnotClass {
    if !is_embedded(h) {
        return KnotClass::Degenerate;
    }
    match joint_chirality_curl(h) {
        Ok(j) => KnotClass::from_invariant(j),
        Err(_) => KnotClass::Degenerate,
    }
}

/// The automorphism `s`: `⟨v2, v3, v4, v5, v6, v1⟩`.
pub fn shift(h: &Hexagon) -> Hexagon {
    h.shifted()
}

/// The automorphism `r`: `⟨v1, v6, v5, v4, v3, v2⟩`.
pub fn reverse(h: &Hexagon) -> Hexagon {
    h.reversed()
}
