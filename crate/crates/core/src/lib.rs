//! Random equilateral hexagons: uniform sampling in action-angle coordinates,
//! knot classification by joint chirality-curl, and Monte Carlo estimates of
//! the knotting probability.
//!
//! The crate is organised bottom-up:
//!
//! - [`geom`]: triple products, oriented segment/triangle piercing, segment proximity.
//! - [`action_angle`]: the moment polytope of the `T135` triangulation and the
//!   action-angle map `(d1, d2, d3, θ1, θ2, θ3) -> hexagon` together with its inverse.
//! - [`hexagon`], [`fan`]: polygon types, rigid normalisation, embeddedness and
//!   the general fan-triangulation builder.
//! - [`sampling`]: reproducible counter-based random streams and the uniform samplers.
//! - [`invariants`]: curl, algebraic intersection numbers, joint chirality-curl and
//!   the knot class.
//! - [`predicates`]: closed-form trefoil conditions on action-angle coordinates.
//! - [`measure`]: analytic volumes, Monte Carlo estimators and the bound report.

pub mod action_angle;
pub mod error;
pub mod fan;
pub mod geom;
pub mod hexagon;
pub mod invariants;
pub mod measure;
pub mod predicates;
pub mod sampling;

pub use action_angle::{
    build_hexagon, extract_action_angle, in_moment_polytope, is_interior, ActionAngleCoords, AngleTriple,
    DiagonalTriple,
};
pub use error::{Error, Result};
pub use fan::{build_fan_polygon, FanPolygon};
pub use geom::{Degenerate, OrientedTriangle, Segment, Vec3};
pub use hexagon::{is_embedded, standardize, Hexagon};
pub use invariants::{
    classify, curl, delta, joint_chirality_curl, reverse, shift, CornerTriangle, Handedness, JointChiralityCurl,
    KnotClass,
};
pub use measure::{
    analytic_volumes, compare_bound, estimate_knotting_probability, estimate_with_repeats, mc_region_volume,
    BoundReport, EstimationReport, Mode, RegionSpec, VolumeTable,
};
pub use predicates::{
    lemma_filters, nine_functions, satisfies_l_plus, satisfies_negative_curl, satisfies_r_plus, FilterReport,
    NineFunctions,
};
pub use sampling::{sample_action, sample_angles, sample_coords, RandomStream, SampleStream};
