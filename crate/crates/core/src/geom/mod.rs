//! Dimension-generic points, circles and lines, planar Mobius maps, cross and
//! absolute ratios, and the quadrature oracle for weighted path length.

pub mod mobius;
pub mod plane;
pub mod point;
pub mod quadrature;
pub mod ratio;
pub mod shape;

pub use mobius::{disk_automorphism, mobius_apply, MobiusMap2};
pub use plane::PlaneFrame;
pub use point::{ExtPoint, Point};
pub use quadrature::{path_length_quadrature, Path, WeightFunction};
pub use ratio::{
    absolute_ratio, cross_ratio, line_distance_to_origin, orthogonal_circle_through,
    unit_sphere_inversion,
};
pub use shape::{CircleOrLine, GeodesicSegment};
