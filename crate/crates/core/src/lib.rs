//! Hyperbolic geometry in the Poincaré ball and the upper half-space built
//! around Apollonian circles: exact distances, geodesics, bisectors,
//! midpoints, metric balls, and Euclidean lower bounds for the hyperbolic
//! distance.
//!
//! ```
//! use apollonia::{disk, Point};
//!
//! let x = Point::xy(0.0, 0.0);
//! let y = Point::xy(0.5, 0.0);
//! let d = disk::rho_ball(&x, &y).unwrap();
//! assert!((d - 3f64.ln()).abs() < 1e-15);
//! ```

// `!(a <= b)` is used on purpose so that NaN fails comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod apollonian;
pub mod bounds;
pub mod disk;
pub mod error;
pub mod geom;
pub mod half;

pub use error::{GeomError, Result};
pub use geom::{CircleOrLine, ExtPoint, GeodesicSegment, MobiusMap2, Point};
