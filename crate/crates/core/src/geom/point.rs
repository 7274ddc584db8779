use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{GeomError, Result};

/// A point of ℝⁿ (n ≥ 2) in model coordinates.
///
/// The dimension is carried at runtime; operations that combine points of
/// different dimensions report [`GeomError::DimensionMismatch`].
#[derive(Clone, Debug, PartialEq)]
pub struct Point(pub(crate) Vec<f64>);

impl Point {
    /// Validating constructor: at least two coordinates, all finite.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(GeomError::DomainError(format!(
                "points need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(GeomError::DomainError(format!("non-finite coordinate {c}")));
        }
        Ok(Point(coords))
    }

    /// Planar point. Finiteness is the caller's responsibility.
    pub fn xy(x: f64, y: f64) -> Self {
        Point(vec![x, y])
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    /// The `i`-th standard basis vector of ℝ^dim.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Point(v)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Point(vec![z.re, z.im])
    }

    /// Complex coordinate of a planar point.
    pub fn to_complex(&self) -> Result<Complex64> {
        if self.dim() != 2 {
            return Err(GeomError::DimensionMismatch {
                expected: 2,
                got: self.dim(),
            });
        }
        Ok(Complex64::new(self.0[0], self.0[1]))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|c| c * s).collect())
    }

    /// `self + s * dir`.
    pub fn add_scaled(&self, s: f64, dir: &Point) -> Point {
        debug_assert_eq!(self.dim(), dir.dim());
        Point(self.0.iter().zip(&dir.0).map(|(a, b)| a + s * b).collect())
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| 0.5 * (a + b))
                .collect(),
        )
    }

    /// Unit vector in the direction of `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Point> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    /// Last coordinate (the height in the half-space model).
    pub fn last(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    /// Copy with the last coordinate set to zero.
    pub fn horizontal(&self) -> Point {
        let mut v = self.0.clone();
        let n = v.len();
        v[n - 1] = 0.0;
        Point(v)
    }

    /// Planar cross product `x₁y₂ − x₂y₁` of the first two coordinates.
    pub fn cross2(&self, other: &Point) -> f64 {
        self.0[0] * other.0[1] - self.0[1] * other.0[0]
    }

    /// Planar rotation by +90°.
    pub fn perp2(&self) -> Point {
        Point::xy(-self.0[1], self.0[0])
    }
}

impl fmt::Display for Point {
    /// `(a,b,...)` with shortest round-trip decimal digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c:?}")?;
        }
        f.write_str(")")
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        debug_assert_eq!(self.dim(), rhs.dim());
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        self.scale(s)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        self.scale(-1.0)
    }
}

/// A point of the extended space ℝⁿ ∪ {∞}.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtPoint {
    Finite(Point),
    /// The single point at infinity.
    Infinity,
}

impl ExtPoint {
    pub fn finite(&self) -> Option<&Point> {
        match self {
            ExtPoint::Finite(p) => Some(p),
            ExtPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }
}

impl From<Point> for ExtPoint {
    fn from(p: Point) -> Self {
        ExtPoint::Finite(p)
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(p) => p.fmt(f),
            ExtPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// Checks that all points share one dimension and returns it.
pub fn same_dim(points: &[&Point]) -> Result<usize> {
    let n = points.first().map_or(0, |p| p.dim());
    for p in points {
        if p.dim() != n {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                got: p.dim(),
            });
        }
        if !p.is_finite() {
            return Err(GeomError::DomainError(format!("non-finite point {p}")));
        }
    }
    Ok(n)
}

/// Requires planar input.
pub fn require_planar(points: &[&Point]) -> Result<()> {
    let n = same_dim(points)?;
    if n != 2 {
        return Err(GeomError::DimensionMismatch {
            expected: 2,
            got: n,
        });
    }
    Ok(())
}
