use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::geom::point::{ExtPoint, Point};
use crate::geom::quadrature::Path;

/// A Euclidean circle (sphere for n > 2) or line (hyperplane for n > 2).
///
/// Every circle construction in the crate returns this type; degenerate
/// limits of circles (infinite radius) come back as lines.
#[derive(Clone, Debug, PartialEq)]
pub enum CircleOrLine {
    Circle { center: Point, radius: f64 },
    /// Planar line through `point` with unit `direction`.
    Line { point: Point, direction: Point },
    /// Hyperplane through `point` with unit `normal`; only produced for n > 2.
    Hyperplane { point: Point, normal: Point },
}

impl CircleOrLine {
    pub fn circle(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GeomError::DegenerateInput(format!(
                "circle radius must be positive and finite, got {radius}"
            )));
        }
        Ok(CircleOrLine::Circle { center, radius })
    }

    /// Line through `point` along `direction` (normalized here).
    pub fn line(point: Point, direction: &Point) -> Result<Self> {
        let direction = direction
            .normalized()
            .ok_or_else(|| GeomError::DegenerateInput("zero line direction".into()))?;
        Ok(CircleOrLine::Line { point, direction })
    }

    pub fn hyperplane(point: Point, normal: &Point) -> Result<Self> {
        let normal = normal
            .normalized()
            .ok_or_else(|| GeomError::DegenerateInput("zero hyperplane normal".into()))?;
        Ok(CircleOrLine::Hyperplane { point, normal })
    }

    pub fn dim(&self) -> usize {
        match self {
            CircleOrLine::Circle { center, .. } => center.dim(),
            CircleOrLine::Line { point, .. } | CircleOrLine::Hyperplane { point, .. } => {
                point.dim()
            }
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, CircleOrLine::Circle { .. })
    }

    pub fn center_radius(&self) -> Option<(&Point, f64)> {
        match self {
            CircleOrLine::Circle { center, radius } => Some((center, *radius)),
            _ => None,
        }
    }

    /// Euclidean distance from `p` to the curve.
    pub fn distance_to(&self, p: &Point) -> f64 {
        match self {
            CircleOrLine::Circle { center, radius } => (p.dist(center) - radius).abs(),
            CircleOrLine::Line { point, direction } => {
                let v = p - point;
                let along = v.dot(direction);
                v.add_scaled(-along, direction).norm()
            }
            CircleOrLine::Hyperplane { point, normal } => (p - point).dot(normal).abs(),
        }
    }

    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Unit normal of the curve at (or nearest to) `p`.
    pub fn normal_at(&self, p: &Point) -> Option<Point> {
        match self {
            CircleOrLine::Circle { center, .. } => (p - center).normalized(),
            CircleOrLine::Line { direction, .. } => Some(direction.perp2()),
            CircleOrLine::Hyperplane { normal, .. } => Some(normal.clone()),
        }
    }

    /// Cosine of the angle between two curves at a common point `p`; zero
    /// means they cross orthogonally.
    pub fn crossing_cosine(&self, other: &CircleOrLine, p: &Point) -> Option<f64> {
        Some(self.normal_at(p)?.dot(&other.normal_at(p)?).abs())
    }

    /// `k` points on the curve. Circles are sampled uniformly in angle in the
    /// plane of the first two coordinates; lines at evenly spaced parameters
    /// in `[-span, span]` around the base point.
    pub fn sample(&self, k: usize, span: f64) -> Vec<Point> {
        match self {
            CircleOrLine::Circle { center, radius } => {
                let n = center.dim();
                let e1 = Point::basis(n, 0);
                let e2 = Point::basis(n, 1);
                (0..k)
                    .map(|i| {
                        let t = 2.0 * PI * (i as f64 + 0.5) / k as f64;
                        center
                            .add_scaled(radius * t.cos(), &e1)
                            .add_scaled(radius * t.sin(), &e2)
                    })
                    .collect()
            }
            CircleOrLine::Line { point, direction } => (0..k)
                .map(|i| {
                    let t = if k == 1 {
                        0.0
                    } else {
                        -span + 2.0 * span * i as f64 / (k - 1) as f64
                    };
                    point.add_scaled(t, direction)
                })
                .collect(),
            CircleOrLine::Hyperplane { point, normal } => {
                // Any unit vector orthogonal to the normal spans a line inside the plane.
                let n = point.dim();
                let pick = (0..n)
                    .map(|i| Point::basis(n, i))
                    .map(|e| e.add_scaled(-e.dot(normal), normal))
                    .max_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
                    .and_then(|v| v.normalized())
                    .unwrap_or_else(|| Point::basis(n, 0));
                CircleOrLine::Line {
                    point: point.clone(),
                    direction: pick,
                }
                .sample(k, span)
            }
        }
    }
}

/// A hyperbolic geodesic segment: the carrier circle or line orthogonal to the
/// model boundary, the two interior points, and the ideal endpoints.
///
/// The ideal endpoints are ordered so that `ideal_x, x, y, ideal_y` occur in
/// this order along the carrier.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicSegment {
    pub carrier: CircleOrLine,
    pub x: Point,
    pub y: Point,
    pub ideal_x: ExtPoint,
    pub ideal_y: ExtPoint,
}

impl GeodesicSegment {
    /// The segment from `x` to `y` as a quadrature path. Planar carriers only.
    pub fn path(&self) -> Path {
        match &self.carrier {
            CircleOrLine::Circle { center, radius } => {
                let angle = |p: &Point| {
                    let v = p - center;
                    v.coords()[1].atan2(v.coords()[0])
                };
                let start = angle(&self.x);
                let mut end = angle(&self.y);
                // The arc inside the model never spans more than a half-turn.
                if end - start > PI {
                    end -= 2.0 * PI;
                } else if start - end > PI {
                    end += 2.0 * PI;
                }
                Path::Arc {
                    center: center.clone(),
                    radius: *radius,
                    start,
                    end,
                }
            }
            _ => Path::Segment {
                from: self.x.clone(),
                to: self.y.clone(),
            },
        }
    }
}
