//! The upper half-space `ℍⁿ = {x : xₙ > 0}`.

use crate::error::{GeomError, Result};
use crate::geom::mobius::MobiusMap2;
use crate::geom::plane::PlaneFrame;
use crate::geom::point::{require_planar, same_dim, ExtPoint, Point};
use crate::geom::ratio::DISTINCT_EPS;
use crate::geom::shape::{CircleOrLine, GeodesicSegment};

/// A point of `ℍⁿ`, split as `x = (x′, xₙ)` with `x′ = x − eₙxₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpacePoint(Point);

impl HalfSpacePoint {
    pub fn new(p: Point) -> Result<Self> {
        same_dim(&[&p])?;
        if !(p.last() > 0.0) {
            return Err(GeomError::DomainError(format!("{p} is not in the upper half-space")));
        }
        Ok(HalfSpacePoint(p))
    }

    pub fn xy(x: f64, y: f64) -> Result<Self> {
        Self::new(Point::new(vec![x, y])?)
    }

    pub fn point(&self) -> &Point {
        &self.0
    }

    pub fn into_point(self) -> Point {
        self.0
    }

    /// `xₙ`.
    pub fn height(&self) -> f64 {
        self.0.last()
    }

    /// `x′`, with last coordinate 0.
    pub fn horizontal(&self) -> Point {
        self.0.horizontal()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

impl std::fmt::Display for HalfSpacePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn check_pair(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<usize> {
    same_dim(&[x.point(), y.point()])
}

/// `ρ(x, y) = arcosh(1 + |x−y|²/(2xₙyₙ)) = 2 arsinh(|x−y|/(2√(xₙyₙ)))`.
pub fn rho_half(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<f64> {
    check_pair(x, y)?;
    let d = x.point().dist(y.point());
    Ok(2.0 * (d / (2.0 * (x.height() * y.height()).sqrt())).asinh())
}

fn vertical_pair(x: &Point, y: &Point) -> bool {
    let (a, b) = (x.coords()[0], y.coords()[0]);
    (a - b).abs() < 1e-12 * 1f64.max(a.abs()).max(b.abs())
}

/// Geodesic through `x`, `y` in `ℍ²`: a half-circle centered on the real
/// axis, or a vertical line whose upper ideal endpoint is ∞.
pub fn geodesic_half(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<GeodesicSegment> {
    check_pair(x, y)?;
    let (px, py) = (x.point(), y.point());
    require_planar(&[px, py])?;
    if px.dist(py) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("geodesic endpoints coincide".into()));
    }
    let (x1, x2) = (px.coords()[0], px.coords()[1]);
    let (y1, y2) = (py.coords()[0], py.coords()[1]);
    if vertical_pair(px, py) {
        let foot = ExtPoint::Finite(Point::xy(x1, 0.0));
        let (ideal_x, ideal_y) = if x2 < y2 {
            (foot, ExtPoint::Infinity)
        } else {
            (ExtPoint::Infinity, foot)
        };
        return Ok(GeodesicSegment {
            carrier: CircleOrLine::line(Point::xy(x1, 0.0), &Point::xy(0.0, 1.0))?,
            x: px.clone(),
            y: py.clone(),
            ideal_x,
            ideal_y,
        });
    }
    // c = (|x|² − |y|²)/(2(x₁ − y₁)), split to avoid cancelling the squares.
    let c = 0.5 * (x1 + y1) + 0.5 * (x2 - y2) * (x2 + y2) / (x1 - y1);
    let r = (x1 - c).hypot(x2);
    // Ideal points are the roots of t² − 2ct + (c² − r²); take the larger
    // magnitude root directly and the other from the product.
    let product = x1 * (2.0 * c - x1) - x2 * x2;
    let big = if c >= 0.0 { c + r } else { c - r };
    let small = product / big;
    let (left, right) = if big < small { (big, small) } else { (small, big) };
    let (l, rt) = (ExtPoint::Finite(Point::xy(left, 0.0)), ExtPoint::Finite(Point::xy(right, 0.0)));
    let (ideal_x, ideal_y) = if x1 < y1 { (l, rt) } else { (rt, l) };
    Ok(GeodesicSegment {
        carrier: CircleOrLine::circle(Point::xy(c, 0.0), r)?,
        x: px.clone(),
        y: py.clone(),
        ideal_x,
        ideal_y,
    })
}

/// The hyperbolic bisector of `x`, `y`: the sphere `|x−z| = A|y−z|`,
/// `A = √(xₙ/yₙ)`, centered on `∂ℍⁿ`; for equal heights the vertical
/// Euclidean bisector.
pub fn bisector_half(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<CircleOrLine> {
    check_pair(x, y)?;
    let (px, py) = (x.point(), y.point());
    if px.dist(py) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("bisector of coincident points".into()));
    }
    let (hx, hy) = (x.height(), y.height());
    if (hx - hy).abs() < 1e-12 * hx.max(hy) {
        let mid = px.midpoint(py);
        let normal = px - py;
        return if px.dim() == 2 {
            CircleOrLine::line(mid, &normal.perp2())
        } else {
            CircleOrLine::hyperplane(mid, &normal)
        };
    }
    let (px, py, hx, hy) = if hx < hy { (px, py, hx, hy) } else { (py, px, hy, hx) };
    // (x − A²y)/(1 − A²) scaled through by yₙ.
    let den = hy - hx;
    let mut center = px.scale(hy).add_scaled(-hx, py).scale(1.0 / den);
    let n = center.dim();
    center.0[n - 1] = 0.0;
    CircleOrLine::circle(center, (hx * hy).sqrt() * px.dist(py) / den)
}

/// Hyperbolic midpoint in `ℍⁿ`:
/// `z = ((x₁y₂ + x₂y₁)/(x₂+y₂), √(x₂y₂)√((x₂+y₂)² + (x₁−y₁)²)/(x₂+y₂))`
/// in the vertical plane through `x` and `y`.
pub fn midpoint_half(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<Point> {
    check_pair(x, y)?;
    let (px, py) = (x.point(), y.point());
    if px.dist(py) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("midpoint of coincident points".into()));
    }
    let frame = PlaneFrame::vertical(px, py);
    let (a, b) = (frame.project(px), frame.project(py));
    let (x1, x2) = (a.coords()[0], a.coords()[1]);
    let (y1, y2) = (b.coords()[0], b.coords()[1]);
    let s = x2 + y2;
    let z = Point::xy((x1 * y2 + x2 * y1) / s, (x2 * y2).sqrt() * s.hypot(x1 - y1) / s);
    Ok(frame.embed(&z))
}

/// `B_ρ(x, r) = Bⁿ(x′ + xₙ cosh r·eₙ, xₙ sinh r)`.
pub fn ball_half_to_euclidean(x: &HalfSpacePoint, r: f64) -> Result<CircleOrLine> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(GeomError::DomainError(format!("radius {r} must be positive and finite")));
    }
    let n = x.dim();
    let h = x.height();
    let center = x.horizontal().add_scaled(h * r.cosh(), &Point::basis(n, n - 1));
    CircleOrLine::circle(center, h * r.sinh())
}

/// Image of a point of `𝔹²` under `z ↦ i(1+z)/(1−z)`.
pub fn disk_to_half(z: &Point) -> Result<HalfSpacePoint> {
    let w = MobiusMap2::disk_to_half_plane().apply(z.to_complex()?)?;
    HalfSpacePoint::new(Point::from_complex(w))
}
