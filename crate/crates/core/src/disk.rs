//! The Poincaré ball `𝔹ⁿ`: distance, geodesics, bisectors, midpoints and
//! hyperbolic balls as Euclidean balls.
//!
//! Planar constructions take points of `𝔹²`. Distances and midpoints accept
//! any dimension; midpoints in `𝔹ⁿ` are computed in the 2-plane through
//! 0, x and y.

use crate::apollonian::{apollonian_parameters_raw, ApollonianBall, UnitCircleGrid};
use crate::error::{GeomError, Result};
use crate::geom::plane::PlaneFrame;
use crate::geom::point::{require_planar, same_dim, ExtPoint, Point};
use crate::geom::ratio::{absolute_ratio, line_distance_to_origin, unit_sphere_inversion, DISTINCT_EPS};
use crate::geom::shape::{CircleOrLine, GeodesicSegment};

/// Largest carrier or bisector center modulus for which the closed-form
/// midpoint is used; beyond it the intersection route is better conditioned.
const CLOSED_FORM_MAX_CENTER: f64 = 100.0;

/// Checks dimensions and `|p| < 1` for every point.
pub fn check_ball(points: &[&Point]) -> Result<usize> {
    let n = same_dim(points)?;
    for p in points {
        if !(p.norm_sq() < 1.0) {
            return Err(GeomError::DomainError(format!("{p} is not inside the unit ball")));
        }
    }
    Ok(n)
}

/// `1 − |x|²`.
fn gap(x: &Point) -> f64 {
    1.0 - x.norm_sq()
}

/// `ρ(x, y) = 2 arsinh(|x−y| / √((1−|x|²)(1−|y|²)))`.
pub fn rho_ball(x: &Point, y: &Point) -> Result<f64> {
    check_ball(&[x, y])?;
    Ok(2.0 * (x.dist(y) / (gap(x) * gap(y)).sqrt()).asinh())
}

/// `A[x, y] = √(|x−y|² + (1−|x|²)(1−|y|²))`.
pub fn ahlfors_bracket(x: &Point, y: &Point) -> Result<f64> {
    check_ball(&[x, y])?;
    let d = x.dist(y);
    Ok((d * d + gap(x) * gap(y)).sqrt())
}

/// A hyperbolic sphere `∂B_ρ(x, r)` described as a Euclidean object.
#[derive(Clone, Debug, PartialEq)]
pub enum HyperbolicSphere {
    /// `x ≠ 0`: the Apollonian sphere with base points `x`, `x*` and ratio `|x| tanh(r/2)`.
    Apollonian(ApollonianBall),
    /// `x = 0`: the Euclidean sphere `S(0, tanh(r/2))`.
    Centered { center: Point, radius: f64 },
}

impl HyperbolicSphere {
    pub fn boundary(&self) -> Result<CircleOrLine> {
        match self {
            HyperbolicSphere::Apollonian(ball) => ball.boundary(),
            HyperbolicSphere::Centered { center, radius } => CircleOrLine::circle(center.clone(), *radius),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(GeomError::DomainError(format!("radius {r} must be positive and finite")))
    }
}

/// The hyperbolic sphere of radius `r` about `x` as an Apollonian sphere.
pub fn sphere_to_apollonian(x: &Point, r: f64) -> Result<HyperbolicSphere> {
    check_ball(&[x])?;
    check_radius(r)?;
    let t = (0.5 * r).tanh();
    if x.norm() < DISTINCT_EPS {
        return Ok(HyperbolicSphere::Centered {
            center: Point::origin(x.dim()),
            radius: t,
        });
    }
    let ball = ApollonianBall::new(x.clone(), unit_sphere_inversion(x)?, x.norm() * t)?;
    Ok(HyperbolicSphere::Apollonian(ball))
}

/// A hyperbolic ball `B_ρ(x, r)` together with its Euclidean description `Bⁿ(w, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanBallView {
    pub hyperbolic_center: Point,
    pub hyperbolic_radius: f64,
    pub euclidean_center: Point,
    pub euclidean_radius: f64,
    /// `tanh(r/2)`.
    pub t: f64,
}

impl EuclideanBallView {
    pub fn sphere(&self) -> Result<CircleOrLine> {
        CircleOrLine::circle(self.euclidean_center.clone(), self.euclidean_radius)
    }
}

/// `B_ρ(x, r) = Bⁿ(w, s)` with `w = x(1−t²)/(1−|x|²t²)`, `s = (1−|x|²)t/(1−|x|²t²)`, `t = tanh(r/2)`.
pub fn ball_to_euclidean(x: &Point, r: f64) -> Result<EuclideanBallView> {
    check_ball(&[x])?;
    check_radius(r)?;
    let t = (0.5 * r).tanh();
    let x2 = x.norm_sq();
    let den = 1.0 - x2 * t * t;
    Ok(EuclideanBallView {
        hyperbolic_center: x.clone(),
        hyperbolic_radius: r,
        euclidean_center: x.scale((1.0 - t * t) / den),
        euclidean_radius: (1.0 - x2) * t / den,
        t,
    })
}

/// `x₁y₂ − x₂y₁` below this (relative) size means 0, x, y are collinear.
fn is_collinear_with_origin(x: &Point, y: &Point) -> bool {
    let cross = x.cross2(y);
    cross.abs() < 1e-12 * (x.norm() * y.norm()).max(1e-300)
}

/// Signed angle of `z` seen from the carrier center `a`, measured from the
/// direction of the origin. Points of the carrier inside the disk have
/// angles in `(−π/2, π/2)`.
fn carrier_angle(a: &Point, z: &Point) -> f64 {
    let to_origin = -a;
    let v = z - a;
    to_origin.cross2(&v).atan2(to_origin.dot(&v))
}

/// Center and radius of the circle through `x`, `y` orthogonal to the unit
/// circle, or `None` when 0, x, y are collinear.
fn carrier_circle(x: &Point, y: &Point) -> Option<(Point, f64)> {
    if is_collinear_with_origin(x, y) {
        return None;
    }
    let c = x.coords();
    let d = y.coords();
    let v = y.scale(1.0 + x.norm_sq()).add_scaled(-(1.0 + y.norm_sq()), x);
    let den = 2.0 * (c[1] * d[0] - c[0] * d[1]);
    let a = Point::xy(-v.coords()[1] / den, v.coords()[0] / den);
    let r = x.dist(y) * x.scale(y.norm_sq()).add_scaled(-1.0, y).norm()
        / (2.0 * y.norm() * (c[0] * d[1] - c[1] * d[0]).abs());
    // A carrier too large to represent passes within 1e−150 of the origin.
    (a.norm().is_finite() && r.is_finite()).then_some((a, r))
}

/// Geodesic through `x`, `y` in `𝔹²`: the carrier orthogonal to the unit
/// circle and the ideal endpoints ordered `x′, x, y, y′`.
pub fn geodesic_disk(x: &Point, y: &Point) -> Result<GeodesicSegment> {
    check_ball(&[x, y])?;
    require_planar(&[x, y])?;
    if x.dist(y) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("geodesic endpoints coincide".into()));
    }
    let Some((a, r)) = carrier_circle(x, y) else {
        let u = (y - x).normalized().expect("distinct points");
        return Ok(GeodesicSegment {
            carrier: CircleOrLine::line(Point::origin(2), &u)?,
            x: x.clone(),
            y: y.clone(),
            ideal_x: ExtPoint::Finite(-&u),
            ideal_y: ExtPoint::Finite(u),
        });
    };
    // cos θ = 1/|a| and sin θ = r/|a|.
    let theta = r.atan();
    let na = a.norm();
    let (s, c) = theta.sin_cos();
    let ac = a.coords();
    let rot = |sign: f64| Point::xy((ac[0] * c - sign * ac[1] * s) / na, (ac[1] * c + sign * ac[0] * s) / na);
    let (p, q) = (rot(1.0), rot(-1.0));
    let (ix, iy) = if (carrier_angle(&a, &p) < carrier_angle(&a, &q)) == (carrier_angle(&a, x) < carrier_angle(&a, y)) {
        (p, q)
    } else {
        (q, p)
    };
    Ok(GeodesicSegment {
        carrier: CircleOrLine::circle(a, r)?,
        x: x.clone(),
        y: y.clone(),
        ideal_x: ExtPoint::Finite(ix),
        ideal_y: ExtPoint::Finite(iy),
    })
}

/// `ρ(x, y) = log |x′, x, y, y′|` from the ideal endpoints, cross-checked
/// against the sampled supremum of `log |a, x, y, b|` over `samples`
/// boundary points (which may never exceed it).
pub fn rho_sup_absratio(x: &Point, y: &Point, samples: usize) -> Result<f64> {
    check_ball(&[x, y])?;
    if x.dist(y) < DISTINCT_EPS {
        return Ok(0.0);
    }
    let frame = PlaneFrame::through_origin(x, y);
    let (px, py) = (frame.project(x), frame.project(y));
    let g = geodesic_disk(&px, &py)?;
    let exact = absolute_ratio(&g.ideal_x, &px.clone().into(), &py.clone().into(), &g.ideal_y)?.ln();
    // |a,x,y,b| = (|a−y|/|a−x|)(|x−b|/|y−b|): the supremum splits into X·Y.
    let sampled = apollonian_parameters_raw(&px, &py, &UnitCircleGrid { count: samples })?.distance();
    if sampled > exact + 1e-12 * exact.max(1.0) {
        return Err(GeomError::CrossCheck(format!(
            "sampled absolute ratio supremum {sampled:?} exceeds log|x',x,y,y'| = {exact:?}"
        )));
    }
    Ok(exact)
}

/// The hyperbolic bisector `{z : ρ(x,z) = ρ(y,z)}`: the sphere
/// `S(w, r)`, `w = (x − A²y)/(1 − A²)`, `r = A|x−y|/(1 − A²)`,
/// `A = √((1−|x|²)/(1−|y|²))`, labelled so that `|y| < |x|`. For equal
/// moduli it is the Euclidean bisector, a line (hyperplane) through 0.
pub fn bisector_disk(x: &Point, y: &Point) -> Result<CircleOrLine> {
    check_ball(&[x, y])?;
    if x.dist(y) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("bisector of coincident points".into()));
    }
    let (gx, gy) = (gap(x), gap(y));
    if (gx - gy).abs() < 1e-12 {
        let normal = x - y;
        let origin = Point::origin(x.dim());
        return if x.dim() == 2 {
            CircleOrLine::line(origin, &normal.perp2())
        } else {
            CircleOrLine::hyperplane(origin, &normal)
        };
    }
    let (x, y, gx, gy) = if gx < gy { (x, y, gx, gy) } else { (y, x, gy, gx) };
    // |x|² − |y|² without cancelling 1 − |·|².
    let (nx, ny) = (x.norm(), y.norm());
    let den = (nx - ny) * (nx + ny);
    let w = x.scale(gy).add_scaled(-gx, y).scale(1.0 / den);
    CircleOrLine::circle(w, (gx * gy).sqrt() * x.dist(y) / den)
}

/// A circle orthogonal to the unit circle written as `α(|z|² + 1) = 2 z·b`;
/// `α = 0` is a line through the origin. Both coefficients stay finite in
/// the degenerate limits, which is what makes the intersection stable.
pub(crate) struct OrthoCircle {
    pub(crate) alpha: f64,
    pub(crate) b: Point,
}

impl OrthoCircle {
    pub(crate) fn carrier(x: &Point, y: &Point) -> Self {
        let (c, d) = (x.coords(), y.coords());
        let v = y.scale(1.0 + x.norm_sq()).add_scaled(-(1.0 + y.norm_sq()), x);
        OrthoCircle {
            alpha: c[1] * d[0] - c[0] * d[1],
            b: Point::xy(-0.5 * v.coords()[1], 0.5 * v.coords()[0]),
        }
    }

    fn bisector(x: &Point, y: &Point) -> Self {
        let (nx, ny) = (x.norm(), y.norm());
        OrthoCircle {
            alpha: (nx - ny) * (nx + ny),
            b: x.scale(gap(y)).add_scaled(-gap(x), y),
        }
    }
}

/// The intersection inside `𝔹²` of two distinct circles orthogonal to the unit circle.
fn intersect_orthogonal(c1: &OrthoCircle, c2: &OrthoCircle) -> Point {
    // Subtracting the equations leaves the radical line z·m = 0 through 0.
    let m = c1.b.scale(c2.alpha).add_scaled(-c1.alpha, &c2.b);
    let Some(u) = m.perp2().normalized() else {
        return Point::origin(2);
    };
    // On z = t·u each circle reads α(t² + 1) = 2βt; solve the best-scaled one.
    let scaled_beta = |c: &OrthoCircle| {
        let beta = u.dot(&c.b);
        let s = (c.alpha * c.alpha + c.b.norm_sq()).sqrt();
        (c.alpha / s, beta / s)
    };
    let (a1, b1) = scaled_beta(c1);
    let (a2, b2) = scaled_beta(c2);
    let (alpha, beta) = if b1.abs() >= b2.abs() { (a1, b1) } else { (a2, b2) };
    if beta == 0.0 {
        return Point::origin(2);
    }
    let disc = (beta * beta - alpha * alpha).max(0.0).sqrt();
    // The roots multiply to 1; this is the inner one.
    let t = alpha / (beta + beta.signum() * disc);
    u.scale(t)
}

fn midpoint_by_intersection(x: &Point, y: &Point) -> Point {
    intersect_orthogonal(&OrthoCircle::carrier(x, y), &OrthoCircle::bisector(x, y))
}

/// Closed-form midpoint: `z` lies on the radical axis of carrier and
/// bisector (a line through 0 perpendicular to `a₁ − a₂`) at distance
/// `d(line(a₁, a₂), 0) − r₁r₂/√(r₁² + r₂²)` from the origin.
fn midpoint_closed_form(x: &Point, y: &Point) -> Option<Point> {
    let (a1, r1) = carrier_circle(x, y)?;
    let (a2, r2) = match bisector_disk(x, y).ok()? {
        CircleOrLine::Circle { center, radius } => (center, radius),
        _ => return None,
    };
    if a1.norm().max(a2.norm()) > CLOSED_FORM_MAX_CENTER {
        return None;
    }
    let modulus = line_distance_to_origin(&a1, &a2).ok()? - r1 * r2 / r1.hypot(r2);
    let dir = (&a1 - &a2).perp2().normalized()?;
    let carrier = CircleOrLine::Circle { center: a1, radius: r1 };
    let (p, q) = (dir.scale(modulus), dir.scale(-modulus));
    Some(if carrier.distance_to(&p) <= carrier.distance_to(&q) { p } else { q })
}

/// Hyperbolic midpoint of `x` and `y` in `𝔹ⁿ`.
///
/// In the plane the closed form in terms of the carrier and bisector
/// centers is used when both exist and are moderate; otherwise (collinear
/// with 0, equal moduli, or nearly so) the midpoint is the intersection of
/// bisector and carrier inside the disk.
pub fn midpoint_disk(x: &Point, y: &Point) -> Result<Point> {
    check_ball(&[x, y])?;
    if x.dist(y) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("midpoint of coincident points".into()));
    }
    let frame = PlaneFrame::through_origin(x, y);
    let (px, py) = (frame.project(x), frame.project(y));
    let z = midpoint_closed_form(&px, &py).unwrap_or_else(|| midpoint_by_intersection(&px, &py));
    Ok(frame.embed(&polish_midpoint(&px, &py, z)))
}

/// One Newton step on `ρ(x,z) − ρ(y,z)` along the carrier tangent at `z`.
///
/// Near the boundary both constructions leave position errors of order
/// `1e−13`, which the metric magnifies by `2/(1−|z|²)`.
fn polish_midpoint(x: &Point, y: &Point, z: Point) -> Point {
    let c = OrthoCircle::carrier(x, y);
    let Some(mut t) = z.scale(c.alpha).add_scaled(-1.0, &c.b).perp2().normalized() else {
        return z;
    };
    if t.dot(&(y - x)) < 0.0 {
        t = -&t;
    }
    let rho = |p: &Point| 2.0 * (p.dist(&z) / (gap(p) * gap(&z)).sqrt()).asinh();
    let f = rho(x) - rho(y);
    let step = z.add_scaled(-0.25 * f * gap(&z), &t);
    if step.norm_sq() < 1.0 {
        step
    } else {
        z
    }
}

/// The three objects of the ruler-and-compass bisection of `[x, y]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BisectConstruction {
    pub bisector: CircleOrLine,
    pub carrier: CircleOrLine,
    pub midpoint: Point,
}

/// Bisector, geodesic carrier and their intersection inside `𝔹²`.
pub fn bisect_construction(x: &Point, y: &Point) -> Result<BisectConstruction> {
    let carrier = geodesic_disk(x, y)?.carrier;
    let bisector = bisector_disk(x, y)?;
    Ok(BisectConstruction {
        bisector,
        carrier,
        midpoint: midpoint_by_intersection(x, y),
    })
}

/// Midpoint of `[0, x]` as the intersection of the segments `[0, x]` and
/// `[−i, x + i√(1−|x|²)]` (after rotating `x` onto the positive first axis).
pub fn midpoint_origin_special(x: &Point) -> Result<Point> {
    check_ball(&[x])?;
    let s = x.norm();
    if s < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("x = 0".into()));
    }
    // (t·s, −1 + t(1 + √(1−s²))) meets the axis at t = 1/(1 + √(1−s²)).
    let t = 1.0 / (1.0 + ((1.0 - s) * (1.0 + s)).sqrt());
    Ok(x.scale(t))
}

/// Carrier data of a non-diametral segment and the chord of the same
/// length placed symmetrically about the line through 0 and the carrier center.
#[derive(Clone, Debug, PartialEq)]
pub struct ChordGeometry {
    pub center: Point,
    pub radius: f64,
    /// `δ = |x−y|/2`.
    pub half_chord: f64,
    /// Angle at the carrier center between the origin and `x_sym`.
    pub apex_angle: f64,
    pub x_sym: Point,
    pub y_sym: Point,
}

pub fn chord_geometry(x: &Point, y: &Point) -> Result<ChordGeometry> {
    let g = geodesic_disk(x, y)?;
    let CircleOrLine::Circle { center, radius } = g.carrier else {
        return Err(GeomError::DegenerateInput("0, x, y are collinear: the carrier is a diameter".into()));
    };
    let delta = 0.5 * x.dist(y);
    let theta = (delta / radius).min(1.0).asin();
    let toward = (-&center)
        .normalized()
        .ok_or_else(|| GeomError::DegenerateInput("carrier center is not representable".into()))?;
    let (s, c) = theta.sin_cos();
    let tc = toward.coords();
    let end = |sign: f64| center.add_scaled(radius, &Point::xy(tc[0] * c - sign * tc[1] * s, tc[1] * c + sign * tc[0] * s));
    let (p, q) = (end(1.0), end(-1.0));
    let (x_sym, y_sym) = if (carrier_angle(&center, &p) < carrier_angle(&center, &q)) == (carrier_angle(&center, x) < carrier_angle(&center, y)) {
        (p, q)
    } else {
        (q, p)
    };
    Ok(ChordGeometry {
        center,
        radius,
        half_chord: delta,
        apex_angle: theta,
        x_sym,
        y_sym,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::quadrature::{path_length_quadrature, WeightFunction};

    const RHO_DIAG: f64 = 1.680_699_772_428_003_6;

    fn p(x: f64, y: f64) -> Point {
        Point::xy(x, y)
    }

    #[test]
    fn golden_distances() {
        assert!((rho_ball(&p(0.0, 0.0), &p(0.5, 0.0)).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((rho_ball(&p(0.5, 0.0), &p(-0.5, 0.0)).unwrap() - 2.0 * 3f64.ln()).abs() < 1e-15);
        assert!((rho_ball(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap() - RHO_DIAG).abs() < 1e-15);
        assert_eq!(rho_ball(&p(0.3, 0.1), &p(0.3, 0.1)).unwrap(), 0.0);
    }

    #[test]
    fn tiny_point_gives_a_diameter() {
        let (x, y) = (p(8.344026972717623e-308, 1.773107429086721e-307), p(0.9999986903803517, 0.0));
        let g = geodesic_disk(&x, &y).unwrap();
        assert!(matches!(g.carrier, CircleOrLine::Line { .. }));
        assert!(chord_geometry(&x, &y).is_err());
        assert!(midpoint_disk(&x, &y).is_ok());
    }

    #[test]
    fn outside_ball_is_domain_error() {
        assert!(matches!(rho_ball(&p(1.0, 0.0), &p(0.0, 0.0)), Err(GeomError::DomainError(_))));
    }

    #[test]
    fn bracket_example() {
        let a = ahlfors_bracket(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap();
        assert!((a - 1.0625f64.sqrt()).abs() < 1e-15);
        let x = p(0.5, 0.0);
        let xs = unit_sphere_inversion(&x).unwrap();
        assert!((x.norm() * xs.dist(&p(0.0, 0.5)) - a).abs() < 1e-15);
        assert_eq!(ahlfors_bracket(&p(0.0, 0.0), &p(0.0, 0.0)).unwrap(), 1.0);
    }

    #[test]
    fn sphere_as_apollonian_ball() {
        let x = p(0.5, 0.0);
        let s = sphere_to_apollonian(&x, 3f64.ln()).unwrap();
        let HyperbolicSphere::Apollonian(ball) = &s else { panic!() };
        assert_eq!(ball.base_y, p(2.0, 0.0));
        assert!((ball.ratio - 0.25).abs() < 1e-15);
        let (c, r) = s.boundary().unwrap().center_radius().map(|(c, r)| (c.clone(), r)).unwrap();
        assert!(c.dist(&p(0.4, 0.0)) < 1e-15 && (r - 0.4).abs() < 1e-15);
        let view = ball_to_euclidean(&x, 3f64.ln()).unwrap();
        assert!(view.euclidean_center.dist(&c) < 1e-12 && (view.euclidean_radius - r).abs() < 1e-12);
        for q in s.boundary().unwrap().sample(20, 1.0) {
            assert!((rho_ball(&x, &q).unwrap() - 3f64.ln()).abs() < 1e-10);
        }
        assert!(matches!(
            sphere_to_apollonian(&p(0.0, 0.0), 1.0).unwrap(),
            HyperbolicSphere::Centered { .. }
        ));
    }

    #[test]
    fn centered_euclidean_ball() {
        let v = ball_to_euclidean(&p(0.0, 0.0), 2.0).unwrap();
        assert_eq!(v.euclidean_center, p(0.0, 0.0));
        assert!((v.euclidean_radius - 1f64.tanh()).abs() < 1e-15);
    }

    #[test]
    fn geodesic_example() {
        let g = geodesic_disk(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap();
        let (a, r) = g.carrier.center_radius().unwrap();
        assert!(a.dist(&p(1.25, 1.25)) < 1e-15);
        assert!((r - 2.125f64.sqrt()).abs() < 1e-15);
        for e in [&g.ideal_x, &g.ideal_y] {
            let e = e.finite().unwrap();
            assert!((e.norm() - 1.0).abs() < 1e-15);
            assert!(g.carrier.contains(e, 1e-12));
        }
        // x′ is nearer x.
        assert!(g.ideal_x.finite().unwrap().dist(&g.x) < g.ideal_y.finite().unwrap().dist(&g.x));
    }

    #[test]
    fn diameter_geodesic() {
        let g = geodesic_disk(&p(0.5, 0.0), &p(-0.3, 0.0)).unwrap();
        assert!(matches!(g.carrier, CircleOrLine::Line { .. }));
        assert_eq!(g.ideal_x, ExtPoint::Finite(p(1.0, 0.0)));
        assert_eq!(g.ideal_y, ExtPoint::Finite(p(-1.0, 0.0)));
        assert!(geodesic_disk(&p(0.0, 0.0), &p(0.1, 0.7)).unwrap().carrier.contains(&p(0.0, 0.0), 0.0));
    }

    #[test]
    fn geodesic_arc_length_matches_distance() {
        for (x, y) in [(p(0.5, 0.0), p(0.0, 0.5)), (p(-0.7, 0.2), p(0.3, 0.6)), (p(0.1, -0.9), p(0.8, 0.1))] {
            let g = geodesic_disk(&x, &y).unwrap();
            let l = path_length_quadrature(&g.path(), WeightFunction::Ball, 1e-11).unwrap();
            assert!((l - rho_ball(&x, &y).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn absolute_ratio_distance() {
        let v = rho_sup_absratio(&p(0.0, 0.0), &p(0.5, 0.0), 1000).unwrap();
        assert!((v - 3f64.ln()).abs() < 1e-14);
        let (x, y) = (p(-0.2, 0.6), p(0.45, -0.1));
        assert!((rho_sup_absratio(&x, &y, 500).unwrap() - rho_ball(&x, &y).unwrap()).abs() < 1e-12);
        assert_eq!(rho_sup_absratio(&x, &x, 10).unwrap(), 0.0);
    }

    #[test]
    fn bisector_examples() {
        let b = bisector_disk(&p(0.5, 0.0), &p(0.0, 0.0)).unwrap();
        let (w, r) = b.center_radius().unwrap();
        assert!(w.dist(&p(2.0, 0.0)) < 1e-15 && (r - 3f64.sqrt()).abs() < 1e-15);
        let q = p(2.0 - 3f64.sqrt(), 0.0);
        assert!((p(0.5, 0.0).dist(&q) / q.norm() - 0.75f64.sqrt()).abs() < 1e-14);
        let l = bisector_disk(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap();
        let CircleOrLine::Line { point, direction } = l else { panic!() };
        assert_eq!(point, p(0.0, 0.0));
        assert!((direction.coords()[0].abs() - 0.5f64.sqrt()).abs() < 1e-15);
        // Argument order does not matter.
        assert_eq!(bisector_disk(&p(0.0, 0.0), &p(0.5, 0.0)).unwrap(), b);
    }

    #[test]
    fn midpoint_examples() {
        assert!(midpoint_disk(&p(0.8, 0.0), &p(-0.8, 0.0)).unwrap().norm() < 1e-15);
        assert!(midpoint_disk(&p(0.8, 0.0), &p(0.0, 0.0)).unwrap().dist(&p(0.5, 0.0)) < 1e-15);
        let z = midpoint_disk(&p(0.5, 0.0), &p(0.0, 0.5)).unwrap();
        let v = 0.219_223_593_595_584_86;
        assert!(z.dist(&p(v, v)) < 1e-15);
    }

    #[test]
    fn closed_form_and_intersection_agree() {
        for (x, y) in [(p(0.3, 0.1), p(-0.2, 0.5)), (p(0.9, 0.0), p(0.1, 0.2)), (p(-0.5, -0.5), p(0.6, -0.1))] {
            let l = midpoint_closed_form(&x, &y).unwrap();
            let i = midpoint_by_intersection(&x, &y);
            assert!(l.dist(&i) < 1e-14, "{l} vs {i}");
        }
    }

    #[test]
    fn midpoint_in_three_dimensions() {
        let x = Point::new(vec![0.1, 0.2, -0.3]).unwrap();
        let y = Point::new(vec![-0.4, 0.1, 0.5]).unwrap();
        let z = midpoint_disk(&x, &y).unwrap();
        let h = rho_ball(&x, &y).unwrap() / 2.0;
        assert!((rho_ball(&x, &z).unwrap() - h).abs() < 1e-12);
        assert!((rho_ball(&y, &z).unwrap() - h).abs() < 1e-12);
    }

    #[test]
    fn bisection_construction_is_consistent() {
        let c = bisect_construction(&p(0.5, 0.0), &p(0.0, 0.0)).unwrap();
        assert!(matches!(c.carrier, CircleOrLine::Line { .. }));
        assert!(c.midpoint.dist(&p(2.0 - 3f64.sqrt(), 0.0)) < 1e-15);
        let c = bisect_construction(&p(0.3, -0.4), &p(-0.3, 0.4)).unwrap();
        assert!(c.midpoint.norm() < 1e-15);
    }

    #[test]
    fn origin_special_midpoint() {
        assert!(midpoint_origin_special(&p(0.8, 0.0)).unwrap().dist(&p(0.5, 0.0)) < 1e-15);
        let z = midpoint_origin_special(&p(0.5, 0.0)).unwrap();
        assert!((z.coords()[0] - (2.0 - 3f64.sqrt())).abs() < 1e-15);
        assert!(midpoint_origin_special(&p(0.0, 0.0)).is_err());
    }

    #[test]
    fn chord_geometry_symmetric_input() {
        let (x, y) = (p(0.5, 0.0), p(0.0, 0.5));
        let c = chord_geometry(&x, &y).unwrap();
        assert!(c.x_sym.dist(&x) < 1e-12 && c.y_sym.dist(&y) < 1e-12);
        let r = c.radius;
        let cos = (r + 0.75 / (2.0 * r)) / (1.0 + r * r).sqrt();
        assert!((c.apex_angle.cos() - cos).abs() < 1e-14);
        assert!(chord_geometry(&p(0.5, 0.0), &p(-0.2, 0.0)).is_err());
    }
}
