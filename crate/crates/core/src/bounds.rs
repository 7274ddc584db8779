//! Lower bounds for the hyperbolic distance in terms of Euclidean data.
//!
//! Every bound estimates one functional of `ρ` ([`BoundKind`]); slacks are
//! measured against that functional, evaluated from its own closed form.

use std::fmt;

use crate::disk::{check_ball, chord_geometry, geodesic_disk, midpoint_disk, rho_ball, OrthoCircle};
use crate::error::{GeomError, Result};
use crate::geom::plane::PlaneFrame;
use crate::geom::point::Point;
use crate::geom::ratio::orthogonal_circle_through;
use crate::geom::shape::CircleOrLine;
use crate::half::{rho_half, HalfSpacePoint};

/// Below this midpoint modulus `midpoint_bound` uses its `z → 0` limit.
pub const MIDPOINT_LIMIT_RADIUS: f64 = 1e-4;
/// Agreement required between the two evaluations of the chord bound.
pub const CHORD_CROSS_CHECK_TOL: f64 = 1e-9;

/// The functional of `ρ` a bound estimates from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    SinhHalf,
    TanhQuarter,
    TanhHalf,
    Cosh,
    RawRho,
}

impl BoundKind {
    pub fn label(&self) -> &'static str {
        match self {
            BoundKind::SinhHalf => "sinh-half",
            BoundKind::TanhQuarter => "tanh-quarter",
            BoundKind::TanhHalf => "tanh-half",
            BoundKind::Cosh => "cosh",
            BoundKind::RawRho => "raw-rho",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    pub bound_value: f64,
    /// The exact value of the functional named by `kind`.
    pub exact: f64,
    /// `exact − bound_value`.
    pub slack: f64,
    pub applicable: bool,
    /// Why the entry is inapplicable; its `bound_value` is then the exact fallback.
    pub reason: Option<String>,
}

impl BoundEntry {
    fn new(name: &'static str, kind: BoundKind, bound_value: f64, exact: f64) -> Self {
        BoundEntry {
            name,
            kind,
            bound_value,
            exact,
            slack: exact - bound_value,
            applicable: true,
            reason: None,
        }
    }

    fn inapplicable(name: &'static str, kind: BoundKind, exact: f64, err: &GeomError) -> Self {
        BoundEntry {
            name,
            kind,
            bound_value: exact,
            exact,
            slack: 0.0,
            applicable: false,
            reason: Some(err.to_string()),
        }
    }

    fn from_result(name: &'static str, kind: BoundKind, value: Result<f64>, exact: f64) -> Self {
        match value {
            Ok(v) => Self::new(name, kind, v, exact),
            Err(e) => Self::inapplicable(name, kind, exact, &e),
        }
    }

    /// `bound_value ≤ exact` up to `tol`, relative for large values.
    pub fn is_valid(&self, tol: f64) -> bool {
        !self.applicable || self.slack >= -tol * self.exact.abs().max(1.0)
    }
}

/// All bounds for one point pair, with `ρ` itself.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub x: Point,
    pub y: Point,
    pub exact_value: f64,
    pub entries: Vec<BoundEntry>,
    /// Named boolean side conditions (e.g. `h2_beats_h1`).
    pub flags: Vec<(&'static str, bool)>,
}

impl BoundReport {
    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.entry(name).map(|e| e.bound_value)
    }

    pub fn flag(&self, name: &str) -> Option<bool> {
        self.flags.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    pub fn all_valid(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.is_valid(tol))
    }
}

/// Right-hand sides of the elementary estimates for `√((1−r²)(1−s²))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarBoundTriple {
    pub r: f64,
    pub s: f64,
    pub lhs: f64,
    /// `1 − rs − ½(r−s)²/(1−rs)`.
    pub rhs1: f64,
    /// `1 − ((r+s)/2)²`.
    pub rhs1_prime: f64,
    /// `√(1+r²s²) − (r²+s²)/(2√(1+r²s²))`.
    pub rhs2: f64,
    /// `1 + rs − ½(r+s)²/(1+rs)`.
    pub rhs3: f64,
}

impl ScalarBoundTriple {
    /// `lhs ≤ rhs1 ≤ rhs1′`, `lhs ≤ rhs2`, `lhs ≤ rhs3`, each up to `tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs1 + tol
            && self.rhs1 <= self.rhs1_prime + tol
            && self.lhs <= self.rhs2 + tol
            && self.lhs <= self.rhs3 + tol
    }
}

pub fn scalar_sqrt_bounds(r: f64, s: f64) -> Result<ScalarBoundTriple> {
    for v in [r, s] {
        if !(0.0..1.0).contains(&v) {
            return Err(GeomError::DomainError(format!("{v} is not in [0, 1)")));
        }
    }
    let rs = r * s;
    let q = (1.0 + rs * rs).sqrt();
    Ok(ScalarBoundTriple {
        r,
        s,
        lhs: ((1.0 - r * r) * (1.0 - s * s)).sqrt(),
        rhs1: 1.0 - rs - 0.5 * (r - s) * (r - s) / (1.0 - rs),
        rhs1_prime: 1.0 - 0.25 * (r + s) * (r + s),
        rhs2: q - (r * r + s * s) / (2.0 * q),
        rhs3: 1.0 + rs - 0.5 * (r + s) * (r + s) / (1.0 + rs),
    })
}

/// Exact functionals of `ρ_𝔹`, each from its own cancellation-free form.
struct BallExact {
    rho: f64,
    sinh_half: f64,
    tanh_half: f64,
    tanh_quarter: f64,
}

impl BallExact {
    fn new(x: &Point, y: &Point) -> Result<Self> {
        let rho = rho_ball(x, y)?;
        let d = x.dist(y);
        let g = ((1.0 - x.norm_sq()) * (1.0 - y.norm_sq())).sqrt();
        let bracket = (d * d + g * g).sqrt();
        Ok(BallExact {
            rho,
            sinh_half: d / g,
            tanh_half: d / bracket,
            tanh_quarter: d / (bracket + g),
        })
    }

    fn get(&self, kind: BoundKind) -> f64 {
        match kind {
            BoundKind::SinhHalf => self.sinh_half,
            BoundKind::TanhHalf => self.tanh_half,
            BoundKind::TanhQuarter => self.tanh_quarter,
            BoundKind::RawRho => self.rho,
            BoundKind::Cosh => self.rho.cosh(),
        }
    }
}

/// The bound with denominator `2 − (|x−y|/2)²` exactly as commonly printed.
/// It is not a valid lower bound for `tanh(ρ/4)` (e.g. `x = −y = 0.5e₁`);
/// kept for reporting.
pub fn b3_as_printed(x: &Point, y: &Point) -> Result<f64> {
    check_ball(&[x, y])?;
    let d = x.dist(y);
    Ok(d / (2.0 - 0.25 * d * d))
}

/// The seven families of lower bounds for a pair in `𝔹ⁿ`: `b1` for
/// `sinh(ρ/2)`, the rest for `tanh(ρ/4)`.
pub fn ball_lower_bounds(x: &Point, y: &Point) -> Result<BoundReport> {
    check_ball(&[x, y])?;
    let ex = BallExact::new(x, y)?;
    let d = x.dist(y);
    let (p, q) = (x.norm(), y.norm());
    let (gx, gy) = (1.0 - x.norm_sq(), 1.0 - y.norm_sq());
    let pq = p * q;
    let s = (1.0 + pq * pq).sqrt();
    let diff2 = (p - q) * (p - q);
    let sum2 = (p + q) * (p + q);
    use BoundKind::*;
    let e = |name, kind, v| BoundEntry::new(name, kind, v, ex.get(kind));
    let entries = vec![
        // 1 + (|x|⁴+|y|⁴)/2 − |x|² − |y|² = ((1−|x|²)² + (1−|y|²)²)/2.
        e("b1", SinhHalf, d / (0.5 * (gx * gx + gy * gy)).sqrt()),
        e("b2", TanhQuarter, d / (1.0 + pq + (gx * gy).sqrt())),
        e("b2'", TanhQuarter, 0.5 * d),
        e("b3", TanhQuarter, d / (2.0 - 0.25 * diff2)),
        e("b4", TanhQuarter, d / (2.0 - 0.5 * diff2)),
        e("b4'", TanhQuarter, d / (2.0 - 0.5 * diff2 / (1.0 - pq))),
        e("b5", TanhQuarter, d / (1.0 + pq + s - (p * p + q * q) / (2.0 * s))),
        e("b6", TanhQuarter, d / (2.0 + 2.0 * pq - 0.5 * sum2 / (1.0 + pq))),
        e("b7", TanhQuarter, d / (d * d + 4.0 * (gx * gy).sqrt()).sqrt()),
    ];
    Ok(BoundReport {
        x: x.clone(),
        y: y.clone(),
        exact_value: ex.rho,
        entries,
        flags: Vec::new(),
    })
}

/// `√(1+r²)√(r²−δ²) − r²` for the carrier of `x`, `y` (radius `r`, `δ = |x−y|/2`),
/// evaluated as `(r²(1−δ²) − δ²)/(√(1+r²)√(r²−δ²) + r²)`.
///
/// The numerator cancels badly near the boundary; it equals
/// `|x−y|²((gx+gy)² + |x−y|²(2(gx+gy) − gx·gy)) / (16(x₁y₂ − x₂y₁)²)`
/// with `g = 1 − |·|²`, a sum of positive terms.
fn chord_denominator(x: &Point, y: &Point, r: f64, delta: f64) -> f64 {
    let r2 = r * r;
    let root = (1.0 + r2).sqrt() * (r2 - delta * delta).max(0.0).sqrt();
    let (gx, gy) = ((1.0 - x.norm()) * (1.0 + x.norm()), (1.0 - y.norm()) * (1.0 + y.norm()));
    let d2 = x.dist(y).powi(2);
    let s = gx + gy;
    let cross = x.cross2(y);
    let numerator = d2 * (s * s + d2 * (2.0 * s - gx * gy)) / (16.0 * cross * cross);
    numerator / (root + r2)
}

/// Distance between the endpoints of the chord of length `|x−y|` placed
/// symmetrically on the carrier of `x`, `y`:
/// `2 arsinh(|x−y| / (2(√(1+r²)√(r²−δ²) − r²)))`, a lower bound for `ρ`.
///
/// Cross-checked against `4 artanh((r + √(1+r²)) tan(θ/2))`.
pub fn chord_bound(x: &Point, y: &Point) -> Result<f64> {
    let (value, angular) = chord_bound_forms(x, y)?;
    if !((value - angular).abs() <= CHORD_CROSS_CHECK_TOL * value.abs().max(1.0)) {
        return Err(GeomError::CrossCheck(format!(
            "chord bound {value:?} disagrees with angular form {angular:?}"
        )));
    }
    Ok(value)
}

/// The chord bound in its arsinh form and in the angular form
/// `4 artanh((r + √(1+r²)) tan(θ/2))`, `θ` the apex angle of the chord.
pub fn chord_bound_forms(x: &Point, y: &Point) -> Result<(f64, f64)> {
    let g = chord_geometry(x, y)?;
    let (r, delta) = (g.radius, g.half_chord);
    let value = 2.0 * (delta / chord_denominator(x, y, r, delta)).asinh();
    let angular = 4.0 * ((r + (1.0 + r * r).sqrt()) * (0.5 * g.apex_angle).tan()).atanh();
    Ok((value, angular))
}

/// `sinh(ρ/2) ≥ |x−y| / (2√(√(1+r²)√(r²−δ²) − r²))`.
pub fn symmetric_chord_bound(x: &Point, y: &Point) -> Result<f64> {
    let g = chord_geometry(x, y)?;
    Ok(g.half_chord / chord_denominator(x, y, g.radius, g.half_chord).sqrt())
}

/// Beyond this carrier center modulus the orthogonal circle center is
/// found without forming the carrier center.
const CIRCUMSCRIBED_MAX_CENTER: f64 = 100.0;

/// Center `w` of the circle through `x`, `y` orthogonal to their geodesic
/// carrier, from the linear conditions `w·(x−y) = (|x|²−|y|²)/2` and
/// `w·(x−a) = (|x|²−1)/2`, the latter multiplied through by the carrier
/// coefficient `α` (`a = b/α`) so nothing large is formed.
fn orthogonal_center_far_carrier(x: &Point, y: &Point) -> Result<Point> {
    let c = OrthoCircle::carrier(x, y);
    let u1 = x - y;
    let (nx, ny) = (x.norm(), y.norm());
    let r1 = 0.5 * (nx - ny) * (nx + ny);
    let u2 = x.scale(c.alpha).add_scaled(-1.0, &c.b);
    let r2 = 0.5 * c.alpha * (x.norm_sq() - 1.0);
    let det = u1.cross2(&u2);
    if det == 0.0 {
        return Err(GeomError::DegenerateInput("x, y are antipodal on the carrier".into()));
    }
    let (a, b) = (u1.coords(), u2.coords());
    Ok(Point::xy((r1 * b[1] - r2 * a[1]) / det, (a[0] * r2 - b[0] * r1) / det))
}

/// `tanh(ρ/4) ≥ (P − √(P² − 16|x−y|²))/(4|x−y|)` with `P = 4 − 4|w|² + |x−y|²`,
/// `w` the center of the circle through `x`, `y` orthogonal to the carrier.
pub fn circumscribed_bound(x: &Point, y: &Point) -> Result<f64> {
    let g = geodesic_disk(x, y)?;
    let CircleOrLine::Circle { center, radius } = &g.carrier else {
        return Err(GeomError::DegenerateInput("0, x, y are collinear".into()));
    };
    let w = if center.norm() <= CIRCUMSCRIBED_MAX_CENTER {
        match orthogonal_circle_through(center, *radius, x, y)? {
            CircleOrLine::Circle { center, .. } => center,
            _ => return Err(GeomError::DegenerateInput("x, y are antipodal on the carrier".into())),
        }
    } else {
        orthogonal_center_far_carrier(x, y)?
    };
    let d = x.dist(y);
    let p = 4.0 - 4.0 * w.norm_sq() + d * d;
    let disc = p * p - 16.0 * d * d;
    if disc < 0.0 {
        return Err(GeomError::NegativeDiscriminant(disc));
    }
    Ok(if p >= 0.0 {
        4.0 * d / (p + disc.sqrt())
    } else {
        (p - disc.sqrt()) / (4.0 * d)
    })
}

/// `tanh(ρ/2) ≥ (|z|² − 1 + √(1 + |z|⁴ − |z|²(2 − |x−y|²)))/(|x−y||z|²)`, `z`
/// the hyperbolic midpoint; evaluated as
/// `|x−y|/((1−|z|²) + √((1−|z|²)² + |z|²|x−y|²))`, and as `|x−y|/2` for small `|z|`.
pub fn midpoint_bound(x: &Point, y: &Point) -> Result<f64> {
    let z = midpoint_disk(x, y)?;
    Ok(midpoint_bound_at(x.dist(y), z.norm()))
}

fn midpoint_bound_at(d: f64, z: f64) -> f64 {
    if z < MIDPOINT_LIMIT_RADIUS {
        return 0.5 * d;
    }
    let g = (1.0 - z) * (1.0 + z);
    d / (g + (g * g + z * z * d * d).sqrt())
}

/// Ball bounds plus, in the plane through 0, x, y, the chord, symmetric
/// chord, circumscribed and midpoint bounds. Chord-type bounds are
/// inapplicable (reported with the exact value) when 0, x, y are collinear.
pub fn ball_full_report(x: &Point, y: &Point) -> Result<BoundReport> {
    let mut report = ball_lower_bounds(x, y)?;
    let ex = BallExact::new(x, y)?;
    if x == y {
        for (name, kind) in [
            ("chord", BoundKind::RawRho),
            ("symmetric_chord", BoundKind::SinhHalf),
            ("circumscribed", BoundKind::TanhQuarter),
            ("midpoint", BoundKind::TanhHalf),
        ] {
            report.entries.push(BoundEntry::new(name, kind, 0.0, 0.0));
        }
        return Ok(report);
    }
    let frame = PlaneFrame::through_origin(x, y);
    let (px, py) = (frame.project(x), frame.project(y));
    use BoundKind::*;
    let e = |name, kind, v| BoundEntry::from_result(name, kind, v, ex.get(kind));
    report.entries.push(e("chord", RawRho, chord_bound(&px, &py)));
    report.entries.push(e("symmetric_chord", SinhHalf, symmetric_chord_bound(&px, &py)));
    report.entries.push(e("circumscribed", TanhQuarter, circumscribed_bound(&px, &py)));
    report.entries.push(e("midpoint", TanhHalf, midpoint_bound(x, y)));
    Ok(report)
}

/// Status of the chain `c₆ ≤ c₅ ≤ c₃ ≤ c₂` between the bounds `b6, b5, b3, b2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantOrdering {
    pub c2: f64,
    pub c3: f64,
    pub c5: f64,
    pub c6: f64,
    pub c6_le_c5: bool,
    pub c5_le_c3: bool,
    pub c3_le_c2: bool,
}

pub fn constant_ordering(x: &Point, y: &Point) -> Result<ConstantOrdering> {
    let r = ball_lower_bounds(x, y)?;
    let v = |n| r.value(n).expect("entry present");
    let (c2, c3, c5, c6) = (v("b2"), v("b3"), v("b5"), v("b6"));
    Ok(ConstantOrdering {
        c2,
        c3,
        c5,
        c6,
        c6_le_c5: c6 <= c5 + 1e-15,
        c5_le_c3: c5 <= c3 + 1e-15,
        c3_le_c2: c3 <= c2 + 1e-15,
    })
}

/// Lower bounds for a pair in `ℍⁿ`: `h1`, `h2` for `cosh ρ` and `h3`, `h3'`
/// for `sinh(ρ/2)`, with the flag `h2_beats_h1 = (xₙ + yₙ ≤ |x′−y′|)`.
pub fn half_lower_bounds(x: &HalfSpacePoint, y: &HalfSpacePoint) -> Result<BoundReport> {
    let rho = rho_half(x, y)?;
    let d = x.point().dist(y.point());
    let dp = x.horizontal().dist(&y.horizontal());
    let (a, b) = (x.height(), y.height());
    let ab = a * b;
    let cosh = 1.0 + d * d / (2.0 * ab);
    let sinh_half = d / (2.0 * ab.sqrt());
    let s = a + b;
    let dp2 = dp * dp;
    use BoundKind::*;
    let entries = vec![
        BoundEntry::new("h1", Cosh, 1.0 + d * d / (a * a + b * b), cosh),
        BoundEntry::new("h2", Cosh, 1.0 + 2.0 * dp2 / (s * s), cosh),
        // (s/(2√ab))√(1 − 4ab/(s² + |x′−y′|²)) with 1 − 4ab/(·) written as ((a−b)² + |x′−y′|²)/(·).
        BoundEntry::new(
            "h3",
            SinhHalf,
            s / (2.0 * ab.sqrt()) * (((a - b) * (a - b) + dp2) / (s * s + dp2)).sqrt(),
            sinh_half,
        ),
        BoundEntry::new("h3'", SinhHalf, s * dp / (2.0 * ab.sqrt() * (s * s + dp2).sqrt()), sinh_half),
    ];
    Ok(BoundReport {
        x: x.point().clone(),
        y: y.point().clone(),
        exact_value: rho,
        entries,
        flags: vec![("h2_beats_h1", s <= dp)],
    })
}
