//! Apollonian balls `{z : |x−z| < c|y−z|}`, the Apollonian parameters of a
//! domain and the Apollonian distance `log(X·Y)` estimated by sampling the
//! domain boundary.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};
use crate::geom::point::{same_dim, ExtPoint, Point};
use crate::geom::ratio::DISTINCT_EPS;
use crate::geom::shape::CircleOrLine;

/// The Apollonian ball with base points `base_x`, `base_y` and ratio `ratio`:
/// the set `{z : |base_x − z| < ratio·|base_y − z|}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApollonianBall {
    pub base_x: Point,
    pub base_y: Point,
    pub ratio: f64,
}

impl ApollonianBall {
    pub fn new(base_x: Point, base_y: Point, ratio: f64) -> Result<Self> {
        same_dim(&[&base_x, &base_y])?;
        if base_x.dist(&base_y) < DISTINCT_EPS {
            return Err(GeomError::DegenerateInput("base points coincide".into()));
        }
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(GeomError::DomainError(format!("ratio {ratio} must be positive")));
        }
        Ok(ApollonianBall {
            base_x,
            base_y,
            ratio,
        })
    }

    pub fn contains(&self, z: &Point) -> bool {
        self.base_x.dist(z) < self.ratio * self.base_y.dist(z)
    }

    pub fn boundary(&self) -> Result<CircleOrLine> {
        apollonian_boundary(&self.base_x, &self.base_y, self.ratio)
    }
}

/// Boundary of `B_{x,y}^c`: the sphere with center `(x − c²y)/(1 − c²)` and
/// radius `c|x−y|/|1 − c²|`, or for `c = 1` the bisecting line (hyperplane)
/// of `[x, y]`.
///
/// Ratios `c > 1` need no special casing: the same center formula describes
/// `∂B_{y,x}^{1/c}`.
pub fn apollonian_boundary(x: &Point, y: &Point, c: f64) -> Result<CircleOrLine> {
    same_dim(&[x, y])?;
    if x.dist(y) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("base points coincide".into()));
    }
    if !(c > 0.0 && c.is_finite()) {
        return Err(GeomError::DomainError(format!("ratio {c} must be positive")));
    }
    let c2 = c * c;
    let k = 1.0 - c2;
    if k.abs() < 1e-14 {
        let mid = x.midpoint(y);
        let normal = x - y;
        return if x.dim() == 2 {
            CircleOrLine::line(mid, &normal.perp2())
        } else {
            CircleOrLine::hyperplane(mid, &normal)
        };
    }
    let center = x.add_scaled(-c2, y).scale(1.0 / k);
    CircleOrLine::circle(center, c * x.dist(y) / k.abs())
}

/// Parameter of a boundary sample (one or two coordinates; unused ones are 0).
pub type Param = [f64; 2];

/// A parameterized sampler of the boundary `∂G` of a domain.
///
/// `params` is the discrete grid; `point` maps any parameter (not just grid
/// values) to a boundary point, which is what makes local refinement possible.
pub trait BoundarySampler: Sync {
    fn dim(&self) -> usize;
    fn params(&self) -> Vec<Param>;
    fn point(&self, param: Param) -> ExtPoint;
    /// Half-width of the refinement bracket around a grid parameter, per
    /// coordinate. `None` disables refinement.
    fn bracket(&self) -> Option<Param> {
        None
    }
    /// Restricts a parameter to the valid range.
    fn clamp(&self, param: Param) -> Param {
        param
    }
}

/// Uniform angular grid on the unit circle `S¹ = ∂𝔹²`.
#[derive(Clone, Copy, Debug)]
pub struct UnitCircleGrid {
    pub count: usize,
}

impl BoundarySampler for UnitCircleGrid {
    fn dim(&self) -> usize {
        2
    }
    fn params(&self) -> Vec<Param> {
        (0..self.count)
            .map(|i| [2.0 * PI * i as f64 / self.count as f64, 0.0])
            .collect()
    }
    fn point(&self, p: Param) -> ExtPoint {
        ExtPoint::Finite(Point::xy(p[0].cos(), p[0].sin()))
    }
    fn bracket(&self) -> Option<Param> {
        Some([2.0 * PI / self.count.max(1) as f64, 0.0])
    }
}

/// Fibonacci lattice on the unit sphere `S² = ∂𝔹³`, parameterized by polar
/// and azimuthal angle.
#[derive(Clone, Copy, Debug)]
pub struct FibonacciSphere {
    pub count: usize,
}

impl BoundarySampler for FibonacciSphere {
    fn dim(&self) -> usize {
        3
    }
    fn params(&self) -> Vec<Param> {
        let golden = PI * (3.0 - 5f64.sqrt());
        let n = self.count as f64;
        (0..self.count)
            .map(|i| {
                let z = 1.0 - (2.0 * i as f64 + 1.0) / n;
                [z.acos(), (golden * i as f64).rem_euclid(2.0 * PI)]
            })
            .collect()
    }
    fn point(&self, p: Param) -> ExtPoint {
        let (st, ct) = p[0].sin_cos();
        let (sp, cp) = p[1].sin_cos();
        ExtPoint::Finite(Point(vec![st * cp, st * sp, ct]))
    }
    fn bracket(&self) -> Option<Param> {
        let s = (4.0 * PI / self.count.max(1) as f64).sqrt();
        Some([s, 2.0 * s])
    }
    fn clamp(&self, p: Param) -> Param {
        [p[0].clamp(0.0, PI), p[1]]
    }
}

/// Boundary of the upper half-space, `ℝⁿ⁻¹ ∪ {∞}`, by tangent substitution.
///
/// For n = 2 the real axis is `a = tan φ`, `φ ∈ (−π/2, π/2)`, with `φ = ±π/2`
/// standing for ∞. For n = 3 the boundary plane uses polar coordinates with
/// radius `tan φ`, `φ ∈ [0, π/2)`, and `count` is split evenly between the
/// radial and angular directions.
#[derive(Clone, Copy, Debug)]
pub struct HalfSpaceBoundary {
    pub dim: usize,
    pub count: usize,
}

impl HalfSpaceBoundary {
    fn split(&self) -> (usize, usize) {
        let radial = (self.count as f64).sqrt().ceil().max(1.0) as usize;
        (radial, (self.count / radial).max(1))
    }
}

impl BoundarySampler for HalfSpaceBoundary {
    fn dim(&self) -> usize {
        self.dim
    }
    fn params(&self) -> Vec<Param> {
        let mut out = Vec::with_capacity(self.count + 1);
        if self.dim == 2 {
            let n = self.count as f64;
            out.extend((0..self.count).map(|i| [-PI / 2.0 + PI * (i as f64 + 0.5) / n, 0.0]));
        } else {
            let (radial, angular) = self.split();
            for i in 0..radial {
                let phi = 0.5 * PI * i as f64 / radial as f64;
                for j in 0..angular {
                    out.push([phi, 2.0 * PI * j as f64 / angular as f64]);
                }
            }
        }
        out.push([PI / 2.0, 0.0]);
        out
    }
    fn point(&self, p: Param) -> ExtPoint {
        if p[0].abs() >= PI / 2.0 {
            return ExtPoint::Infinity;
        }
        let t = p[0].tan();
        if self.dim == 2 {
            ExtPoint::Finite(Point::xy(t, 0.0))
        } else {
            let mut v = vec![0.0; self.dim];
            v[0] = t * p[1].cos();
            v[1] = t * p[1].sin();
            ExtPoint::Finite(Point(v))
        }
    }
    fn bracket(&self) -> Option<Param> {
        if self.dim == 2 {
            Some([PI / self.count.max(1) as f64, 0.0])
        } else {
            let (radial, angular) = self.split();
            Some([0.5 * PI / radial as f64, 2.0 * PI / angular as f64])
        }
    }
    fn clamp(&self, p: Param) -> Param {
        if self.dim == 2 {
            [p[0].clamp(-PI / 2.0, PI / 2.0), 0.0]
        } else {
            [p[0].clamp(0.0, PI / 2.0), p[1]]
        }
    }
}

/// An explicit finite set of boundary points; no refinement.
#[derive(Clone, Debug)]
pub struct PointCloud(pub Vec<ExtPoint>);

impl BoundarySampler for PointCloud {
    fn dim(&self) -> usize {
        self.0
            .iter()
            .find_map(|p| p.finite().map(Point::dim))
            .unwrap_or(2)
    }
    fn params(&self) -> Vec<Param> {
        (0..self.0.len()).map(|i| [i as f64, 0.0]).collect()
    }
    fn point(&self, p: Param) -> ExtPoint {
        self.0[p[0] as usize].clone()
    }
}

/// Apollonian parameters of a pair `x, y` in a domain `G`:
/// `X = sup_{a∈∂G} |a−y|/|a−x|` and `Y = sup_{d∈∂G} |x−d|/|y−d|`, with
/// the boundary points attaining the (sampled) suprema.
#[derive(Clone, Debug, PartialEq)]
pub struct ApollonianParameters {
    /// `X = sup |a−y|/|a−x|`.
    pub sup_x: f64,
    /// `Y = sup |x−d|/|y−d|`.
    pub sup_y: f64,
    pub witness_a: ExtPoint,
    pub witness_d: ExtPoint,
}

impl ApollonianParameters {
    /// `α = log(X·Y)`.
    pub fn distance(&self) -> f64 {
        (self.sup_x * self.sup_y).ln()
    }
}

/// `|p−num|/|p−den|`; the point at infinity contributes 1.
fn ratio_at(p: &ExtPoint, num: &Point, den: &Point) -> Result<f64> {
    match p.finite() {
        None => Ok(1.0),
        Some(p) => {
            let d = p.dist(den);
            if d < DISTINCT_EPS {
                return Err(GeomError::DomainError(format!(
                    "boundary sample {p} coincides with an interior point"
                )));
            }
            Ok(p.dist(num) / d)
        }
    }
}

struct Best {
    value: f64,
    param: Param,
}

fn discrete_max(params: &[Param], b: &dyn BoundarySampler, num: &Point, den: &Point) -> Result<Best> {
    let mut best = Best {
        value: f64::NEG_INFINITY,
        param: params[0],
    };
    for &p in params {
        let v = ratio_at(&b.point(p), num, den)?;
        if v > best.value {
            best = Best { value: v, param: p };
        }
    }
    Ok(best)
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if (hi - lo).abs() <= 1e-15 * (1.0 + lo.abs().max(hi.abs())) {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// One coordinate-wise golden-section pass around the discrete argmax. The
/// result is never worse than the input.
fn refine(best: Best, b: &dyn BoundarySampler, num: &Point, den: &Point) -> Best {
    let Some(half) = b.bracket() else {
        return best;
    };
    let mut cur = best;
    for axis in 0..2 {
        if half[axis] <= 0.0 {
            continue;
        }
        let eval = |t: f64| {
            let mut p = cur.param;
            p[axis] = t;
            ratio_at(&b.point(b.clamp(p)), num, den).unwrap_or(f64::NEG_INFINITY)
        };
        let mut lo_p = cur.param;
        lo_p[axis] -= half[axis];
        let mut hi_p = cur.param;
        hi_p[axis] += half[axis];
        let (lo, hi) = (b.clamp(lo_p)[axis], b.clamp(hi_p)[axis]);
        let (t, v) = golden_max(eval, lo, hi);
        if v > cur.value {
            let mut p = cur.param;
            p[axis] = t;
            cur = Best {
                value: v,
                param: b.clamp(p),
            };
        }
    }
    cur
}

fn parameters(x: &Point, y: &Point, boundary: &dyn BoundarySampler, refined: bool) -> Result<ApollonianParameters> {
    same_dim(&[x, y])?;
    if boundary.dim() != x.dim() {
        return Err(GeomError::DimensionMismatch {
            expected: x.dim(),
            got: boundary.dim(),
        });
    }
    let params = boundary.params();
    if params.len() < 2 {
        return Err(GeomError::EmptyBoundary(params.len()));
    }
    let mut a = discrete_max(&params, boundary, y, x)?;
    let mut d = discrete_max(&params, boundary, x, y)?;
    if refined {
        a = refine(a, boundary, y, x);
        d = refine(d, boundary, x, y);
    }
    Ok(ApollonianParameters {
        sup_x: a.value,
        sup_y: d.value,
        witness_a: boundary.point(a.param),
        witness_d: boundary.point(d.param),
    })
}

/// Sampled Apollonian parameters with one golden-section refinement pass
/// around each discrete maximizer.
pub fn apollonian_parameters(x: &Point, y: &Point, boundary: &dyn BoundarySampler) -> Result<ApollonianParameters> {
    parameters(x, y, boundary, true)
}

/// Sampled Apollonian parameters on the bare grid (no refinement).
pub fn apollonian_parameters_raw(x: &Point, y: &Point, boundary: &dyn BoundarySampler) -> Result<ApollonianParameters> {
    parameters(x, y, boundary, false)
}

/// Apollonian distance `α_G(x, y) = log(X·Y)` from the sampled parameters.
///
/// Each sample lies on `∂G`, so the result is a lower estimate of the true
/// supremum; for the ball and half-space it converges to the hyperbolic
/// distance from below.
pub fn apollonian_distance(x: &Point, y: &Point, boundary: &dyn BoundarySampler) -> Result<f64> {
    same_dim(&[x, y])?;
    if x == y {
        return Ok(0.0);
    }
    Ok(apollonian_parameters(x, y, boundary)?.distance().max(0.0))
}
