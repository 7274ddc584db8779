//! Weighted path length `∫ w(γ) |γ′|` by adaptive Simpson quadrature.
//!
//! This is the independent length oracle for the closed-form distance
//! formulas: it never looks at those formulas, only at the weight function.

use crate::error::{GeomError, Result};
use crate::geom::point::{same_dim, Point};

/// Hard cap on the number of subintervals of one quadrature.
pub const MAX_SUBINTERVALS: usize = 1 << 16;
const INITIAL_PANELS: usize = 8;

/// Conformal weight defining a hyperbolic metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFunction {
    /// `w(z) = 1/zₙ` on the upper half-space.
    HalfSpace,
    /// `w(z) = 2/(1−|z|²)` on the unit ball.
    Ball,
}

impl WeightFunction {
    pub fn eval(&self, z: &Point) -> Result<f64> {
        match self {
            WeightFunction::HalfSpace => {
                let h = z.last();
                if h > 0.0 {
                    Ok(1.0 / h)
                } else {
                    Err(GeomError::DomainError(format!(
                        "path leaves the half-space at {z}"
                    )))
                }
            }
            WeightFunction::Ball => {
                let gap = 1.0 - z.norm_sq();
                if gap > 0.0 {
                    Ok(2.0 / gap)
                } else {
                    Err(GeomError::DomainError(format!("path leaves the ball at {z}")))
                }
            }
        }
    }
}

/// A piecewise smooth path given analytically.
#[derive(Clone, Debug, PartialEq)]
pub enum Path {
    Segment { from: Point, to: Point },
    /// Planar circular arc `center + radius·(cos t, sin t)` for `t` from `start` to `end`.
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        end: f64,
    },
    Chain(Vec<Path>),
}

impl Path {
    pub fn point_at_arc(center: &Point, radius: f64, t: f64) -> Point {
        Point::xy(center.coords()[0] + radius * t.cos(), center.coords()[1] + radius * t.sin())
    }

    pub fn start_point(&self) -> Option<Point> {
        match self {
            Path::Segment { from, .. } => Some(from.clone()),
            Path::Arc {
                center,
                radius,
                start,
                ..
            } => Some(Self::point_at_arc(center, *radius, *start)),
            Path::Chain(parts) => parts.first().and_then(Path::start_point),
        }
    }

    pub fn end_point(&self) -> Option<Point> {
        match self {
            Path::Segment { to, .. } => Some(to.clone()),
            Path::Arc {
                center, radius, end, ..
            } => Some(Self::point_at_arc(center, *radius, *end)),
            Path::Chain(parts) => parts.last().and_then(Path::end_point),
        }
    }
}

/// `∫ w(γ(t)) |γ′(t)| dt` with absolute error at most `tol` (per smooth piece).
pub fn path_length_quadrature(path: &Path, w: WeightFunction, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(GeomError::DomainError(format!("tolerance {tol} must be positive")));
    }
    match path {
        Path::Segment { from, to } => {
            same_dim(&[from, to])?;
            let dir = to - from;
            let speed = dir.norm();
            if speed == 0.0 {
                return Ok(0.0);
            }
            adaptive_simpson(|t| Ok(w.eval(&from.add_scaled(t, &dir))? * speed), 0.0, 1.0, tol)
        }
        Path::Arc {
            center,
            radius,
            start,
            end,
        } => {
            if center.dim() != 2 {
                return Err(GeomError::DimensionMismatch {
                    expected: 2,
                    got: center.dim(),
                });
            }
            if !(*radius > 0.0) || !start.is_finite() || !end.is_finite() {
                return Err(GeomError::DomainError("malformed arc".into()));
            }
            let (lo, hi) = if start <= end { (*start, *end) } else { (*end, *start) };
            adaptive_simpson(
                |t| Ok(w.eval(&Path::point_at_arc(center, *radius, t))? * radius),
                lo,
                hi,
                tol,
            )
        }
        Path::Chain(parts) => parts
            .iter()
            .map(|p| path_length_quadrature(p, w, tol))
            .sum(),
    }
}

struct Panel {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
    tol: f64,
}

fn simpson(lo: f64, hi: f64, f_lo: f64, f_mid: f64, f_hi: f64) -> f64 {
    (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi)
}

/// Adaptive Simpson with interval bisection; each accepted panel carries the
/// Richardson correction `(S₂ − S₁)/15`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let h = (b - a) / INITIAL_PANELS as f64;
    let mut stack = Vec::with_capacity(64);
    for i in 0..INITIAL_PANELS {
        let lo = a + h * i as f64;
        let hi = if i + 1 == INITIAL_PANELS { b } else { lo + h };
        let (f_lo, f_mid, f_hi) = (f(lo)?, f(0.5 * (lo + hi))?, f(hi)?);
        stack.push(Panel {
            lo,
            hi,
            f_lo,
            f_mid,
            f_hi,
            whole: simpson(lo, hi, f_lo, f_mid, f_hi),
            tol: tol / INITIAL_PANELS as f64,
        });
    }
    let mut panels = INITIAL_PANELS;
    let mut total = 0.0;
    let min_width = (b - a).abs() * 1e-15;
    while let Some(p) = stack.pop() {
        let mid = 0.5 * (p.lo + p.hi);
        let f_lm = f(0.5 * (p.lo + mid))?;
        let f_rm = f(0.5 * (mid + p.hi))?;
        let left = simpson(p.lo, mid, p.f_lo, f_lm, p.f_mid);
        let right = simpson(mid, p.hi, p.f_mid, f_rm, p.f_hi);
        let delta = left + right - p.whole;
        if delta.abs() <= 15.0 * p.tol || (p.hi - p.lo).abs() <= min_width {
            total += left + right + delta / 15.0;
            continue;
        }
        panels += 1;
        if panels > MAX_SUBINTERVALS {
            return Err(GeomError::NoConvergence(MAX_SUBINTERVALS));
        }
        let tol = 0.5 * p.tol;
        stack.push(Panel {
            lo: p.lo,
            hi: mid,
            f_lo: p.f_lo,
            f_mid: f_lm,
            f_hi: p.f_mid,
            whole: left,
            tol,
        });
        stack.push(Panel {
            lo: mid,
            hi: p.hi,
            f_lo: p.f_mid,
            f_mid: f_rm,
            f_hi: p.f_hi,
            whole: right,
            tol,
        });
    }
    Ok(total)
}
