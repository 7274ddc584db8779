//! Reduction of planar constructions in ℝⁿ to a containing 2-plane.

use crate::geom::point::Point;

/// An isometric embedding of ℝ² into ℝⁿ: `q ↦ origin + q₁e₁ + q₂e₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneFrame {
    origin: Point,
    e1: Point,
    e2: Point,
}

impl PlaneFrame {
    fn identity() -> Self {
        PlaneFrame {
            origin: Point::origin(2),
            e1: Point::basis(2, 0),
            e2: Point::basis(2, 1),
        }
    }

    /// Plane through 0 containing `x` and `y` (any such plane if 0, x, y are collinear).
    /// For n = 2 this is the identity frame.
    pub fn through_origin(x: &Point, y: &Point) -> Self {
        let n = x.dim();
        if n == 2 {
            return Self::identity();
        }
        let e1 = x
            .normalized()
            .or_else(|| y.normalized())
            .unwrap_or_else(|| Point::basis(n, 0));
        let e2 = orthogonal_unit(&e1, &[y, x]);
        PlaneFrame {
            origin: Point::origin(n),
            e1,
            e2,
        }
    }

    /// Vertical plane through `x` and `y` in the half-space model, with `e₂ = eₙ`
    /// and the origin on the boundary below `x`. For n = 2 this is the identity frame.
    pub fn vertical(x: &Point, y: &Point) -> Self {
        let n = x.dim();
        if n == 2 {
            return Self::identity();
        }
        let origin = x.horizontal();
        let e1 = (&y.horizontal() - &origin)
            .normalized()
            .unwrap_or_else(|| Point::basis(n, 0));
        PlaneFrame {
            origin,
            e1,
            e2: Point::basis(n, n - 1),
        }
    }

    pub fn project(&self, p: &Point) -> Point {
        let v = p - &self.origin;
        Point::xy(v.dot(&self.e1), v.dot(&self.e2))
    }

    pub fn embed(&self, q: &Point) -> Point {
        let c = q.coords();
        self.origin
            .add_scaled(c[0], &self.e1)
            .add_scaled(c[1], &self.e2)
    }
}

/// A unit vector orthogonal to `e1`, taken from the first candidate with a
/// usable orthogonal component, else from the standard basis.
fn orthogonal_unit(e1: &Point, candidates: &[&Point]) -> Point {
    let n = e1.dim();
    for c in candidates {
        let v = c.add_scaled(-c.dot(e1), e1);
        if v.norm() > 1e-12 * c.norm().max(1e-300) {
            if let Some(u) = v.normalized() {
                return u;
            }
        }
    }
    (0..n)
        .map(|i| Point::basis(n, i))
        .map(|b| b.add_scaled(-b.dot(e1), e1))
        .max_by(|a, b| a.norm_sq().total_cmp(&b.norm_sq()))
        .and_then(|v| v.normalized())
        .unwrap_or_else(|| Point::basis(n, 1))
}
