//! Cross ratios, absolute ratios, inversion in the unit sphere and a few
//! elementary Euclidean constructions used by the model modules.

use num_complex::Complex64;

use crate::error::{GeomError, Result};
use crate::geom::point::{same_dim, ExtPoint, Point};
use crate::geom::shape::CircleOrLine;

/// Absolute tolerance for "two points coincide".
pub const DISTINCT_EPS: f64 = 1e-14;

/// `[a,b,c,d] = (a−c)(b−d) / ((a−b)(c−d))`.
pub fn cross_ratio(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Complex64> {
    let pts = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if (pts[i] - pts[j]).norm() < DISTINCT_EPS {
                return Err(GeomError::DegenerateInput(format!(
                    "cross ratio arguments {i} and {j} coincide"
                )));
            }
        }
    }
    Ok((a - c) * (b - d) / ((a - b) * (c - d)))
}

/// `|a,b,c,d| = |a−c||b−d| / (|a−b||c−d|)`.
///
/// One argument may be [`ExtPoint::Infinity`]; the two factors containing it
/// cancel, e.g. `|∞,b,c,d| = |b−d|/|c−d|`.
pub fn absolute_ratio(a: &ExtPoint, b: &ExtPoint, c: &ExtPoint, d: &ExtPoint) -> Result<f64> {
    let pts = [a, b, c, d];
    let finite: Vec<&Point> = pts.iter().filter_map(|p| p.finite()).collect();
    if finite.len() < 3 {
        return Err(GeomError::DegenerateInput(
            "absolute ratio admits at most one point at infinity".into(),
        ));
    }
    same_dim(&finite)?;
    for i in 0..4 {
        for j in i + 1..4 {
            if let (Some(p), Some(q)) = (pts[i].finite(), pts[j].finite()) {
                if p.dist(q) < DISTINCT_EPS {
                    return Err(GeomError::DegenerateInput(format!(
                        "absolute ratio arguments {i} and {j} coincide"
                    )));
                }
            }
        }
    }
    // |p − q|, with factors that involve infinity replaced by 1 (they cancel in pairs).
    let f = |p: &ExtPoint, q: &ExtPoint| match (p.finite(), q.finite()) {
        (Some(p), Some(q)) => p.dist(q),
        _ => 1.0,
    };
    Ok(f(a, c) * f(b, d) / (f(a, b) * f(c, d)))
}

/// Inversion in the unit sphere, `x ↦ x/|x|²`.
pub fn unit_sphere_inversion(x: &Point) -> Result<Point> {
    same_dim(&[x])?;
    let n2 = x.norm_sq();
    if n2 < DISTINCT_EPS * DISTINCT_EPS {
        return Err(GeomError::DegenerateInput(
            "the origin has no finite inverse".into(),
        ));
    }
    Ok(x.scale(1.0 / n2))
}

/// Euclidean distance from the line through `a` and `b` to the origin, via
/// the side lengths of the triangle `0ab`:
///
/// `√((|a−b|² − (|a|−|b|)²)((|a|+|b|)² − |a−b|²)) / (2|a−b|)`.
pub fn line_distance_to_origin(a: &Point, b: &Point) -> Result<f64> {
    same_dim(&[a, b])?;
    let ab = a.dist(b);
    if ab < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput(
            "line through coincident points".into(),
        ));
    }
    let (na, nb) = (a.norm(), b.norm());
    let ab2 = ab * ab;
    let f1 = (ab2 - (na - nb) * (na - nb)).max(0.0);
    let f2 = ((na + nb) * (na + nb) - ab2).max(0.0);
    Ok((f1 * f2).sqrt() / (2.0 * ab))
}

/// The sphere through `y` and `z` orthogonal to `S(x, r)`, for `y`, `z` on `S(x, r)`.
///
/// Its center is `w = x + (|y−x|²/|s−x|²)(s−x)` with `s = (y+z)/2` and its
/// radius `|y−w|`. When `y` and `z` are diametrically opposite the planar
/// answer is the line through them.
pub fn orthogonal_circle_through(x: &Point, r: f64, y: &Point, z: &Point) -> Result<CircleOrLine> {
    same_dim(&[x, y, z])?;
    if !(r > 0.0) {
        return Err(GeomError::DomainError(format!("radius {r} must be positive")));
    }
    if y.dist(z) < DISTINCT_EPS {
        return Err(GeomError::DegenerateInput("y and z coincide".into()));
    }
    let tol = 1e-9 * r.max(1.0);
    if (y.dist(x) - r).abs() > tol || (z.dist(x) - r).abs() > tol {
        return Err(GeomError::DomainError(
            "y and z must lie on the sphere S(x, r)".into(),
        ));
    }
    let s = y.midpoint(z);
    let sx = &s - x;
    let sx2 = sx.norm_sq();
    if sx2.sqrt() < 1e-12 {
        if x.dim() != 2 {
            return Err(GeomError::DegenerateInput(
                "diametrically opposite points: orthogonal sphere is not unique for n > 2".into(),
            ));
        }
        return CircleOrLine::line(y.clone(), &(z - y));
    }
    let w = x.add_scaled((y - x).norm_sq() / sx2, &sx);
    let radius = y.dist(&w);
    CircleOrLine::circle(w, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cross_ratio_of_consecutive_integers() {
        let cr = cross_ratio(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert_eq!(cr, c(4.0, 0.0));
        let cr = cross_ratio(c(0.0, 1.0), c(1.0, 1.0), c(2.0, 1.0), c(3.0, 1.0)).unwrap();
        assert!((cr - c(4.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cross_ratio_rejects_coincident() {
        assert!(cross_ratio(c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).is_err());
    }

    #[test]
    fn concyclic_cross_ratio_is_real() {
        let center = c(0.3, -1.2);
        let pts: Vec<Complex64> = [0.1, 1.7, 2.9, 4.4]
            .iter()
            .map(|t| center + Complex64::from_polar(2.5, *t))
            .collect();
        let cr = cross_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
        assert!(cr.im.abs() < 1e-10);
    }

    #[test]
    fn absolute_ratio_values() {
        let p = |x: f64| ExtPoint::Finite(Point::xy(x, 0.0));
        assert_eq!(absolute_ratio(&p(0.0), &p(1.0), &p(2.0), &p(3.0)).unwrap(), 4.0);
        let inf = ExtPoint::Infinity;
        let (x, y, d) = (Point::xy(0.2, 0.5), Point::xy(-1.0, 0.3), Point::xy(2.0, 2.0));
        let v = absolute_ratio(&inf, &x.clone().into(), &y.clone().into(), &d.clone().into()).unwrap();
        assert!((v - x.dist(&d) / y.dist(&d)).abs() < 1e-15);
    }

    #[test]
    fn absolute_ratio_rejects_two_infinities() {
        let inf = ExtPoint::Infinity;
        let p = ExtPoint::Finite(Point::xy(0.0, 0.0));
        let q = ExtPoint::Finite(Point::xy(1.0, 0.0));
        assert!(absolute_ratio(&inf, &p, &q, &inf).is_err());
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(unit_sphere_inversion(&Point::xy(0.5, 0.0)).unwrap(), Point::xy(2.0, 0.0));
        let u = Point::xy(0.6, 0.8);
        assert!(unit_sphere_inversion(&u).unwrap().dist(&u) < 1e-15);
        let x = Point::xy(0.3, -0.45);
        let back = unit_sphere_inversion(&unit_sphere_inversion(&x).unwrap()).unwrap();
        assert!(back.dist(&x) < 1e-14);
        assert!(unit_sphere_inversion(&Point::xy(0.0, 0.0)).is_err());
    }

    #[test]
    fn line_distance_examples() {
        let d = line_distance_to_origin(&Point::xy(1.0, 0.0), &Point::xy(0.0, 1.0)).unwrap();
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let d = line_distance_to_origin(&Point::xy(1.0, 2.0), &Point::xy(-2.0, -4.0)).unwrap();
        assert!(d < 1e-7);
        assert!(line_distance_to_origin(&Point::xy(1.0, 2.0), &Point::xy(1.0, 2.0)).is_err());
    }

    #[test]
    fn orthogonal_circle_example() {
        let o = Point::xy(0.0, 0.0);
        let circ = orthogonal_circle_through(&o, 1.0, &Point::xy(1.0, 0.0), &Point::xy(0.0, 1.0)).unwrap();
        let (w, r) = circ.center_radius().unwrap();
        assert!(w.dist(&Point::xy(1.0, 1.0)) < 1e-15);
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn orthogonal_circle_antipodal_is_line() {
        let o = Point::xy(0.0, 0.0);
        let res = orthogonal_circle_through(&o, 1.0, &Point::xy(1.0, 0.0), &Point::xy(-1.0, 0.0)).unwrap();
        assert!(matches!(res, CircleOrLine::Line { .. }));
        assert!(res.contains(&Point::xy(1.0, 0.0), 1e-15));
    }
}
