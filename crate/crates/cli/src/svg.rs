//! Construction scenes and their SVG rendering.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path as FsPath;

use apollonia::disk::{bisect_construction, geodesic_disk};
use apollonia::geom::quadrature::Path;
use apollonia::half::{bisector_half, geodesic_half, midpoint_half, HalfSpacePoint};
use apollonia::{CircleOrLine, ExtPoint, GeodesicSegment, Point};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("cannot write svg: {0}")]
    Io(#[from] std::io::Error),
    #[error("scene object {0} is not finite")]
    NonFinite(String),
    #[error("scenes are planar, {0} has dimension {1}")]
    NotPlanar(String, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SceneModel {
    Disk,
    HalfPlane,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneShape {
    pub label: String,
    /// Operation that produced the object.
    pub source: &'static str,
    pub shape: CircleOrLine,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenePoint {
    pub label: String,
    pub source: &'static str,
    pub at: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SceneArc {
    pub label: String,
    pub source: &'static str,
    pub path: Path,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionScene {
    pub model: SceneModel,
    pub shapes: Vec<SceneShape>,
    pub points: Vec<ScenePoint>,
    pub arcs: Vec<SceneArc>,
}

impl ConstructionScene {
    pub fn empty(model: SceneModel) -> Self {
        ConstructionScene {
            model,
            shapes: Vec::new(),
            points: Vec::new(),
            arcs: Vec::new(),
        }
    }

    fn shape(&mut self, label: &str, source: &'static str, shape: CircleOrLine) {
        self.shapes.push(SceneShape {
            label: label.into(),
            source,
            shape,
        });
    }

    fn point(&mut self, label: &str, source: &'static str, at: Point) {
        self.points.push(ScenePoint {
            label: label.into(),
            source,
            at,
        });
    }

    fn geodesic(&mut self, g: &GeodesicSegment, source: &'static str) {
        self.shape("carrier", source, g.carrier.clone());
        self.arcs.push(SceneArc {
            label: "segment".into(),
            source,
            path: g.path(),
        });
        for (label, p) in [("x'", &g.ideal_x), ("y'", &g.ideal_y)] {
            if let ExtPoint::Finite(p) = p {
                self.point(label, source, p.clone());
            }
        }
    }
}

/// Geodesic through `x`, `y` with its ideal endpoints.
pub fn geodesic_scene(model: SceneModel, x: &Point, y: &Point) -> apollonia::Result<ConstructionScene> {
    let mut scene = ConstructionScene::empty(model);
    let g = match model {
        SceneModel::Disk => (geodesic_disk(x, y)?, "geodesic_disk"),
        SceneModel::HalfPlane => (geodesic_half(&half(x)?, &half(y)?)?, "geodesic_half"),
    };
    scene.geodesic(&g.0, g.1);
    scene.point("x", "input", x.clone());
    scene.point("y", "input", y.clone());
    Ok(scene)
}

/// Midpoint construction: carrier, bisector and their intersection.
pub fn bisect_scene(model: SceneModel, x: &Point, y: &Point) -> apollonia::Result<ConstructionScene> {
    let mut scene = ConstructionScene::empty(model);
    let z = match model {
        SceneModel::Disk => {
            let c = bisect_construction(x, y)?;
            scene.geodesic(&geodesic_disk(x, y)?, "geodesic_disk");
            scene.shape("bisector", "bisector_disk", c.bisector);
            (c.midpoint, "bisect_construction")
        }
        SceneModel::HalfPlane => {
            let (hx, hy) = (half(x)?, half(y)?);
            scene.geodesic(&geodesic_half(&hx, &hy)?, "geodesic_half");
            scene.shape("bisector", "bisector_half", bisector_half(&hx, &hy)?);
            (midpoint_half(&hx, &hy)?, "midpoint_half")
        }
    };
    scene.point("x", "input", x.clone());
    scene.point("y", "input", y.clone());
    scene.point("z", z.1, z.0);
    Ok(scene)
}

fn half(p: &Point) -> apollonia::Result<HalfSpacePoint> {
    HalfSpacePoint::new(p.clone())
}

const WIDTH: f64 = 600.0;
const DISK_VIEW: f64 = 1.15;

/// World rectangle shown by the picture.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Viewport {
    fn scale(&self) -> f64 {
        WIDTH / (self.x_max - self.x_min)
    }

    fn height(&self) -> f64 {
        (self.y_max - self.y_min) * self.scale()
    }

    fn to_screen(self, p: &Point) -> (f64, f64) {
        let c = p.coords();
        let s = self.scale();
        ((c[0] - self.x_min) * s, (self.y_max - c[1]) * s)
    }
}

pub fn viewport(scene: &ConstructionScene) -> Viewport {
    match scene.model {
        SceneModel::Disk => Viewport {
            x_min: -DISK_VIEW,
            x_max: DISK_VIEW,
            y_min: -DISK_VIEW,
            y_max: DISK_VIEW,
        },
        SceneModel::HalfPlane => half_plane_viewport(scene),
    }
}

/// 1.2× the bounding box of the finite objects, stretched to contain the axis.
fn half_plane_viewport(scene: &ConstructionScene) -> Viewport {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = vec![0.0];
    let mut add = |p: &Point, r: f64| {
        let c = p.coords();
        xs.extend([c[0] - r, c[0] + r]);
        ys.extend([c[1] - r, c[1] + r]);
    };
    for s in &scene.shapes {
        match &s.shape {
            CircleOrLine::Circle { center, radius } => add(center, *radius),
            CircleOrLine::Line { point, .. } | CircleOrLine::Hyperplane { point, .. } => add(point, 0.0),
        }
    }
    for p in &scene.points {
        add(&p.at, 0.0);
    }
    let (x_lo, x_hi) = bounds(&xs).unwrap_or((-1.0, 1.0));
    let (y_lo, y_hi) = bounds(&ys).unwrap_or((0.0, 1.0));
    // Degenerate boxes get a unit extent.
    let (w, h) = ((x_hi - x_lo).max(1.0), (y_hi - y_lo).max(1.0));
    let (cx, cy) = (0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi));
    Viewport {
        x_min: cx - 0.6 * w,
        x_max: cx + 0.6 * w,
        y_min: cy - 0.6 * h,
        y_max: cy + 0.6 * h,
    }
}

fn bounds(v: &[f64]) -> Option<(f64, f64)> {
    let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (lo <= hi).then_some((lo, hi))
}

/// Liang–Barsky clip of the line `p + t·d` to the viewport.
fn clip_line(view: &Viewport, p: &Point, d: &Point) -> Option<(Point, Point)> {
    let (px, py) = (p.coords()[0], p.coords()[1]);
    let (dx, dy) = (d.coords()[0], d.coords()[1]);
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (q, r) in [
        (-dx, px - view.x_min),
        (dx, view.x_max - px),
        (-dy, py - view.y_min),
        (dy, view.y_max - py),
    ] {
        if q == 0.0 {
            if r < 0.0 {
                return None;
            }
        } else {
            let t = r / q;
            if q < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    (t0 < t1).then(|| (p.add_scaled(t0, d), p.add_scaled(t1, d)))
}

/// Fixed six-decimal formatting without negative zero.
fn f(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn check(scene: &ConstructionScene) -> Result<(), SvgError> {
    let planar = |label: &str, p: &Point| {
        if p.dim() != 2 {
            Err(SvgError::NotPlanar(label.into(), p.dim()))
        } else if !p.is_finite() {
            Err(SvgError::NonFinite(label.into()))
        } else {
            Ok(())
        }
    };
    for s in &scene.shapes {
        match &s.shape {
            CircleOrLine::Circle { center, radius } => {
                planar(&s.label, center)?;
                if !radius.is_finite() {
                    return Err(SvgError::NonFinite(s.label.clone()));
                }
            }
            CircleOrLine::Line { point, direction: v } | CircleOrLine::Hyperplane { point, normal: v } => {
                planar(&s.label, point)?;
                planar(&s.label, v)?;
            }
        }
    }
    for p in &scene.points {
        planar(&p.label, &p.at)?;
    }
    for a in &scene.arcs {
        for p in [a.path.start_point(), a.path.end_point()].into_iter().flatten() {
            planar(&a.label, &p)?;
        }
    }
    Ok(())
}

/// Standalone SVG 1.1 document for the scene.
pub fn render_svg(scene: &ConstructionScene) -> Result<String, SvgError> {
    check(scene)?;
    let view = viewport(scene);
    let s = view.scale();
    let (w, h) = (WIDTH, view.height());
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        f(w),
        f(h),
        f(w),
        f(h)
    );
    // Half-plane constructions are only drawn above the axis.
    let clip_h = match scene.model {
        SceneModel::Disk => h,
        SceneModel::HalfPlane => view.to_screen(&Point::xy(0.0, 0.0)).1,
    };
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="view"><rect x="0" y="0" width="{}" height="{}"/></clipPath></defs>"#,
        f(w),
        f(clip_h)
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##, f(w), f(h));
    let _ = writeln!(out, r#"<g clip-path="url(#view)" fill="none" stroke-width="1.5">"#);
    match scene.model {
        SceneModel::Disk => {
            let (cx, cy) = view.to_screen(&Point::xy(0.0, 0.0));
            let _ = writeln!(
                out,
                r##"<circle class="boundary" cx="{}" cy="{}" r="{}" stroke="#000000"/>"##,
                f(cx),
                f(cy),
                f(s)
            );
        }
        SceneModel::HalfPlane => {
            let (_, y0) = view.to_screen(&Point::xy(0.0, 0.0));
            let _ = writeln!(
                out,
                r##"<line class="boundary" x1="0.000000" y1="{}" x2="{}" y2="{}" stroke="#000000"/>"##,
                f(y0),
                f(w),
                f(y0)
            );
        }
    }
    for shape in &scene.shapes {
        write_shape(&mut out, &view, shape);
    }
    for arc in &scene.arcs {
        write_arc(&mut out, &view, arc);
    }
    let _ = writeln!(out, "</g>");
    for p in &scene.points {
        let (x, y) = view.to_screen(&p.at);
        let _ = writeln!(
            out,
            r##"<circle class="point" data-op="{}" cx="{}" cy="{}" r="3.000000" fill="#000000"/>"##,
            p.source,
            f(x),
            f(y)
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="#000000">{}</text>"##,
            f(x + 5.0),
            f(y - 5.0),
            escape(&p.label)
        );
    }
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

fn stroke(label: &str) -> &'static str {
    match label {
        "carrier" => "#1f5fbf",
        "bisector" => "#c03020",
        "segment" => "#208040",
        _ => "#606060",
    }
}

fn write_shape(out: &mut String, view: &Viewport, s: &SceneShape) {
    let color = stroke(&s.label);
    match &s.shape {
        CircleOrLine::Circle { center, radius } => {
            let (cx, cy) = view.to_screen(center);
            let _ = writeln!(
                out,
                r#"<circle class="{}" data-op="{}" cx="{}" cy="{}" r="{}" stroke="{color}"/>"#,
                escape(&s.label),
                s.source,
                f(cx),
                f(cy),
                f(radius * view.scale())
            );
        }
        CircleOrLine::Line { point, direction } => write_line(out, view, s, point, direction, color),
        CircleOrLine::Hyperplane { point, normal } => write_line(out, view, s, point, &normal.perp2(), color),
    }
}

fn write_line(out: &mut String, view: &Viewport, s: &SceneShape, p: &Point, d: &Point, color: &str) {
    if let Some((a, b)) = clip_line(view, p, d) {
        let ((x1, y1), (x2, y2)) = (view.to_screen(&a), view.to_screen(&b));
        let _ = writeln!(
            out,
            r#"<line class="{}" data-op="{}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}"/>"#,
            escape(&s.label),
            s.source,
            f(x1),
            f(y1),
            f(x2),
            f(y2)
        );
    }
}

fn write_arc(out: &mut String, view: &Viewport, a: &SceneArc) {
    let d = match &a.path {
        Path::Arc {
            center,
            radius,
            start,
            end,
        } => {
            let (x0, y0) = view.to_screen(&Path::point_at_arc(center, *radius, *start));
            let (x1, y1) = view.to_screen(&Path::point_at_arc(center, *radius, *end));
            let r = radius * view.scale();
            let large = u8::from((end - start).abs() > PI);
            // The screen y axis points down, so clockwise in the model is sweep 1.
            let sweep = u8::from(end < start);
            format!("M {} {} A {} {} 0 {large} {sweep} {} {}", f(x0), f(y0), f(r), f(r), f(x1), f(y1))
        }
        other => {
            let (Some(p), Some(q)) = (other.start_point(), other.end_point()) else {
                return;
            };
            let ((x0, y0), (x1, y1)) = (view.to_screen(&p), view.to_screen(&q));
            format!("M {} {} L {} {}", f(x0), f(y0), f(x1), f(y1))
        }
    };
    let _ = writeln!(
        out,
        r#"<path class="{}" data-op="{}" d="{d}" stroke="{}" stroke-width="3"/>"#,
        escape(&a.label),
        a.source,
        stroke(&a.label)
    );
}

pub fn write_svg(scene: &ConstructionScene, path: &FsPath) -> Result<(), SvgError> {
    std::fs::write(path, render_svg(scene)?)?;
    Ok(())
}
