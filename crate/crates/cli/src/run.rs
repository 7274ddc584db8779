//! Request dispatch.

use apollonia::apollonian::{apollonian_parameters, BoundarySampler, FibonacciSphere, HalfSpaceBoundary, UnitCircleGrid};
use apollonia::bounds::{ball_full_report, half_lower_bounds, constant_ordering, BoundReport};
use apollonia::disk::{
    ahlfors_bracket, ball_to_euclidean, bisect_construction, bisector_disk, geodesic_disk, midpoint_disk, rho_ball,
    sphere_to_apollonian, HyperbolicSphere,
};
use apollonia::half::{ball_half_to_euclidean, bisector_half, geodesic_half, midpoint_half, rho_half, HalfSpacePoint};
use apollonia::{GeomError, Point};
use clap::Parser;
use serde_json::Value;

use crate::output::{ext_point, point, points, shape, to_json, to_text, Record};
use crate::request::{Cli, Command, Model, Request};
use crate::svg::{bisect_scene, geodesic_scene, render_svg, write_svg, ConstructionScene, SceneModel, SvgError};
use crate::verify::{verify, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

/// What a run prints.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Record { value: Value, json: bool },
    Raw(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: Body,
    pub stderr: String,
}

impl Outcome {
    pub fn stdout_text(&self, color: bool) -> String {
        match &self.stdout {
            Body::Record { value, json: true } => to_json(value),
            Body::Record { value, json: false } => to_text(value, color),
            Body::Raw(s) => s.clone(),
        }
    }

    fn malformed(msg: String) -> Self {
        Outcome {
            exit_code: EXIT_MALFORMED,
            stdout: Body::Raw(String::new()),
            stderr: msg,
        }
    }
}

/// Parses argv (program name first) and runs the request.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::malformed(text)
            } else {
                Outcome {
                    exit_code: EXIT_OK,
                    stdout: Body::Raw(text),
                    stderr: String::new(),
                }
            };
        }
    };
    match Request::from_cli(cli) {
        Ok(req) => run(&req),
        Err(e) => Outcome::malformed(format!("error: {e}\n")),
    }
}

/// Failure of a command after the request was accepted (exit code 1).
#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Svg(#[from] SvgError),
}

impl RunError {
    fn kind(&self) -> &'static str {
        match self {
            RunError::Geom(e) => e.kind(),
            RunError::Svg(SvgError::Io(_)) => "IoError",
            RunError::Svg(_) => "SceneError",
        }
    }
}

pub fn run(req: &Request) -> Outcome {
    let mut rec = Record::new();
    rec.set("command", req.command.name()).set("input", input_record(req));
    let result = match req.command {
        Command::Dist => dist(req),
        Command::Midpoint => midpoint(req),
        Command::Geodesic => geodesic(req),
        Command::Bisect => bisect(req),
        Command::Ball => ball(req),
        Command::Bounds => bounds(req),
        Command::Verify => {
            let cfg = VerifyConfig {
                seed: req.seed,
                samples: req.samples,
                bound_tol: req.tol,
            };
            let (value, ok) = verify(&req.suite, &cfg);
            rec.set("result", value);
            return finish(req, rec, if ok { EXIT_OK } else { EXIT_DOMAIN });
        }
        Command::Render => return render(req, rec),
    };
    match result {
        Ok(v) => {
            rec.set("result", v);
            finish(req, rec, EXIT_OK)
        }
        Err(e) => fail(req, rec, e),
    }
}

fn finish(req: &Request, rec: Record, exit_code: i32) -> Outcome {
    Outcome {
        exit_code,
        stdout: Body::Record {
            value: rec.into_value(),
            json: req.json,
        },
        stderr: String::new(),
    }
}

fn fail(req: &Request, mut rec: Record, e: RunError) -> Outcome {
    let mut err = Record::new();
    err.set("kind", e.kind()).set("message", e.to_string());
    rec.set("error", err);
    let mut out = finish(req, rec, EXIT_DOMAIN);
    out.stderr = format!("error: {e}\n");
    out
}

fn input_record(req: &Request) -> Value {
    let mut r = Record::new();
    r.set("model", req.model.name()).set("dim", req.dim as u64).set("points", points(&req.points));
    match req.command {
        Command::Dist => {
            r.set("samples", req.samples as u64);
        }
        Command::Bounds => {
            r.set_f64("tol", req.tol);
        }
        Command::Verify => {
            r.set("suite", req.suite.as_str())
                .set("samples", req.samples as u64)
                .set("seed", req.seed)
                .set_f64("tol", req.tol);
        }
        Command::Ball => {
            r.set_f64("radius", req.radius.unwrap_or(f64::NAN));
        }
        _ => {}
    }
    if let Some(p) = &req.svg {
        r.set("svg", p.display().to_string());
    }
    r.into_value()
}

fn pair(req: &Request) -> (&Point, &Point) {
    (&req.points[0], &req.points[1])
}

fn half(p: &Point) -> Result<HalfSpacePoint, GeomError> {
    HalfSpacePoint::new(p.clone())
}

fn scene_model(m: Model) -> SceneModel {
    match m {
        Model::Ball => SceneModel::Disk,
        Model::Half => SceneModel::HalfPlane,
    }
}

fn maybe_svg(req: &Request, rec: &mut Record, scene: impl FnOnce() -> apollonia::Result<ConstructionScene>) -> Result<(), RunError> {
    if let Some(path) = &req.svg {
        write_svg(&scene()?, path)?;
        rec.set("svg_written", path.display().to_string());
    }
    Ok(())
}

fn rho(req: &Request, x: &Point, y: &Point) -> Result<f64, GeomError> {
    match req.model {
        Model::Ball => rho_ball(x, y),
        Model::Half => rho_half(&half(x)?, &half(y)?),
    }
}

fn dist(req: &Request) -> Result<Value, RunError> {
    let (x, y) = pair(req);
    let mut r = Record::new();
    r.set_f64("rho", rho(req, x, y)?);
    if req.model == Model::Ball {
        r.set_f64("ahlfors_bracket", ahlfors_bracket(x, y)?);
    }
    let sampler: Option<Box<dyn BoundarySampler>> = match (req.model, req.dim) {
        (Model::Ball, 2) => Some(Box::new(UnitCircleGrid { count: req.samples })),
        (Model::Ball, 3) => Some(Box::new(FibonacciSphere { count: req.samples })),
        (Model::Half, 2 | 3) => Some(Box::new(HalfSpaceBoundary {
            dim: req.dim,
            count: req.samples,
        })),
        _ => None,
    };
    if let Some(s) = sampler {
        let mut a = Record::new();
        if x == y {
            a.set_f64("distance", 0.0);
        } else {
            let p = apollonian_parameters(x, y, s.as_ref())?;
            a.set_f64("distance", p.distance())
                .set_f64("sup_x", p.sup_x)
                .set_f64("sup_y", p.sup_y)
                .set("witness_a", ext_point(&p.witness_a))
                .set("witness_d", ext_point(&p.witness_d));
        }
        a.set("boundary_samples", s.params().len() as u64);
        r.set("apollonian", a);
    }
    Ok(r.into_value())
}

fn midpoint(req: &Request) -> Result<Value, RunError> {
    let (x, y) = pair(req);
    let z = match req.model {
        Model::Ball => midpoint_disk(x, y)?,
        Model::Half => midpoint_half(&half(x)?, &half(y)?)?,
    };
    let mut r = Record::new();
    r.set("midpoint", point(&z))
        .set_f64("rho", rho(req, x, y)?)
        .set_f64("rho_x_mid", rho(req, x, &z)?)
        .set_f64("rho_y_mid", rho(req, y, &z)?);
    maybe_svg(req, &mut r, || bisect_scene(scene_model(req.model), x, y))?;
    Ok(r.into_value())
}

fn geodesic(req: &Request) -> Result<Value, RunError> {
    let (x, y) = pair(req);
    let g = match req.model {
        Model::Ball => geodesic_disk(x, y)?,
        Model::Half => geodesic_half(&half(x)?, &half(y)?)?,
    };
    let mut r = Record::new();
    r.set("carrier", shape(&g.carrier))
        .set("ideal_x", ext_point(&g.ideal_x))
        .set("ideal_y", ext_point(&g.ideal_y))
        .set_f64("rho", rho(req, x, y)?);
    maybe_svg(req, &mut r, || geodesic_scene(scene_model(req.model), x, y))?;
    Ok(r.into_value())
}

fn bisect(req: &Request) -> Result<Value, RunError> {
    let (x, y) = pair(req);
    let mut r = Record::new();
    match req.model {
        Model::Ball if req.dim == 2 => {
            let c = bisect_construction(x, y)?;
            r.set("bisector", shape(&c.bisector))
                .set("carrier", shape(&c.carrier))
                .set("midpoint", point(&c.midpoint));
        }
        Model::Ball => {
            r.set("bisector", shape(&bisector_disk(x, y)?)).set("midpoint", point(&midpoint_disk(x, y)?));
        }
        Model::Half => {
            let (hx, hy) = (half(x)?, half(y)?);
            r.set("bisector", shape(&bisector_half(&hx, &hy)?));
            if req.dim == 2 {
                r.set("carrier", shape(&geodesic_half(&hx, &hy)?.carrier));
            }
            r.set("midpoint", point(&midpoint_half(&hx, &hy)?));
        }
    }
    maybe_svg(req, &mut r, || bisect_scene(scene_model(req.model), x, y))?;
    Ok(r.into_value())
}

fn ball(req: &Request) -> Result<Value, RunError> {
    let x = &req.points[0];
    let radius = req.radius.expect("validated");
    let mut r = Record::new();
    match req.model {
        Model::Ball => {
            let v = ball_to_euclidean(x, radius)?;
            r.set("euclidean_center", point(&v.euclidean_center))
                .set_f64("euclidean_radius", v.euclidean_radius)
                .set_f64("t", v.t);
            match sphere_to_apollonian(x, radius)? {
                HyperbolicSphere::Apollonian(a) => {
                    let mut s = Record::new();
                    s.set("base_x", point(&a.base_x)).set("base_y", point(&a.base_y)).set_f64("ratio", a.ratio);
                    r.set("apollonian", s);
                }
                HyperbolicSphere::Centered { .. } => {
                    r.set("apollonian", Value::Null);
                }
            }
        }
        Model::Half => {
            r.set("sphere", shape(&ball_half_to_euclidean(&half(x)?, radius)?));
        }
    }
    Ok(r.into_value())
}

/// Bound entries as table rows; `equality` marks bounds attained to 1e−10.
fn bound_rows(rep: &BoundReport, tol: f64) -> Value {
    Value::Array(
        rep.entries
            .iter()
            .map(|e| {
                let mut r = Record::new();
                r.set("name", e.name)
                    .set("functional", e.kind.label())
                    .set_f64("bound", e.bound_value)
                    .set_f64("exact", e.exact)
                    .set_f64("slack", e.slack)
                    .set("applicable", e.applicable)
                    .set("valid", e.is_valid(tol))
                    .set("equality", e.applicable && e.slack.abs() <= 1e-10 * e.exact.abs().max(1.0));
                r.into_value()
            })
            .collect(),
    )
}

fn bounds(req: &Request) -> Result<Value, RunError> {
    let (x, y) = pair(req);
    let rep = match req.model {
        Model::Ball => ball_full_report(x, y)?,
        Model::Half => half_lower_bounds(&half(x)?, &half(y)?)?,
    };
    let mut r = Record::new();
    r.set_f64("rho", rep.exact_value).set("entries", bound_rows(&rep, req.tol));
    let notes: Vec<Value> = rep
        .entries
        .iter()
        .filter_map(|e| e.reason.as_ref().map(|m| Value::String(format!("{}: {m}", e.name))))
        .collect();
    if !notes.is_empty() {
        r.set("inapplicable", Value::Array(notes));
    }
    for (name, v) in &rep.flags {
        r.set(name, *v);
    }
    if req.model == Model::Ball {
        let o = constant_ordering(x, y)?;
        let mut m = Record::new();
        m.set("c6_le_c5", o.c6_le_c5).set("c5_le_c3", o.c5_le_c3).set("c3_le_c2", o.c3_le_c2);
        r.set("constant_ordering", m);
    }
    r.set("all_valid", rep.all_valid(req.tol));
    Ok(r.into_value())
}

fn render(req: &Request, mut rec: Record) -> Outcome {
    let model = scene_model(req.model);
    let scene = if req.points.is_empty() {
        Ok(ConstructionScene::empty(model))
    } else {
        let (x, y) = pair(req);
        bisect_scene(model, x, y)
    };
    let scene = match scene {
        Ok(s) => s,
        Err(e) => return fail(req, rec, e.into()),
    };
    let svg = match render_svg(&scene) {
        Ok(s) => s,
        Err(e) => return fail(req, rec, e.into()),
    };
    let Some(path) = &req.svg else {
        return Outcome {
            exit_code: EXIT_OK,
            stdout: Body::Raw(svg),
            stderr: String::new(),
        };
    };
    if let Err(e) = std::fs::write(path, &svg) {
        return fail(req, rec, SvgError::Io(e).into());
    }
    let mut r = Record::new();
    r.set("svg_written", path.display().to_string())
        .set("shapes", scene.shapes.len() as u64)
        .set("points", scene.points.len() as u64)
        .set("arcs", scene.arcs.len() as u64);
    rec.set("result", r);
    finish(req, rec, EXIT_OK)
}
