//! Command-line parsing and validation into a [`Request`].

use std::fmt;
use std::path::PathBuf;

use apollonia::Point;
use clap::{Parser, ValueEnum};
use thiserror::Error;

/// Input that cannot be turned into a request (exit code 2).
#[derive(Debug, Error)]
pub enum RequestError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed point list: {0}")]
    Points(String),
    #[error("{command} takes {expected} point(s), got {got}")]
    Arity {
        command: Command,
        expected: &'static str,
        got: usize,
    },
    #[error("point {index} has {got} coordinates, --dim is {expected}")]
    Dimension {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("{0}")]
    Option(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Dist,
    Midpoint,
    Geodesic,
    Bisect,
    Ball,
    Bounds,
    Verify,
    Render,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dist => "dist",
            Command::Midpoint => "midpoint",
            Command::Geodesic => "geodesic",
            Command::Bisect => "bisect",
            Command::Ball => "ball",
            Command::Bounds => "bounds",
            Command::Verify => "verify",
            Command::Render => "render",
        }
    }

    fn arity_ok(&self, n: usize) -> Option<&'static str> {
        let (ok, label) = match self {
            Command::Verify => (n == 0, "0"),
            Command::Ball => (n == 1, "1"),
            Command::Render => (n == 0 || n == 2, "0 or 2"),
            _ => (n == 2, "2"),
        };
        (!ok).then_some(label)
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Poincaré ball.
    Ball,
    /// Upper half-space.
    Half,
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Ball => "ball",
            Model::Half => "half",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "apollonia", version, about = "Hyperbolic distances, geodesics, midpoints and distance bounds")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Model::Ball)]
    pub model: Model,
    /// Ambient dimension of the points.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Point list such as "(0,0);(0.5,0)".
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub points: String,
    /// Sample budget: verify sweep size, boundary samples for `dist`.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Validity tolerance for bound slacks.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
    /// Write the construction scene as SVG.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Verify suite to run.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Hyperbolic radius for `ball`.
    #[arg(long, allow_hyphen_values = true)]
    pub radius: Option<f64>,
}

/// A validated request.
#[derive(Clone, Debug, PartialEq)]
pub struct Request {
    pub command: Command,
    pub model: Model,
    pub dim: usize,
    pub points: Vec<Point>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub json: bool,
    pub svg: Option<PathBuf>,
    pub suite: String,
    pub radius: Option<f64>,
}

pub const MAX_DIM: usize = 64;
pub const MAX_SAMPLES: usize = 10_000_000;

impl Request {
    pub fn from_cli(cli: Cli) -> Result<Self, RequestError> {
        if !(2..=MAX_DIM).contains(&cli.dim) {
            return Err(RequestError::Option(format!("--dim must be in 2..={MAX_DIM}, got {}", cli.dim)));
        }
        if !(cli.tol.is_finite() && cli.tol >= 0.0) {
            return Err(RequestError::Option(format!("--tol must be finite and non-negative, got {}", cli.tol)));
        }
        if cli.samples > MAX_SAMPLES {
            return Err(RequestError::Option(format!("--samples must be at most {MAX_SAMPLES}, got {}", cli.samples)));
        }
        let points = parse_points(&cli.points)?;
        if let Some(expected) = cli.command.arity_ok(points.len()) {
            return Err(RequestError::Arity {
                command: cli.command,
                expected,
                got: points.len(),
            });
        }
        for (index, p) in points.iter().enumerate() {
            if p.dim() != cli.dim {
                return Err(RequestError::Dimension {
                    index,
                    expected: cli.dim,
                    got: p.dim(),
                });
            }
        }
        match (cli.command, cli.radius) {
            (Command::Ball, None) => return Err(RequestError::Option("ball requires --radius".into())),
            (Command::Ball, Some(r)) if !r.is_finite() => {
                return Err(RequestError::Option(format!("--radius must be finite, got {r}")))
            }
            _ => {}
        }
        if cli.command == Command::Verify && !crate::verify::is_suite(&cli.suite) {
            return Err(RequestError::Option(format!(
                "unknown suite {:?}; expected all or one of {}",
                cli.suite,
                crate::verify::SUITES.join(", ")
            )));
        }
        Ok(Request {
            command: cli.command,
            model: cli.model,
            dim: cli.dim,
            points,
            samples: cli.samples,
            seed: cli.seed,
            tol: cli.tol,
            json: cli.json,
            svg: cli.svg,
            suite: cli.suite,
            radius: cli.radius,
        })
    }
}

/// Parses `"(a,b);(c,d)"`. Whitespace around tokens is ignored and an
/// empty string is the empty list; coordinates must be finite decimals.
pub fn parse_points(s: &str) -> Result<Vec<Point>, RequestError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').enumerate().map(|(i, item)| parse_point(item.trim(), i)).collect()
}

fn parse_point(item: &str, index: usize) -> Result<Point, RequestError> {
    let inner = item
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| RequestError::Points(format!("point {index}: expected \"(x1,x2,...)\", got {item:?}")))?;
    let coords = inner
        .split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(RequestError::Points(format!("point {index}: bad coordinate {t:?}"))),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() < 2 {
        return Err(RequestError::Points(format!("point {index}: need at least 2 coordinates")));
    }
    Point::new(coords).map_err(|e| RequestError::Points(format!("point {index}: {e}")))
}
