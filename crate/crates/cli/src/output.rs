//! Structured records and their text and JSON renderings.
//!
//! A record is a JSON object. The text form prints scalars as `key: value`
//! with dotted keys for nested objects, number arrays as `(a,b,...)`, and
//! arrays of objects as aligned tables.

use apollonia::{CircleOrLine, ExtPoint, Point};
use serde_json::{Map, Value};

/// A finite float as a JSON number; non-finite values become strings.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| Value::String(format!("{v:?}")), Value::Number)
}

pub fn point(p: &Point) -> Value {
    Value::Array(p.coords().iter().map(|&c| num(c)).collect())
}

pub fn ext_point(p: &ExtPoint) -> Value {
    match p {
        ExtPoint::Finite(p) => point(p),
        ExtPoint::Infinity => Value::String("inf".into()),
    }
}

pub fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub fn shape(s: &CircleOrLine) -> Value {
    let mut m = Map::new();
    match s {
        CircleOrLine::Circle { center, radius } => {
            m.insert("type".into(), "circle".into());
            m.insert("center".into(), point(center));
            m.insert("radius".into(), num(*radius));
        }
        CircleOrLine::Line { point: p, direction } => {
            m.insert("type".into(), "line".into());
            m.insert("point".into(), point(p));
            m.insert("direction".into(), point(direction));
        }
        CircleOrLine::Hyperplane { point: p, normal } => {
            m.insert("type".into(), "hyperplane".into());
            m.insert("point".into(), point(p));
            m.insert("normal".into(), point(normal));
        }
    }
    Value::Object(m)
}

/// Builder for an ordered record.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Record(pub Map<String, Value>);

impl Record {
    pub fn new() -> Self {
        Record(Map::new())
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.0.insert(key.to_string(), v.into());
        self
    }

    pub fn set_f64(&mut self, key: &str, v: f64) -> &mut Self {
        self.set(key, num(v))
    }

    pub fn into_value(self) -> Value {
        Value::Object(self.0)
    }
}

impl From<Record> for Value {
    fn from(r: Record) -> Value {
        r.into_value()
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

/// Text rendering. `color` wraps `PASS`/`FAIL` cells in ANSI colors.
pub fn to_text(v: &Value, color: bool) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        write_object(&mut out, "", m, color);
    } else {
        out.push_str(&scalar(v));
        out.push('\n');
    }
    out
}

fn write_object(out: &mut String, prefix: &str, m: &Map<String, Value>, color: bool) {
    for (k, v) in m {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(inner) => write_object(out, &key, inner, color),
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                out.push_str(&key);
                out.push_str(":\n");
                write_table(out, items, color);
            }
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
                out.push_str(&key);
                out.push_str(":\n");
                for i in items {
                    out.push_str("  - ");
                    out.push_str(&scalar(i));
                    out.push('\n');
                }
            }
            _ => {
                out.push_str(&key);
                out.push_str(": ");
                out.push_str(&paint(scalar(v), color));
                out.push('\n');
            }
        }
    }
}

fn write_table(out: &mut String, rows: &[Value], color: bool) {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        for k in row.as_object().expect("table rows are objects").keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let m = row.as_object().expect("table rows are objects");
            columns.iter().map(|c| m.get(c).map_or_else(|| "-".to_string(), scalar)).collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |out: &mut String, row: &[String], paint_cells: bool| {
        out.push_str("  ");
        let last = row.len() - 1;
        for (j, cell) in row.iter().enumerate() {
            let pad = widths[j] - cell.chars().count();
            let text = if paint_cells { paint(cell.clone(), color) } else { cell.clone() };
            out.push_str(&text);
            if j < last {
                out.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push('\n');
    };
    line(out, &columns, false);
    for row in &cells {
        line(out, row, true);
    }
}

fn paint(s: String, color: bool) -> String {
    match (color, s.as_str()) {
        (true, "PASS") => format!("\x1b[32m{s}\x1b[0m"),
        (true, "FAIL") => format!("\x1b[31m{s}\x1b[0m"),
        _ => s,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.to_string(),
            (None, Some(i)) => i.to_string(),
            _ => format!("{:?}", n.as_f64().expect("finite")),
        },
        Value::String(s) => s.clone(),
        Value::Array(items) if items.is_empty() => "-".into(),
        Value::Array(items) if items.iter().all(|i| i.is_number()) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            format!("({})", inner.join(","))
        }
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(";"),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
    }
}
