//! Plain-text point files.
//!
//! ```text
//! # comment
//! dim 2
//! -1 0
//! 1/2 3
//! ```
//!
//! Coordinates are integers or reduced fractions `a/b`, separated by single
//! spaces. Serialization writes points in lexicographic order with LF line
//! endings and no trailing whitespace.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{Configuration, Point};
use crate::numeric::Rational;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_rational(field: &str, line: usize) -> Result<Rational> {
    let int = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| parse_error(line, format!("invalid number `{field}`")))
    };
    match field.split_once('/') {
        None => Ok(Rational::from_integer(int(field)?)),
        Some((n, d)) => {
            let (n, d) = (int(n)?, int(d)?);
            if d.is_zero() {
                return Err(parse_error(line, format!("zero denominator in `{field}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

pub fn parse_config(text: &str) -> Result<Configuration> {
    let mut dim: Option<usize> = None;
    let mut points: Vec<Point> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some(d) = dim else {
            let d = line
                .strip_prefix("dim ")
                .and_then(|v| v.trim().parse::<usize>().ok())
                .filter(|&d| d >= 1)
                .ok_or_else(|| parse_error(line_no, "expected header `dim <d>` with d >= 1"))?;
            dim = Some(d);
            continue;
        };
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.iter().any(|f| f.is_empty()) {
            return Err(parse_error(line_no, "coordinates must be separated by single spaces"));
        }
        if fields.len() != d {
            return Err(parse_error(
                line_no,
                format!("expected {d} coordinates, found {}", fields.len()),
            ));
        }
        let coords = fields
            .iter()
            .map(|f| parse_rational(f, line_no))
            .collect::<Result<Vec<_>>>()?;
        let p = Point::new(coords)?;
        if let Some(first) = seen.insert(p.clone(), line_no) {
            return Err(parse_error(line_no, format!("duplicate point {p} (first on line {first})")));
        }
        points.push(p);
    }
    let dim = dim.ok_or_else(|| parse_error(text.lines().count().max(1), "missing `dim <d>` header"))?;
    Configuration::new(dim, points)
}

pub fn serialize_config(c: &Configuration) -> String {
    let mut out = format!("dim {}\n", c.dim());
    for p in c {
        let fields: Vec<String> = p.coords().iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

pub fn load_config(path: &Path) -> std::result::Result<Configuration, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))
}
