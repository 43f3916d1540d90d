//! Static renderings: an SVG scatter for planar sets and a layered text
//! listing for sets in `R^3`.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::Configuration;
use crate::numeric::{int, Rational};

/// Fixed-point decimal with at most four fractional digits, rounded half
/// away from zero; integers print without a point.
fn decimal(r: &Rational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let scaled = r * int(10_000);
    let rounded = (scaled.abs() + Rational::new(1.into(), 2.into())).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&BigInt::from(10_000));
    let sign = if r.is_negative() && !rounded.is_zero() { "-" } else { "" };
    let digits = format!("{frac:04}");
    let digits = digits.trim_end_matches('0');
    if digits.is_empty() {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{digits}")
    }
}

/// SVG scatter of a planar set, positive `y` up, with integer gridlines over
/// the bounding box widened by one unit on every side.
pub fn render_svg(c: &Configuration, unit_px: u32) -> Result<String> {
    if c.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: c.dim(),
        });
    }
    if unit_px == 0 {
        return Err(Error::Precondition("unit_px must be positive".into()));
    }
    let bound = |axis: usize| -> (BigInt, BigInt) {
        let vals = c.iter().map(|p| &p.coords()[axis]);
        let lo = vals.clone().min().map(|v| v.floor().to_integer()).unwrap_or_default();
        let hi = vals.max().map(|v| v.ceil().to_integer()).unwrap_or_default();
        (lo - 1, hi + 1)
    };
    let (x_lo, x_hi) = bound(0);
    let (y_lo, y_hi) = bound(1);
    let unit = BigInt::from(unit_px);
    let width = (&x_hi - &x_lo) * &unit;
    let height = (&y_hi - &y_lo) * &unit;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    )
    .unwrap();
    s.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    s.push_str("<g stroke=\"#c8c8c8\" stroke-width=\"1\">\n");
    let mut x = x_lo.clone();
    while x <= x_hi {
        let px = (&x - &x_lo) * &unit;
        let class = if x.is_zero() { "axis" } else { "grid" };
        writeln!(s, "<line class=\"{class}\" x1=\"{px}\" y1=\"0\" x2=\"{px}\" y2=\"{height}\"/>").unwrap();
        x += 1;
    }
    let mut y = y_lo.clone();
    while y <= y_hi {
        let py = (&y_hi - &y) * &unit;
        let class = if y.is_zero() { "axis" } else { "grid" };
        writeln!(s, "<line class=\"{class}\" x1=\"0\" y1=\"{py}\" x2=\"{width}\" y2=\"{py}\"/>").unwrap();
        y += 1;
    }
    s.push_str("</g>\n<g fill=\"black\">\n");
    let unit_r = Rational::from_integer(unit.clone());
    let radius = decimal(&(&unit_r / int(8)));
    let x_origin = Rational::from_integer(x_lo);
    let y_origin = Rational::from_integer(y_hi);
    for p in c {
        let cx = decimal(&((&p.coords()[0] - &x_origin) * &unit_r));
        let cy = decimal(&((&y_origin - &p.coords()[1]) * &unit_r));
        writeln!(s, "<circle class=\"point\" cx=\"{cx}\" cy=\"{cy}\" r=\"{radius}\"/>").unwrap();
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

/// Points of a set in `R^3` grouped into slices by their last coordinate.
pub fn render_layers(c: &Configuration) -> Result<String> {
    if c.dim() != 3 {
        return Err(Error::WrongDimension {
            expected: 3,
            found: c.dim(),
        });
    }
    let mut layers: std::collections::BTreeMap<&Rational, Vec<String>> = Default::default();
    for p in c {
        let [x, y, z] = p.coords() else { unreachable!() };
        layers.entry(z).or_default().push(format!("({x}, {y})"));
    }
    let mut s = format!("# {} points in {} layers\n", c.len(), layers.len());
    for (z, pts) in layers.iter().rev() {
        writeln!(s, "z = {z}: {} points", pts.len()).unwrap();
        writeln!(s, "  {}", pts.join(" ")).unwrap();
    }
    Ok(s)
}
