//! Executable forms of the planar and three-dimensional l1 lemmas: enclosing
//! balls, hemisphere stripping, collinear progressions and the face-distance
//! formulas on an l1-sphere in `R^3`.
//!
//! Each oracle checks its own hypotheses and refuses inputs outside them.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    distance_set, l1_distance, l1_norm, planar, rotated_basis_coords, Configuration, Metric, Point,
};
use crate::numeric::{int, Rational};

/// Closed l1-ball; its diameter is `2 * radius`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnclosingBall {
    pub center: Point,
    pub radius: Rational,
}

impl EnclosingBall {
    pub fn new(center: Point, radius: Rational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::Precondition(format!("ball radius {radius} must be positive")));
        }
        Ok(EnclosingBall { center, radius })
    }

    pub fn diameter(&self) -> Rational {
        &self.radius * int(2)
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(l1_distance(p, &self.center)? <= self.radius)
    }

    pub fn on_boundary(&self, p: &Point) -> Result<bool> {
        Ok(l1_distance(p, &self.center)? == self.radius)
    }
}

/// Sign pattern of a point: which closed orthant faces of an l1-sphere it
/// may sit on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacePattern {
    signs: Vec<i8>,
}

impl FacePattern {
    pub fn of(p: &Point) -> Self {
        FacePattern {
            signs: p
                .coords()
                .iter()
                .map(|c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 })
                .collect(),
        }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Per-coordinate products of the two patterns.
    pub fn products(&self, other: &FacePattern) -> Vec<i8> {
        self.signs.iter().zip(&other.signs).map(|(a, b)| a * b).collect()
    }
}

/// Builds a closed l1-ball whose diameter equals the largest l1 distance of a
/// planar set, by widening the shorter side of the bounding rectangle in the
/// rotated basis `(1, 1), (-1, 1)` to a square.
pub fn enclosing_ball_2d(c: &Configuration) -> Result<EnclosingBall> {
    if c.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: c.dim(),
        });
    }
    if c.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: c.len(),
        });
    }
    let rotated = c.iter().map(rotated_basis_coords).collect::<Result<Vec<_>>>()?;
    let range = |f: fn(&(Rational, Rational)) -> &Rational| {
        let min = rotated.iter().map(f).min().expect("nonempty").clone();
        let max = rotated.iter().map(f).max().expect("nonempty").clone();
        (min, max)
    };
    let (c1_min, c1_max) = range(|r| &r.0);
    let (c2_min, c2_max) = range(|r| &r.1);
    let w1 = &c1_max - &c1_min;
    let w2 = &c2_max - &c2_min;
    let two = int(2);
    let (center_c1, center_c2, radius) = if w1 >= w2 {
        let c2_new = &c2_max - &w1;
        ((&c1_min + &c1_max) / &two, (c2_new + &c2_max) / &two, w1)
    } else {
        let c1_new = &c1_max - &w2;
        ((c1_new + &c1_max) / &two, (&c2_min + &c2_max) / &two, w2)
    };
    let center = Point::new(vec![&center_c1 - &center_c2, center_c1 + center_c2])?;
    EnclosingBall::new(center, radius)
}

/// Removes the points on the closed upper boundary semicircle of `b` (both
/// equator vertices included).
pub fn strip_upper_hemisphere(c: &Configuration, b: &EnclosingBall) -> Result<Configuration> {
    if c.dim() != 2 || b.center.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: if c.dim() != 2 { c.dim() } else { b.center.dim() },
        });
    }
    let cy = &b.center.coords()[1];
    let mut kept = Vec::with_capacity(c.len());
    for p in c {
        if !b.contains(p)? {
            return Err(Error::NotContained { point: p.to_string() });
        }
        if !(b.on_boundary(p)? && &p.coords()[1] >= cy) {
            kept.push(p.clone());
        }
    }
    Configuration::new(c.dim(), kept)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineAnalysis {
    pub collinear: bool,
    pub count: usize,
    pub is_arithmetic_progression: bool,
}

/// Collinearity and equal spacing. Sets of at most two points count as
/// collinear progressions.
pub fn line_analysis(c: &Configuration) -> LineAnalysis {
    let pts = c.points();
    let count = pts.len();
    if count <= 2 {
        return LineAnalysis {
            collinear: true,
            count,
            is_arithmetic_progression: true,
        };
    }
    let base = &pts[0];
    let dir = pts[1].sub(base).expect("uniform dimension");
    let pivot = dir
        .coords()
        .iter()
        .position(|v| !v.is_zero())
        .expect("distinct points");
    let mut params = Vec::with_capacity(count);
    for p in pts {
        let w = p.sub(base).expect("uniform dimension");
        let t = &w.coords()[pivot] / &dir.coords()[pivot];
        let on_line = w
            .coords()
            .iter()
            .zip(dir.coords())
            .all(|(wi, vi)| *wi == &t * vi);
        if !on_line {
            return LineAnalysis {
                collinear: false,
                count,
                is_arithmetic_progression: false,
            };
        }
        params.push(t);
    }
    params.sort();
    let step = &params[1] - &params[0];
    let equal = params.windows(2).all(|w| &w[1] - &w[0] == step);
    LineAnalysis {
        collinear: true,
        count,
        is_arithmetic_progression: equal,
    }
}

fn require_dim3(v: &Point, w: &Point) -> Result<()> {
    for p in [v, w] {
        if p.dim() != 3 {
            return Err(Error::WrongDimension {
                expected: 3,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

fn require_equal_norms(v: &Point, w: &Point) -> Result<Rational> {
    let lambda = l1_norm(v);
    if lambda != l1_norm(w) {
        return Err(Error::Precondition(format!(
            "{v} and {w} do not lie on a common l1-sphere about the origin"
        )));
    }
    Ok(lambda)
}

/// `2 max_i |v_i - w_i|` for two points on one face of an l1-sphere about
/// the origin in `R^3`.
pub fn same_face_distance(v: &Point, w: &Point) -> Result<Rational> {
    require_dim3(v, w)?;
    require_equal_norms(v, w)?;
    let products = FacePattern::of(v).products(&FacePattern::of(w));
    if products.iter().any(|&s| s < 0) {
        return Err(Error::Precondition(format!("{v} and {w} are not in a common closed orthant")));
    }
    let max = v
        .coords()
        .iter()
        .zip(w.coords())
        .map(|(a, b)| (a - b).abs())
        .max()
        .expect("three coordinates");
    Ok(max * int(2))
}

/// `2 (lambda - min(v_3, w_3))` for points on opposite upper faces of the
/// l1-sphere of radius `lambda`.
pub fn opposite_face_distance(v: &Point, w: &Point) -> Result<Rational> {
    require_dim3(v, w)?;
    let lambda = require_equal_norms(v, w)?;
    let products = FacePattern::of(v).products(&FacePattern::of(w));
    let (vc, wc) = (v.coords(), w.coords());
    if products[0] > 0 || products[1] > 0 || vc[2].is_negative() || wc[2].is_negative() {
        return Err(Error::Precondition(format!("{v} and {w} are not on opposite upper faces")));
    }
    let low = if vc[2] <= wc[2] { &vc[2] } else { &wc[2] };
    Ok((lambda - low) * int(2))
}

/// For neighbouring faces across the first coordinate: returns whether
/// `|v - w|_1 = lambda` implies `|v_1| <= lambda / 2`.
pub fn neighbor_bound_holds(v: &Point, w: &Point) -> Result<bool> {
    require_dim3(v, w)?;
    let lambda = require_equal_norms(v, w)?;
    if !lambda.is_positive() {
        return Err(Error::Precondition("sphere radius must be positive".into()));
    }
    let products = FacePattern::of(v).products(&FacePattern::of(w));
    if products[0] > 0 || products[1] < 0 || products[2] < 0 {
        return Err(Error::Precondition(format!("{v} and {w} are not on neighbouring faces")));
    }
    if l1_distance(v, w)? != lambda {
        return Ok(true);
    }
    Ok(v.coords()[0].abs() <= lambda / int(2))
}

/// True when every point lies on the l1-circle about `center` and all of
/// them sit on one pair of adjacent sides.
pub fn on_adjacent_sides(s: &Configuration, center: &Point, radius: &Rational) -> Result<bool> {
    let [cx, cy] = planar(center)?;
    let mut half_planes = [true; 4];
    for p in s {
        let [x, y] = planar(p)?;
        let (dx, dy) = (x - cx, y - cy);
        if dx.abs() + dy.abs() != *radius {
            return Ok(false);
        }
        half_planes[0] &= !dy.is_negative();
        half_planes[1] &= !dy.is_positive();
        half_planes[2] &= !dx.is_negative();
        half_planes[3] &= !dx.is_positive();
    }
    Ok(half_planes.iter().any(|&h| h))
}

/// For a set on two adjacent sides of an l1-circle: returns whether at most
/// `k` distinct distances forces `|s| <= 2k + 1`.
pub fn semicircle_bound_check(
    s: &Configuration,
    circle_center: &Point,
    circle_radius: &Rational,
    k: u32,
) -> Result<bool> {
    if s.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            found: s.dim(),
        });
    }
    if !circle_radius.is_positive() {
        return Err(Error::Precondition(format!("radius {circle_radius} must be positive")));
    }
    if !on_adjacent_sides(s, circle_center, circle_radius)? {
        return Err(Error::Precondition(
            "points do not lie on two adjacent sides of the circle".into(),
        ));
    }
    let distinct = distance_set(s, Metric::L1).len();
    Ok(distinct > k as usize || s.len() <= 2 * k as usize + 1)
}
