//! Points, configurations and the taxicab / Chebyshev distances between them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::{denominator_lcm, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    L1,
    Linf,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::L1 => f.write_str("l1"),
            Metric::Linf => f.write_str("linf"),
        }
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "l1" | "L1" => Ok(Metric::L1),
            "linf" | "LINF" | "Linf" => Ok(Metric::Linf),
            other => Err(format!("unknown metric `{other}` (expected l1 or linf)")),
        }
    }
}

/// A point of `Q^d`, `d >= 1`. Ordered lexicographically by coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        Ok(Point(coords))
    }

    /// Panics on an empty slice.
    pub fn from_ints(coords: &[i64]) -> Self {
        assert!(!coords.is_empty(), "point must have at least one coordinate");
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    /// Builds a point from `(numerator, denominator)` pairs. Panics on an
    /// empty slice or a zero denominator.
    pub fn from_fracs(coords: &[(i64, i64)]) -> Self {
        assert!(!coords.is_empty(), "point must have at least one coordinate");
        Point(coords.iter().map(|&(n, d)| frac(n, d)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        assert!(dim >= 1);
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        check_dims(self, other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        check_dims(self, other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, factor: &Rational) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(())
}

/// A finite set of points of a common dimension, kept sorted
/// lexicographically and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    dim: usize,
    points: Vec<Point>,
}

impl Configuration {
    pub fn empty(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Configuration {
            dim,
            points: Vec::new(),
        }
    }

    /// Duplicate points are dropped.
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points = Self::collect_checked(dim, points)?;
        points.sort();
        points.dedup();
        Ok(Configuration { dim, points })
    }

    /// Like [`Configuration::new`] but a repeated point is an error.
    pub fn new_strict(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut points = Self::collect_checked(dim, points)?;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Precondition(format!("duplicate point {}", w[0])));
        }
        Ok(Configuration { dim, points })
    }

    pub fn from_int_points(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| Point::from_ints(p)))
    }

    fn collect_checked(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Vec<Point>> {
        if dim == 0 {
            return Err(Error::EmptyPoint);
        }
        points
            .into_iter()
            .map(|p| {
                if p.dim() == dim {
                    Ok(p)
                } else {
                    Err(Error::DimensionMismatch {
                        expected: dim,
                        found: p.dim(),
                    })
                }
            })
            .collect()
    }

    pub(crate) fn from_sorted_unchecked(dim: usize, points: Vec<Point>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Configuration { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// Scales every coordinate by the lcm of all denominators and returns
    /// the resulting integer coordinates together with that factor, or
    /// `None` if some coordinate leaves the `i64` headroom.
    pub(crate) fn integer_frame(&self) -> Option<(Vec<Vec<i64>>, BigInt)> {
        const LIMIT: i64 = 1 << 40;
        let scale = denominator_lcm(self.points.iter().flat_map(|p| p.coords()));
        let mut rows = Vec::with_capacity(self.points.len());
        for p in &self.points {
            let mut row = Vec::with_capacity(self.dim);
            for c in p.coords() {
                let v = (c.numer() * (&scale / c.denom())).to_i64()?;
                if v.abs() > LIMIT {
                    return None;
                }
                row.push(v);
            }
            rows.push(row);
        }
        Some((rows, scale))
    }
}

impl<'a> IntoIterator for &'a Configuration {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

/// Distinct nonzero pairwise distances, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSet {
    metric: Metric,
    values: Vec<Rational>,
}

impl DistanceSet {
    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.values.last()
    }
}

pub fn l1_norm(p: &Point) -> Rational {
    p.coords().iter().map(|c| c.abs()).sum()
}

pub fn linf_norm(p: &Point) -> Rational {
    p.coords()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

pub fn l1_distance(p: &Point, q: &Point) -> Result<Rational> {
    check_dims(p, q)?;
    Ok(p.coords()
        .iter()
        .zip(q.coords())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

pub fn linf_distance(p: &Point, q: &Point) -> Result<Rational> {
    check_dims(p, q)?;
    Ok(p.coords()
        .iter()
        .zip(q.coords())
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(Rational::zero))
}

pub fn distance(p: &Point, q: &Point, metric: Metric) -> Result<Rational> {
    match metric {
        Metric::L1 => l1_distance(p, q),
        Metric::Linf => linf_distance(p, q),
    }
}

pub(crate) fn int_distance(a: &[i64], b: &[i64], metric: Metric) -> i64 {
    let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
    match metric {
        Metric::L1 => diffs.sum(),
        Metric::Linf => diffs.max().unwrap_or(0),
    }
}

pub fn distance_set(c: &Configuration, metric: Metric) -> DistanceSet {
    let values = match c.integer_frame() {
        Some((rows, scale)) => {
            let mut ds: Vec<i64> = Vec::new();
            for (i, a) in rows.iter().enumerate() {
                for b in &rows[i + 1..] {
                    ds.push(int_distance(a, b, metric));
                }
            }
            ds.sort_unstable();
            ds.dedup();
            ds.into_iter()
                .filter(|&v| v != 0)
                .map(|v| Rational::new(BigInt::from(v), scale.clone()))
                .collect()
        }
        None => {
            let pts = c.points();
            let mut ds: Vec<Rational> = Vec::new();
            for (i, a) in pts.iter().enumerate() {
                for b in &pts[i + 1..] {
                    ds.push(distance(a, b, metric).expect("uniform dimension"));
                }
            }
            ds.sort();
            ds.dedup();
            ds.retain(|v| !v.is_zero());
            ds
        }
    };
    DistanceSet { metric, values }
}

/// Integer points of `Z^d` with l1 norm at most `k` whose coordinate sum
/// has the parity of `k`, in lexicographic order.
pub fn generate_lambda(d: usize, k: u32) -> Configuration {
    assert!(d >= 1, "dimension must be positive");
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(d);
    lambda_rec(d, k as i64, k as i64, &mut prefix, &mut out);
    Configuration::from_sorted_unchecked(d, out)
}

fn lambda_rec(d: usize, k: i64, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Point>) {
    if prefix.len() == d {
        let sum: i64 = prefix.iter().sum();
        if (sum - k).rem_euclid(2) == 0 {
            out.push(Point::from_ints(prefix));
        }
        return;
    }
    for v in -budget..=budget {
        prefix.push(v);
        lambda_rec(d, k, budget - v.abs(), prefix, out);
        prefix.pop();
    }
}

/// The planar map `(x, y) -> (x + y, x - y)` carrying l1 onto linf.
pub fn to_linf_plane(p: &Point) -> Result<Point> {
    let [x, y] = planar(p)?;
    Ok(Point(vec![x + y, x - y]))
}

/// Coordinates `(c1, c2)` of a planar point in the basis `(1, 1), (-1, 1)`.
pub fn rotated_basis_coords(p: &Point) -> Result<(Rational, Rational)> {
    let [x, y] = planar(p)?;
    let two = int(2);
    Ok(((x + y) / &two, (y - x) / two))
}

pub(crate) fn planar(p: &Point) -> Result<[&Rational; 2]> {
    match p.coords() {
        [x, y] => Ok([x, y]),
        other => Err(Error::WrongDimension {
            expected: 2,
            found: other.len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(c: &[i64]) -> Point {
        Point::from_ints(c)
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-100i64..=100, 1i64..=10).prop_map(|(n, d)| frac(n, d))
    }

    fn point(dim: usize) -> impl Strategy<Value = Point> {
        proptest::collection::vec(rational(), dim).prop_map(|c| Point::new(c).unwrap())
    }

    #[test]
    fn norm_examples() {
        assert_eq!(l1_norm(&pt(&[3, -4])), int(7));
        assert_eq!(l1_norm(&pt(&[0, 0, 0])), int(0));
        assert_eq!(l1_norm(&Point::from_fracs(&[(1, 2), (-1, 3)])), frac(5, 6));
    }

    #[test]
    fn l1_distance_examples() {
        assert_eq!(l1_distance(&pt(&[0, 1]), &pt(&[0, -1])).unwrap(), int(2));
        assert_eq!(l1_distance(&pt(&[5, 7, -2]), &pt(&[5, 7, -2])).unwrap(), int(0));
        let a = Point::from_fracs(&[(11, 10), (5, 10), (4, 10)]);
        let b = Point::from_fracs(&[(1, 10), (13, 10), (6, 10)]);
        assert_eq!(l1_distance(&a, &b).unwrap(), int(2));
        assert!(matches!(
            l1_distance(&pt(&[0, 1]), &pt(&[0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn linf_distance_examples() {
        assert_eq!(linf_distance(&pt(&[0, 0]), &pt(&[1, 1])).unwrap(), int(1));
        assert_eq!(linf_distance(&pt(&[0, 0]), &pt(&[3, -4])).unwrap(), int(4));
        assert_eq!(linf_distance(&pt(&[2, 2, 2]), &pt(&[2, 2, 2])).unwrap(), int(0));
        assert!(linf_distance(&pt(&[1]), &pt(&[1, 2])).is_err());
    }

    #[test]
    fn distance_set_examples() {
        let ds = distance_set(&generate_lambda(2, 2), Metric::L1);
        assert_eq!(ds.values(), &[int(2), int(4)]);
        let single = Configuration::from_int_points(2, &[&[0, 0]]).unwrap();
        assert!(distance_set(&single, Metric::L1).is_empty());
        assert!(distance_set(&Configuration::empty(3), Metric::L1).is_empty());
        assert_eq!(distance_set(&generate_lambda(3, 1), Metric::L1).values(), &[int(2)]);
    }

    #[test]
    fn distance_set_fractional_and_slow_path_agree() {
        let c = Configuration::new(
            2,
            [
                Point::from_fracs(&[(1, 3), (0, 1)]),
                Point::from_fracs(&[(0, 1), (1, 2)]),
                Point::from_fracs(&[(1, 1), (1, 1)]),
            ],
        )
        .unwrap();
        let fast = distance_set(&c, Metric::L1);
        assert_eq!(fast.values(), &[frac(5, 6), frac(3, 2), frac(5, 3)]);
        let huge = Rational::new(BigInt::from(1) << 80u32, BigInt::from(3));
        let big = Configuration::new(
            1,
            [
                Point::new(vec![huge.clone()]).unwrap(),
                Point::new(vec![int(0)]).unwrap(),
                Point::new(vec![-huge.clone()]).unwrap(),
            ],
        )
        .unwrap();
        assert!(big.integer_frame().is_none());
        let ds = distance_set(&big, Metric::L1);
        assert_eq!(ds.values(), &[huge.clone(), huge * int(2)]);
    }

    #[test]
    fn generate_lambda_examples() {
        let l21 = generate_lambda(2, 1);
        let expected =
            Configuration::from_int_points(2, &[&[-1, 0], &[1, 0], &[0, -1], &[0, 1]]).unwrap();
        assert_eq!(l21, expected);
        assert_eq!(l21.points()[0], pt(&[-1, 0]));
        assert_eq!(generate_lambda(5, 0).points(), &[pt(&[0, 0, 0, 0, 0])]);
        assert_eq!(generate_lambda(3, 2).len(), 19);
        assert_eq!(generate_lambda(2, 2).len(), 9);
    }

    #[test]
    fn generate_lambda_matches_box_filter() {
        for d in 1..=3usize {
            for k in 0..=4i64 {
                let mut brute = Vec::new();
                let side = (2 * k + 1) as usize;
                for idx in 0..side.pow(d as u32) {
                    let mut rest = idx;
                    let mut c = Vec::new();
                    for _ in 0..d {
                        c.push((rest % side) as i64 - k);
                        rest /= side;
                    }
                    let norm: i64 = c.iter().map(|v| v.abs()).sum();
                    let sum: i64 = c.iter().sum();
                    if norm <= k && (sum - k).rem_euclid(2) == 0 {
                        brute.push(pt(&c));
                    }
                }
                brute.sort();
                assert_eq!(generate_lambda(d, k as u32).points(), &brute[..], "d={d} k={k}");
            }
        }
    }

    #[test]
    fn lambda_distances_are_even_steps() {
        for d in 1..=4 {
            for k in 0..=5u32 {
                let ds = distance_set(&generate_lambda(d, k), Metric::L1);
                let expected: Vec<_> = (1..=k as i64).map(|j| int(2 * j)).collect();
                assert_eq!(ds.values(), &expected[..], "d={d} k={k}");
            }
        }
    }

    #[test]
    fn lambda_small_sizes() {
        for d in 1..=6 {
            assert_eq!(generate_lambda(d, 1).len(), 2 * d);
        }
        for k in 0..=10 {
            assert_eq!(generate_lambda(1, k).len(), k as usize + 1);
        }
    }

    #[test]
    fn linf_plane_examples() {
        assert_eq!(to_linf_plane(&pt(&[1, 0])).unwrap(), pt(&[1, 1]));
        assert_eq!(to_linf_plane(&pt(&[0, 0])).unwrap(), pt(&[0, 0]));
        assert_eq!(
            to_linf_plane(&Point::from_fracs(&[(1, 2), (1, 2)])).unwrap(),
            pt(&[1, 0])
        );
        assert!(matches!(
            to_linf_plane(&pt(&[1, 2, 3])),
            Err(Error::WrongDimension { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn rotated_basis_examples() {
        assert_eq!(rotated_basis_coords(&pt(&[1, 1])).unwrap(), (int(1), int(0)));
        assert_eq!(rotated_basis_coords(&pt(&[-1, 1])).unwrap(), (int(0), int(1)));
        assert_eq!(rotated_basis_coords(&pt(&[0, 2])).unwrap(), (int(1), int(1)));
        assert!(rotated_basis_coords(&pt(&[1])).is_err());
    }

    #[test]
    fn strict_rejects_duplicates() {
        let pts = vec![pt(&[1, 2]), pt(&[1, 2])];
        assert_eq!(Configuration::new(2, pts.clone()).unwrap().len(), 1);
        assert!(matches!(
            Configuration::new_strict(2, pts),
            Err(Error::Precondition(_))
        ));
        assert!(Configuration::new(2, [pt(&[1])]).is_err());
    }

    proptest! {
        #[test]
        fn rotated_basis_norm(p in point(2)) {
            let (c1, c2) = rotated_basis_coords(&p).unwrap();
            prop_assert_eq!(l1_norm(&p), int(2) * c1.abs().max(c2.abs()));
        }

        #[test]
        fn linf_plane_isometry(p in point(2), q in point(2)) {
            let lhs = l1_distance(&p, &q).unwrap();
            let rhs = linf_distance(&to_linf_plane(&p).unwrap(), &to_linf_plane(&q).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn triangle_inequality(dim in 1usize..=5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut r = || frac(rng.gen_range(-100..=100), rng.gen_range(1..=10));
            let mut mk = || Point::new((0..dim).map(|_| r()).collect()).unwrap();
            let (a, b, c) = (mk(), mk(), mk());
            for m in [Metric::L1, Metric::Linf] {
                let ab = distance(&a, &b, m).unwrap();
                let bc = distance(&b, &c, m).unwrap();
                let ac = distance(&a, &c, m).unwrap();
                prop_assert!(ac <= ab.clone() + bc);
                prop_assert_eq!(ab, distance(&b, &a, m).unwrap());
            }
        }
    }
}
