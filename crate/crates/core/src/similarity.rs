//! The l1-similarity group (translations, coordinate reflections,
//! coordinate permutations, positive dilations) and canonical forms under it.

use std::ops::Sub;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{distance_set, Configuration, Metric, Point};
use crate::numeric::{denominator_lcm, integer_gcd, Rational};

/// `p -> translation + scale * (signs ∘ permutation)(p)`, where coordinate
/// `i` of the permuted point is `p[permutation[i]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityTransform {
    permutation: Vec<usize>,
    signs: Vec<i8>,
    scale: Rational,
    translation: Point,
}

impl SimilarityTransform {
    pub fn new(
        permutation: Vec<usize>,
        signs: Vec<i8>,
        scale: Rational,
        translation: Point,
    ) -> Result<Self> {
        let d = translation.dim();
        if permutation.len() != d || signs.len() != d {
            return Err(Error::InvalidTransform(format!(
                "permutation/signs/translation lengths {}/{}/{} differ",
                permutation.len(),
                signs.len(),
                d
            )));
        }
        let mut seen = vec![false; d];
        for &p in &permutation {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidTransform(format!(
                    "{permutation:?} is not a permutation of 0..{d}"
                )));
            }
        }
        if let Some(s) = signs.iter().find(|s| s.abs() != 1) {
            return Err(Error::InvalidTransform(format!("sign {s} is not ±1")));
        }
        if !scale.is_positive() {
            return Err(Error::InvalidTransform(format!("scale {scale} is not positive")));
        }
        Ok(SimilarityTransform {
            permutation,
            signs,
            scale,
            translation,
        })
    }

    pub fn identity(dim: usize) -> Self {
        SimilarityTransform {
            permutation: (0..dim).collect(),
            signs: vec![1; dim],
            scale: Rational::from_integer(1.into()),
            translation: Point::origin(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.permutation.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        let coords = p.coords();
        let out = (0..self.dim())
            .map(|i| {
                let v = &coords[self.permutation[i]] * &self.scale;
                let v = if self.signs[i] < 0 { -v } else { v };
                v + &self.translation.coords()[i]
            })
            .collect();
        Point::new(out)
    }
}

pub fn apply_transform(t: &SimilarityTransform, c: &Configuration) -> Result<Configuration> {
    if t.dim() != c.dim() {
        return Err(Error::DimensionMismatch {
            expected: t.dim(),
            found: c.dim(),
        });
    }
    let pts = c.iter().map(|p| t.apply_point(p)).collect::<Result<Vec<_>>>()?;
    Configuration::new(c.dim(), pts)
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(d), &mut vec![false; d], &mut out);
    out
}

/// Canonical representative of the similarity class of `c`.
///
/// The set is translated so every coordinate has minimum 0, scaled to
/// primitive integer coordinates, and then the lexicographically least sorted
/// point list over all `2^d d!` signed permutations (each re-translated to
/// minimum 0) is kept.
pub fn canonicalize(c: &Configuration) -> Configuration {
    let d = c.dim();
    if c.len() <= 1 {
        let pts = if c.is_empty() { vec![] } else { vec![Point::origin(d)] };
        return Configuration::from_sorted_unchecked(d, pts);
    }
    if let Some((rows, _)) = c.integer_frame() {
        let best = canonical_rows(normalize_i64(rows));
        return rows_to_configuration(d, best.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()));
    }
    let scale = denominator_lcm(c.iter().flat_map(|p| p.coords()));
    let rows = c
        .iter()
        .map(|p| p.coords().iter().map(|v| v.numer() * (&scale / v.denom())).collect())
        .collect();
    rows_to_configuration(d, canonical_rows(normalize_big(rows)))
}

fn rows_to_configuration(d: usize, rows: impl IntoIterator<Item = Vec<BigInt>>) -> Configuration {
    let pts = rows
        .into_iter()
        .map(|r| Point::new(r.into_iter().map(Rational::from_integer).collect()).expect("d >= 1"))
        .collect();
    Configuration::from_sorted_unchecked(d, pts)
}

fn column_minima<T: Clone + Ord>(rows: &[Vec<T>]) -> Vec<T> {
    (0..rows[0].len())
        .map(|i| rows.iter().map(|r| r[i].clone()).min().expect("nonempty"))
        .collect()
}

/// Translates columns to minimum zero and divides by the common gcd.
fn normalize_i64(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let minima = column_minima(&rows);
    let mut g = 0i64;
    for r in rows.iter_mut() {
        for (v, m) in r.iter_mut().zip(&minima) {
            *v -= m;
            g = g.gcd(v);
        }
    }
    for v in rows.iter_mut().flatten() {
        *v /= g;
    }
    rows
}

fn normalize_big(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let minima = column_minima(&rows);
    for r in rows.iter_mut() {
        for (v, m) in r.iter_mut().zip(&minima) {
            *v -= m;
        }
    }
    let g = integer_gcd(rows.iter().flatten());
    for v in rows.iter_mut().flatten() {
        *v /= &g;
    }
    rows
}

fn canonical_rows<T>(rows: Vec<Vec<T>>) -> Vec<Vec<T>>
where
    T: Clone + Ord + Sub<Output = T>,
{
    let d = rows[0].len();
    let maxima: Vec<T> = (0..d)
        .map(|i| rows.iter().map(|r| r[i].clone()).max().expect("nonempty"))
        .collect();
    let mut best: Option<Vec<Vec<T>>> = None;
    let mut candidate: Vec<Vec<T>> = rows.clone();
    for perm in permutations(d) {
        for mask in 0u32..(1 << d) {
            for (src, dst) in rows.iter().zip(candidate.iter_mut()) {
                for i in 0..d {
                    let j = perm[i];
                    dst[i] = if mask >> i & 1 == 1 {
                        maxima[j].clone() - src[j].clone()
                    } else {
                        src[j].clone()
                    };
                }
            }
            candidate.sort_unstable();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate.clone());
            }
        }
    }
    best.expect("at least the identity")
}

pub fn are_similar(a: &Configuration, b: &Configuration) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonicalize(a) == canonicalize(b))
}

/// Whether the largest distance of `c` is realised by some `x` and
/// `x + lambda e_i`, both in `c`.
pub fn is_axis_parallel(c: &Configuration, metric: Metric) -> Result<bool> {
    if c.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: c.len(),
        });
    }
    let ds = distance_set(c, metric);
    let lambda = ds.max().expect("two distinct points");
    for x in c {
        for i in 0..c.dim() {
            let mut coords = x.coords().to_vec();
            coords[i] += lambda;
            if c.contains(&Point::new(coords)?) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::generate_lambda;
    use crate::numeric::int;
    use crate::sampling::Sampler;

    fn cfg(points: &[&[i64]]) -> Configuration {
        Configuration::from_int_points(points[0].len(), points).unwrap()
    }

    #[test]
    fn transform_validation() {
        let t = SimilarityTransform::new(vec![0, 0], vec![1, 1], int(1), Point::origin(2));
        assert!(matches!(t, Err(Error::InvalidTransform(_))));
        let t = SimilarityTransform::new(vec![1, 0], vec![1, 2], int(1), Point::origin(2));
        assert!(t.is_err());
        let t = SimilarityTransform::new(vec![1, 0], vec![1, -1], int(0), Point::origin(2));
        assert!(t.is_err());
        let t = SimilarityTransform::new(vec![1, 0], vec![1, -1], int(1), Point::origin(3));
        assert!(t.is_err());
    }

    #[test]
    fn apply_examples() {
        let l = generate_lambda(2, 1);
        assert_eq!(apply_transform(&SimilarityTransform::identity(2), &l).unwrap(), l);

        let t = SimilarityTransform::new(vec![0, 1], vec![1, 1], int(2), Point::origin(2)).unwrap();
        let got = apply_transform(&t, &cfg(&[&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(got, cfg(&[&[0, 0], &[2, 0]]));

        let t = SimilarityTransform::new(vec![1, 0], vec![-1, 1], int(1), Point::origin(2)).unwrap();
        assert_eq!(apply_transform(&t, &cfg(&[&[1, 2]])).unwrap(), cfg(&[&[-2, 1]]));

        assert!(matches!(
            apply_transform(&t, &generate_lambda(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonicalize_examples() {
        let shifted = cfg(&[&[5, 3], &[7, 3], &[6, 4], &[6, 2]]);
        let canon = canonicalize(&generate_lambda(2, 1));
        assert_eq!(canonicalize(&shifted), canon);
        assert_eq!(canon, cfg(&[&[0, 1], &[1, 0], &[1, 2], &[2, 1]]));

        assert!(canonicalize(&Configuration::empty(2)).is_empty());
        let single = Configuration::new(2, [Point::from_fracs(&[(1, 3), (1, 3)])]).unwrap();
        assert_eq!(canonicalize(&single), cfg(&[&[0, 0]]));
    }

    #[test]
    fn canonicalize_scales_to_primitive() {
        let c = Configuration::new(
            2,
            [Point::from_fracs(&[(1, 2), (0, 1)]), Point::from_fracs(&[(3, 2), (1, 1)])],
        )
        .unwrap();
        assert_eq!(canonicalize(&c), cfg(&[&[0, 0], &[1, 1]]));
        let line = cfg(&[&[0, 0, 0], &[0, 0, 4], &[0, 0, 8]]);
        assert_eq!(canonicalize(&line), cfg(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 2]]));
    }

    #[test]
    fn canonicalize_big_coordinates() {
        let huge = Rational::new(num_bigint::BigInt::from(1) << 70u32, 1.into());
        let c = Configuration::new(
            1,
            [
                Point::new(vec![huge.clone()]).unwrap(),
                Point::new(vec![huge.clone() * int(2)]).unwrap(),
                Point::new(vec![huge * int(4)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(canonicalize(&c), cfg(&[&[0], &[1], &[3]]));
    }

    #[test]
    fn similar_examples() {
        let l = generate_lambda(2, 1);
        assert!(are_similar(&l, &cfg(&[&[0, 0], &[2, 0], &[1, 1], &[1, -1]])).unwrap());
        assert!(!are_similar(&l, &cfg(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap());
        assert!(are_similar(&Configuration::empty(2), &Configuration::empty(2)).unwrap());
        assert!(are_similar(&l, &generate_lambda(3, 1)).is_err());
    }

    #[test]
    fn axis_parallel_examples() {
        assert!(is_axis_parallel(&generate_lambda(2, 2), Metric::L1).unwrap());
        assert!(!is_axis_parallel(&cfg(&[&[0, 0], &[1, 1]]), Metric::L1).unwrap());
        assert!(is_axis_parallel(&generate_lambda(3, 1), Metric::L1).unwrap());
        assert!(is_axis_parallel(&cfg(&[&[0, 0], &[1, 1], &[1, 0]]), Metric::Linf).unwrap());
        assert!(!is_axis_parallel(&cfg(&[&[0, 0], &[1, 1]]), Metric::Linf).unwrap());
        assert!(matches!(
            is_axis_parallel(&cfg(&[&[0, 0]]), Metric::L1),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(1), vec![vec![0]]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn random_invariance_smoke() {
        for case in 0..200 {
            let mut s = Sampler::for_case(17, case);
            let dim = s.gen_range(1, 4) as usize;
            let c = s.configuration(dim, 0, 12);
            let t = s.transform(dim);
            let tc = apply_transform(&t, &c).unwrap();
            let canon = canonicalize(&c);
            assert_eq!(canonicalize(&tc), canon, "case {case}");
            assert_eq!(canonicalize(&canon), canon);
            let scaled: Vec<Rational> = distance_set(&c, Metric::L1)
                .values()
                .iter()
                .map(|v| v * t.scale())
                .collect();
            assert_eq!(distance_set(&tc, Metric::L1).values(), &scaled[..]);
            if c.len() >= 2 {
                for m in [Metric::L1, Metric::Linf] {
                    assert_eq!(is_axis_parallel(&c, m).unwrap(), is_axis_parallel(&tc, m).unwrap());
                }
            }
        }
    }
}
