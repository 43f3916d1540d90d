//! Seeded exact random samplers for property suites: rational coordinates
//! with bounded numerators and denominators, points on l1-sphere faces,
//! random similarity transforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Configuration, Point};
use crate::numeric::{frac, int, Rational};
use crate::similarity::SimilarityTransform;

pub struct Sampler {
    rng: ChaCha8Rng,
    numer_bound: i64,
    denom_bound: i64,
}

impl Sampler {
    /// Numerators in `[-100, 100]`, denominators in `[1, 10]`.
    pub fn new(seed: u64) -> Self {
        Self::with_bounds(seed, 100, 10)
    }

    pub fn with_bounds(seed: u64, numer_bound: i64, denom_bound: i64) -> Self {
        assert!(numer_bound >= 1 && denom_bound >= 1);
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            numer_bound,
            denom_bound,
        }
    }

    /// Independent stream for case `index` of a suite seeded with `seed`.
    pub fn for_case(seed: u64, index: u64) -> Self {
        Self::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let n = self.rng.gen_range(-self.numer_bound..=self.numer_bound);
        let d = self.rng.gen_range(1..=self.denom_bound);
        frac(n, d)
    }

    pub fn positive_rational(&mut self) -> Rational {
        let n = self.rng.gen_range(1..=self.numer_bound);
        let d = self.rng.gen_range(1..=self.denom_bound);
        frac(n, d)
    }

    /// A rational in `[0, 1]` with denominator at most `denom_bound`.
    pub fn unit_fraction(&mut self) -> Rational {
        let d = self.rng.gen_range(1..=self.denom_bound);
        frac(self.rng.gen_range(0..=d), d)
    }

    pub fn point(&mut self, dim: usize) -> Point {
        Point::new((0..dim).map(|_| self.rational()).collect()).expect("dim >= 1")
    }

    /// Between `min_points` and `max_points` random points (duplicates merge).
    pub fn configuration(&mut self, dim: usize, min_points: usize, max_points: usize) -> Configuration {
        let n = self.rng.gen_range(min_points..=max_points);
        let pts: Vec<Point> = (0..n).map(|_| self.point(dim)).collect();
        Configuration::new(dim, pts).expect("uniform dimension")
    }

    pub fn signed_permutation(&mut self, dim: usize) -> (Vec<usize>, Vec<i8>) {
        let mut perm: Vec<usize> = (0..dim).collect();
        perm.shuffle(&mut self.rng);
        let signs = (0..dim).map(|_| if self.rng.gen() { 1 } else { -1 }).collect();
        (perm, signs)
    }

    pub fn transform(&mut self, dim: usize) -> SimilarityTransform {
        let (perm, signs) = self.signed_permutation(dim);
        let scale = self.positive_rational();
        let translation = self.point(dim);
        SimilarityTransform::new(perm, signs, scale, translation).expect("valid by construction")
    }

    /// Nonnegative coordinates summing to `radius`, in random order.
    pub fn simplex_point(&mut self, dim: usize, radius: &Rational) -> Vec<Rational> {
        let mut remaining = radius.clone();
        let mut parts = Vec::with_capacity(dim);
        for _ in 0..dim - 1 {
            let part = &remaining * self.unit_fraction();
            remaining -= &part;
            parts.push(part);
        }
        parts.push(remaining);
        parts.shuffle(&mut self.rng);
        parts
    }

    /// A point of l1 norm `radius` whose coordinate signs follow `signs`
    /// (zero coordinates are allowed).
    pub fn sphere_point(&mut self, signs: &[i8], radius: &Rational) -> Point {
        let coords = self
            .simplex_point(signs.len(), radius)
            .into_iter()
            .zip(signs)
            .map(|(v, &s)| if s < 0 { -v } else { v })
            .collect();
        Point::new(coords).expect("dim >= 1")
    }

    pub fn signs(&mut self, dim: usize) -> Vec<i8> {
        (0..dim).map(|_| if self.rng.gen() { 1 } else { -1 }).collect()
    }

    pub fn gen_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }
}

/// Points on the closed upper l1-semicircle of `radius` about `center`
/// whose offsets from the left vertex are multiples of `radius / steps`.
pub fn upper_semicircle_lattice(center: &Point, radius: &Rational, steps: i64) -> Vec<Point> {
    let (cx, cy) = (&center.coords()[0], &center.coords()[1]);
    let unit = radius / int(steps);
    (0..=2 * steps)
        .map(|j| {
            let t = &unit * int(j);
            let x = cx - radius + &t;
            let dy = if j <= steps { t.clone() } else { radius * int(2) - &t };
            Point::new(vec![x, cy + dy]).expect("planar")
        })
        .collect()
}
